#include "carver/carve.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace carver {

void validate_seam(const Seam& seam, int width, int height) {
    if (static_cast<int>(seam.size()) != height) throw DataError("seam length does not equal image height");
    for (size_t i = 0; i < seam.size(); ++i) {
        if (seam[i] < 0 || seam[i] >= width) throw DataError("seam column out of bounds");
        if (i > 0 && std::abs(seam[i] - seam[i - 1]) > 1) throw DataError("seam is not 8-connected");
    }
}

Seam optimal_vertical_seam(const GrayMap& importance) {
    const int w = importance.width, h = importance.height;
    std::vector<double> cost(importance.values);  // row 0 of M equals S
    std::vector<int> from(static_cast<size_t>(w) * h, 0);
    constexpr double inf = std::numeric_limits<double>::infinity();

    for (int r = 1; r < h; ++r) {
        const double* prev = cost.data() + static_cast<size_t>(r - 1) * w;
        double* cur = cost.data() + static_cast<size_t>(r) * w;
        int* arg = from.data() + static_cast<size_t>(r) * w;
        for (int c = 0; c < w; ++c) {
            double best = inf;
            int best_c = c;
            for (int dc = -1; dc <= 1; ++dc) {
                const int pc = c + dc;
                if (pc < 0 || pc >= w) continue;
                if (prev[pc] < best) {  // strict: earlier (smaller) column wins ties
                    best = prev[pc];
                    best_c = pc;
                }
            }
            cur[c] = importance.at(r, c) + best;
            arg[c] = best_c;
        }
    }

    int col = 0;
    const double* last = cost.data() + static_cast<size_t>(h - 1) * w;
    for (int c = 1; c < w; ++c)
        if (last[c] < last[col]) col = c;

    Seam seam(h);
    for (int r = h - 1; r >= 0; --r) {
        seam[r] = col;
        if (r > 0) col = from[static_cast<size_t>(r) * w + col];
    }
    return seam;
}

namespace {

template <typename T>
std::vector<T> remove_seam_flat(const std::vector<T>& data, const Seam& seam, int width, int height,
                                int channels) {
    std::vector<T> out;
    out.reserve(static_cast<size_t>(width - 1) * height * channels);
    for (int r = 0; r < height; ++r) {
        const T* row = data.data() + static_cast<size_t>(r) * width * channels;
        for (int c = 0; c < width; ++c) {
            if (c == seam[r]) continue;
            for (int ch = 0; ch < channels; ++ch) out.push_back(row[c * channels + ch]);
        }
    }
    return out;
}

}  // namespace

RasterImage remove_seam(const RasterImage& img, const Seam& seam) {
    if (img.width <= 1) throw DataError("cannot remove a seam from a width-1 image");
    validate_seam(seam, img.width, img.height);
    RasterImage out(img.width - 1, img.height);
    out.data = remove_seam_flat(img.data, seam, img.width, img.height, 3);
    return out;
}

BinaryMask remove_seam_mask(const BinaryMask& mask, const Seam& seam) {
    if (mask.width <= 1) throw DataError("cannot remove a seam from a width-1 mask");
    validate_seam(seam, mask.width, mask.height);
    BinaryMask out(mask.width - 1, mask.height);
    out.salient = remove_seam_flat(mask.salient, seam, mask.width, mask.height, 1);
    return out;
}

GrayMap remove_seam_map(const GrayMap& map, const Seam& seam) {
    if (map.width <= 1) throw DataError("cannot remove a seam from a width-1 map");
    validate_seam(seam, map.width, map.height);
    GrayMap out(map.width - 1, map.height);
    out.values = remove_seam_flat(map.values, seam, map.width, map.height, 1);
    return out;
}

CarveResult carve_to_width(const RasterImage& img, const BinaryMask* mask, const ImportanceSource& src,
                           int target_width, const CarveOptions& opts) {
    if (target_width < 1) throw DataError("target width must be >= 1");
    if (target_width > img.width) throw DataError("target width exceeds image width (no seam insertion)");
    if (mask && (mask->width != img.width || mask->height != img.height))
        throw DataError("mask dimensions do not match image");

    CarveResult result;
    result.image = img;
    if (mask) result.mask = *mask;

    const bool recompute = is_derived_source(src) && !opts.static_map;
    std::optional<GrayMap> carved_map;
    if (!recompute) carved_map = importance_for(img, mask, src);

    while (result.image.width > target_width) {
        if (recompute)
            carved_map = importance_for(result.image, result.mask ? &*result.mask : nullptr, src);
        Seam seam = optimal_vertical_seam(*carved_map);
        result.image = remove_seam(result.image, seam);
        if (result.mask) result.mask = remove_seam_mask(*result.mask, seam);
        if (!recompute) carved_map = remove_seam_map(*carved_map, seam);
        result.seams.push_back(std::move(seam));
    }
    return result;
}

CarveResult make_it_square(const RasterImage& img, const BinaryMask* mask, const ImportanceSource& src,
                           const CarveOptions& opts) {
    if (img.width >= img.height) {
        return carve_to_width(img, mask, src, img.height, opts);
    }
    const RasterImage t = transpose(img);
    std::optional<BinaryMask> tmask;
    if (mask) tmask = transpose(*mask);
    CarveResult r = carve_to_width(t, tmask ? &*tmask : nullptr, src, t.height, opts);
    r.image = transpose(r.image);
    if (r.mask) r.mask = transpose(*r.mask);
    r.orientation = CarveOrientation::Transposed;
    return r;
}

void write_seam_trace(const std::vector<Seam>& seams, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open seam trace for writing: " + path);
    for (const Seam& seam : seams) {
        for (size_t i = 0; i < seam.size(); ++i) {
            if (i) out << ',';
            out << seam[i];
        }
        out << '\n';
    }
}

std::vector<Seam> read_seam_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open seam trace: " + path);
    std::vector<Seam> seams;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Seam seam;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) seam.push_back(std::stoi(tok));
        seams.push_back(std::move(seam));
    }
    return seams;
}

}  // namespace carver

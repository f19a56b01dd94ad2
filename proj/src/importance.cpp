#include "carver/importance.hpp"

#include <algorithm>
#include <cmath>

namespace carver {

ImportanceSource parse_importance_source(const std::string& spec) {
    if (spec == "sobel") return SobelSource{};
    if (spec == "grad") return GradientL1Source{};
    if (spec == "mask") return GroundTruthMaskSource{};
    if (spec.rfind("external:", 0) == 0) {
        std::string path = spec.substr(9);
        if (path.empty()) throw DataError("external importance source needs a path");
        return ExternalSource{path};
    }
    throw DataError("unknown importance source: " + spec +
                    " (expected sobel, grad, external:<path>, mask)");
}

std::string importance_source_label(const ImportanceSource& src) {
    struct Visitor {
        std::string operator()(const SobelSource&) const { return "sobel"; }
        std::string operator()(const GradientL1Source&) const { return "grad"; }
        std::string operator()(const ExternalSource& e) const { return "external:" + e.path; }
        std::string operator()(const GroundTruthMaskSource&) const { return "mask"; }
    };
    return std::visit(Visitor{}, src);
}

bool is_derived_source(const ImportanceSource& src) {
    return std::holds_alternative<SobelSource>(src) || std::holds_alternative<GradientL1Source>(src);
}

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

void rescale_to_unit_max(GrayMap& map) {
    double mx = 0.0;
    for (double v : map.values) mx = std::max(mx, v);
    if (mx <= 0.0) return;
    for (double& v : map.values) v /= mx;
}

}  // namespace

GrayMap sobel_map(const RasterImage& img) {
    const GrayMap gray = to_grayscale(img);
    GrayMap out(img.width, img.height);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            auto px = [&](int dr, int dc) {
                return gray.at(clampi(r + dr, 0, img.height - 1), clampi(c + dc, 0, img.width - 1));
            };
            // Paired differences so constant regions cancel exactly.
            const double gx = (px(-1, 1) - px(-1, -1)) + 2 * (px(0, 1) - px(0, -1)) + (px(1, 1) - px(1, -1));
            const double gy = (px(1, -1) - px(-1, -1)) + 2 * (px(1, 0) - px(-1, 0)) + (px(1, 1) - px(-1, 1));
            out.at(r, c) = std::sqrt(gx * gx + gy * gy);
        }
    }
    rescale_to_unit_max(out);
    return out;
}

GrayMap gradient_l1_map(const RasterImage& img) {
    const GrayMap gray = to_grayscale(img);
    const int w = img.width, h = img.height;
    GrayMap out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double dx = 0.0, dy = 0.0;
            if (w > 1) {
                if (c == 0)
                    dx = gray.at(r, 1) - gray.at(r, 0);
                else if (c == w - 1)
                    dx = gray.at(r, w - 1) - gray.at(r, w - 2);
                else
                    dx = (gray.at(r, c + 1) - gray.at(r, c - 1)) / 2.0;
            }
            if (h > 1) {
                if (r == 0)
                    dy = gray.at(1, c) - gray.at(0, c);
                else if (r == h - 1)
                    dy = gray.at(h - 1, c) - gray.at(h - 2, c);
                else
                    dy = (gray.at(r + 1, c) - gray.at(r - 1, c)) / 2.0;
            }
            out.at(r, c) = std::abs(dx) + std::abs(dy);
        }
    }
    rescale_to_unit_max(out);
    return out;
}

GrayMap importance_for(const RasterImage& img, const BinaryMask* mask, const ImportanceSource& src) {
    if (std::holds_alternative<SobelSource>(src)) return sobel_map(img);
    if (std::holds_alternative<GradientL1Source>(src)) return gradient_l1_map(img);
    if (const auto* ext = std::get_if<ExternalSource>(&src)) {
        GrayMap map = load_gray(ext->path);
        if (map.width != img.width || map.height != img.height)
            throw DataError("external map " + ext->path + " has wrong dimensions");
        return map;
    }
    if (mask == nullptr) throw DataError("ground-truth importance source requires a mask");
    if (mask->width != img.width || mask->height != img.height)
        throw DataError("mask dimensions do not match image");
    GrayMap map(img.width, img.height);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) map.at(r, c) = mask->at(r, c) ? 1.0 : 0.0;
    return map;
}

}  // namespace carver

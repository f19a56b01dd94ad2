#include "carver/raster.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace carver {

size_t BinaryMask::salient_count() const {
    return static_cast<size_t>(std::count(salient.begin(), salient.end(), std::uint8_t{1}));
}

GrayMap to_grayscale(const RasterImage& img) {
    GrayMap out(img.width, img.height);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            const double y = 0.299 * img.at(r, c, 0) + 0.587 * img.at(r, c, 1) + 0.114 * img.at(r, c, 2);
            out.at(r, c) = y / 255.0;
        }
    }
    return out;
}

RasterImage transpose(const RasterImage& img) {
    RasterImage out(img.height, img.width);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
            for (int ch = 0; ch < 3; ++ch) out.at(c, r, ch) = img.at(r, c, ch);
    return out;
}

BinaryMask transpose(const BinaryMask& mask) {
    BinaryMask out(mask.height, mask.width);
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c) out.set(c, r, mask.at(r, c));
    return out;
}

GrayMap transpose(const GrayMap& map) {
    GrayMap out(map.height, map.width);
    for (int r = 0; r < map.height; ++r)
        for (int c = 0; c < map.width; ++c) out.at(c, r) = map.at(r, c);
    return out;
}

namespace {

cv::Mat read_or_throw(const std::string& path, int flags) {
    if (!std::filesystem::exists(path)) throw IoError("file not found: " + path);
    cv::Mat m = cv::imread(path, flags);
    if (m.empty()) throw IoError("cannot decode image: " + path);
    if (m.rows < 1 || m.cols < 1) throw DataError("zero-sized image: " + path);
    return m;
}

}  // namespace

RasterImage load_image(const std::string& path) {
    cv::Mat bgr = read_or_throw(path, cv::IMREAD_COLOR);
    RasterImage img(bgr.cols, bgr.rows);
    for (int r = 0; r < bgr.rows; ++r) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(r);
        for (int c = 0; c < bgr.cols; ++c) {
            img.at(r, c, 0) = row[c][2];
            img.at(r, c, 1) = row[c][1];
            img.at(r, c, 2) = row[c][0];
        }
    }
    return img;
}

BinaryMask load_mask(const std::string& path, int threshold) {
    cv::Mat g = read_or_throw(path, cv::IMREAD_GRAYSCALE);
    BinaryMask mask(g.cols, g.rows);
    for (int r = 0; r < g.rows; ++r) {
        const std::uint8_t* row = g.ptr<std::uint8_t>(r);
        for (int c = 0; c < g.cols; ++c) mask.set(r, c, row[c] > threshold);
    }
    return mask;
}

GrayMap load_gray(const std::string& path) {
    cv::Mat g = read_or_throw(path, cv::IMREAD_GRAYSCALE);
    GrayMap map(g.cols, g.rows);
    for (int r = 0; r < g.rows; ++r) {
        const std::uint8_t* row = g.ptr<std::uint8_t>(r);
        for (int c = 0; c < g.cols; ++c) map.at(r, c) = row[c] / 255.0;
    }
    return map;
}

void save_image(const RasterImage& img, const std::string& path) {
    if (std::filesystem::path(path).extension() != ".png")
        throw IoError("only PNG output is supported: " + path);
    cv::Mat bgr(img.height, img.width, CV_8UC3);
    for (int r = 0; r < img.height; ++r) {
        cv::Vec3b* row = bgr.ptr<cv::Vec3b>(r);
        for (int c = 0; c < img.width; ++c) {
            row[c][2] = img.at(r, c, 0);
            row[c][1] = img.at(r, c, 1);
            row[c][0] = img.at(r, c, 2);
        }
    }
    if (!cv::imwrite(path, bgr)) throw IoError("cannot write image: " + path);
}

void save_mask(const BinaryMask& mask, const std::string& path) {
    if (std::filesystem::path(path).extension() != ".png")
        throw IoError("only PNG output is supported: " + path);
    cv::Mat g(mask.height, mask.width, CV_8UC1);
    for (int r = 0; r < mask.height; ++r) {
        std::uint8_t* row = g.ptr<std::uint8_t>(r);
        for (int c = 0; c < mask.width; ++c) row[c] = mask.at(r, c) ? 255 : 0;
    }
    if (!cv::imwrite(path, g)) throw IoError("cannot write mask: " + path);
}

}  // namespace carver

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace carver {

// Errors are split by class so the CLI can map them to distinct exit codes.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 8-bit RGB image, row-major, interleaved channels.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // width*height*3

    RasterImage() = default;
    RasterImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {
        if (w < 1 || h < 1) throw DataError("image dimensions must be >= 1");
    }

    std::uint8_t& at(int row, int col, int ch) {
        return data[(static_cast<size_t>(row) * width + col) * 3 + ch];
    }
    std::uint8_t at(int row, int col, int ch) const {
        return data[(static_cast<size_t>(row) * width + col) * 3 + ch];
    }

    bool operator==(const RasterImage&) const = default;
};

// Real-valued map in [0,1], same grid as the image it describes.
struct GrayMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // width*height

    GrayMap() = default;
    GrayMap(int w, int h) : width(w), height(h), values(static_cast<size_t>(w) * h, 0.0) {
        if (w < 1 || h < 1) throw DataError("map dimensions must be >= 1");
    }

    double& at(int row, int col) { return values[static_cast<size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<size_t>(row) * width + col]; }
};

// Pixel-accurate salient-region ground truth.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> salient;  // 0/1, vector<bool> is painful to index

    BinaryMask() = default;
    BinaryMask(int w, int h) : width(w), height(h), salient(static_cast<size_t>(w) * h, 0) {
        if (w < 1 || h < 1) throw DataError("mask dimensions must be >= 1");
    }

    bool at(int row, int col) const { return salient[static_cast<size_t>(row) * width + col] != 0; }
    void set(int row, int col, bool v) { salient[static_cast<size_t>(row) * width + col] = v ? 1 : 0; }

    size_t salient_count() const;

    bool operator==(const BinaryMask&) const = default;
};

// BT.601 luma, scaled to [0,1].
GrayMap to_grayscale(const RasterImage& img);

RasterImage transpose(const RasterImage& img);
BinaryMask transpose(const BinaryMask& mask);
GrayMap transpose(const GrayMap& map);

// File I/O. PNG and JPEG are readable; saving is PNG only.
RasterImage load_image(const std::string& path);
BinaryMask load_mask(const std::string& path, int threshold = 127);
GrayMap load_gray(const std::string& path);
void save_image(const RasterImage& img, const std::string& path);
void save_mask(const BinaryMask& mask, const std::string& path);

}  // namespace carver

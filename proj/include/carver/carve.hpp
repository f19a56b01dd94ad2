#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carver/importance.hpp"
#include "carver/raster.hpp"

namespace carver {

// Vertical 8-connected top-to-bottom path, one column index per row.
using Seam = std::vector<int>;

// Throws DataError if the seam breaks one-per-row, |dy| <= 1 or bounds.
void validate_seam(const Seam& seam, int width, int height);

enum class CarveOrientation { Vertical, Transposed };

struct CarveResult {
    RasterImage image;
    std::optional<BinaryMask> mask;
    // Each seam in the coordinate frame of the image at the moment of its removal.
    std::vector<Seam> seams;
    CarveOrientation orientation = CarveOrientation::Vertical;
};

struct CarveOptions {
    // Force derived sources (sobel/grad) to be computed once and carved in
    // lockstep instead of being recomputed after every removal.
    bool static_map = false;
};

// Minimum-cost seam by DP: M(i,j) = S(i,j) + min of the three upper neighbors,
// out-of-range treated as +inf. Ties broken toward the smaller column index,
// both in backtracking and in the final-row argmin.
Seam optimal_vertical_seam(const GrayMap& importance);

RasterImage remove_seam(const RasterImage& img, const Seam& seam);
BinaryMask remove_seam_mask(const BinaryMask& mask, const Seam& seam);
GrayMap remove_seam_map(const GrayMap& map, const Seam& seam);

CarveResult carve_to_width(const RasterImage& img, const BinaryMask* mask, const ImportanceSource& src,
                           int target_width, const CarveOptions& opts = {});

// Landscape: carve width down to height. Portrait: transpose, carve, transpose
// back. Square: identity. Output side is min(width, height).
CarveResult make_it_square(const RasterImage& img, const BinaryMask* mask, const ImportanceSource& src,
                           const CarveOptions& opts = {});

// One line per removal, comma-separated column indices.
void write_seam_trace(const std::vector<Seam>& seams, const std::string& path);
std::vector<Seam> read_seam_trace(const std::string& path);

}  // namespace carver

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "carver/raster.hpp"

namespace carver {

// Where the importance map S comes from. Derived sources (Sobel, GradientL1)
// are recomputed from the current image after every seam removal; External
// and GroundTruthMask maps are carved in lockstep with the image instead.
struct SobelSource {};
struct GradientL1Source {};
struct ExternalSource {
    std::string path;
};
struct GroundTruthMaskSource {};

using ImportanceSource = std::variant<SobelSource, GradientL1Source, ExternalSource, GroundTruthMaskSource>;

// CLI spellings: sobel | grad | external:<path> | mask
ImportanceSource parse_importance_source(const std::string& spec);
std::string importance_source_label(const ImportanceSource& src);

bool is_derived_source(const ImportanceSource& src);

// Gradient magnitude of the 3x3 Sobel kernels on the grayscale image,
// clamp-to-border, rescaled so the max maps to 1 (all-zero map stays zero).
GrayMap sobel_map(const RasterImage& img);

// |dx| + |dy| via central differences (one-sided at borders), rescaled as above.
GrayMap gradient_l1_map(const RasterImage& img);

GrayMap importance_for(const RasterImage& img, const BinaryMask* mask, const ImportanceSource& src);

}  // namespace carver

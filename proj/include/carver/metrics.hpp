#pragma once

#include <array>
#include <vector>

#include "carver/raster.hpp"

namespace carver {

// Mask has too few boundary pixels to form a shape (object fully carved away,
// single-pixel blobs, empty mask). Such rows are excluded from aggregates.
struct ShapeDegenerateError : DataError {
    using DataError::DataError;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Normalized silhouette sample: centroid at origin, mean distance to centroid 1.
struct PointSet {
    std::vector<Point2> points;
};

inline constexpr int kAngularBins = 12;
inline constexpr int kRadialBins = 5;
inline constexpr int kShapeContextBins = kAngularBins * kRadialBins;
// Radial range as multiples of the mean pairwise distance (Belongie et al.).
inline constexpr double kInnerRadiusFactor = 0.125;
inline constexpr double kOuterRadiusFactor = 2.0;

// One log-polar histogram per point; each sums to N-1.
struct ShapeDescriptor {
    std::vector<std::array<double, kShapeContextBins>> histograms;
};

struct Correspondence {
    std::vector<int> permutation;  // point i of A matches permutation[i] of B
    double cost = 0.0;
};

// salient_count(carved) / salient_count(original). Throws DataError on an
// empty ground truth.
double area_ratio(const BinaryMask& gt, const BinaryMask& carved_gt);

// Moore boundary tracing (8-connectivity) of every connected component, in
// scan order; sequences concatenated. Raw pixel coordinates (x=col, y=row).
std::vector<Point2> trace_boundary(const BinaryMask& mask);

// Uniform index-stride subsample to exactly n points, then normalize.
PointSet sample_and_normalize(const std::vector<Point2>& boundary, int n);

PointSet extract_shape_points(const BinaryMask& mask, int n = 100);

ShapeDescriptor shape_context(const PointSet& ps);

// Chi-square histogram cost, minimum-cost perfect matching (Hungarian).
Correspondence match_shapes(const ShapeDescriptor& a, const ShapeDescriptor& b);

// Mean of squared distances between matched points, in the normalized frame.
double ssd(const PointSet& a, const PointSet& b, const Correspondence& corr);

// extract -> shape_context x2 -> match -> ssd. If either boundary is shorter
// than n, both sides are sampled at the smaller length.
double mssd_pair(const BinaryMask& gt, const BinaryMask& carved_gt, int n = 100);

// Solves min-cost assignment on a square matrix; returns column of each row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

double pearson_cc(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace carver

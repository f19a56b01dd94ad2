#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "carver/carve.hpp"
#include "carver/metrics.hpp"
#include "oracles.hpp"

using namespace carver;

namespace {

// Test-local chi-square cost, independent of match_shapes' internals.
double chi2_cost(const std::array<double, kShapeContextBins>& a,
                 const std::array<double, kShapeContextBins>& b) {
    double c = 0.0;
    for (int k = 0; k < kShapeContextBins; ++k)
        if (a[k] + b[k] > 0.0) c += 0.5 * (a[k] - b[k]) * (a[k] - b[k]) / (a[k] + b[k]);
    return c;
}

BinaryMask full_mask(int w, int h) {
    BinaryMask m(w, h);
    for (auto& v : m.salient) v = 1;
    return m;
}

}  // namespace

TEST_CASE("area_ratio endpoints and counting") {
    BinaryMask gt(10, 6);
    for (int r = 1; r <= 4; ++r)
        for (int c = 0; c < 10; ++c) gt.set(r, c, true);  // 40 salient pixels
    CHECK(area_ratio(gt, gt) == 1.0);

    // One straight seam at column 0 crosses the 4 salient pixels of rows 1-4.
    const BinaryMask carved = remove_seam_mask(gt, Seam{0, 0, 0, 0, 0, 0});
    CHECK(area_ratio(gt, carved) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("area_ratio error cases") {
    BinaryMask empty(4, 4);
    CHECK_THROWS_AS(area_ratio(empty, empty), DataError);

    BinaryMask gt(4, 4);
    gt.set(1, 1, true);
    BinaryMask gone(4, 4);
    CHECK(area_ratio(gt, gone) == 0.0);
}

TEST_CASE("boundary tracing of a filled rectangle") {
    BinaryMask mask(10, 8);
    for (int r = 2; r <= 5; ++r)
        for (int c = 3; c <= 7; ++c) mask.set(r, c, true);
    const auto boundary = trace_boundary(mask);
    // Perimeter of a 4x5 block: 2*(4+5) - 4 = 14 boundary pixels.
    CHECK(boundary.size() == 14);
    for (const Point2& p : boundary) {
        const bool on_edge = p.x == 3 || p.x == 7 || p.y == 2 || p.y == 5;
        CHECK(on_edge);
    }
}

TEST_CASE("boundary tracing covers every connected component") {
    BinaryMask mask(12, 6);
    mask.set(1, 1, true);  // isolated pixel
    for (int r = 2; r <= 4; ++r)
        for (int c = 6; c <= 9; ++c) mask.set(r, c, true);
    const auto boundary = trace_boundary(mask);
    bool saw_isolated = false, saw_block = false;
    for (const Point2& p : boundary) {
        if (p.x == 1 && p.y == 1) saw_isolated = true;
        if (p.x >= 6) saw_block = true;
    }
    CHECK(saw_isolated);
    CHECK(saw_block);
}

TEST_CASE("extract_shape_points normalization and determinism") {
    const BinaryMask mask = full_mask(9, 7);
    const PointSet ps = extract_shape_points(mask, 20);
    CHECK(ps.points.size() == 20);

    double cx = 0.0, cy = 0.0, md = 0.0;
    for (const Point2& p : ps.points) {
        cx += p.x;
        cy += p.y;
    }
    CHECK(std::abs(cx / 20) < 1e-12);
    CHECK(std::abs(cy / 20) < 1e-12);
    for (const Point2& p : ps.points) md += std::hypot(p.x, p.y);
    CHECK(md / 20 == doctest::Approx(1.0).epsilon(1e-12));

    const PointSet again = extract_shape_points(mask, 20);
    for (size_t i = 0; i < ps.points.size(); ++i) {
        CHECK(ps.points[i].x == again.points[i].x);
        CHECK(ps.points[i].y == again.points[i].y);
    }
}

TEST_CASE("degenerate masks are rejected") {
    BinaryMask one(5, 5);
    one.set(2, 2, true);
    CHECK_THROWS_AS(extract_shape_points(one), ShapeDegenerateError);
    BinaryMask empty(5, 5);
    CHECK_THROWS_AS(extract_shape_points(empty), ShapeDegenerateError);
}

TEST_CASE("shape context histogram sums to N-1") {
    std::mt19937 rng(31);
    for (int t = 0; t < 10; ++t) {
        const BinaryMask mask = oracles::random_blob_mask(rng, 12, 10);
        PointSet ps;
        try {
            ps = extract_shape_points(mask, 30);
        } catch (const ShapeDegenerateError&) {
            continue;
        }
        const ShapeDescriptor desc = shape_context(ps);
        for (const auto& hist : desc.histograms) {
            double sum = 0.0;
            for (double v : hist) sum += v;
            CHECK(sum == doctest::Approx(ps.points.size() - 1).epsilon(1e-12));
        }
    }
}

TEST_CASE("rotation by 90 degrees shifts angular bins by 3") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    PointSet ps;
    for (int i = 0; i < 15; ++i) ps.points.push_back({coord(rng), coord(rng)});
    PointSet rot;
    for (const Point2& p : ps.points) rot.points.push_back({-p.y, p.x});

    const ShapeDescriptor a = shape_context(ps);
    const ShapeDescriptor b = shape_context(rot);
    for (size_t i = 0; i < ps.points.size(); ++i)
        for (int r = 0; r < kRadialBins; ++r)
            for (int ang = 0; ang < kAngularBins; ++ang)
                CHECK(a.histograms[i][r * kAngularBins + ang] ==
                      b.histograms[i][r * kAngularBins + (ang + 3) % kAngularBins]);
}

TEST_CASE("matching identical descriptors is the identity with zero cost") {
    std::mt19937 rng(33);
    const BinaryMask mask = oracles::random_blob_mask(rng, 14, 11);
    const ShapeDescriptor desc = shape_context(extract_shape_points(mask, 25));
    const Correspondence corr = match_shapes(desc, desc);
    CHECK(corr.cost == doctest::Approx(0.0).epsilon(1e-12));
    for (size_t i = 0; i < corr.permutation.size(); ++i) CHECK(corr.permutation[i] == static_cast<int>(i));
}

TEST_CASE("assignment equals factorial brute force for small sizes") {
    std::mt19937 rng(34);
    std::uniform_real_distribution<double> val(0.0, 10.0);
    std::uniform_int_distribution<int> size(2, 7);
    for (int t = 0; t < 50; ++t) {
        const int n = size(rng);
        ShapeDescriptor a, b;
        a.histograms.assign(n, {});
        b.histograms.assign(n, {});
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < kShapeContextBins; ++k) {
                a.histograms[i][k] = val(rng);
                b.histograms[i][k] = val(rng);
            }
        std::vector<std::vector<double>> cost(n, std::vector<double>(n));
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) cost[p][q] = chi2_cost(a.histograms[p], b.histograms[q]);

        const Correspondence corr = match_shapes(a, b);
        CHECK(corr.cost == doctest::Approx(oracles::brute_force_assignment_cost(cost)).epsilon(1e-12));
        // Permutation must be a bijection and its cost must match the reported total.
        std::vector<char> seen(n, 0);
        double replay = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(!seen[corr.permutation[i]]);
            seen[corr.permutation[i]] = 1;
            replay += cost[i][corr.permutation[i]];
        }
        CHECK(replay == doctest::Approx(corr.cost).epsilon(1e-12));
    }
}

TEST_CASE("matching cost never exceeds the identity permutation") {
    std::mt19937 rng(35);
    for (int t = 0; t < 10; ++t) {
        const BinaryMask m1 = oracles::random_blob_mask(rng, 13, 9);
        const BinaryMask m2 = oracles::random_blob_mask(rng, 13, 9);
        ShapeDescriptor a, b;
        try {
            a = shape_context(extract_shape_points(m1, 15));
            b = shape_context(extract_shape_points(m2, 15));
        } catch (const ShapeDegenerateError&) {
            continue;
        }
        if (a.histograms.size() != b.histograms.size()) continue;
        const Correspondence corr = match_shapes(a, b);
        double identity_cost = 0.0;
        for (size_t i = 0; i < a.histograms.size(); ++i)
            identity_cost += chi2_cost(a.histograms[i], b.histograms[i]);
        CHECK(corr.cost <= identity_cost + 1e-12);
    }
}

TEST_CASE("ssd on matched squares") {
    // Unit square vs the same square stretched 2x horizontally, both normalized.
    auto normalize = [](std::vector<Point2> pts) {
        double cx = 0.0, cy = 0.0;
        for (auto& p : pts) {
            cx += p.x;
            cy += p.y;
        }
        cx /= pts.size();
        cy /= pts.size();
        double md = 0.0;
        for (auto& p : pts) {
            p.x -= cx;
            p.y -= cy;
            md += std::hypot(p.x, p.y);
        }
        md /= pts.size();
        for (auto& p : pts) {
            p.x /= md;
            p.y /= md;
        }
        return PointSet{pts};
    };
    const PointSet square = normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const PointSet wide = normalize({{0, 0}, {2, 0}, {2, 1}, {0, 1}});

    Correspondence identity;
    identity.permutation = {0, 1, 2, 3};
    CHECK(ssd(square, square, identity) == doctest::Approx(0.0).epsilon(1e-12));

    // Hand-computed: square corners at (+-1/sqrt2), wide corners scale x by
    // 2/sqrt(5/2)... both lie on normalized frames; evaluate directly.
    double expected = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double dx = square.points[i].x - wide.points[i].x;
        const double dy = square.points[i].y - wide.points[i].y;
        expected += dx * dx + dy * dy;
    }
    expected /= 4.0;
    CHECK(expected > 0.0);
    CHECK(ssd(square, wide, identity) == doctest::Approx(expected).epsilon(1e-12));

    // Translation before normalization changes nothing.
    const PointSet shifted = normalize({{5, 7}, {6, 7}, {6, 8}, {5, 8}});
    CHECK(ssd(square, shifted, identity) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mssd_pair identity and degenerate cases") {
    std::mt19937 rng(36);
    for (int t = 0; t < 10; ++t) {
        BinaryMask mask = oracles::random_blob_mask(rng, 16, 12);
        try {
            CHECK(mssd_pair(mask, mask) == doctest::Approx(0.0).epsilon(1e-12));
        } catch (const ShapeDegenerateError&) {
        }
    }
    BinaryMask gt(12, 12);
    for (int r = 3; r <= 8; ++r)
        for (int c = 3; c <= 8; ++c) gt.set(r, c, true);
    BinaryMask gone(8, 12);
    CHECK_THROWS_AS(mssd_pair(gt, gone), ShapeDegenerateError);
}

TEST_CASE("mssd_pair is small but positive after narrowing the object") {
    BinaryMask gt(12, 12);
    for (int r = 3; r <= 8; ++r)
        for (int c = 3; c <= 8; ++c) gt.set(r, c, true);
    // Remove one column through the object.
    Seam seam(12, 5);
    const BinaryMask carved = remove_seam_mask(gt, seam);
    const double v = mssd_pair(gt, carved);
    CHECK(v > 0.0);
    CHECK(v < 0.5);
}

TEST_CASE("pearson basics and the published MAR column") {
    const std::vector<double> x{1.0, 2.0, 3.5, 4.0};
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    CHECK(pearson_cc(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson_cc(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));

    const std::vector<double> ratings{1.3, 1.9, 3.5, 3.2, 5.4, 5.7};
    const std::vector<double> mar{0.8976, 0.9132, 0.9581, 0.9638, 0.9840, 0.9877};
    CHECK(pearson_cc(ratings, mar) == doctest::Approx(0.955).epsilon(0.005));
}

TEST_CASE("pearson affine invariance and errors") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::vector<double> x(8), y(8);
    for (int i = 0; i < 8; ++i) {
        x[i] = val(rng);
        y[i] = val(rng);
    }
    std::vector<double> ax;
    for (double v : x) ax.push_back(2.5 * v + 1.0);
    CHECK(pearson_cc(ax, y) == doctest::Approx(pearson_cc(x, y)).epsilon(1e-12));
    std::vector<double> nx;
    for (double v : x) nx.push_back(-0.5 * v + 2.0);
    CHECK(pearson_cc(nx, y) == doctest::Approx(-pearson_cc(x, y)).epsilon(1e-12));

    CHECK_THROWS_AS(pearson_cc({1.0, 2.0}, {1.0}), DataError);
    CHECK_THROWS_AS(pearson_cc({1.0}, {1.0}), DataError);
    CHECK_THROWS_AS(pearson_cc({1.0, 1.0}, {1.0, 2.0}), DataError);
}

TEST_CASE("shape contexts are invariant to mask translation") {
    BinaryMask small(20, 20);
    for (int r = 4; r <= 7; ++r)
        for (int c = 5; c <= 10; ++c) small.set(r, c, true);
    BinaryMask shifted(20, 20);
    for (int r = 10; r <= 13; ++r)
        for (int c = 8; c <= 13; ++c) shifted.set(r, c, true);

    const int n = 14;  // both boundaries have 16 pixels
    const ShapeDescriptor a = shape_context(extract_shape_points(small, n));
    const ShapeDescriptor b = shape_context(extract_shape_points(shifted, n));
    for (size_t i = 0; i < a.histograms.size(); ++i)
        for (int k = 0; k < kShapeContextBins; ++k)
            CHECK(a.histograms[i][k] == b.histograms[i][k]);
}

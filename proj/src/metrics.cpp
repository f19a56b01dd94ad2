#include "carver/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace carver {

double area_ratio(const BinaryMask& gt, const BinaryMask& carved_gt) {
    const size_t total = gt.salient_count();
    if (total == 0) throw DataError("area ratio undefined: ground truth has no salient pixels");
    return static_cast<double>(carved_gt.salient_count()) / static_cast<double>(total);
}

namespace {

// Clockwise Moore neighborhood, starting west. (row, col) deltas.
constexpr int kDr[8] = {0, -1, -1, -1, 0, 1, 1, 1};
constexpr int kDc[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

int direction_of(int dr, int dc) {
    for (int d = 0; d < 8; ++d)
        if (kDr[d] == dr && kDc[d] == dc) return d;
    throw DataError("backtrack pixel not adjacent");
}

// Moore tracing of one component with Jacob's stopping criterion.
void trace_component(const std::vector<int>& labels, int width, int height, int label, int start_r,
                     int start_c, std::vector<Point2>& out) {
    auto at = [&](int r, int c) {
        return r >= 0 && r < height && c >= 0 && c < width && labels[static_cast<size_t>(r) * width + c] == label;
    };

    out.push_back({static_cast<double>(start_c), static_cast<double>(start_r)});

    int cr = start_r, cc = start_c;
    int br = start_r, bc = start_c - 1;  // start is topmost-leftmost, so west is background
    int first_exit = -1;                 // direction of the first move out of start
    const size_t guard = static_cast<size_t>(width) * height * 8 + 16;

    for (size_t steps = 0; steps < guard; ++steps) {
        const int dir = direction_of(br - cr, bc - cc);
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int d = (dir + k) % 8;
            if (at(cr + kDr[d], cc + kDc[d])) {
                found = d;
                break;
            }
            br = cr + kDr[d];  // last background cell scanned
            bc = cc + kDc[d];
        }
        if (found < 0) return;  // isolated pixel
        if (cr == start_r && cc == start_c) {
            // Jacob's criterion: leaving the start the same way twice means the
            // outer boundary is complete.
            if (first_exit == -1)
                first_exit = found;
            else if (found == first_exit)
                return;
        }
        cr += kDr[found];
        cc += kDc[found];
        if (cr != start_r || cc != start_c) out.push_back({static_cast<double>(cc), static_cast<double>(cr)});
    }
    throw DataError("boundary tracing did not terminate");
}

}  // namespace

std::vector<Point2> trace_boundary(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<int> labels(static_cast<size_t>(w) * h, 0);
    std::vector<Point2> boundary;
    int next_label = 0;

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask.at(r, c) || labels[static_cast<size_t>(r) * w + c] != 0) continue;
            const int label = ++next_label;
            std::deque<std::pair<int, int>> queue{{r, c}};
            labels[static_cast<size_t>(r) * w + c] = label;
            while (!queue.empty()) {
                auto [qr, qc] = queue.front();
                queue.pop_front();
                for (int d = 0; d < 8; ++d) {
                    const int nr = qr + kDr[d], nc = qc + kDc[d];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    if (!mask.at(nr, nc) || labels[static_cast<size_t>(nr) * w + nc] != 0) continue;
                    labels[static_cast<size_t>(nr) * w + nc] = label;
                    queue.emplace_back(nr, nc);
                }
            }
            trace_component(labels, w, h, label, r, c, boundary);
        }
    }
    return boundary;
}

PointSet sample_and_normalize(const std::vector<Point2>& boundary, int n) {
    if (boundary.size() < 3) throw ShapeDegenerateError("fewer than 3 boundary pixels");
    const int len = static_cast<int>(boundary.size());
    const int count = std::min(n, len);
    if (count < 3) throw ShapeDegenerateError("fewer than 3 sample points requested");

    PointSet ps;
    ps.points.reserve(count);
    for (int i = 0; i < count; ++i) ps.points.push_back(boundary[static_cast<size_t>(i) * len / count]);

    double cx = 0.0, cy = 0.0;
    for (const Point2& p : ps.points) {
        cx += p.x;
        cy += p.y;
    }
    cx /= count;
    cy /= count;

    double mean_dist = 0.0;
    for (Point2& p : ps.points) {
        p.x -= cx;
        p.y -= cy;
        mean_dist += std::hypot(p.x, p.y);
    }
    mean_dist /= count;
    if (mean_dist <= 0.0) throw ShapeDegenerateError("all sample points coincide");
    for (Point2& p : ps.points) {
        p.x /= mean_dist;
        p.y /= mean_dist;
    }
    return ps;
}

PointSet extract_shape_points(const BinaryMask& mask, int n) {
    return sample_and_normalize(trace_boundary(mask), n);
}

ShapeDescriptor shape_context(const PointSet& ps) {
    const int n = static_cast<int>(ps.points.size());
    double mean_pair_dist = 0.0;
    int pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            mean_pair_dist += std::hypot(ps.points[i].x - ps.points[j].x, ps.points[i].y - ps.points[j].y);
            ++pairs;
        }
    mean_pair_dist = pairs ? mean_pair_dist / pairs : 1.0;
    if (mean_pair_dist <= 0.0) mean_pair_dist = 1.0;

    const double r_inner = kInnerRadiusFactor * mean_pair_dist;
    const double r_outer = kOuterRadiusFactor * mean_pair_dist;
    const double log_ratio = std::log(r_outer / r_inner);

    ShapeDescriptor desc;
    desc.histograms.assign(n, {});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = ps.points[j].x - ps.points[i].x;
            const double dy = ps.points[j].y - ps.points[i].y;
            const double d = std::hypot(dx, dy);

            int rbin;
            if (d <= r_inner)
                rbin = 0;
            else if (d >= r_outer)
                rbin = kRadialBins - 1;
            else
                rbin = std::min(kRadialBins - 1,
                                static_cast<int>(std::log(d / r_inner) / log_ratio * kRadialBins));

            double theta = std::atan2(dy, dx);
            if (theta < 0.0) theta += 2.0 * std::numbers::pi;
            int abin = static_cast<int>(theta / (2.0 * std::numbers::pi) * kAngularBins);
            abin = std::clamp(abin, 0, kAngularBins - 1);

            desc.histograms[i][rbin * kAngularBins + abin] += 1.0;
        }
    }
    return desc;
}

std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Hungarian algorithm with row/column potentials, O(n^3).
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

Correspondence match_shapes(const ShapeDescriptor& a, const ShapeDescriptor& b) {
    if (a.histograms.size() != b.histograms.size()) throw DataError("descriptors have unequal point counts");
    const int n = static_cast<int>(a.histograms.size());

    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            double chi2 = 0.0;
            for (int k = 0; k < kShapeContextBins; ++k) {
                const double hp = a.histograms[p][k], hq = b.histograms[q][k];
                const double denom = hp + hq;
                if (denom > 0.0) chi2 += (hp - hq) * (hp - hq) / denom;
            }
            cost[p][q] = 0.5 * chi2;
        }
    }

    Correspondence corr;
    corr.permutation = solve_assignment(cost);
    for (int p = 0; p < n; ++p) corr.cost += cost[p][corr.permutation[p]];
    return corr;
}

double ssd(const PointSet& a, const PointSet& b, const Correspondence& corr) {
    const size_t n = a.points.size();
    if (n != b.points.size() || n != corr.permutation.size()) throw DataError("point set size mismatch");
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Point2& pa = a.points[i];
        const Point2& pb = b.points[corr.permutation[i]];
        sum += (pa.x - pb.x) * (pa.x - pb.x) + (pa.y - pb.y) * (pa.y - pb.y);
    }
    return sum / static_cast<double>(n);
}

double mssd_pair(const BinaryMask& gt, const BinaryMask& carved_gt, int n) {
    const std::vector<Point2> ba = trace_boundary(gt);
    const std::vector<Point2> bb = trace_boundary(carved_gt);
    if (ba.size() < 3 || bb.size() < 3) throw ShapeDegenerateError("boundary has fewer than 3 pixels");
    const int count = static_cast<int>(std::min({static_cast<size_t>(n), ba.size(), bb.size()}));
    const PointSet pa = sample_and_normalize(ba, count);
    const PointSet pb = sample_and_normalize(bb, count);
    const Correspondence corr = match_shapes(shape_context(pa), shape_context(pb));
    return ssd(pa, pb, corr);
}

double pearson_cc(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("pearson_cc: length mismatch");
    if (x.size() < 2) throw DataError("pearson_cc: need at least 2 samples");
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("pearson_cc: constant input");
    return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

}  // namespace carver

#pragma once

// Optimal radius for the line-constrained problem. The optimum always makes
// two interval endpoints coincide or differ by exactly alpha or 2*alpha, so
// solving every endpoint-pair equation yields O(n^2) candidate radii; the
// least feasible one (feasibility is monotone in r) is found by binary
// search over the sorted candidates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rbcenter/feasibility.hpp"
#include "rbcenter/geometry.hpp"

namespace rbcenter {

// Internal invariant failure of a solver (a "cannot happen" branch was
// reached); distinct from invalid input.
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EndpointKind { lower, upper };

// One equation instance: (endpoint kind_i of point i)(r) minus
// (endpoint kind_k of point k)(r) equals `value`, where the lower/upper
// endpoints of point i are x_i -+ sqrt(r^2 - h_i^2).
struct PairSignature {
    std::size_t i = 0;
    std::size_t k = 0;
    EndpointKind kind_i = EndpointKind::lower;
    EndpointKind kind_k = EndpointKind::lower;
    double value = 0.0;
};

namespace optimizer_detail {

inline double axis_height(const Point& pt) {
    double h2 = 0.0;
    for (std::size_t j = 1; j < pt.dim(); ++j) h2 += pt[j] * pt[j];
    return std::sqrt(h2);
}

inline double endpoint_sign(EndpointKind kind) {
    return kind == EndpointKind::upper ? 1.0 : -1.0;
}

}  // namespace optimizer_detail

// Signed residual of the signature's equation at radius r. Zero (within
// noise) iff r solves it; radii below a point's height clamp that
// half-width to 0.
inline double signature_residual(const PairSignature& sig, const std::vector<Point>& points,
                                 double r) {
    const double hi = optimizer_detail::axis_height(points[sig.i]);
    const double hk = optimizer_detail::axis_height(points[sig.k]);
    const double wi = std::sqrt(std::max(0.0, r * r - hi * hi));
    const double wk = std::sqrt(std::max(0.0, r * r - hk * hk));
    return (points[sig.i][0] + optimizer_detail::endpoint_sign(sig.kind_i) * wi) -
           (points[sig.k][0] + optimizer_detail::endpoint_sign(sig.kind_k) * wk) - sig.value;
}

// A pair/kind combination whose endpoint difference is independent of r:
// equal heights, matching endpoint kinds, and first coordinates exactly
// alpha or 2*alpha apart (in this orientation; callers enumerate ordered
// pairs both ways). Such combinations yield no equation in r.
inline bool is_exceptional(const PairSignature& sig, const std::vector<Point>& points,
                           double alpha) {
    if (sig.kind_i != sig.kind_k) return false;
    const double hi = optimizer_detail::axis_height(points[sig.i]);
    const double hk = optimizer_detail::axis_height(points[sig.k]);
    if (std::abs(hi - hk) > tolerance()) return false;
    const double dx = points[sig.i][0] - points[sig.k][0];
    return std::abs(dx - alpha) <= tolerance() || std::abs(dx - 2.0 * alpha) <= tolerance();
}

// Solves the signature's equation for r >= max height of the two points.
// Isolate one radical, square, solve for the other half-width, then filter
// through re-substitution; roots are sharpened by bisection when the
// algebraic value carries rounding error.
inline std::optional<double> solve_signature(const PairSignature& sig,
                                             const std::vector<Point>& points) {
    const double hi = optimizer_detail::axis_height(points[sig.i]);
    const double hk = optimizer_detail::axis_height(points[sig.k]);
    const double si = optimizer_detail::endpoint_sign(sig.kind_i);
    const double sk = optimizer_detail::endpoint_sign(sig.kind_k);
    const double dx = points[sig.i][0] - points[sig.k][0] - sig.value;

    double root;
    if (std::abs(hi - hk) <= tolerance() && si == sk) {
        return std::nullopt;  // left side constant in r
    } else if (std::abs(dx) <= tolerance()) {
        // si*wi = sk*wk with different signs or different heights: only
        // wi = wk = 0 can work, and that needs equal heights.
        if (si == sk || std::abs(hi - hk) > tolerance()) return std::nullopt;
        root = std::max(hi, hk);
    } else {
        // si*wi = sk*wk - dx squared once: wi^2 = wk^2 - 2*dx*sk*wk + dx^2
        const double wk = (dx * dx + hi * hi - hk * hk) / (2.0 * dx * sk);
        if (wk < -tolerance()) return std::nullopt;
        const double wi = si * (sk * std::max(wk, 0.0) - dx);
        if (wi < -tolerance()) return std::nullopt;
        const double wkc = std::max(wk, 0.0);
        root = std::sqrt(wkc * wkc + hk * hk);
    }

    const double scale = std::max(1.0, std::abs(root));
    if (std::abs(signature_residual(sig, points, root)) > 1e-12 * scale) {
        // bracket a sign change around the algebraic root and bisect
        const double floor_r = std::max(hi, hk);
        double step = 1e-9 * scale;
        double lo = root, hi_r = root;
        bool bracketed = false;
        for (int attempt = 0; attempt < 30 && !bracketed; ++attempt) {
            lo = std::max(floor_r, root - step);
            hi_r = root + step;
            bracketed = signature_residual(sig, points, lo) *
                            signature_residual(sig, points, hi_r) <=
                        0.0;
            step *= 4.0;
        }
        if (bracketed) {
            for (int iter = 0; iter < 100; ++iter) {
                const double mid = lo + (hi_r - lo) / 2.0;
                if (mid <= lo || mid >= hi_r) break;
                if (signature_residual(sig, points, lo) *
                        signature_residual(sig, points, mid) <=
                    0.0)
                    hi_r = mid;
                else
                    lo = mid;
            }
            root = lo + (hi_r - lo) / 2.0;
        }
    }

    if (std::abs(signature_residual(sig, points, root)) > 1e-7) return std::nullopt;
    return root;
}

struct CandidateRadii {
    std::vector<double> values;
};

// All roots of the endpoint-pair equations with right sides 0, alpha and
// 2*alpha over ordered point pairs and endpoint kinds, skipping exceptional
// combinations, restricted to radii where every interval is nonempty,
// ascending and merged at tolerance (keeping each cluster's largest value,
// the safe side for monotone feasibility).
inline CandidateRadii candidate_radii(const std::vector<Point>& points, double alpha) {
    if (points.empty()) throw std::invalid_argument("candidate_radii: needs points");
    double max_h = 0.0;
    for (const Point& pt : points)
        max_h = std::max(max_h, optimizer_detail::axis_height(pt));

    std::vector<double> values{0.0, alpha, 2.0 * alpha};
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<double> roots;
    PairSignature sig;
    for (sig.i = 0; sig.i < points.size(); ++sig.i)
        for (sig.k = 0; sig.k < points.size(); ++sig.k)
            for (EndpointKind ki : {EndpointKind::lower, EndpointKind::upper})
                for (EndpointKind kk : {EndpointKind::lower, EndpointKind::upper})
                    for (double v : values) {
                        sig.kind_i = ki;
                        sig.kind_k = kk;
                        sig.value = v;
                        if (is_exceptional(sig, points, alpha)) continue;
                        const auto root = solve_signature(sig, points);
                        if (root && *root >= max_h - tolerance()) roots.push_back(*root);
                    }

    std::sort(roots.begin(), roots.end());
    CandidateRadii out;
    double group_start = 0.0;
    for (double v : roots) {
        if (out.values.empty() || v - group_start > tolerance()) {
            out.values.push_back(v);
            group_start = v;
        } else {
            out.values.back() = v;
        }
    }
    return out;
}

// Exact minimum radius for a line-constrained instance: transform the line
// to the x-axis, binary-search the candidate radii for the least feasible
// one, and return its witness (positions are x-axis coordinates; map them
// back through the instance's AxisTransform for original-frame points).
inline ConstrainedSolution solve_constrained(const Instance& instance) {
    if (!instance.line)
        throw std::invalid_argument("solve_constrained: instance has no constraint line");
    const Instance axis = to_x_axis(instance);
    const CandidateRadii cands = candidate_radii(axis.points, axis.alpha);
    if (cands.values.empty()) throw SolveError("solve_constrained: empty candidate set");
    if (!feasible_bool(axis, cands.values.back()))
        throw SolveError("solve_constrained: largest candidate radius infeasible");
    std::size_t lo = 0, hi = cands.values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible_bool(axis, cands.values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    auto witness = feasible(axis, cands.values[lo]);
    if (!witness) throw SolveError("solve_constrained: search landed on infeasible radius");
    return *witness;
}

}  // namespace rbcenter

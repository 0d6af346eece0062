#pragma once

// Feasibility of the line-constrained problem at a fixed radius r. Points
// become intervals on the x-axis, candidate center positions come from the
// interval endpoints shifted by 0 and +-alpha, and two interlocked boolean
// DPs decide whether p red and q blue centers drawn from those positions can
// hit every interval with all red-blue pairs >= alpha apart. Witness
// solutions are extracted by replaying the winning transitions.
//
// Instances are taken in the x-axis frame (the constraint line is the first
// coordinate axis); apply to_x_axis first for a general line.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rbcenter/geometry.hpp"

namespace rbcenter {

struct Interval {
    double a = 0.0;
    double b = 0.0;
    std::size_t point_index = 0;
};

// Intersection of the r-ball around `point` with the x-axis, or none when
// the ball misses it. A radius within tolerance below the point's height
// counts as touching (half-width 0): the optimum often sits exactly at a
// height and must not be rejected for a rounding ulp.
inline std::optional<Interval> point_interval(const Point& point, double r) {
    if (r < 0.0) throw std::invalid_argument("point_interval: r must be nonnegative");
    double h2 = 0.0;
    for (std::size_t j = 1; j < point.dim(); ++j) h2 += point[j] * point[j];
    const double h = std::sqrt(h2);
    if (r < h - tolerance()) return std::nullopt;
    const double w = std::sqrt(std::max(0.0, r * r - h2));
    return Interval{point[0] - w, point[0] + w, 0};
}

// All point intervals sorted by (a, b, point index), or none when some point
// is farther from the axis than r (the radius is infeasible outright).
inline std::optional<std::vector<Interval>> sorted_intervals(const std::vector<Point>& points,
                                                             double r) {
    std::vector<Interval> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto iv = point_interval(points[i], r);
        if (!iv) return std::nullopt;
        iv->point_index = i;
        out.push_back(*iv);
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.point_index < y.point_index;
    });
    return out;
}

// Least k > j with positions[k] >= positions[j] + alpha - tolerance, or
// positions.size() when none: the first slot a center of the other color
// may occupy to the right of position j.
inline std::size_t next_index(const std::vector<double>& positions, std::size_t j,
                              double alpha) {
    const auto it = std::lower_bound(positions.begin(), positions.end(),
                                     positions[j] + alpha - tolerance());
    return std::max(static_cast<std::size_t>(it - positions.begin()), j + 1);
}

struct CandidateCenters {
    std::vector<double> positions;
    std::vector<std::size_t> next_of;
};

// Interval endpoints shifted by 0 and +-alpha, ascending and deduplicated.
// The -alpha shifts and the unclamped range deliberately extend the minimal
// construction: a center that covers nothing may have to sit alpha to the
// LEFT of everything to respect separation, and such positions are safe to
// include (any placement found is verified feasible).
inline CandidateCenters candidate_centers(const std::vector<Interval>& intervals,
                                          double alpha) {
    if (intervals.empty())
        throw std::invalid_argument("candidate_centers: needs at least one interval");
    std::vector<double> raw;
    raw.reserve(intervals.size() * 6);
    for (const Interval& iv : intervals)
        for (double e : {iv.a, iv.b})
            for (double s : {0.0, alpha, -alpha}) raw.push_back(e + s);
    std::sort(raw.begin(), raw.end());
    CandidateCenters cands;
    for (double v : raw)
        if (cands.positions.empty() || v - cands.positions.back() > tolerance())
            cands.positions.push_back(v);
    cands.next_of.resize(cands.positions.size());
    for (std::size_t j = 0; j < cands.positions.size(); ++j)
        cands.next_of[j] = next_index(cands.positions, j, alpha);
    return cands;
}

struct Coverage {
    std::vector<std::size_t> hit;
    std::optional<std::size_t> first_unhit_alive;
    bool dead_exists = false;
};

// Classifies the interval suffix [suffix_start, n) against a center at c:
// hit (contains c), dead (entirely left of c, unreachable by any center at
// or right of c), or alive (entirely right of c). When no dead interval
// exists the alive ones form a contiguous suffix because intervals are
// sorted by left endpoint.
inline Coverage coverage_at(const std::vector<Interval>& intervals, double c,
                            std::size_t suffix_start) {
    Coverage cov;
    for (std::size_t u = suffix_start; u < intervals.size(); ++u) {
        if (intervals[u].a - tolerance() <= c && c <= intervals[u].b + tolerance()) {
            cov.hit.push_back(u);
        } else if (intervals[u].b < c - tolerance()) {
            cov.dead_exists = true;
        } else if (!cov.first_unhit_alive) {
            cov.first_unhit_alive = u;
        }
    }
    return cov;
}

namespace feasibility_detail {

// Suffix first-true arrays for the two DPs. For each state (i, a, b) and
// column j, the stored value is the least k >= j whose entry is true (the
// sentinel column m means "place no further centers", true iff i == 0);
// m+1 encodes "none". This answers the recursion's OR-over-suffix queries
// and doubles as the backtracking choice link.
class Tables {
public:
    Tables(std::size_t n, int p, int q, std::size_t m)
        : m_(m), stride_b_(m + 2), stride_a_((q + 1) * stride_b_),
          stride_i_((p + 1) * stride_a_), red_((n + 1) * stride_i_, 0),
          blue_((n + 1) * stride_i_, 0) {}

    std::uint32_t none() const { return static_cast<std::uint32_t>(m_ + 1); }

    std::uint32_t first_red(std::size_t i, int a, int b, std::size_t j) const {
        return red_[index(i, a, b, j)];
    }
    std::uint32_t first_blue(std::size_t i, int a, int b, std::size_t j) const {
        return blue_[index(i, a, b, j)];
    }
    void set_red(std::size_t i, int a, int b, std::size_t j, std::uint32_t v) {
        red_[index(i, a, b, j)] = v;
    }
    void set_blue(std::size_t i, int a, int b, std::size_t j, std::uint32_t v) {
        blue_[index(i, a, b, j)] = v;
    }

private:
    std::size_t m_;
    std::size_t stride_b_, stride_a_, stride_i_;
    std::vector<std::uint32_t> red_, blue_;

    std::size_t index(std::size_t i, int a, int b, std::size_t j) const {
        return i * stride_i_ + static_cast<std::size_t>(a) * stride_a_ +
               static_cast<std::size_t>(b) * stride_b_ + j;
    }
};

struct CoverageIndex {
    // alive_from[j]: first interval (globally) whose left endpoint exceeds
    // position j. dead_before[j][t]: whether some interval in [t, alive_from[j])
    // ends left of position j, i.e. can never be hit once the leftmost center
    // sits at j.
    std::vector<std::size_t> alive_from;
    std::vector<char> dead_before;  // j * (n+1) + t
    std::size_t n = 0;

    bool dead(std::size_t j, std::size_t t) const { return dead_before[j * (n + 1) + t] != 0; }
};

inline CoverageIndex build_coverage_index(const std::vector<Interval>& intervals,
                                          const std::vector<double>& positions) {
    CoverageIndex ci;
    const std::size_t n = intervals.size();
    const std::size_t m = positions.size();
    ci.n = n;
    ci.alive_from.resize(m);
    ci.dead_before.assign(m * (n + 1), 0);
    for (std::size_t j = 0; j < m; ++j) {
        const double c = positions[j];
        std::size_t alive = n;
        for (std::size_t u = 0; u < n; ++u)
            if (intervals[u].a > c + tolerance()) {
                alive = u;
                break;
            }
        ci.alive_from[j] = alive;
        bool dead = false;
        for (std::size_t t = alive; t-- > 0;) {
            if (intervals[t].b < c - tolerance()) dead = true;
            if (dead) ci.dead_before[j * (n + 1) + t] = 1;
        }
    }
    return ci;
}

inline double exile_position(const std::vector<Interval>& intervals,
                             const std::vector<double>& others, double alpha) {
    double base = intervals.front().b;
    for (const Interval& iv : intervals) base = std::max(base, iv.b);
    double offset = alpha;
    for (;;) {
        const double pos = base + offset;
        bool ok = true;
        for (double o : others)
            if (std::abs(pos - o) < alpha - tolerance()) ok = false;
        if (ok) return pos;
        offset = offset > 0.0 ? offset * 2.0 : 1.0;
    }
}

}  // namespace feasibility_detail

// Decides whether radius r is feasible for the x-axis-constrained instance
// and returns a witness placement if so. States (i, a, b, j) mean: the last
// i intervals are coverable using at most a red and b blue centers when the
// leftmost of them is red (first table) or blue (second) at position j.
// Transitions drop the intervals hit by position j, reject branches that
// strand an interval left of j, and hand the remainder to either the same
// color anywhere right of j or the other color at least alpha away.
inline std::optional<ConstrainedSolution> feasible(const Instance& instance, double r) {
    const auto intervals_opt = sorted_intervals(instance.points, r);
    if (!intervals_opt) return std::nullopt;
    const std::vector<Interval>& intervals = *intervals_opt;
    const CandidateCenters cands = candidate_centers(intervals, instance.alpha);
    const std::vector<double>& pos = cands.positions;

    const std::size_t n = intervals.size();
    const std::size_t m = pos.size();
    const int p = instance.p, q = instance.q;
    feasibility_detail::Tables tables(n, p, q, m);
    const std::uint32_t none = tables.none();
    const auto ci = feasibility_detail::build_coverage_index(intervals, pos);

    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t t = n - i;
        for (int a = 0; a <= p; ++a) {
            for (int b = 0; b <= q; ++b) {
                tables.set_red(i, a, b, m + 1, none);
                tables.set_blue(i, a, b, m + 1, none);
                const std::uint32_t sentinel =
                    i == 0 ? static_cast<std::uint32_t>(m) : none;
                tables.set_red(i, a, b, m, sentinel);
                tables.set_blue(i, a, b, m, sentinel);
                for (std::size_t j = m; j-- > 0;) {
                    bool red_entry = false, blue_entry = false;
                    if (i == 0) {
                        red_entry = blue_entry = true;
                    } else if (!ci.dead(j, t)) {
                        const std::size_t start = std::max(t, ci.alive_from[j]);
                        const std::size_t i2 = n - start;
                        if (a >= 1)
                            red_entry =
                                tables.first_red(i2, a - 1, b, j + 1) != none ||
                                tables.first_blue(i2, a - 1, b, cands.next_of[j]) != none;
                        if (b >= 1)
                            blue_entry =
                                tables.first_blue(i2, a, b - 1, j + 1) != none ||
                                tables.first_red(i2, a, b - 1, cands.next_of[j]) != none;
                    }
                    tables.set_red(i, a, b, j,
                                   red_entry ? static_cast<std::uint32_t>(j)
                                             : tables.first_red(i, a, b, j + 1));
                    tables.set_blue(i, a, b, j,
                                    blue_entry ? static_cast<std::uint32_t>(j)
                                               : tables.first_blue(i, a, b, j + 1));
                }
            }
        }
    }

    const std::uint32_t first_r = tables.first_red(n, p, q, 0);
    const std::uint32_t first_b = tables.first_blue(n, p, q, 0);
    if (first_r == none && first_b == none) return std::nullopt;

    // Replay the accepted chain, preferring the red table on equal columns.
    bool is_red = first_r <= first_b;
    std::uint32_t j = is_red ? first_r : first_b;
    std::size_t i = n;
    int a = p, b = q;
    std::vector<double> reds, blues;
    while (i > 0) {
        if (j >= m) throw std::logic_error("feasible: backtrack reached sentinel early");
        (is_red ? reds : blues).push_back(pos[j]);
        const std::size_t t = n - i;
        const std::size_t start = std::max(t, ci.alive_from[j]);
        const std::size_t i2 = n - start;
        (is_red ? a : b) -= 1;
        const std::uint32_t same = is_red ? tables.first_red(i2, a, b, j + 1)
                                          : tables.first_blue(i2, a, b, j + 1);
        if (same != none) {
            j = same;
        } else {
            const std::uint32_t other = is_red
                                            ? tables.first_blue(i2, a, b, cands.next_of[j])
                                            : tables.first_red(i2, a, b, cands.next_of[j]);
            if (other == none) throw std::logic_error("feasible: broken choice link");
            j = other;
            is_red = !is_red;
        }
        i = i2;
    }

    if (reds.empty() && p > 0)
        reds.push_back(feasibility_detail::exile_position(intervals, blues, instance.alpha));
    if (blues.empty() && q > 0)
        blues.push_back(feasibility_detail::exile_position(intervals, reds, instance.alpha));
    while (static_cast<int>(reds.size()) < p) reds.push_back(reds.back());
    while (static_cast<int>(blues.size()) < q) blues.push_back(blues.back());

    // Cheap replay of the claimed guarantees; a failure here means the DP
    // and the witness disagree, which callers treat as an internal error.
    for (const Interval& iv : intervals) {
        bool covered = false;
        for (double c : reds)
            covered = covered || (iv.a - tolerance() <= c && c <= iv.b + tolerance());
        for (double c : blues)
            covered = covered || (iv.a - tolerance() <= c && c <= iv.b + tolerance());
        if (!covered) throw std::logic_error("feasible: witness misses an interval");
    }
    for (double red_pos : reds)
        for (double blue_pos : blues)
            if (std::abs(red_pos - blue_pos) < instance.alpha - tolerance())
                throw std::logic_error("feasible: witness violates separation");

    return ConstrainedSolution{std::move(reds), std::move(blues), r};
}

inline bool feasible_bool(const Instance& instance, double r) {
    return feasible(instance, r).has_value();
}

}  // namespace rbcenter

#pragma once

// Brute-force reference computations for tests. Deliberately structured
// independently of the solvers: intervals are recomputed inline, feasibility
// is decided by exhaustive placement search, and nothing here touches the
// dynamic programs under test. Every oracle refuses inputs beyond its budget
// instead of silently taking forever.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbcenter/geometry.hpp"

namespace rbcenter {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleBudget {
    int max_n = 7;
    int max_p = 2;
    int max_q = 2;
    double grid_pitch = 0.5;
};

// Exhaustive check over all 2^m two-colorings of component counts: true iff
// some split keeps the red side within p and the blue side within q.
inline bool oracle_partition(const std::vector<int>& counts, int p, int q) {
    const std::size_t m = counts.size();
    if (m > 20) throw OracleError("oracle_partition: more than 20 components");
    for (int c : counts)
        if (c < 1) throw std::invalid_argument("oracle_partition: counts must be positive");
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        long long red = 0, blue = 0;
        for (std::size_t i = 0; i < m; ++i)
            ((mask >> i) & 1u ? red : blue) += counts[i];
        if (red <= p && blue <= q) return true;
    }
    return false;
}

// Exact k-center on the real line by exhaustive split into contiguous blocks:
// the optimum places one center at each block's midpoint.
inline double oracle_kcenter_line(std::vector<double> values, int k) {
    if (values.empty() || k < 1)
        throw std::invalid_argument("oracle_kcenter_line: needs points and k >= 1");
    if (values.size() > 12) throw OracleError("oracle_kcenter_line: more than 12 points");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    // best radius covering values[i..] with at most `left` blocks
    auto best = [&](auto&& self, std::size_t i, int left) -> double {
        if (i == n) return 0.0;
        if (left == 0) return std::numeric_limits<double>::infinity();
        double out = std::numeric_limits<double>::infinity();
        for (std::size_t j = i; j < n; ++j) {
            const double spread = (values[j] - values[i]) / 2.0;
            if (spread >= out) break;
            out = std::min(out, std::max(spread, self(self, j + 1, left - 1)));
        }
        return out;
    };
    return best(best, 0, k);
}

namespace oracle_detail {

struct Window {
    double a, b;
};

// Intersection of each point's r-ball with the x-axis, in input order.
// Radii within tolerance below the point's height count as touching.
inline std::optional<std::vector<Window>> axis_windows(const std::vector<Point>& points,
                                                       double r) {
    std::vector<Window> out;
    out.reserve(points.size());
    for (const Point& pt : points) {
        double h2 = 0.0;
        for (std::size_t j = 1; j < pt.dim(); ++j) h2 += pt[j] * pt[j];
        const double h = std::sqrt(h2);
        if (r < h - tolerance()) return std::nullopt;
        const double w = std::sqrt(std::max(0.0, r * r - h2));
        out.push_back({pt[0] - w, pt[0] + w});
    }
    return out;
}

// Minimum number of points needed to stab all windows, separation ignored:
// classic greedy over right endpoints. A valid lower bound on how many
// centers any placement needs.
inline int stab_count(std::vector<Window> ws) {
    std::sort(ws.begin(), ws.end(), [](const Window& x, const Window& y) { return x.b < y.b; });
    int count = 0;
    double cur = -std::numeric_limits<double>::infinity();
    for (const Window& w : ws) {
        if (cur < w.a - tolerance()) {
            ++count;
            cur = w.b;
        }
    }
    return count;
}

// Exhaustive placement search. Branches on the leftmost unhit window: some
// center must sit inside it, and trying every candidate position inside it
// with both colors covers all cases. `hits[i]` counts centers inside window
// i and is maintained incrementally.
inline bool place_search(const std::vector<Window>& ws, const std::vector<double>& positions,
                         int p, int q, double alpha, std::vector<int>& hits,
                         std::vector<double>& reds, std::vector<double>& blues) {
    std::size_t u = ws.size();
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (hits[i] > 0) continue;
        if (u == ws.size() || ws[i].a < ws[u].a || (ws[i].a == ws[u].a && ws[i].b < ws[u].b))
            u = i;
    }
    if (u == ws.size()) return true;

    const int budget_left =
        (p - static_cast<int>(reds.size())) + (q - static_cast<int>(blues.size()));
    if (budget_left <= 0) return false;
    std::vector<Window> unhit;
    for (std::size_t i = 0; i < ws.size(); ++i)
        if (hits[i] == 0) unhit.push_back(ws[i]);
    if (stab_count(std::move(unhit)) > budget_left) return false;

    auto try_color = [&](double pos, bool red) -> bool {
        auto& own = red ? reds : blues;
        const auto& other = red ? blues : reds;
        const int limit = red ? p : q;
        if (static_cast<int>(own.size()) >= limit) return false;
        for (double o : other)
            if (std::abs(pos - o) < alpha - tolerance()) return false;
        own.push_back(pos);
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (ws[i].a - tolerance() <= pos && pos <= ws[i].b + tolerance()) ++hits[i];
        if (place_search(ws, positions, p, q, alpha, hits, reds, blues)) return true;
        own.pop_back();
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (ws[i].a - tolerance() <= pos && pos <= ws[i].b + tolerance()) --hits[i];
        return false;
    };

    // Rightmost positions first: they hit the most windows to the right, so
    // feasible cases succeed quickly; infeasible cases explore everything.
    for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
        const double pos = *it;
        if (pos < ws[u].a - tolerance() || pos > ws[u].b + tolerance()) continue;
        if (try_color(pos, true)) return true;
        if (try_color(pos, false)) return true;
    }
    return false;
}

// Window endpoints shifted by 0 and +-alpha: the placement search's
// position set, matching the candidate-center construction by value but
// rebuilt here from scratch.
inline std::vector<double> search_positions(const std::vector<Window>& ws, double alpha) {
    std::vector<double> pos;
    for (const Window& w : ws)
        for (double e : {w.a, w.b})
            for (double s : {0.0, alpha, -alpha}) pos.push_back(e + s);
    std::sort(pos.begin(), pos.end());
    std::vector<double> out;
    for (double v : pos)
        if (out.empty() || v - out.back() > tolerance()) out.push_back(v);
    return out;
}

inline void check_budget(const Instance& instance, const OracleBudget& budget) {
    if (static_cast<int>(instance.points.size()) > budget.max_n)
        throw OracleError("oracle budget exceeded: n > " + std::to_string(budget.max_n));
    if (instance.p > budget.max_p)
        throw OracleError("oracle budget exceeded: p > " + std::to_string(budget.max_p));
    if (instance.q > budget.max_q)
        throw OracleError("oracle budget exceeded: q > " + std::to_string(budget.max_q));
}

// Exile position for a color that covers nothing: beyond every window
// endpoint and every opposite center, doubling the offset until the
// separation holds against all of them.
inline double exile_position(const std::vector<Window>& ws, const std::vector<double>& others,
                             double alpha) {
    double base = 0.0;
    for (const Window& w : ws) base = std::max(base, w.b);
    for (double o : others) base = std::max(base, o);
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

}  // namespace oracle_detail

// Whether radius r admits p red + q blue centers on the x-axis covering all
// points with every red-blue pair >= alpha apart. Exhaustive search over the
// shifted-endpoint position set.
inline bool oracle_constrained_feasible(const Instance& instance, double r,
                                        const OracleBudget& budget = {}) {
    oracle_detail::check_budget(instance, budget);
    const auto ws = oracle_detail::axis_windows(instance.points, r);
    if (!ws) return false;
    const auto positions = oracle_detail::search_positions(*ws, instance.alpha);
    std::vector<int> hits(ws->size(), 0);
    std::vector<double> reds, blues;
    return oracle_detail::place_search(*ws, positions, instance.p, instance.q, instance.alpha,
                                       hits, reds, blues);
}

// Smallest feasible radius among `radii` (scanned ascending), with a witness.
// Callers supply the candidate-radius values; unused color budget is padded
// by co-location, or exiled when the color covers nothing.
inline ConstrainedSolution oracle_constrained_optimum(const Instance& instance,
                                                      std::vector<double> radii,
                                                      const OracleBudget& budget = {}) {
    oracle_detail::check_budget(instance, budget);
    std::sort(radii.begin(), radii.end());
    for (double r : radii) {
        const auto ws = oracle_detail::axis_windows(instance.points, r);
        if (!ws) continue;
        const auto positions = oracle_detail::search_positions(*ws, instance.alpha);
        std::vector<int> hits(ws->size(), 0);
        std::vector<double> reds, blues;
        if (!oracle_detail::place_search(*ws, positions, instance.p, instance.q, instance.alpha,
                                         hits, reds, blues))
            continue;
        if (reds.empty())
            reds.push_back(oracle_detail::exile_position(*ws, blues, instance.alpha));
        if (blues.empty())
            blues.push_back(oracle_detail::exile_position(*ws, reds, instance.alpha));
        while (static_cast<int>(reds.size()) < instance.p) reds.push_back(reds.back());
        while (static_cast<int>(blues.size()) < instance.q) blues.push_back(blues.back());
        return {std::move(reds), std::move(blues), r};
    }
    throw OracleError("oracle_constrained_optimum: no supplied radius is feasible");
}

// Reference optimum for the separation-free case (alpha = 0): centers on the
// x-axis may be placed anywhere, so radius r works iff the greedy stabbing
// count of the axis windows is at most p+q. Bisects that monotone predicate.
inline double oracle_alpha0_optimum(const Instance& instance) {
    const int k = instance.p + instance.q;
    auto feasible_at = [&](double r) {
        const auto ws = oracle_detail::axis_windows(instance.points, r);
        if (!ws) return false;
        return oracle_detail::stab_count(*ws) <= k;
    };
    if (feasible_at(0.0)) return 0.0;
    double max_h = 0.0, xmin = instance.points[0][0], xmax = xmin;
    for (const Point& pt : instance.points) {
        double h2 = 0.0;
        for (std::size_t j = 1; j < pt.dim(); ++j) h2 += pt[j] * pt[j];
        max_h = std::max(max_h, std::sqrt(h2));
        xmin = std::min(xmin, pt[0]);
        xmax = std::max(xmax, pt[0]);
    }
    // One center suffices at max_h + span, so the bracket below is valid.
    double lo = 0.0, hi = max_h + (xmax - xmin) + 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        (feasible_at(mid) ? hi : lo) = mid;
    }
    return hi;
}

// Upper bound on the unconstrained optimum by exhausting center placements
// on a grid over the alpha-inflated bounding box. Every accepted placement
// is a genuine solution, so the returned radius is >= the true optimum and
// within O(pitch) of it.
inline double oracle_unconstrained_optimum(const Instance& instance,
                                           const OracleBudget& budget = {}) {
    oracle_detail::check_budget(instance, budget);
    const std::size_t d = instance.dim();
    if (d > 2) throw OracleError("oracle_unconstrained_optimum: only d <= 2");
    const double pitch = budget.grid_pitch;
    if (!(pitch > 0.0)) throw std::invalid_argument("grid pitch must be positive");

    // Grid anchored at the bounding-box minimum so input coordinates that
    // are themselves optimal center positions stay representable.
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const Point& pt : instance.points)
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], pt[j]);
            hi[j] = std::max(hi[j], pt[j]);
        }
    const double inflate = std::ceil(instance.alpha / pitch) * pitch;
    std::vector<std::size_t> steps(d);
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] -= inflate;
        hi[j] += inflate;
        steps[j] = static_cast<std::size_t>(std::floor((hi[j] - lo[j]) / pitch + 1e-9)) + 1;
    }

    std::vector<Point> grid;
    if (d == 1) {
        for (std::size_t i = 0; i < steps[0]; ++i) grid.push_back(Point{lo[0] + pitch * i});
    } else {
        for (std::size_t i = 0; i < steps[0]; ++i)
            for (std::size_t j = 0; j < steps[1]; ++j)
                grid.push_back(Point{lo[0] + pitch * i, lo[1] + pitch * j});
    }

    const std::size_t g = grid.size();
    const std::size_t n = instance.points.size();
    const int centers = instance.p + instance.q;
    double work = static_cast<double>(n);
    for (int i = 0; i < centers; ++i) work *= static_cast<double>(g);
    if (work > 2e8)
        throw OracleError("oracle_unconstrained_optimum: grid too fine for p+q centers");

    std::vector<double> dist2(g * n);
    for (std::size_t gi = 0; gi < g; ++gi)
        for (std::size_t pi = 0; pi < n; ++pi) {
            const double dd = distance(grid[gi], instance.points[pi]);
            dist2[gi * n + pi] = dd * dd;
        }

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> reds(instance.p), blues(instance.q);
    // Nondecreasing index sequences enumerate center multisets per color.
    auto enumerate = [&](auto&& self, std::vector<std::size_t>& slots, std::size_t at,
                         std::size_t from, auto&& done) -> void {
        if (at == slots.size()) {
            done();
            return;
        }
        for (std::size_t v = from; v < g; ++v) {
            slots[at] = v;
            self(self, slots, at + 1, v, done);
        }
    };
    auto eval = [&] {
        for (std::size_t rc : reds)
            for (std::size_t bc : blues)
                if (distance(grid[rc], grid[bc]) < instance.alpha) return;
        double radius2 = 0.0;
        for (std::size_t pi = 0; pi < n; ++pi) {
            double near = std::numeric_limits<double>::infinity();
            for (std::size_t rc : reds) near = std::min(near, dist2[rc * n + pi]);
            for (std::size_t bc : blues) near = std::min(near, dist2[bc * n + pi]);
            radius2 = std::max(radius2, near);
            if (radius2 >= best) return;
        }
        best = radius2;
    };
    enumerate(enumerate, reds, 0, 0, [&] { enumerate(enumerate, blues, 0, 0, eval); });
    if (!std::isfinite(best))
        throw OracleError("oracle_unconstrained_optimum: no grid placement satisfies alpha");
    return std::sqrt(best);
}

}  // namespace rbcenter

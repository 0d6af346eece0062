#pragma once

// Bi-criteria approximation for separated red-blue center clustering in R^d.
// Two branches: a farthest-first branch that wins when the optimal radius is
// large relative to alpha, and a component branch (proximity graph, greedy
// scooping, boolean partition DP over component counts, scan of interpoint
// distances) that wins when it is small. The combiner returns the better
// verified solution; its radius is within factor 8 of optimal while all
// red-blue separations stay >= 3*alpha/4.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rbcenter/geometry.hpp"

namespace rbcenter {

struct GonzalezResult {
    std::vector<Point> centers;
    double radius_bound = 0.0;
};

// Farthest-first traversal from the first input point. Stops early once all
// remaining points coincide with a chosen center, so at most
// min(k, #distinct) centers come back. radius_bound is the realized covering
// radius, at most twice the optimal k-center radius.
inline GonzalezResult gonzalez_centers(const std::vector<Point>& points, int k) {
    if (points.empty() || k < 1)
        throw std::invalid_argument("gonzalez_centers: needs points and k >= 1");
    const std::size_t n = points.size();
    std::vector<double> near(n, std::numeric_limits<double>::infinity());
    GonzalezResult result;
    std::size_t next = 0;
    while (static_cast<int>(result.centers.size()) < k) {
        result.centers.push_back(points[next]);
        for (std::size_t i = 0; i < n; ++i)
            near[i] = std::min(near[i], distance(points[i], points[next]));
        next = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (near[i] > near[next]) next = i;
        if (near[next] == 0.0) break;
    }
    result.radius_bound = near[next];
    return result;
}

// Greedy maximal subset in input order: keep a center iff it lies at least
// `threshold` from everything kept before it.
inline std::vector<Point> separated_subset(const std::vector<Point>& centers,
                                           double threshold) {
    if (centers.empty())
        throw std::invalid_argument("separated_subset: needs at least one center");
    if (threshold < 0.0)
        throw std::invalid_argument("separated_subset: threshold must be nonnegative");
    std::vector<Point> kept;
    for (const Point& c : centers) {
        bool ok = true;
        for (const Point& k : kept)
            if (distance(c, k) < threshold) ok = false;
        if (ok) kept.push_back(c);
    }
    return kept;
}

struct Component {
    std::vector<std::size_t> member_indices;
};

// Connected components of the graph joining points at distance <= threshold.
// Components are ordered by smallest member; members ascend.
inline std::vector<Component> connected_components(const std::vector<Point>& points,
                                                   double threshold) {
    if (threshold < 0.0)
        throw std::invalid_argument("connected_components: threshold must be nonnegative");
    const std::size_t n = points.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(points[i], points[j]) <= threshold) parent[find(i)] = find(j);
    std::vector<Component> comps;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == n) {
            slot[root] = comps.size();
            comps.push_back({});
        }
        comps[slot[root]].member_indices.push_back(i);
    }
    return comps;
}

struct ScoopResult {
    std::vector<Point> centers;
    std::size_t count() const { return centers.size(); }
};

// Greedy cover of one component with balls of radius 2r: repeatedly take the
// lowest-index member farther than 2r from every chosen center. Chosen
// centers end up pairwise more than 2r apart.
inline ScoopResult scoop(const Component& component, const std::vector<Point>& points,
                         double r) {
    if (component.member_indices.empty())
        throw std::invalid_argument("scoop: empty component");
    if (r < 0.0) throw std::invalid_argument("scoop: radius must be nonnegative");
    ScoopResult result;
    for (std::size_t idx : component.member_indices) {
        bool covered = false;
        for (const Point& c : result.centers)
            if (distance(points[idx], c) <= 2.0 * r) covered = true;
        if (!covered) result.centers.push_back(points[idx]);
    }
    return result;
}

// Boolean table over component center counts: entry(k, a, b) is true iff the
// first k counts split into a red part summing to <= a and a blue part
// summing to <= b.
struct PartitionTable {
    std::size_t m = 0;
    int p = 0;
    int q = 0;
    std::vector<char> bits;

    bool entry(std::size_t k, int a, int b) const {
        return bits[(k * (p + 1) + a) * (q + 1) + b] != 0;
    }
};

inline PartitionTable build_partition_table(const std::vector<int>& counts, int p, int q) {
    if (p < 0 || q < 0)
        throw std::invalid_argument("build_partition_table: budgets must be nonnegative");
    for (int c : counts)
        if (c < 1) throw std::invalid_argument("build_partition_table: counts must be positive");
    PartitionTable table;
    table.m = counts.size();
    table.p = p;
    table.q = q;
    table.bits.assign((table.m + 1) * (p + 1) * (q + 1), 0);
    auto set = [&](std::size_t k, int a, int b, bool v) {
        table.bits[(k * (p + 1) + a) * (q + 1) + b] = v ? 1 : 0;
    };
    long long prefix = 0;
    for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b) set(0, a, b, true);
    for (std::size_t k = 1; k <= table.m; ++k) {
        const int c = counts[k - 1];
        prefix += c;
        for (int a = 0; a <= p; ++a)
            for (int b = 0; b <= q; ++b) {
                if (prefix > static_cast<long long>(a) + b) {
                    set(k, a, b, false);
                    continue;
                }
                const bool red_side = c <= a && table.entry(k - 1, a - c, b);
                const bool blue_side = c <= b && table.entry(k - 1, a, b - c);
                set(k, a, b, red_side || blue_side);
            }
    }
    return table;
}

// Splits component indices into a red set A and blue set B with sum(A) <= p
// and sum(B) <= q, or none. Backtracks from the table preferring the red
// side on ties. Indices are 0-based positions in `counts`.
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
partition_components(const std::vector<int>& counts, int p, int q) {
    const PartitionTable table = build_partition_table(counts, p, q);
    if (!table.entry(counts.size(), p, q)) return std::nullopt;
    std::vector<std::size_t> red_set, blue_set;
    int a = p, b = q;
    for (std::size_t k = counts.size(); k >= 1; --k) {
        const int c = counts[k - 1];
        if (c <= a && table.entry(k - 1, a - c, b)) {
            red_set.push_back(k - 1);
            a -= c;
        } else {
            blue_set.push_back(k - 1);
            b -= c;
        }
    }
    std::reverse(red_set.begin(), red_set.end());
    std::reverse(blue_set.begin(), blue_set.end());
    return std::make_pair(std::move(red_set), std::move(blue_set));
}

enum class BranchTag { large_radius, small_radius };

struct BranchOutcome {
    std::optional<Solution> solution;
    BranchTag branch_tag = BranchTag::large_radius;
    std::optional<double> decision_radius;
};

namespace approx_detail {

// Pads center lists to exactly p red and q blue. Extras co-locate with the
// first center of their color. A color with no centers at all is exiled
// along +x from the rightmost opposite center at offset `separation`; if
// some other opposite center still ends up too close, offset separation +
// diameter works because all opposite centers are input points.
inline void pad_centers(std::vector<Point>& reds, std::vector<Point>& blues, int p, int q,
                        double separation, const std::vector<Point>& points) {
    auto exile = [&](std::vector<Point>& empty_color, const std::vector<Point>& opposite) {
        const Point* base = &opposite.front();
        for (const Point& c : opposite)
            if (c[0] > (*base)[0]) base = &c;
        for (int attempt = 0; attempt < 2; ++attempt) {
            std::vector<double> coords = base->coords;
            double offset = separation;
            if (attempt == 1) {
                double diam = 0.0;
                for (std::size_t i = 0; i < points.size(); ++i)
                    for (std::size_t j = i + 1; j < points.size(); ++j)
                        diam = std::max(diam, distance(points[i], points[j]));
                offset += diam;
            }
            coords[0] += offset;
            const Point candidate(std::move(coords));
            bool ok = true;
            for (const Point& c : opposite)
                if (distance(candidate, c) < separation - tolerance()) ok = false;
            if (ok) {
                empty_color.push_back(candidate);
                return;
            }
        }
        throw std::logic_error("pad_centers: exile failed");
    };
    if (reds.empty()) exile(reds, blues);
    if (blues.empty()) exile(blues, reds);
    while (static_cast<int>(reds.size()) < p) reds.push_back(reds.front());
    while (static_cast<int>(blues.size()) < q) blues.push_back(blues.front());
}

}  // namespace approx_detail

// Farthest-first branch: Gonzalez with k = p+q, thin to pairwise >=
// 3*alpha/4, color the survivors within budget, pad. Always succeeds; best
// when the optimal radius is large.
inline BranchOutcome solve_large_branch(const Instance& instance) {
    const double separation = 3.0 * instance.alpha / 4.0;
    const GonzalezResult gz = gonzalez_centers(instance.points, instance.p + instance.q);
    const std::vector<Point> kept = separated_subset(gz.centers, separation);
    const std::size_t t = kept.size();
    std::vector<Point> reds, blues;
    if (t == 1) {
        reds.push_back(kept.front());
    } else {
        const std::size_t a =
            std::min(static_cast<std::size_t>(instance.p), t - 1);
        reds.assign(kept.begin(), kept.begin() + a);
        blues.assign(kept.begin() + a, kept.end());
    }
    approx_detail::pad_centers(reds, blues, instance.p, instance.q, separation,
                               instance.points);
    Solution sol;
    sol.red_centers = std::move(reds);
    sol.blue_centers = std::move(blues);
    std::vector<Point> all = sol.red_centers;
    all.insert(all.end(), sol.blue_centers.begin(), sol.blue_centers.end());
    sol.radius = covering_radius(instance.points, all);
    return {std::move(sol), BranchTag::large_radius, std::nullopt};
}

// Decision procedure at radius R: split the proximity graph (threshold
// 3*alpha/4) into components, scoop each with 2R-balls, and two-color whole
// components within the budgets. Any returned solution covers at radius
// <= 2R with all red-blue separations > 3*alpha/4.
inline std::optional<Solution> decide_radius(const Instance& instance, double R) {
    if (R < 0.0) throw std::invalid_argument("decide_radius: radius must be nonnegative");
    const double separation = 3.0 * instance.alpha / 4.0;
    const std::vector<Component> comps = connected_components(instance.points, separation);
    std::vector<ScoopResult> scoops;
    std::vector<int> counts;
    scoops.reserve(comps.size());
    for (const Component& comp : comps) {
        scoops.push_back(scoop(comp, instance.points, R));
        counts.push_back(static_cast<int>(scoops.back().count()));
    }
    const auto split = partition_components(counts, instance.p, instance.q);
    if (!split) return std::nullopt;
    std::vector<Point> reds, blues;
    for (std::size_t idx : split->first)
        reds.insert(reds.end(), scoops[idx].centers.begin(), scoops[idx].centers.end());
    for (std::size_t idx : split->second)
        blues.insert(blues.end(), scoops[idx].centers.begin(), scoops[idx].centers.end());
    approx_detail::pad_centers(reds, blues, instance.p, instance.q, separation,
                               instance.points);
    Solution sol;
    sol.red_centers = std::move(reds);
    sol.blue_centers = std::move(blues);
    std::vector<Point> all = sol.red_centers;
    all.insert(all.end(), sol.blue_centers.begin(), sol.blue_centers.end());
    sol.radius = covering_radius(instance.points, all);
    return sol;
}

// All pairwise distances plus 0, ascending, deduplicated within tolerance.
inline std::vector<double> interpoint_distances(const std::vector<Point>& points) {
    std::vector<double> all{0.0};
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            all.push_back(distance(points[i], points[j]));
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double v : all)
        if (out.empty() || v - out.back() > tolerance()) out.push_back(v);
    return out;
}

// Component branch: try the decision procedure at every interpoint distance
// ascending and keep the first success. Best when the optimal radius is
// small; may fail outright (empty outcome).
inline BranchOutcome solve_small_branch(const Instance& instance) {
    BranchOutcome outcome{std::nullopt, BranchTag::small_radius, std::nullopt};
    for (double d : interpoint_distances(instance.points)) {
        auto sol = decide_radius(instance, d);
        if (sol) {
            outcome.solution = std::move(sol);
            outcome.decision_radius = d;
            break;
        }
    }
    return outcome;
}

// Runs both branches and returns the solution with the smaller verified
// covering radius (ties favor the farthest-first branch).
inline Solution solve_approx(const Instance& instance) {
    BranchOutcome large = solve_large_branch(instance);
    BranchOutcome small = solve_small_branch(instance);
    if (small.solution && small.solution->radius < large.solution->radius)
        return *std::move(small.solution);
    return *std::move(large.solution);
}

}  // namespace rbcenter

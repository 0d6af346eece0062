#pragma once

// Core value types for red-blue center clustering: points in R^d, problem
// instances with an optional center-constraint line, candidate solutions,
// and the checks shared by every solver (covering radius, verification,
// reduction of a constrained instance to the x-axis).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rbcenter {

namespace detail {
inline double g_tolerance = 1e-9;
}

// Absolute tolerance for all real comparisons in the library. Set once at
// startup (the CLI exposes --tolerance); not meant to change mid-solve.
inline double tolerance() { return detail::g_tolerance; }

inline void set_tolerance(double tol) {
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("tolerance must be a finite nonnegative number");
    detail::g_tolerance = tol;
}

struct Point {
    std::vector<double> coords;

    explicit Point(std::vector<double> values) : coords(std::move(values)) { check(); }
    Point(std::initializer_list<double> values) : coords(values) { check(); }

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }

private:
    void check() const {
        if (coords.empty())
            throw std::invalid_argument("point needs at least one coordinate");
        for (double c : coords)
            if (!std::isfinite(c))
                throw std::invalid_argument("point coordinates must be finite");
    }
};

inline double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("distance: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

// Line through `origin` along `direction`. Construction normalizes the
// direction to unit length; a near-zero direction is rejected.
struct Line {
    Point origin;
    Point direction;

    Line(Point origin_, Point direction_)
        : origin(std::move(origin_)), direction(std::move(direction_)) {
        if (origin.dim() != direction.dim())
            throw std::invalid_argument("line: origin/direction dimension mismatch");
        double norm = 0.0;
        for (double c : direction.coords) norm += c * c;
        norm = std::sqrt(norm);
        if (norm <= tolerance())
            throw std::invalid_argument("line: direction must be nonzero");
        // skip when already unit length so re-normalizing is bit-stable
        if (std::abs(norm - 1.0) > 1e-12)
            for (double& c : direction.coords) c /= norm;
    }
};

// One clustering problem: cover `points` with p red and q blue balls of a
// common radius, every red center at distance >= alpha from every blue
// center. When `line` is set, centers must also lie on it.
struct Instance {
    std::vector<Point> points;
    int p;
    int q;
    double alpha;
    std::optional<Line> line;

    Instance(std::vector<Point> points_, int p_, int q_, double alpha_,
             std::optional<Line> line_ = std::nullopt)
        : points(std::move(points_)), p(p_), q(q_), alpha(alpha_), line(std::move(line_)) {
        if (points.empty())
            throw std::invalid_argument("instance: needs at least one point");
        const std::size_t d = points.front().dim();
        for (const Point& pt : points)
            if (pt.dim() != d)
                throw std::invalid_argument("instance: points must share one dimension");
        if (p < 1 || q < 1)
            throw std::invalid_argument("instance: p and q must be at least 1");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("instance: alpha must be finite and nonnegative");
        if (line && line->origin.dim() != d)
            throw std::invalid_argument("instance: line dimension mismatch");
    }

    std::size_t dim() const { return points.front().dim(); }
};

struct Solution {
    std::vector<Point> red_centers;
    std::vector<Point> blue_centers;
    double radius = 0.0;
};

// Positions of p red and q blue centers on the x-axis (first coordinates)
// plus the covering radius; the solution form of line-constrained solvers
// and their oracles.
struct ConstrainedSolution {
    std::vector<double> red_positions;
    std::vector<double> blue_positions;
    double radius = 0.0;
};

struct VerificationReport {
    bool covered = false;
    double min_red_blue_separation = 0.0;
    double covering_radius_actual = 0.0;
};

// Smallest radius at which `centers` cover `points`: max over points of the
// distance to the nearest center.
inline double covering_radius(const std::vector<Point>& points,
                              const std::vector<Point>& centers) {
    if (centers.empty())
        throw std::invalid_argument("covering_radius: needs at least one center");
    double worst = 0.0;
    for (const Point& pt : points) {
        double best = distance(pt, centers.front());
        for (std::size_t c = 1; c < centers.size(); ++c)
            best = std::min(best, distance(pt, centers[c]));
        worst = std::max(worst, best);
    }
    return worst;
}

// Measures a solution against an instance. `covered` uses the solution's
// claimed radius plus the global tolerance; separation is reported raw so
// callers can compare against alpha or a relaxed threshold themselves.
inline VerificationReport verify(const Instance& instance, const Solution& solution) {
    std::vector<Point> all = solution.red_centers;
    all.insert(all.end(), solution.blue_centers.begin(), solution.blue_centers.end());
    VerificationReport report;
    report.covering_radius_actual = covering_radius(instance.points, all);
    report.covered = report.covering_radius_actual <= solution.radius + tolerance();
    double sep = std::numeric_limits<double>::infinity();
    for (const Point& r : solution.red_centers)
        for (const Point& b : solution.blue_centers)
            sep = std::min(sep, distance(r, b));
    report.min_red_blue_separation = sep;
    return report;
}

// Rigid motion taking a given line onto the x-axis: translate the line's
// origin to zero, then rotate its direction onto e1. Rows of the basis are
// orthonormal with row 0 equal to the direction, built by greedy
// Gram-Schmidt over the standard basis so the map is exactly the identity
// when the line already is the x-axis.
class AxisTransform {
public:
    explicit AxisTransform(const Line& line)
        : origin_(line.origin), basis_(build_basis(line.direction)) {}

    std::size_t dim() const { return origin_.dim(); }

    Point to_axis(const Point& x) const {
        require_dim(x);
        const std::size_t d = dim();
        std::vector<double> shifted(d), out(d);
        for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] - origin_[i];
        for (std::size_t r = 0; r < d; ++r) {
            double s = 0.0;
            for (std::size_t i = 0; i < d; ++i) s += basis_[r][i] * shifted[i];
            out[r] = s;
        }
        return Point(std::move(out));
    }

    Point from_axis(const Point& y) const {
        require_dim(y);
        const std::size_t d = dim();
        std::vector<double> out(d);
        for (std::size_t i = 0; i < d; ++i) {
            double s = origin_[i];
            for (std::size_t r = 0; r < d; ++r) s += basis_[r][i] * y[r];
            out[i] = s;
        }
        return Point(std::move(out));
    }

    // Point of the original line at signed distance t from its origin.
    Point from_line_position(double t) const {
        std::vector<double> y(dim(), 0.0);
        y[0] = t;
        return from_axis(Point(std::move(y)));
    }

private:
    Point origin_;
    std::vector<std::vector<double>> basis_;

    void require_dim(const Point& x) const {
        if (x.dim() != dim())
            throw std::invalid_argument("axis transform: dimension mismatch");
    }

    static std::vector<std::vector<double>> build_basis(const Point& direction) {
        const std::size_t d = direction.dim();
        std::vector<std::vector<double>> rows;
        rows.push_back(direction.coords);
        while (rows.size() < d) {
            // Pick the standard basis vector with the largest residual after
            // removing projections onto the rows chosen so far.
            std::vector<double> best;
            double best_norm = -1.0;
            for (std::size_t axis = 0; axis < d; ++axis) {
                std::vector<double> v(d, 0.0);
                v[axis] = 1.0;
                for (const auto& row : rows) {
                    double dot = row[axis];
                    for (std::size_t i = 0; i < d; ++i) v[i] -= dot * row[i];
                }
                double norm = 0.0;
                for (double c : v) norm += c * c;
                if (norm > best_norm) {
                    best_norm = norm;
                    best = std::move(v);
                }
            }
            best_norm = std::sqrt(best_norm);
            for (double& c : best) c /= best_norm;
            // Re-orthogonalize once; cheap and keeps products near machine
            // precision for unlucky directions.
            for (const auto& row : rows) {
                double dot = 0.0;
                for (std::size_t i = 0; i < d; ++i) dot += row[i] * best[i];
                for (std::size_t i = 0; i < d; ++i) best[i] -= dot * row[i];
            }
            double norm = 0.0;
            for (double c : best) norm += c * c;
            norm = std::sqrt(norm);
            for (double& c : best) c /= norm;
            rows.push_back(std::move(best));
        }
        return rows;
    }
};

// Rewrites a line-constrained instance in coordinates where the line is the
// x-axis. Solvers for the constrained problem assume this frame.
inline Instance to_x_axis(const Instance& instance) {
    if (!instance.line)
        throw std::invalid_argument("to_x_axis: instance has no line");
    const AxisTransform transform(*instance.line);
    std::vector<Point> mapped;
    mapped.reserve(instance.points.size());
    for (const Point& pt : instance.points) mapped.push_back(transform.to_axis(pt));
    std::vector<double> o(instance.dim(), 0.0), e1(instance.dim(), 0.0);
    e1[0] = 1.0;
    return Instance(std::move(mapped), instance.p, instance.q, instance.alpha,
                    Line(Point(std::move(o)), Point(std::move(e1))));
}

}  // namespace rbcenter

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rbcenter/feasibility.hpp"
#include "rbcenter/geometry.hpp"
#include "rbcenter/oracles.hpp"

using namespace rbcenter;

namespace {

void check_witness(const Instance& inst, double r, const ConstrainedSolution& sol) {
    REQUIRE(static_cast<int>(sol.red_positions.size()) == inst.p);
    REQUIRE(static_cast<int>(sol.blue_positions.size()) == inst.q);
    CHECK(sol.radius == r);
    const auto ivs = sorted_intervals(inst.points, r);
    REQUIRE(ivs.has_value());
    for (const Interval& iv : *ivs) {
        bool hit = false;
        for (double c : sol.red_positions) hit = hit || (iv.a - 1e-9 <= c && c <= iv.b + 1e-9);
        for (double c : sol.blue_positions) hit = hit || (iv.a - 1e-9 <= c && c <= iv.b + 1e-9);
        CHECK(hit);
    }
    for (double red : sol.red_positions)
        for (double blue : sol.blue_positions)
            CHECK(std::abs(red - blue) >= inst.alpha - 1e-9);
}

std::vector<double> probe_radii(const Instance& inst, std::mt19937_64& rng, int extra) {
    // heights, half-gaps and a few random values: enough to hit the
    // interesting feasibility boundaries without the optimizer's machinery
    std::vector<double> rs;
    double max_h = 0.0, span = 0.0;
    for (const Point& pt : inst.points) {
        double h2 = 0.0;
        for (std::size_t j = 1; j < pt.dim(); ++j) h2 += pt[j] * pt[j];
        max_h = std::max(max_h, std::sqrt(h2));
    }
    for (const Point& x : inst.points)
        for (const Point& y : inst.points) span = std::max(span, std::abs(x[0] - y[0]));
    rs.push_back(max_h);
    rs.push_back(max_h + span / 2.0 + inst.alpha);
    for (const Point& x : inst.points)
        for (const Point& y : inst.points)
            rs.push_back(max_h + std::abs(x[0] - y[0]) / 2.0);
    std::uniform_real_distribution<double> draw(0.0, max_h + span + inst.alpha + 1.0);
    for (int i = 0; i < extra; ++i) rs.push_back(draw(rng));
    return rs;
}

Instance random_axis_instance(std::mt19937_64& rng, int max_n, int max_pq, double alpha) {
    std::uniform_real_distribution<double> coord(0.0, 30.0);
    std::uniform_real_distribution<double> height(-3.0, 3.0);
    const int n = 1 + static_cast<int>(rng() % max_n);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        if (rng() % 2)
            pts.push_back(Point{coord(rng), height(rng)});
        else
            pts.push_back(Point{coord(rng)});
    }
    // mixed dimensions are invalid; normalize to the first point's
    const std::size_t d = pts.front().dim();
    for (Point& pt : pts)
        if (pt.dim() != d) pt = d == 1 ? Point{pt[0]} : Point{pt[0], 0.0};
    const int p = 1 + static_cast<int>(rng() % max_pq);
    const int q = 1 + static_cast<int>(rng() % max_pq);
    return Instance(std::move(pts), p, q, alpha);
}

}  // namespace

TEST_CASE("point_interval reflects ball-line intersection", "[feasibility]") {
    const auto iv = point_interval(Point{3.0, 4.0}, 5.0);
    REQUIRE(iv.has_value());
    CHECK(iv->a == Catch::Approx(0.0).margin(1e-12));
    CHECK(iv->b == Catch::Approx(6.0));

    CHECK_FALSE(point_interval(Point{3.0, 4.0}, 3.9).has_value());

    const auto on_axis = point_interval(Point{2.0, 0.0}, 1.0);
    REQUIRE(on_axis.has_value());
    CHECK(on_axis->a == Catch::Approx(1.0));
    CHECK(on_axis->b == Catch::Approx(3.0));

    const auto touching = point_interval(Point{0.0, 1.0}, 1.0);
    REQUIRE(touching.has_value());
    CHECK(touching->a == Catch::Approx(0.0).margin(1e-9));
    CHECK(touching->b == Catch::Approx(0.0).margin(1e-9));

    CHECK_THROWS_AS(point_interval(Point{0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("interval endpoints move monotonically in r", "[feasibility]") {
    const Point pt{1.0, 2.0};
    double prev_a = std::numeric_limits<double>::infinity();
    double prev_b = -std::numeric_limits<double>::infinity();
    for (double r = 2.0; r <= 6.0; r += 0.25) {
        const auto iv = point_interval(pt, r);
        REQUIRE(iv.has_value());
        CHECK(iv->a <= prev_a);
        CHECK(iv->b >= prev_b);
        prev_a = iv->a;
        prev_b = iv->b;
    }
}

TEST_CASE("sorted_intervals orders by (a, b, index) and signals empty intervals",
          "[feasibility]") {
    const auto two = sorted_intervals({Point{0.0}, Point{10.0}}, 1.0);
    REQUIRE(two.has_value());
    CHECK((*two)[0].a == Catch::Approx(-1.0));
    CHECK((*two)[0].b == Catch::Approx(1.0));
    CHECK((*two)[1].a == Catch::Approx(9.0));
    CHECK((*two)[1].b == Catch::Approx(11.0));

    // equal left endpoints: smaller right endpoint first
    const auto tie = sorted_intervals({Point{0.0, 0.0}, Point{-0.2, 0.6}}, 1.0);
    REQUIRE(tie.has_value());
    CHECK((*tie)[0].point_index == 1);
    CHECK((*tie)[0].b == Catch::Approx(0.6));
    CHECK((*tie)[1].point_index == 0);

    CHECK_FALSE(sorted_intervals({Point{0.0, 0.0}, Point{5.0, 2.0}}, 1.5).has_value());
}

TEST_CASE("candidate_centers builds the shifted endpoint set", "[feasibility]") {
    // single point (3,0) at r=3 gives the interval [0,6]
    const auto ivs = sorted_intervals({Point{3.0, 0.0}}, 3.0);
    REQUIRE(ivs.has_value());
    const auto cands = candidate_centers(*ivs, 2.0);
    const std::vector<double> expect{-2.0, 0.0, 2.0, 4.0, 6.0, 8.0};
    REQUIRE(cands.positions.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(cands.positions[i] == Catch::Approx(expect[i]));

    const auto plain = candidate_centers(*ivs, 0.0);
    REQUIRE(plain.positions.size() == 2);
    CHECK(plain.positions[0] == 0.0);
    CHECK(plain.positions[1] == 6.0);

    // co-located points collapse to one set of endpoints
    const auto dup = sorted_intervals({Point{1.0}, Point{1.0}}, 0.5);
    REQUIRE(dup.has_value());
    CHECK(candidate_centers(*dup, 0.0).positions.size() == 2);
}

TEST_CASE("next_index respects the alpha gap", "[feasibility]") {
    const std::vector<double> pos{0.0, 1.0, 5.0};
    CHECK(next_index(pos, 0, 0.0) == 1);
    CHECK(next_index(pos, 1, 0.0) == 2);
    CHECK(next_index(pos, 0, 3.0) == 2);
    CHECK(next_index(pos, 2, 3.0) == 3);
    CHECK(next_index(pos, 1, 100.0) == 3);
}

TEST_CASE("coverage_at classifies hit, dead and alive intervals", "[feasibility]") {
    const std::vector<Interval> ivs{{0.0, 2.0, 0}, {1.0, 1.5, 1}, {3.0, 4.0, 2}};

    const auto mid = coverage_at(ivs, 1.8, 0);
    CHECK(mid.hit == std::vector<std::size_t>{0});
    CHECK(mid.dead_exists);
    REQUIRE(mid.first_unhit_alive.has_value());
    CHECK(*mid.first_unhit_alive == 2);

    const auto left = coverage_at(ivs, -1.0, 0);
    CHECK(left.hit.empty());
    CHECK_FALSE(left.dead_exists);
    REQUIRE(left.first_unhit_alive.has_value());
    CHECK(*left.first_unhit_alive == 0);

    const std::vector<Interval> nested{{0.0, 5.0, 0}, {1.0, 4.0, 1}};
    const auto all_hit = coverage_at(nested, 2.0, 0);
    CHECK(all_hit.hit.size() == 2);
    CHECK_FALSE(all_hit.dead_exists);
    CHECK_FALSE(all_hit.first_unhit_alive.has_value());

    const auto suffix = coverage_at(ivs, 1.8, 2);
    CHECK(suffix.hit.empty());
    CHECK_FALSE(suffix.dead_exists);
    CHECK(*suffix.first_unhit_alive == 2);
}

TEST_CASE("feasible on the documented cases", "[feasibility]") {
    const Instance wide({Point{0.0, 0.0}, Point{10.0, 0.0}}, 1, 1, 1.0);
    const auto w = feasible(wide, 0.0);
    REQUIRE(w.has_value());
    check_witness(wide, 0.0, *w);
    CHECK(w->red_positions[0] == Catch::Approx(0.0));
    CHECK(w->blue_positions[0] == Catch::Approx(10.0));

    // a center that covers nothing must sit alpha away from the one that
    // covers everything; only the shifted candidate set contains it
    const Instance narrow({Point{0.0, 0.0}, Point{1.0, 0.0}}, 1, 1, 10.0);
    const auto nw = feasible(narrow, 0.5);
    REQUIRE(nw.has_value());
    check_witness(narrow, 0.5, *nw);
    CHECK_FALSE(feasible(narrow, 0.4).has_value());

    const Instance lifted({Point{0.0, 1.0}}, 1, 1, 0.0);
    CHECK_FALSE(feasible(lifted, 0.5).has_value());
    CHECK(feasible_bool(lifted, 1.0));
    CHECK_FALSE(feasible_bool(lifted, 0.5));

    const Instance single({Point{0.0}}, 1, 1, 0.0);
    const auto s = feasible(single, 0.0);
    REQUIRE(s.has_value());
    check_witness(single, 0.0, *s);
}

TEST_CASE("feasible handles separation-driven infeasibility", "[feasibility]") {
    const Instance far_alpha({Point{0.0}, Point{10.0}}, 1, 1, 12.0);
    CHECK_FALSE(feasible_bool(far_alpha, 0.0));
    CHECK_FALSE(feasible_bool(far_alpha, 0.99));
    const auto sol = feasible(far_alpha, 1.0);
    REQUIRE(sol.has_value());
    check_witness(far_alpha, 1.0, *sol);
}

TEST_CASE("feasibility matches the exhaustive oracle", "[feasibility]") {
    std::mt19937_64 rng(83);
    const double alphas[] = {0.0, 0.5, 3.0, 12.0};
    int checked = 0;
    for (int iter = 0; iter < 120; ++iter) {
        const Instance inst = random_axis_instance(rng, 6, 2, alphas[iter % 4]);
        for (double r : probe_radii(inst, rng, 3)) {
            const bool mine = feasible_bool(inst, r);
            const bool oracle = oracle_constrained_feasible(inst, r);
            INFO("n=" << inst.points.size() << " p=" << inst.p << " q=" << inst.q
                      << " alpha=" << inst.alpha << " r=" << r);
            REQUIRE(mine == oracle);
            ++checked;
            if (mine) check_witness(inst, r, *feasible(inst, r));
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("feasibility is monotone in the radius", "[feasibility]") {
    std::mt19937_64 rng(89);
    for (int iter = 0; iter < 60; ++iter) {
        const Instance inst = random_axis_instance(rng, 8, 3, (iter % 4) * 1.7);
        auto rs = probe_radii(inst, rng, 8);
        std::sort(rs.begin(), rs.end());
        bool seen_feasible = false;
        for (double r : rs) {
            const bool f = feasible_bool(inst, r);
            if (seen_feasible) {
                INFO("alpha=" << inst.alpha << " r=" << r);
                CHECK(f);
            }
            seen_feasible = seen_feasible || f;
        }
    }
}

TEST_CASE("alpha 0 feasibility reduces to greedy interval stabbing", "[feasibility]") {
    std::mt19937_64 rng(97);
    for (int iter = 0; iter < 80; ++iter) {
        const Instance inst = random_axis_instance(rng, 10, 3, 0.0);
        const double opt = oracle_alpha0_optimum(inst);
        CHECK(feasible_bool(inst, opt + 1e-7));
        if (opt > 1e-7) CHECK_FALSE(feasible_bool(inst, opt - 1e-7));
    }
}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "rbcenter/io.hpp"

using namespace rbcenter;

namespace {

Instance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> d_dist(1, 3), n_dist(1, 8);
    std::uniform_int_distribution<int> pq_dist(1, 3), with_line(0, 1);
    std::uniform_real_distribution<double> coord(-1e6, 1e6);
    std::uniform_real_distribution<double> alpha_dist(0.0, 50.0);
    const std::size_t d = d_dist(rng), n = n_dist(rng);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(d);
        for (double& x : c) x = coord(rng);
        pts.push_back(Point{std::move(c)});
    }
    std::optional<Line> line;
    if (with_line(rng) == 1) {
        std::vector<double> o(d), dir(d, 0.0);
        for (double& x : o) x = coord(rng);
        dir[0] = 1.0;
        if (d > 1) dir[d - 1] = 0.5;
        line = Line{Point{std::move(o)}, Point{std::move(dir)}};
    }
    return Instance{std::move(pts), pq_dist(rng), pq_dist(rng), alpha_dist(rng),
                    std::move(line)};
}

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() /
           ("rbcenter_io_" + std::to_string(::getpid()) + "_" + stem + ".json");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("instance serialization round-trips exactly", "[io]") {
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = random_instance(rng);
        const std::string s1 = serialize_instance(inst);
        const Instance back = parse_instance(s1);
        REQUIRE(back.points.size() == inst.points.size());
        for (std::size_t i = 0; i < inst.points.size(); ++i)
            for (std::size_t j = 0; j < inst.dim(); ++j)
                CHECK(back.points[i][j] == inst.points[i][j]);
        CHECK(back.p == inst.p);
        CHECK(back.q == inst.q);
        CHECK(back.alpha == inst.alpha);
        CHECK(back.line.has_value() == inst.line.has_value());
        // a second trip must be byte-stable
        CHECK(serialize_instance(back) == s1);
    }
}

TEST_CASE("parse_instance accepts the minimal file and names bad fields", "[io]") {
    const Instance inst =
        parse_instance(R"({"v":1,"points":[[0]],"p":1,"q":1,"alpha":0})");
    CHECK(inst.points.size() == 1);
    CHECK(inst.dim() == 1);

    using Catch::Matchers::ContainsSubstring;
    CHECK_THROWS_MATCHES(
        parse_instance(R"({"v":1,"points":[[0]],"p":1,"q":1,"alpha":-1})"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("alpha")));
    CHECK_THROWS_MATCHES(
        parse_instance(
            R"({"v":1,"points":[[0,0]],"p":1,"q":1,"alpha":0,"line":{"origin":[0,0],"direction":[0,0]}})"),
        ParseError, Catch::Matchers::MessageMatches(ContainsSubstring("direction")));
    CHECK_THROWS_MATCHES(
        parse_instance(R"({"points":[[0]],"p":1,"q":1,"alpha":0})"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("v")));
    CHECK_THROWS_MATCHES(
        parse_instance(R"({"v":1,"points":[[0,1],[2]],"p":1,"q":1,"alpha":0})"),
        ParseError, Catch::Matchers::MessageMatches(ContainsSubstring("points[1]")));
    CHECK_THROWS_MATCHES(
        parse_instance(R"({"v":1,"points":[[0]],"p":0,"q":1,"alpha":0})"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("p")));
    CHECK_THROWS_MATCHES(
        parse_instance(R"({"v":1,"points":[[0]],"p":1.5,"q":1,"alpha":0})"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("p")));
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"v":1,"points":[],"p":1,"q":1,"alpha":0})"),
                    ParseError);
}

TEST_CASE("solution files parse and validate", "[io]") {
    const SolutionFile sol = parse_solution(
        R"({"v":1,"mode":"approx","red":[[0,0]],"blue":[[5,0]],"radius":2.5})");
    CHECK(sol.mode == "approx");
    CHECK(sol.red.size() == 1);
    CHECK(sol.radius == 2.5);
    CHECK_THROWS_AS(
        parse_solution(
            R"({"v":1,"mode":"other","red":[[0]],"blue":[[5]],"radius":1})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_solution(R"({"v":1,"mode":"approx","red":[[0]],"blue":[[5]],"radius":-1})"),
        ParseError);
}

TEST_CASE("generate is deterministic and honors the family", "[io]") {
    for (Family family : {Family::uniform, Family::clustered, Family::collinear}) {
        const Instance a = generate(42, 12, 2, 2, 1, 3.0, family);
        const Instance b = generate(42, 12, 2, 2, 1, 3.0, family);
        CHECK(serialize_instance(a) == serialize_instance(b));
        CHECK(a.points.size() == 12);
        const Instance c = generate(43, 12, 2, 2, 1, 3.0, family);
        CHECK(serialize_instance(c) != serialize_instance(a));
    }

    SECTION("collinear points sit on the declared line") {
        for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
            const Instance inst = generate(7, 20, d, 1, 1, 1.0, Family::collinear);
            REQUIRE(inst.line.has_value());
            const AxisTransform transform(*inst.line);
            for (const Point& pt : inst.points) {
                const Point axis = transform.to_axis(pt);
                double off = 0.0;
                for (std::size_t j = 1; j < d; ++j) off = std::max(off, std::abs(axis[j]));
                CHECK(off <= 1e-12);
            }
        }
    }

    SECTION("noise moves points but keeps the pre-noise line") {
        const Instance inst = generate(7, 20, 2, 2, 2, 3.0, Family::collinear, 0.5);
        REQUIRE(inst.line.has_value());
        const AxisTransform transform(*inst.line);
        double max_off = 0.0;
        for (const Point& pt : inst.points)
            max_off = std::max(max_off, std::abs(transform.to_axis(pt)[1]));
        CHECK(max_off > 1e-3);
        CHECK(max_off <= 0.5 * std::sqrt(2.0) + 1e-12);  // per-coordinate jitter
    }

    SECTION("bad sizes are rejected") {
        CHECK_THROWS_AS(generate(1, 0, 2, 1, 1, 0.0, Family::uniform),
                        std::invalid_argument);
        CHECK_THROWS_AS(generate(1, 5, 0, 1, 1, 0.0, Family::uniform),
                        std::invalid_argument);
        CHECK_THROWS_AS(generate(1, 5, 2, 1, 1, 0.0, Family::uniform, -0.1),
                        std::invalid_argument);
    }
}

TEST_CASE("cli drives generation, solving and checking", "[io]") {
    const auto inst_path = temp_file("inst");
    const auto sol_path = temp_file("sol");
    const auto out_path = temp_file("out");

    SECTION("gen writes byte-identical output for a fixed seed") {
        REQUIRE(run({"gen", "--seed", "5", "--n", "6", "--d", "2", "--alpha", "2",
                     "--family", "collinear", "-o", inst_path.string()}) == 0);
        const std::string first = read_file(inst_path);
        REQUIRE(run({"gen", "--seed", "5", "--n", "6", "--d", "2", "--alpha", "2",
                     "--family", "collinear", "-o", inst_path.string()}) == 0);
        CHECK(read_file(inst_path) == first);
        const Instance inst = parse_instance(first);
        CHECK(inst.points.size() == 6);
        CHECK(inst.line.has_value());
    }

    SECTION("solve-approx then check round-trips with exit 0") {
        REQUIRE(run({"gen", "--seed", "9", "--n", "8", "--d", "2", "--p", "2", "--q",
                     "2", "--alpha", "4", "--family", "clustered", "-o",
                     inst_path.string()}) == 0);
        REQUIRE(run({"solve-approx", inst_path.string(), "-o", sol_path.string()}) == 0);
        const SolutionFile sol = parse_solution(read_file(sol_path));
        CHECK(sol.mode == "approx");
        CHECK(sol.red.size() == 2);
        CHECK(sol.blue.size() == 2);
        CHECK(run({"check", inst_path.string(), sol_path.string()}) == 0);

        // corrupting the radius must flip the check to exit 1
        nlohmann::json j = nlohmann::json::parse(read_file(sol_path));
        if (j["radius"].get<double>() > 1.0) {
            j["radius"] = j["radius"].get<double>() / 100.0;
            write_file(sol_path, j.dump(2));
            CHECK(run({"check", inst_path.string(), sol_path.string()}) == 1);
        }
    }

    SECTION("solve-constrained solves line instances and rejects others") {
        write_file(inst_path,
                   R"({"v":1,"points":[[0,0],[10,0]],"p":1,"q":1,"alpha":12,)"
                   R"("line":{"origin":[0,0],"direction":[1,0]}})");
        REQUIRE(run({"solve-constrained", inst_path.string(), "-o", sol_path.string()}) ==
                0);
        const SolutionFile sol = parse_solution(read_file(sol_path));
        CHECK(sol.mode == "constrained");
        CHECK_THAT(sol.radius, Catch::Matchers::WithinAbs(1.0, 1e-9));
        CHECK(run({"check", inst_path.string(), sol_path.string()}) == 0);

        write_file(inst_path, R"({"v":1,"points":[[0,0],[10,0]],"p":1,"q":1,"alpha":12})");
        CHECK(run({"solve-constrained", inst_path.string(), "-o", sol_path.string()}) == 1);
    }

    SECTION("candidates lists the documented radii") {
        write_file(inst_path,
                   R"({"v":1,"points":[[0,0],[10,0]],"p":1,"q":1,"alpha":3,)"
                   R"("line":{"origin":[0,0],"direction":[1,0]}})");
        REQUIRE(run({"candidates", inst_path.string(), "-o", out_path.string()}) == 0);
        const nlohmann::json j = nlohmann::json::parse(read_file(out_path));
        REQUIRE(j.at("v") == 1);
        const auto values = j.at("candidates").get<std::vector<double>>();
        for (double want : {2.0, 3.5, 5.0}) {
            bool found = false;
            for (double v : values) found = found || std::abs(v - want) <= 1e-9;
            CHECK(found);
        }
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            CHECK(values[i] < values[i + 1]);
    }

    SECTION("parse problems and bad flags exit 1") {
        write_file(inst_path, "{broken");
        CHECK(run({"solve-approx", inst_path.string()}) == 1);
        CHECK(run({"solve-approx", "/nonexistent/file.json"}) == 1);
        CHECK(run({"no-such-command"}) == 1);
        CHECK(run({}) == 1);
    }

    std::filesystem::remove(inst_path);
    std::filesystem::remove(sol_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("tolerance flag reaches the global setting", "[io]") {
    const auto inst_path = temp_file("tol");
    write_file(inst_path.string(),
               R"({"v":1,"points":[[0,0]],"p":1,"q":1,"alpha":0})");
    REQUIRE(run({"--tolerance", "1e-6", "solve-approx", inst_path.string(), "-o",
                 (inst_path.string() + ".out")}) == 0);
    CHECK(tolerance() == 1e-6);
    set_tolerance(1e-9);
    std::filesystem::remove(inst_path);
    std::filesystem::remove(inst_path.string() + ".out");
}

#pragma once

// JSON instance/solution files (schema version 1), seeded instance
// generation, and the command-line front end.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbcenter/approx.hpp"
#include "rbcenter/geometry.hpp"
#include "rbcenter/optimizer.hpp"

namespace rbcenter {

// Malformed input (JSON syntax, schema, or value constraints); the CLI maps
// this to exit code 1.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io_detail {

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(std::string(key) + ": missing field");
    return obj.at(key);
}

inline double number_at(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path + ": must be a number");
    return v.get<double>();
}

inline int int_at(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path + ": must be an integer");
    return v.get<int>();
}

inline std::vector<double> coords_at(const nlohmann::json& v, const std::string& path) {
    if (!v.is_array() || v.empty())
        throw ParseError(path + ": must be a non-empty coordinate array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out.push_back(number_at(v[j], path + "[" + std::to_string(j) + "]"));
    return out;
}

inline std::vector<Point> points_at(const nlohmann::json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError(path + ": must be an array of points");
    std::vector<Point> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string row = path + "[" + std::to_string(i) + "]";
        std::vector<double> c = coords_at(v[i], row);
        if (!out.empty() && c.size() != out.front().dim())
            throw ParseError(row + ": ragged coordinate array");
        out.push_back(Point{std::move(c)});
    }
    return out;
}

inline nlohmann::json coords_json(const Point& pt) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t j = 0; j < pt.dim(); ++j) arr.push_back(pt[j]);
    return arr;
}

inline nlohmann::json points_json(const std::vector<Point>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& pt : pts) arr.push_back(coords_json(pt));
    return arr;
}

inline nlohmann::json parse_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline void check_version(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("v") || j.at("v") != 1)
        throw ParseError("v: must be 1");
}

}  // namespace io_detail

inline Instance parse_instance(const std::string& text) {
    const nlohmann::json j = io_detail::parse_text(text);
    io_detail::check_version(j);
    std::vector<Point> points =
        io_detail::points_at(io_detail::field(j, "points"), "points");
    if (points.empty()) throw ParseError("points: must be non-empty");
    const int p = io_detail::int_at(io_detail::field(j, "p"), "p");
    const int q = io_detail::int_at(io_detail::field(j, "q"), "q");
    if (p < 1) throw ParseError("p: must be at least 1");
    if (q < 1) throw ParseError("q: must be at least 1");
    const double alpha = io_detail::number_at(io_detail::field(j, "alpha"), "alpha");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ParseError("alpha: must be finite and nonnegative");

    std::optional<Line> line;
    if (j.contains("line") && !j.at("line").is_null()) {
        const nlohmann::json& lj = j.at("line");
        std::vector<double> origin =
            io_detail::coords_at(io_detail::field(lj, "origin"), "line.origin");
        std::vector<double> direction =
            io_detail::coords_at(io_detail::field(lj, "direction"), "line.direction");
        if (origin.size() != points.front().dim() ||
            direction.size() != points.front().dim())
            throw ParseError("line: dimension mismatch with points");
        double norm2 = 0.0;
        for (double c : direction) norm2 += c * c;
        if (norm2 <= tolerance() * tolerance())
            throw ParseError("line.direction: must be nonzero");
        line = Line{Point{std::move(origin)}, Point{std::move(direction)}};
    }

    try {
        return Instance{std::move(points), p, q, alpha, std::move(line)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline std::string serialize_instance(const Instance& inst) {
    nlohmann::json j;
    j["v"] = 1;
    j["points"] = io_detail::points_json(inst.points);
    j["p"] = inst.p;
    j["q"] = inst.q;
    j["alpha"] = inst.alpha;
    if (inst.line) {
        j["line"]["origin"] = io_detail::coords_json(inst.line->origin);
        j["line"]["direction"] = io_detail::coords_json(inst.line->direction);
    }
    return j.dump(2) + "\n";
}

// Solution file payload: full coordinates for both center sets plus the
// solver mode that produced them.
struct SolutionFile {
    std::vector<Point> red;
    std::vector<Point> blue;
    double radius = 0.0;
    std::string mode;  // "approx" or "constrained"
};

inline SolutionFile parse_solution(const std::string& text) {
    const nlohmann::json j = io_detail::parse_text(text);
    io_detail::check_version(j);
    SolutionFile out;
    out.red = io_detail::points_at(io_detail::field(j, "red"), "red");
    out.blue = io_detail::points_at(io_detail::field(j, "blue"), "blue");
    out.radius = io_detail::number_at(io_detail::field(j, "radius"), "radius");
    if (!(out.radius >= 0.0) || !std::isfinite(out.radius))
        throw ParseError("radius: must be finite and nonnegative");
    const nlohmann::json& mode = io_detail::field(j, "mode");
    if (!mode.is_string() || (mode != "approx" && mode != "constrained"))
        throw ParseError("mode: must be \"approx\" or \"constrained\"");
    out.mode = mode.get<std::string>();
    return out;
}

inline nlohmann::json report_json(const VerificationReport& report) {
    nlohmann::json j;
    j["covered"] = report.covered;
    j["covering_radius_actual"] = report.covering_radius_actual;
    if (std::isfinite(report.min_red_blue_separation))
        j["min_red_blue_separation"] = report.min_red_blue_separation;
    else
        j["min_red_blue_separation"] = nullptr;
    return j;
}

inline std::string serialize_solution(const SolutionFile& sol,
                                      const VerificationReport& report) {
    nlohmann::json j;
    j["v"] = 1;
    j["mode"] = sol.mode;
    j["red"] = io_detail::points_json(sol.red);
    j["blue"] = io_detail::points_json(sol.blue);
    j["radius"] = sol.radius;
    j["report"] = report_json(report);
    return j.dump(2) + "\n";
}

enum class Family { uniform, clustered, collinear };

namespace io_detail {

// uniform in [0,1) from the top 53 bits; keeps generation independent of
// library distribution internals
inline double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_real(rng);
}

}  // namespace io_detail

// Deterministic seeded instance. Families: uniform (box [0,100)^d),
// clustered (p+q cluster centers, +-2 box offsets), collinear (points on a
// random line through the box, declared in the instance's line field).
// `noise` jitters every coordinate by uniform [-noise, noise] after
// placement; the declared line is the pre-noise line.
inline Instance generate(std::uint64_t seed, std::size_t n, std::size_t d, int p, int q,
                         double alpha, Family family, double noise = 0.0) {
    if (n < 1 || d < 1) throw std::invalid_argument("generate: n and d must be positive");
    if (noise < 0.0 || !std::isfinite(noise))
        throw std::invalid_argument("generate: noise must be finite and nonnegative");
    std::mt19937_64 rng(seed);
    std::vector<Point> points;
    points.reserve(n);
    std::optional<Line> line;

    if (family == Family::uniform) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> c(d);
            for (std::size_t j = 0; j < d; ++j) c[j] = io_detail::uniform_in(rng, 0.0, 100.0);
            points.push_back(Point{std::move(c)});
        }
    } else if (family == Family::clustered) {
        const std::size_t k = static_cast<std::size_t>(p + q);
        std::vector<std::vector<double>> centers(k, std::vector<double>(d));
        for (auto& ctr : centers)
            for (std::size_t j = 0; j < d; ++j) ctr[j] = io_detail::uniform_in(rng, 0.0, 100.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& ctr = centers[rng() % k];
            std::vector<double> c(d);
            for (std::size_t j = 0; j < d; ++j)
                c[j] = ctr[j] + io_detail::uniform_in(rng, -2.0, 2.0);
            points.push_back(Point{std::move(c)});
        }
    } else {
        std::vector<double> origin(d, 0.0), direction(d, 0.0);
        if (d == 1) {
            direction[0] = 1.0;
        } else {
            for (std::size_t j = 0; j < d; ++j) origin[j] = io_detail::uniform_in(rng, 0.0, 100.0);
            double norm2 = 0.0;
            while (norm2 < 0.01) {
                norm2 = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    direction[j] = io_detail::uniform_in(rng, -1.0, 1.0);
                    norm2 += direction[j] * direction[j];
                }
            }
        }
        line = Line{Point{origin}, Point{direction}};
        const AxisTransform transform(*line);
        for (std::size_t i = 0; i < n; ++i)
            points.push_back(transform.from_line_position(io_detail::uniform_in(rng, 0.0, 100.0)));
    }

    if (noise > 0.0) {
        for (Point& pt : points) {
            std::vector<double> c(d);
            for (std::size_t j = 0; j < d; ++j)
                c[j] = pt[j] + io_detail::uniform_in(rng, -noise, noise);
            pt = Point{std::move(c)};
        }
    }
    return Instance{std::move(points), p, q, alpha, std::move(line)};
}

namespace io_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError(out_path + ": cannot open for writing");
    out << text;
}

inline SolutionFile constrained_solution_file(const Instance& inst,
                                              const ConstrainedSolution& cs) {
    const AxisTransform transform(*inst.line);
    SolutionFile out;
    out.mode = "constrained";
    out.radius = cs.radius;
    for (double t : cs.red_positions) out.red.push_back(transform.from_line_position(t));
    for (double t : cs.blue_positions) out.blue.push_back(transform.from_line_position(t));
    return out;
}

}  // namespace io_detail

// Full command-line surface; args exclude the program name. Returns the
// process exit code: 0 success / verified, 1 parse error or failed check or
// missing line, 2 internal invariant failure.
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"red-blue center solver with separation constraints"};
    app.require_subcommand(1);
    double tol = 1e-9;
    app.add_option("--tolerance", tol, "global floating-point comparison tolerance")
        ->check(CLI::PositiveNumber);

    std::string in_path, out_path, solution_path;
    std::uint64_t seed = 0;
    std::size_t gen_n = 10, gen_d = 2;
    int gen_p = 1, gen_q = 1;
    double gen_alpha = 0.0, gen_noise = 0.0;
    std::string family_name = "uniform";

    CLI::App* solve_a = app.add_subcommand("solve-approx", "bi-criteria approximation");
    solve_a->add_option("input", in_path, "instance JSON file")->required();
    solve_a->add_option("-o,--output", out_path, "write solution here instead of stdout");

    CLI::App* solve_c =
        app.add_subcommand("solve-constrained", "exact solver for centers on a line");
    solve_c->add_option("input", in_path, "instance JSON file")->required();
    solve_c->add_option("-o,--output", out_path, "write solution here instead of stdout");

    CLI::App* check = app.add_subcommand("check", "verify a solution against an instance");
    check->add_option("instance", in_path, "instance JSON file")->required();
    check->add_option("solution", solution_path, "solution JSON file")->required();

    CLI::App* cand = app.add_subcommand("candidates", "candidate radii for a line instance");
    cand->add_option("input", in_path, "instance JSON file")->required();
    cand->add_option("-o,--output", out_path, "write the list here instead of stdout");

    CLI::App* gen = app.add_subcommand("gen", "generate a seeded random instance");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--n", gen_n, "number of points")->check(CLI::PositiveNumber);
    gen->add_option("--d", gen_d, "dimension")->check(CLI::PositiveNumber);
    gen->add_option("--p", gen_p, "red center count")->check(CLI::PositiveNumber);
    gen->add_option("--q", gen_q, "blue center count")->check(CLI::PositiveNumber);
    gen->add_option("--alpha", gen_alpha, "required red-blue separation")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--family", family_name, "uniform | clustered | collinear")
        ->check(CLI::IsMember({"uniform", "clustered", "collinear"}));
    gen->add_option("--noise", gen_noise, "post-placement coordinate jitter")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("-o,--output", out_path, "write instance here instead of stdout");

    std::vector<const char*> argv;
    argv.push_back("rbcenter");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    set_tolerance(tol);

    try {
        if (gen->parsed()) {
            Family family = Family::uniform;
            if (family_name == "clustered") family = Family::clustered;
            if (family_name == "collinear") family = Family::collinear;
            const Instance inst =
                generate(seed, gen_n, gen_d, gen_p, gen_q, gen_alpha, family, gen_noise);
            io_detail::emit(serialize_instance(inst), out_path);
            return 0;
        }

        const Instance inst = parse_instance(io_detail::read_file(in_path));

        if (solve_a->parsed()) {
            const Solution sol = solve_approx(inst);
            const SolutionFile file{sol.red_centers, sol.blue_centers, sol.radius, "approx"};
            io_detail::emit(serialize_solution(file, verify(inst, sol)), out_path);
            return 0;
        }

        if (solve_c->parsed() || cand->parsed()) {
            if (!inst.line) {
                std::cerr << "error: this command needs the instance's line field\n";
                return 1;
            }
            if (cand->parsed()) {
                const Instance axis = to_x_axis(inst);
                const CandidateRadii cands = candidate_radii(axis.points, axis.alpha);
                nlohmann::json j;
                j["v"] = 1;
                j["candidates"] = cands.values;
                io_detail::emit(j.dump(2) + "\n", out_path);
                return 0;
            }
            const ConstrainedSolution cs = solve_constrained(inst);
            const SolutionFile file = io_detail::constrained_solution_file(inst, cs);
            const VerificationReport report =
                verify(inst, Solution{file.red, file.blue, file.radius});
            io_detail::emit(serialize_solution(file, report), out_path);
            return 0;
        }

        // check
        const SolutionFile sol = parse_solution(io_detail::read_file(solution_path));
        const double required =
            sol.mode == "constrained" ? inst.alpha : 0.75 * inst.alpha;
        const bool counts_ok = sol.red.size() == static_cast<std::size_t>(inst.p) &&
                               sol.blue.size() == static_cast<std::size_t>(inst.q);
        nlohmann::json j;
        j["v"] = 1;
        j["counts_match"] = counts_ok;
        j["required_separation"] = required;
        bool pass = false;
        if (sol.red.empty() && sol.blue.empty()) {
            j["report"] = nullptr;
        } else {
            const VerificationReport report =
                verify(inst, Solution{sol.red, sol.blue, sol.radius});
            j["report"] = report_json(report);
            pass = counts_ok && report.covered &&
                   report.min_red_blue_separation >= required - tolerance();
        }
        j["pass"] = pass;
        io_detail::emit(j.dump(2) + "\n", "");
        return pass ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace rbcenter

// Generates a small noisy near-collinear instance, solves it exactly with
// centers restricted to the line, runs the unrestricted bi-criteria
// approximation on the same points, and prints both solutions.

#include <iostream>

#include "rbcenter/io.hpp"

int main() {
    using namespace rbcenter;

    const Instance inst = generate(/*seed=*/1, /*n=*/9, /*d=*/2, /*p=*/2, /*q=*/1,
                                   /*alpha=*/6.0, Family::collinear, /*noise=*/0.75);
    std::cout << "instance:\n" << serialize_instance(inst);

    const ConstrainedSolution exact = solve_constrained(inst);
    const AxisTransform transform(*inst.line);
    SolutionFile on_line;
    on_line.mode = "constrained";
    on_line.radius = exact.radius;
    for (double t : exact.red_positions) on_line.red.push_back(transform.from_line_position(t));
    for (double t : exact.blue_positions)
        on_line.blue.push_back(transform.from_line_position(t));
    const VerificationReport exact_report =
        verify(inst, Solution{on_line.red, on_line.blue, on_line.radius});
    std::cout << "\ncenters restricted to the line:\n"
              << serialize_solution(on_line, exact_report);

    const Solution approx = solve_approx(inst);
    const SolutionFile anywhere{approx.red_centers, approx.blue_centers, approx.radius,
                                "approx"};
    std::cout << "\ncenters anywhere (radius within 8x optimal, separation >= 3a/4):\n"
              << serialize_solution(anywhere, verify(inst, approx));

    return 0;
}

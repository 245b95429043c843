#pragma once

#include "prl/circles.hpp"
#include "prl/flexahedron.hpp"
#include "prl/packing.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace prl {

struct UnsupportedFormat : Error {
    using Error::Error;
};

struct PipelineParams {
    double a = 1.55;
    double h = 0.5;
    double t = 0.01;
    double tol_equal = 1e-10;           // equality checks
    double tol_exact = 1e-12;           // evenness / round trips
    double distinct_threshold = 1e-4;   // distinctness at t = 0.01 scale
    Convention convention = Convention::Corrected;
};

enum class OverallVerdict { Pass, Fail, NotACounterexample };

struct CounterexampleReport {
    nlohmann::ordered_json doc;
    OverallVerdict verdict = OverallVerdict::Fail;
    std::string failed_stage; // empty unless verdict == Fail

    bool pass() const { return verdict == OverallVerdict::Pass; }
};

// The 48 combinatorial automorphisms of the octahedron with diagonal pairs
// (0,3), (1,4), (2,5).
std::vector<std::vector<int>> octahedral_automorphisms();

// Octahedral combinatorics matching LabeledPolyhedron's face list.
Triangulation octahedron_triangulation();

CounterexampleReport run_counterexample(const PipelineParams& params);

nlohmann::ordered_json hyperideal_report(const PipelineParams& params);

nlohmann::ordered_json sweep(const std::vector<double>& a_values,
                             const std::vector<double>& h_values,
                             const std::vector<double>& t_values);

nlohmann::ordered_json packing_eval(const PackingInput& input);

// format: "json" or "svg"; one or two configurations (the second overlaid).
std::string export_circles(const std::vector<CircleConfiguration>& configs,
                           const std::string& format);

// Runs the seeded property suites of every module; one line per suite on `out`.
bool run_verify(std::uint64_t seed, std::ostream& out);

std::uint64_t seed_from_env(std::uint64_t fallback = 987654321ull);

} // namespace prl

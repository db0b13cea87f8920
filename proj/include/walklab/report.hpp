#pragma once

#include <string>

#include <json.hpp>

#include "walklab/compare.hpp"
#include "walklab/dist_exact.hpp"
#include "walklab/kernel.hpp"
#include "walklab/limits.hpp"
#include "walklab/montecarlo.hpp"
#include "walklab/scheme.hpp"
#include "walklab/series.hpp"
#include "walklab/steps.hpp"

namespace walklab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest round-trip decimal form (std::to_chars); "0.1" stays "0.1".
std::string format_double(double x);

// Deterministic serializer: insertion-ordered keys, format_double for floats.
// Byte-stable across runs, which is what the stored report fixtures assume.
std::string dump_json(const Json& j, int indent = 2);

Json json_steps(const StepSet& s);
Json json_constants(const StructuralConstants& k, bool exact);
Json json_law(const LimitLaw& law);
Json json_distribution(const ExactDistribution& d);
Json json_scheme(const SchemeReport& rep);
Json json_branches(const KernelRoots& kr);
Json json_convergence(const ConvergenceReport& rep);
Json json_simulation(const SampleSummary& sum, Statistic stat);

// The full picture for one step set: constants, regime, per-statistic limit
// laws, and the generating-function relations the numbers came from.
struct AnalysisReport {
    StepSet steps;
    StructuralConstants consts;
    bool exact = false;
    std::vector<std::string> warnings;

    Json to_json() const;
};

AnalysisReport analyze(const StepSet& s, bool exact);

// Flatten any JSON value to "path,value" CSV lines (arrays index with dots).
std::string json_to_csv(const Json& j);

}  // namespace walklab

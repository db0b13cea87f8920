#pragma once

#include <cstdint>
#include <vector>

#include "walklab/steps.hpp"

namespace walklab {

// Empirical histograms of the statistics over `trials` independent length-n
// walks. height/returns always present; sign changes only when the support
// fits in {-1,0,+1}. Deterministic for a fixed (seed, trials, n).
struct SampleSummary {
    int n = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    bool has_signchanges = false;
    std::vector<double> returns_probs;
    std::vector<double> height_probs;
    std::vector<double> signchanges_probs;

    const std::vector<double>& probs(Statistic stat) const;
    double mean(Statistic stat) const;
    double variance(Statistic stat) const;
};

SampleSummary simulate(const StepSet& s, int n, std::int64_t trials, std::uint64_t seed);

}  // namespace walklab

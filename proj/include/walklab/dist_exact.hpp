#pragma once

#include <vector>

#include "walklab/steps.hpp"

namespace walklab {

// Finite-n law of one statistic over length-n walks (weights as probabilities
// proportional to the walk weight; bridges variants condition on ending at 0).
struct ExactDistribution {
    Statistic stat = Statistic::returns;
    int n = 0;
    bool exact = false;
    std::vector<double> probs;           // index k = statistic value
    std::vector<Rational> probs_exact;   // filled in exact mode

    double mean() const;
    double variance() const;
};

// Number of steps that land on altitude 0.
ExactDistribution dist_returns(const StepSet& s, int n, bool exact = false);

// Maximum altitude reached.
ExactDistribution dist_height(const StepSet& s, int n, bool exact = false);

// Sign changes of the altitude sequence (zeros skipped); needs support inside
// {-1,0,+1}. bridges=true conditions on walks ending at altitude 0.
ExactDistribution dist_signchanges(const StepSet& s, int n, bool bridges = false, bool exact = false);

ExactDistribution dist_compute(const StepSet& s, Statistic stat, int n, bool exact = false);

}  // namespace walklab

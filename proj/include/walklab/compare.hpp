#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walklab/dist_exact.hpp"
#include "walklab/limits.hpp"

namespace walklab {

// Kolmogorov (sup-CDF) distance between a finite-n law and its limit, under
// the law's scaling convention: sqrt_n compares the lattice CDF at k/sqrt(n),
// standardized at (k - mu n)/sqrt(sigma2 n), none on the raw lattice. For
// continuous laws both sides of each CDF jump are taken.
double kolmogorov(const ExactDistribution& d, const LimitLaw& law);

// sup_k |P[X_n = k] - phi_n(k)| against the half-normal local shape
// phi_n(k) = (1/sigma) sqrt(2/(pi n)) exp(-(k^2/n)/(2 sigma^2)).
double local_law_error(const ExactDistribution& d, const HalfNormal& law);

struct ConvergenceRow {
    int n = 0;
    double d = 0;                    // kolmogorov distance
    std::optional<double> e;         // local-law error (half-normal regime)
    std::optional<double> m;         // |mean/sqrt(n) - limit mean| (half-normal regime)
};

struct ConvergenceReport {
    Statistic stat = Statistic::returns;
    std::string regime;
    LimitLaw law;
    std::vector<ConvergenceRow> rows;
    bool distances_decreasing = false;
    double threshold = 0;
    bool final_below_threshold = false;
};

// Distances for each n in ns (ascending), against predict()'s law.
ConvergenceReport convergence_report(const StepSet& s, const StructuralConstants& k,
                                     Statistic stat, std::span<const int> ns, double threshold);

}  // namespace walklab

#pragma once

#include <complex>
#include <vector>

#include "walklab/kernel.hpp"
#include "walklab/steps.hpp"

namespace walklab {

// The ten walk families with closed-form generating functions. The first six
// are counted by direct transfer-matrix passes; arches, tails and e1 come from
// series algebra on the others.
enum class Family {
    walks,                // any walk
    bridges,              // end at altitude 0
    excursions,           // stay >= 0, end at 0
    meanders,             // stay >= 0
    arches,               // bridges with no interior return to 0
    chains,               // walks using only the 0 jump
    e1,                   // excursions with the maximal 0-jump prefix removed: E/C - 1
    neg_meanders,         // stay <= 0
    strict_neg_meanders,  // stay < 0 after the start
    tails,                // walks with no return to 0: W/B
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct SeriesTable {
    Family family = Family::walks;
    bool exact = true;
    std::vector<Rational> exact_coeffs;  // filled in exact mode
    std::vector<double> values;          // always filled

    size_t size() const { return values.size(); }
    double at(size_t n) const { return values.at(n); }
    const Rational& at_exact(size_t n) const { return exact_coeffs.at(n); }
};

// Counting sequence of the family for lengths 0..n_max.
SeriesTable coeffs(const StepSet& s, Family f, int n_max, bool exact = true);

// Closed-form value of the family's generating function at z, |z| < rho,
// through the kernel branches.
Complex eval_gf(const StepSet& s, const StructuralConstants& k, Family f, Complex z);

// Length/statistic bivariate generating functions, u marking the statistic.
Complex eval_bivariate(const StepSet& s, const StructuralConstants& k, Statistic stat,
                       Complex z, Complex u);

// The meander length/final-altitude bivariate function, in its two equivalent
// shapes: form 1 = prod_i (u - u_i) / (u^c (1 - z P(u))), form 2 =
// -(1/(p_d z)) prod_l 1/(u - v_l). Used to cross-check the branch split.
Complex eval_meanders_bivariate(const StepSet& s, const StructuralConstants& k, Complex z,
                                Complex u, int form);

// Closed form for the height bivariate function on {-1,0,+1} supports; an
// independent cross-check of the branch-product form.
Complex motzkin_height_closed_form(const StepSet& s, Complex z, Complex u);

}  // namespace walklab

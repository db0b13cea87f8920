#pragma once

#include <string>
#include <variant>
#include <vector>

#include "walklab/steps.hpp"

namespace walklab {

// Success probability p, pmf P[X=k] = p (1-p)^k on k >= 0. `ratio` keeps the
// equivalent 1-p around since that is how drifted models are usually quoted.
struct Geometric {
    double p = 0;
    double ratio() const { return 1.0 - p; }
};

// Density sqrt(2/(pi sigma^2)) exp(-x^2/(2 sigma^2)) on x >= 0.
struct HalfNormal {
    double sigma = 0;
};

// Density (x/sigma^2) exp(-x^2/(2 sigma^2)) on x >= 0.
struct RayleighLaw {
    double sigma = 0;
};

// Per-step mean mu and variance sigma2; the length-n law is N(mu n, sigma2 n).
struct NormalLaw {
    double mu = 0;
    double sigma2 = 0;
};

// Discrete law on k >= 0 whose tail decays like the reciprocal of the large
// branches at 1/P(1); probs holds everything but tail_mass.
struct DiscreteLargeBranch {
    std::vector<double> probs;
    double tail_mass = 0;
};

// How the finite-n statistic is scaled before comparing with the law.
enum class Scaling { none, sqrt_n, standardized };

struct LimitLaw {
    std::variant<Geometric, HalfNormal, RayleighLaw, NormalLaw, DiscreteLargeBranch> law;
    Scaling scaling = Scaling::none;
};

const char* law_name(const LimitLaw& l);
const char* scaling_name(Scaling s);

enum class Query { pdf, cdf, mean, var };

// Evaluate the law. pdf on a discrete law means the pmf at round(x) (0 off the
// lattice); cdf is right-continuous. x outside the support gives 0/1 rather
// than an error.
double law_eval(const LimitLaw& l, Query q, double x = 0.0);

// B(1/P(1)): the bridge generating function at the walk radius. Finite only
// for nonzero drift.
double b_at_rho1(const StepSet& s, const StructuralConstants& k);

// The discrete limit of the height under negative drift, materialized to
// probabilities by contour extraction around u = 0; k_max <= 0 picks a cutoff
// from the decay rate.
LimitLaw height_discrete_law(const StepSet& s, const StructuralConstants& k, int k_max = 0);

// The limiting law of the statistic for this step set, chosen by drift sign.
// Refuses periodic step sets and (for sign changes) supports beyond {-1,0,+1}.
LimitLaw predict(const StepSet& s, const StructuralConstants& k, Statistic stat);

}  // namespace walklab

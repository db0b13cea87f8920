#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walklab/steps.hpp"

namespace walklab {

// Which counting function's reciprocal gets decomposed.
enum class SchemeApp { returns, height, signchanges_walks, signchanges_bridges };

const char* scheme_app_name(SchemeApp a);
SchemeApp scheme_app_from_name(const std::string& name);

// Split 1/c(z,u) = g(z,u) + h(z,u) sqrt(1 - z/rho) for real 0 < z < rho and u
// near 1. The split is algebraic: the principal branch pair enters as
// a(z) -/+ b(z) s in the ring C[s]/(s^2 - (1-z/rho)), every other ingredient is
// a scalar, and (g, h) are the two components of the assembled reciprocal.
// No fitting, no limits: one evaluation per point.
std::pair<double, double> decompose(SchemeApp app, const StepSet& s, const StructuralConstants& k,
                                    double z, double u);

struct ExtrapolatedValue {
    double value = 0;
    double error = 0;  // Richardson self-consistency estimate
};

enum class SchemeVerdict { half_normal, rayleigh_regime, violated };

const char* verdict_name(SchemeVerdict v);

struct SchemeReport {
    SchemeApp app = SchemeApp::returns;
    double rho = 0;
    ExtrapolatedValue g, h, g_u, g_uu, g_z, h_u;  // all at (rho, 1)
    double sigma = 0;                  // sqrt(2) h_u / (rho g_z); the law scale when half_normal
    std::optional<double> sigma_predicted;  // from the drift-based predictor, when comparable
    SchemeVerdict verdict = SchemeVerdict::violated;
    std::vector<std::string> conditions;  // one line per hypothesis check
    std::string assumed;                  // the analytic-continuation caveat
    double tol = 0;
};

// Evaluates the decomposition on z_k = rho (1 - 4^-k), k = 2..7 and
// u in {1 - du, 1, 1 + du}, extrapolates each quantity to z = rho
// (Richardson, ratio 4), and grades the hypothesis. tol bounds the accepted
// extrapolation error estimates; the verdict thresholds are fixed.
SchemeReport check_hypothesis(SchemeApp app, const StepSet& s, const StructuralConstants& k,
                              double tol = 1e-5);

}  // namespace walklab

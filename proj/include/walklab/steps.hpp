#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walklab/common.hpp"
#include "walklab/rational.hpp"

namespace walklab {

struct Step {
    int jump = 0;
    Rational weight;   // > 0
    double w = 0.0;    // weight as double, cached
};

// A weighted step set {(s_j, p_j)}. Invariants enforced at construction:
// distinct jumps, all weights > 0, at least one negative and one positive jump.
// Steps are kept sorted by jump.
struct StepSet {
    std::vector<Step> steps;
    int c = 0;  // -min jump
    int d = 0;  // max jump

    bool has_jump(int j) const;
    // Weight of jump j, or 0 if absent.
    double weight(int j) const;
    Rational weight_exact(int j) const;

    bool motzkin_support() const;  // support inside {-1,0,+1} with both -1 and +1 present
    Rational total_weight() const;  // sum of weights = P(1)
};

StepSet make_step_set(std::vector<std::pair<int, Rational>> entries);

// JSON shape: {"steps":[{"jump":-1,"weight":"1"},...]}; weights are strings
// ("2", "1/3", "0.25") or JSON numbers.
StepSet parse_step_set(const std::string& json_text);
StepSet load_step_set(const std::string& path);

// gcd of pairwise jump differences; 1 means aperiodic, 0 is the degenerate
// single-jump case.
int period(std::span<const int> jumps);
int period(const StepSet& s);

// P(u) = sum_j p_j u^{s_j} and its first two u-derivatives, evaluated over any
// commutative ring type F with +,-,*, scalar double multiply, and inversion
// for the negative powers. identity_like(u) must produce F's 1.
std::complex<double> identity_like(const std::complex<double>&);

template <class F>
F ring_pow(const F& base, int e, const F& one) {
    if (e == 0) return one;
    F b = base;
    int k = e;
    if (k < 0) {
        b = one / base;
        k = -k;
    }
    F acc = one;
    while (k > 0) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    return acc;
}

template <class F>
F eval_jump_poly(const StepSet& s, const F& u, int order) {
    const F one = identity_like(u);
    F acc = one - one;  // zero of the ring
    for (const Step& st : s.steps) {
        double coef = st.w;
        int e = st.jump;
        if (order >= 1) {
            coef *= st.jump;
            e -= 1;
        }
        if (order >= 2) {
            coef *= st.jump - 1;
            e -= 1;
        }
        if (coef == 0.0) continue;
        acc = acc + ring_pow(u, e, one) * coef;
    }
    return acc;
}

// order: 0 -> P(u), 1 -> P'(u), 2 -> P''(u).
std::complex<double> eval_P(const StepSet& s, std::complex<double> u, int order = 0);
double eval_P(const StepSet& s, double u, int order = 0);
// Exact evaluation at a rational point (used for exact drift and P(1)).
Rational eval_P_exact(const StepSet& s, const Rational& u, int order = 0);

struct StructuralConstants {
    double tau = 0;    // unique positive root of P'
    double rho = 0;    // 1/P(tau)
    double rho1 = 0;   // 1/P(1)
    double drift = 0;  // P'(1)
    double big_c = 0;  // sqrt(2 P(tau) / P''(tau))
    int period = 1;

    // Present when derivable exactly from rational weights.
    std::optional<Rational> drift_exact;
    std::optional<Rational> rho1_exact;
    std::optional<Rational> tau_exact;  // only when drift == 0 (then tau = 1)
    std::optional<Rational> rho_exact;  // only when drift == 0 (then rho = rho1)

    bool zero_drift() const { return drift_exact ? *drift_exact == 0 : drift == 0.0; }
    int drift_sign() const;
};

// Computes tau by bisection + Newton polish on P' (P' is strictly increasing
// on (0,inf) for c,d >= 1), then the derived constants. Exact fields filled
// from the rational weights where possible.
StructuralConstants structural_constants(const StepSet& s);

}  // namespace walklab

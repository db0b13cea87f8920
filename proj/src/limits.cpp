#include "walklab/limits.hpp"

#include <algorithm>
#include <cmath>

#include "walklab/kernel.hpp"
#include "walklab/series.hpp"

namespace walklab {

const char* law_name(const LimitLaw& l) {
    struct V {
        const char* operator()(const Geometric&) const { return "geometric"; }
        const char* operator()(const HalfNormal&) const { return "half_normal"; }
        const char* operator()(const RayleighLaw&) const { return "rayleigh"; }
        const char* operator()(const NormalLaw&) const { return "normal"; }
        const char* operator()(const DiscreteLargeBranch&) const { return "discrete_large_branch"; }
    };
    return std::visit(V{}, l.law);
}

const char* scaling_name(Scaling s) {
    switch (s) {
        case Scaling::none: return "none";
        case Scaling::sqrt_n: return "sqrt_n";
        case Scaling::standardized: return "standardized";
    }
    return "?";
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct EvalVisitor {
    Query q;
    double x;

    double operator()(const Geometric& g) const {
        switch (q) {
            case Query::pdf: {
                const double k = std::round(x);
                if (k < 0 || std::abs(x - k) > 1e-9) return 0.0;
                return g.p * std::pow(1.0 - g.p, k);
            }
            case Query::cdf:
                if (x < 0) return 0.0;
                return 1.0 - std::pow(1.0 - g.p, std::floor(x) + 1.0);
            case Query::mean:
                return (1.0 - g.p) / g.p;
            case Query::var:
                return (1.0 - g.p) / (g.p * g.p);
        }
        return 0;
    }

    double operator()(const HalfNormal& h) const {
        const double s2 = h.sigma * h.sigma;
        switch (q) {
            case Query::pdf:
                if (x < 0) return 0.0;
                return std::sqrt(2.0 / (M_PI * s2)) * std::exp(-x * x / (2.0 * s2));
            case Query::cdf:
                if (x < 0) return 0.0;
                return std::erf(x / (h.sigma * std::sqrt(2.0)));
            case Query::mean:
                return h.sigma * std::sqrt(2.0 / M_PI);
            case Query::var:
                return s2 * (1.0 - 2.0 / M_PI);
        }
        return 0;
    }

    double operator()(const RayleighLaw& r) const {
        const double s2 = r.sigma * r.sigma;
        switch (q) {
            case Query::pdf:
                if (x < 0) return 0.0;
                return x / s2 * std::exp(-x * x / (2.0 * s2));
            case Query::cdf:
                if (x < 0) return 0.0;
                return 1.0 - std::exp(-x * x / (2.0 * s2));
            case Query::mean:
                return r.sigma * std::sqrt(M_PI / 2.0);
            case Query::var:
                return s2 * (2.0 - M_PI / 2.0);
        }
        return 0;
    }

    double operator()(const NormalLaw& nl) const {
        const double sd = std::sqrt(nl.sigma2);
        switch (q) {
            case Query::pdf:
                return std::exp(-(x - nl.mu) * (x - nl.mu) / (2.0 * nl.sigma2)) / (sd * std::sqrt(2.0 * M_PI));
            case Query::cdf:
                return normal_cdf((x - nl.mu) / sd);
            case Query::mean:
                return nl.mu;
            case Query::var:
                return nl.sigma2;
        }
        return 0;
    }

    double operator()(const DiscreteLargeBranch& dl) const {
        switch (q) {
            case Query::pdf: {
                const double k = std::round(x);
                if (k < 0 || std::abs(x - k) > 1e-9) return 0.0;
                const size_t idx = static_cast<size_t>(k);
                return idx < dl.probs.size() ? dl.probs[idx] : 0.0;
            }
            case Query::cdf: {
                if (x < 0) return 0.0;
                double acc = 0;
                const long kf = static_cast<long>(std::floor(x));
                for (long i = 0; i <= kf && i < static_cast<long>(dl.probs.size()); ++i) acc += dl.probs[i];
                // Past the stored prefix the residual tail mass counts as
                // absorbed; the prefix is sized so it is negligible anyway.
                if (kf >= static_cast<long>(dl.probs.size())) acc += dl.tail_mass;
                return std::min(1.0, acc);
            }
            case Query::mean: {
                double acc = 0;
                for (size_t i = 0; i < dl.probs.size(); ++i) acc += double(i) * dl.probs[i];
                return acc;
            }
            case Query::var: {
                double m1 = 0, m2 = 0;
                for (size_t i = 0; i < dl.probs.size(); ++i) {
                    m1 += double(i) * dl.probs[i];
                    m2 += double(i) * double(i) * dl.probs[i];
                }
                return m2 - m1 * m1;
            }
        }
        return 0;
    }
};

void require_aperiodic(const StructuralConstants& k) {
    if (k.period != 1)
        throw RefusalError("limit-law prediction needs an aperiodic step set (period " +
                           std::to_string(k.period) + ")");
}

}  // namespace

double law_eval(const LimitLaw& l, Query q, double x) {
    return std::visit(EvalVisitor{q, x}, l.law);
}

double b_at_rho1(const StepSet& s, const StructuralConstants& k) {
    if (k.drift_sign() == 0)
        throw SingularityError("the bridge function diverges at the walk radius under zero drift");
    return eval_gf(s, k, Family::bridges, Complex(k.rho1, 0.0)).real();
}

LimitLaw height_discrete_law(const StepSet& s, const StructuralConstants& k, int k_max) {
    require_aperiodic(k);
    if (k.drift_sign() >= 0)
        throw DomainError("the discrete height limit needs negative drift");
    KernelRoots kr = kernel_roots(s, k, Complex(k.rho1, 0.0), /*label_principal=*/false);

    double vmin = 1e300;
    for (Complex v : kr.large) vmin = std::min(vmin, std::abs(v));
    if (vmin <= 1.0 + 1e-9)
        throw NumericError("large branches should exceed 1 in modulus at the walk radius");
    if (k_max <= 0) {
        k_max = static_cast<int>(std::ceil(-28.0 / std::log(1.0 / vmin)));  // tail below ~1e-12
        k_max = std::clamp(k_max, 32, 4096);
    }

    // omega(u) = prod_l (1 - v_l) / (u - v_l); coefficients by trapezoid
    // quadrature on |u| = r inside the pole circle.
    const double r = 0.9 * vmin;
    const int m = 8 * (k_max + 1);
    std::vector<Complex> values(m);
    for (int t = 0; t < m; ++t) {
        const double ang = 2.0 * M_PI * t / m;
        const Complex u = r * Complex(std::cos(ang), std::sin(ang));
        Complex w = 1.0;
        for (Complex v : kr.large) w *= (1.0 - v) / (u - v);
        values[t] = w;
    }
    DiscreteLargeBranch law;
    law.probs.resize(k_max + 1);
    double total = 0;
    for (int kk = 0; kk <= k_max; ++kk) {
        Complex acc = 0;
        for (int t = 0; t < m; ++t) {
            const double ang = -2.0 * M_PI * t * kk / m;
            acc += values[t] * Complex(std::cos(ang), std::sin(ang));
        }
        double p = (acc / double(m)).real() / std::pow(r, kk);
        if (p < 0 && p > -1e-12) p = 0;
        law.probs[kk] = p;
        total += p;
    }
    law.tail_mass = std::max(0.0, 1.0 - total);
    return LimitLaw{law, Scaling::none};
}

LimitLaw predict(const StepSet& s, const StructuralConstants& k, Statistic stat) {
    require_aperiodic(k);
    const int sign = k.drift_sign();
    const double p1 = to_double(s.total_weight());
    const double dd1 = eval_P(s, 1.0, 1);
    const double dd2 = eval_P(s, 1.0, 2);

    switch (stat) {
        case Statistic::returns: {
            if (sign == 0) return {HalfNormal{std::sqrt(p1 / dd2)}, Scaling::sqrt_n};
            // Success chance of never returning again: reciprocal of B at the
            // walk radius, which collapses to |drift| / P(1).
            return {Geometric{1.0 / b_at_rho1(s, k)}, Scaling::none};
        }
        case Statistic::height: {
            if (sign < 0) return height_discrete_law(s, k, 0);
            if (sign == 0) return {HalfNormal{std::sqrt(dd2 / p1)}, Scaling::sqrt_n};
            const double mu = dd1 / p1;
            return {NormalLaw{mu, dd2 / p1 + mu - mu * mu}, Scaling::standardized};
        }
        case Statistic::signchanges: {
            if (!s.motzkin_support())
                throw RefusalError("sign-change statistics need a step support inside {-1,0,+1}");
            if (sign == 0) return {HalfNormal{0.5 * std::sqrt(dd2 / p1)}, Scaling::sqrt_n};
            const double ratio = (sign < 0) ? s.weight(1) / s.weight(-1) : s.weight(-1) / s.weight(1);
            return {Geometric{1.0 - ratio}, Scaling::none};
        }
        case Statistic::signchanges_bridges: {
            if (!s.motzkin_support())
                throw RefusalError("sign-change statistics need a step support inside {-1,0,+1}");
            const double ptau = eval_P(s, k.tau, 0);
            const double ptau2 = eval_P(s, k.tau, 2);
            return {RayleighLaw{0.5 * k.tau * std::sqrt(ptau2 / ptau)}, Scaling::sqrt_n};
        }
    }
    throw ValidationError("unknown statistic");
}

}  // namespace walklab

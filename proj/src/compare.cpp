#include "walklab/compare.hpp"

#include <algorithm>
#include <cmath>

namespace walklab {

namespace {

const char* regime_name(int drift_sign) {
    if (drift_sign < 0) return "negative drift";
    if (drift_sign > 0) return "positive drift";
    return "zero drift";
}

}  // namespace

double kolmogorov(const ExactDistribution& d, const LimitLaw& law) {
    const double n = std::max(1, d.n);
    double worst = 0;
    double cum = 0;
    const bool discrete = law.scaling == Scaling::none;
    const NormalLaw* nl = std::get_if<NormalLaw>(&law.law);
    for (size_t k = 0; k < d.probs.size(); ++k) {
        double x;
        if (law.scaling == Scaling::sqrt_n)
            x = double(k) / std::sqrt(n);
        else if (law.scaling == Scaling::standardized)
            x = (double(k) - nl->mu * n) / std::sqrt(nl->sigma2 * n);
        else
            x = double(k);
        double limit_cdf;
        if (law.scaling == Scaling::standardized)
            limit_cdf = law_eval(LimitLaw{NormalLaw{0.0, 1.0}, Scaling::none}, Query::cdf, x);
        else
            limit_cdf = law_eval(law, Query::cdf, x);
        if (!discrete) worst = std::max(worst, std::abs(cum - limit_cdf));  // just below the jump
        cum += d.probs[k];
        worst = std::max(worst, std::abs(cum - limit_cdf));
    }
    return worst;
}

double local_law_error(const ExactDistribution& d, const HalfNormal& law) {
    const double n = std::max(1, d.n);
    const double s2 = law.sigma * law.sigma;
    const size_t k_hi = std::max(d.probs.size(),
                                 static_cast<size_t>(std::ceil(8.0 * law.sigma * std::sqrt(n))) + 1);
    double worst = 0;
    for (size_t k = 0; k < k_hi; ++k) {
        const double pk = k < d.probs.size() ? d.probs[k] : 0.0;
        const double phi = std::sqrt(2.0 / (M_PI * n)) / law.sigma *
                           std::exp(-(double(k) * double(k) / n) / (2.0 * s2));
        worst = std::max(worst, std::abs(pk - phi));
    }
    return worst;
}

ConvergenceReport convergence_report(const StepSet& s, const StructuralConstants& k,
                                     Statistic stat, std::span<const int> ns, double threshold) {
    ConvergenceReport rep;
    rep.stat = stat;
    rep.regime = regime_name(k.drift_sign());
    rep.law = predict(s, k, stat);
    rep.threshold = threshold;

    const HalfNormal* hn = std::get_if<HalfNormal>(&rep.law.law);
    for (int n : ns) {
        ExactDistribution d = dist_compute(s, stat, n, /*exact=*/false);
        ConvergenceRow row;
        row.n = n;
        row.d = kolmogorov(d, rep.law);
        if (hn) {
            row.e = local_law_error(d, *hn);
            row.m = std::abs(d.mean() / std::sqrt(double(std::max(1, n))) -
                             hn->sigma * std::sqrt(2.0 / M_PI));
        }
        rep.rows.push_back(row);
    }
    rep.distances_decreasing = true;
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].d < rep.rows[i - 1].d)) rep.distances_decreasing = false;
    rep.final_below_threshold = !rep.rows.empty() && rep.rows.back().d <= threshold;
    return rep;
}

}  // namespace walklab

#include "walklab/series.hpp"

#include <algorithm>
#include <cmath>

namespace walklab {

const char* family_name(Family f) {
    switch (f) {
        case Family::walks: return "walks";
        case Family::bridges: return "bridges";
        case Family::excursions: return "excursions";
        case Family::meanders: return "meanders";
        case Family::arches: return "arches";
        case Family::chains: return "chains";
        case Family::e1: return "e1";
        case Family::neg_meanders: return "neg_meanders";
        case Family::strict_neg_meanders: return "strict_neg_meanders";
        case Family::tails: return "tails";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::walks, Family::bridges, Family::excursions, Family::meanders,
                     Family::arches, Family::chains, Family::e1, Family::neg_meanders,
                     Family::strict_neg_meanders, Family::tails})
        if (name == family_name(f)) return f;
    throw ValidationError("unknown family: " + name);
}

namespace {

enum class Constraint { free_walk, nonneg, nonpos, strictneg };
enum class Aggregate { end_zero, total };

// One altitude-indexed transfer pass per length; out[m] is the end-at-zero
// mass or the total mass after m steps, under the altitude constraint.
template <class T>
std::vector<T> transfer_counts(const StepSet& s, int n, Constraint cons, Aggregate agg,
                               const std::vector<T>& wts) {
    const int c = s.c, d = s.d;
    const int lo_bound = (cons == Constraint::nonneg) ? 0 : -n * c;
    const int hi_bound = (cons == Constraint::nonpos || cons == Constraint::strictneg) ? 0 : n * d;
    const int margin = std::max(c, d);  // stencil reads reach this far past the live window
    const int off = -lo_bound + margin;
    const int span = hi_bound - lo_bound + 1 + 2 * margin;
    std::vector<T> cur(span, T(0)), next(span, T(0));
    cur[off] = T(1);

    std::vector<T> out;
    out.reserve(n + 1);
    auto aggregate = [&](const std::vector<T>& state, int lo, int hi) {
        if (agg == Aggregate::end_zero) return state[off];
        T total(0);
        for (int a = lo; a <= hi; ++a) total += state[off + a];
        return total;
    };
    out.push_back(aggregate(cur, 0, 0));  // the empty walk satisfies every constraint here
    for (int m = 1; m <= n; ++m) {
        int lo = (cons == Constraint::nonneg) ? 0 : -m * c;
        int hi = (cons == Constraint::nonpos) ? 0 : m * d;
        if (cons == Constraint::strictneg) hi = -1;
        std::fill(next.begin(), next.end(), T(0));
        for (size_t i = 0; i < s.steps.size(); ++i) {
            const int j = s.steps[i].jump;
            const T& w = wts[i];
            for (int a = lo; a <= hi; ++a) next[off + a] += w * cur[off + a - j];
        }
        out.push_back(aggregate(next, lo, hi));
        std::swap(cur, next);
    }
    return out;
}

// r = 1/b with b[0] = 1: r[n] = -sum_{j=1..n} b[j] r[n-j].
template <class T>
std::vector<T> series_reciprocal(const std::vector<T>& b) {
    std::vector<T> r(b.size(), T(0));
    r[0] = T(1) / b[0];
    for (size_t m = 1; m < b.size(); ++m) {
        T acc(0);
        for (size_t j = 1; j <= m; ++j) acc += b[j] * r[m - j];
        r[m] = -acc / b[0];
    }
    return r;
}

// q = a/b.
template <class T>
std::vector<T> series_divide(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> q(a.size(), T(0));
    for (size_t m = 0; m < a.size(); ++m) {
        T acc = a[m];
        for (size_t j = 1; j <= m; ++j) acc -= b[j] * q[m - j];
        q[m] = acc / b[0];
    }
    return q;
}

template <class T>
std::vector<T> family_counts(const StepSet& s, Family f, int n, const std::vector<T>& wts, const T& p_total) {
    switch (f) {
        case Family::walks: {
            std::vector<T> out(n + 1, T(1));
            for (int m = 1; m <= n; ++m) out[m] = out[m - 1] * p_total;
            return out;
        }
        case Family::chains: {
            T p0(0);
            for (size_t i = 0; i < s.steps.size(); ++i)
                if (s.steps[i].jump == 0) p0 = wts[i];
            std::vector<T> out(n + 1, T(0));
            out[0] = T(1);
            for (int m = 1; m <= n; ++m) out[m] = out[m - 1] * p0;
            return out;
        }
        case Family::bridges:
            return transfer_counts(s, n, Constraint::free_walk, Aggregate::end_zero, wts);
        case Family::excursions:
            return transfer_counts(s, n, Constraint::nonneg, Aggregate::end_zero, wts);
        case Family::meanders:
            return transfer_counts(s, n, Constraint::nonneg, Aggregate::total, wts);
        case Family::neg_meanders:
            return transfer_counts(s, n, Constraint::nonpos, Aggregate::total, wts);
        case Family::strict_neg_meanders:
            return transfer_counts(s, n, Constraint::strictneg, Aggregate::total, wts);
        case Family::arches: {
            auto b = family_counts(s, Family::bridges, n, wts, p_total);
            auto r = series_reciprocal(b);
            std::vector<T> a(n + 1, T(0));
            for (int m = 0; m <= n; ++m) a[m] = ((m == 0) ? T(1) : T(0)) - r[m];
            return a;
        }
        case Family::tails: {
            auto w = family_counts(s, Family::walks, n, wts, p_total);
            auto b = family_counts(s, Family::bridges, n, wts, p_total);
            return series_divide(w, b);
        }
        case Family::e1: {
            if (!s.motzkin_support())
                throw RefusalError("family e1 needs a step support inside {-1,0,+1}");
            // E/C - 1 with C = 1/(1 - p0 z) collapses to e1[n] = e[n] - p0 e[n-1].
            auto e = family_counts(s, Family::excursions, n, wts, p_total);
            T p0(0);
            for (size_t i = 0; i < s.steps.size(); ++i)
                if (s.steps[i].jump == 0) p0 = wts[i];
            std::vector<T> out(n + 1, T(0));
            for (int m = 1; m <= n; ++m) out[m] = e[m] - p0 * e[m - 1];
            return out;
        }
    }
    throw ValidationError("unknown family");
}

}  // namespace

SeriesTable coeffs(const StepSet& s, Family f, int n_max, bool exact) {
    if (n_max < 0) throw ValidationError("coeffs: n_max must be >= 0");
    SeriesTable t;
    t.family = f;
    t.exact = exact;
    if (exact) {
        std::vector<Rational> wts;
        for (const Step& st : s.steps) wts.push_back(st.weight);
        const Rational p_total = s.total_weight();
        t.exact_coeffs = family_counts<Rational>(s, f, n_max, wts, p_total);
        t.values.reserve(t.exact_coeffs.size());
        for (const Rational& q : t.exact_coeffs) t.values.push_back(to_double(q));
    } else {
        // Probability-normalized pass keeps the state bounded; the count scale
        // P(1)^n is restored afterwards (inf for n beyond double range).
        const double p1 = to_double(s.total_weight());
        const double logp1 = std::log(p1);
        std::vector<double> wts;
        for (const Step& st : s.steps) wts.push_back(st.w / p1);
        auto vals = family_counts<double>(s, f, n_max, wts, 1.0);
        t.values.resize(vals.size());
        for (size_t m = 0; m < vals.size(); ++m) t.values[m] = vals[m] * std::exp(double(m) * logp1);
    }
    return t;
}

namespace {

struct Branches {
    std::vector<Complex> small, large;
};

Branches branches_at(const StepSet& s, const StructuralConstants& k, Complex z) {
    if (std::abs(z) >= k.rho) throw DomainError("generating-function evaluation needs |z| < rho");
    KernelRoots kr = kernel_roots(s, k, z, /*label_principal=*/false);
    return {std::move(kr.small), std::move(kr.large)};
}

Complex walks_gf(const StepSet& s, Complex z) {
    const Complex denom = 1.0 - z * to_double(s.total_weight());
    if (std::abs(denom) < 1e-14) throw SingularityError("walk generating function pole at z = 1/P(1)");
    return 1.0 / denom;
}

Complex bridges_gf(const StepSet& s, Complex z, const Branches& br) {
    Complex acc = 0;
    for (Complex u : br.small) acc += branch_derivative(s, z, u) / u;
    return z * acc;
}

Complex excursions_gf(const StepSet& s, Complex z, const Branches& br) {
    Complex prod = 1.0;
    for (Complex u : br.small) prod *= u;
    const double sign = (s.c % 2 == 1) ? 1.0 : -1.0;
    return sign / (s.weight(-s.c) * z) * prod;
}

Complex meanders_gf(const StepSet& s, Complex z, const Branches& br) {
    Complex prod = 1.0;
    for (Complex u : br.small) prod *= (1.0 - u);
    return walks_gf(s, z) * prod;
}

Complex strict_neg_gf(const Branches& br) {
    Complex prod = 1.0;
    for (Complex u : br.small) prod *= (1.0 - u);
    return 1.0 / prod;
}

Complex chains_gf(const StepSet& s, Complex z) {
    return 1.0 / (1.0 - s.weight(0) * z);
}

}  // namespace

Complex eval_gf(const StepSet& s, const StructuralConstants& k, Family f, Complex z) {
    if (f == Family::walks) {
        if (std::abs(z) >= k.rho) throw DomainError("generating-function evaluation needs |z| < rho");
        return walks_gf(s, z);
    }
    if (f == Family::chains) {
        if (std::abs(z) >= k.rho) throw DomainError("generating-function evaluation needs |z| < rho");
        return chains_gf(s, z);
    }
    if (f == Family::e1 && !s.motzkin_support())
        throw RefusalError("family e1 needs a step support inside {-1,0,+1}");
    const Branches br = branches_at(s, k, z);
    switch (f) {
        case Family::bridges:
            return bridges_gf(s, z, br);
        case Family::excursions:
            return excursions_gf(s, z, br);
        case Family::meanders:
            return meanders_gf(s, z, br);
        case Family::arches:
            return 1.0 - 1.0 / bridges_gf(s, z, br);
        case Family::tails:
            return walks_gf(s, z) / bridges_gf(s, z, br);
        case Family::e1:
            return excursions_gf(s, z, br) / chains_gf(s, z) - 1.0;
        case Family::strict_neg_meanders:
            return strict_neg_gf(br);
        case Family::neg_meanders:
            return excursions_gf(s, z, br) * strict_neg_gf(br);
        default:
            throw ValidationError("unknown family");
    }
}

Complex eval_bivariate(const StepSet& s, const StructuralConstants& k, Statistic stat,
                       Complex z, Complex u) {
    const Branches br = branches_at(s, k, z);
    switch (stat) {
        case Statistic::returns: {
            const Complex B = bridges_gf(s, z, br);
            const Complex denom = u + (1.0 - u) * B;
            if (std::abs(denom) < 1e-14) throw SingularityError("returns bivariate pole in u");
            return walks_gf(s, z) / denom;
        }
        case Statistic::height: {
            Complex prod = s.weight(s.d) * z;
            for (Complex ui : br.small) prod *= (1.0 - ui);
            for (Complex vl : br.large) prod *= (u - vl);
            if (std::abs(prod) < 1e-300) throw SingularityError("height bivariate pole in u");
            return -1.0 / prod;
        }
        case Statistic::signchanges:
        case Statistic::signchanges_bridges: {
            if (!s.motzkin_support())
                throw RefusalError("sign-change statistics need a step support inside {-1,0,+1}");
            const Complex C = chains_gf(s, z);
            const Complex E = excursions_gf(s, z, br);
            const Complex E1 = E / C - 1.0;
            const Complex denom = 1.0 - u * E1;
            if (std::abs(denom) < 1e-14) throw SingularityError("sign-change bivariate pole in u");
            const Complex Bzu = C * (1.0 + 2.0 * E1 / denom);
            if (stat == Statistic::signchanges_bridges) return Bzu;
            const Complex Bplus = (E - C) / denom;
            const Complex T = walks_gf(s, z) / bridges_gf(s, z, br);
            return Bzu * T + Bplus * (T - 1.0) * (u - 1.0);
        }
    }
    throw ValidationError("unknown statistic");
}

Complex eval_meanders_bivariate(const StepSet& s, const StructuralConstants& k, Complex z,
                                Complex u, int form) {
    const Branches br = branches_at(s, k, z);
    if (form == 1) {
        Complex num = 1.0;
        for (Complex ui : br.small) num *= (u - ui);
        const Complex denom = std::pow(u, s.c) * (1.0 - z * eval_P(s, u, 0));
        if (std::abs(denom) < 1e-14) throw SingularityError("meanders bivariate pole in u");
        return num / denom;
    }
    if (form == 2) {
        Complex prod = s.weight(s.d) * z;
        for (Complex vl : br.large) prod *= (u - vl);
        if (std::abs(prod) < 1e-300) throw SingularityError("meanders bivariate pole in u");
        return -1.0 / prod;
    }
    throw ValidationError("eval_meanders_bivariate: form must be 1 or 2");
}

Complex motzkin_height_closed_form(const StepSet& s, Complex z, Complex u) {
    if (!s.motzkin_support())
        throw RefusalError("closed form needs a step support inside {-1,0,+1}");
    const double pm = s.weight(-1), p0 = s.weight(0), pp = s.weight(1);
    const Complex disc = (1.0 - p0 * z) * (1.0 - p0 * z) - 4.0 * pm * pp * z * z;
    const Complex root = std::sqrt(disc);
    const Complex denom = (1.0 + u) * (1.0 - p0 * z) - 2.0 * z * (pm + u * pp) + (1.0 - u) * root;
    if (std::abs(denom) < 1e-14) throw SingularityError("height closed form pole in u");
    return 2.0 / denom;
}

}  // namespace walklab

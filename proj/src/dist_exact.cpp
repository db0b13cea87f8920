#include "walklab/dist_exact.hpp"

#include <algorithm>
#include <cmath>

#include "walklab/parallel.hpp"

namespace walklab {

namespace {

// Neumaier-compensated sum: the float DPs shuffle ~n^3 terms, the final
// normalization should not add its own drift on top.
double compensated_sum(const std::vector<double>& v) {
    double s = 0, comp = 0;
    for (double x : v) {
        const double t = s + x;
        comp += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + comp;
}

template <class T>
std::vector<T> step_weights(const StepSet& s, bool normalized) {
    std::vector<T> w;
    w.reserve(s.steps.size());
    if constexpr (std::is_same_v<T, double>) {
        const double p1 = to_double(s.total_weight());
        for (const Step& st : s.steps) w.push_back(normalized ? st.w / p1 : st.w);
    } else {
        for (const Step& st : s.steps) w.push_back(st.weight);
    }
    return w;
}

void check_dp_size(long long cells) {
    if (cells > 600'000'000LL)
        throw NumericError("distribution state would exceed the memory budget; reduce n");
}

// ---- returns: joint over (count of steps landing at altitude 0, altitude) ----

template <class T>
std::vector<T> returns_masses(const StepSet& s, int n, const std::vector<T>& wts) {
    const int c = s.c, d = s.d;
    const int margin = std::max(c, d);
    const long long span = static_cast<long long>(n) * (c + d) + 1 + 2 * margin;
    const long long rows = n + 1;
    check_dp_size(2 * rows * span * static_cast<long long>(sizeof(T)));
    const int off = n * c + margin;

    std::vector<T> cur(rows * span, T(0)), next(rows * span, T(0));
    cur[off] = T(1);  // k = 0, altitude 0

    for (int m = 1; m <= n; ++m) {
        const int lo = -m * c, hi = m * d;
        const int kmax = m;
        parallel_for_chunks(kmax + 1, [&](long long klo, long long khi) {
            for (long long k = klo; k < khi; ++k) {
                T* nk = next.data() + k * span;
                const T* ck = cur.data() + k * span;
                std::fill(nk + (off + lo), nk + (off + hi + 1), T(0));
                for (size_t i = 0; i < s.steps.size(); ++i) {
                    const int j = s.steps[i].jump;
                    const T w = wts[i];
                    const T* src = ck + (off + lo - j);
                    T* dst = nk + (off + lo);
                    for (int a = lo; a <= hi; ++a) *dst++ += w * *src++;
                }
                // Landing on 0 increments the count: that mass belongs to k, fed from k-1.
                T land(0);
                if (k >= 1) {
                    const T* cprev = cur.data() + (k - 1) * span;
                    for (size_t i = 0; i < s.steps.size(); ++i)
                        land += wts[i] * cprev[off - s.steps[i].jump];
                }
                nk[off] = land;
            }
        });
        std::swap(cur, next);
    }

    std::vector<T> mass(n + 1, T(0));
    for (int k = 0; k <= n; ++k) {
        const T* ck = cur.data() + static_cast<long long>(k) * span;
        T acc(0);
        for (int a = -n * c; a <= n * d; ++a) acc += ck[off + a];
        mass[k] = acc;
    }
    return mass;
}

// ---- height: P[max <= h] via a capped pass branched off the free pass ----

template <class T>
std::vector<T> height_masses(const StepSet& s, int n, const std::vector<T>& wts) {
    const int c = s.c, d = s.d;
    // Margin c+d on both sides: each pass clears one full stencil width past
    // its live window, so buffers recycled between capped passes never leak
    // stale cells into the next step's reads.
    const int margin = c + d;
    const int span = n * (c + d) + 1 + 2 * margin;
    const int off = n * c + margin;
    check_dp_size(static_cast<long long>(n + 2) * span * static_cast<long long>(sizeof(T)));

    // Snapshots of the unconstrained pass; the cap at h only binds after step
    // floor(h/d), so each capped pass can start from the free state there.
    std::vector<std::vector<T>> free_state(n + 1);
    {
        std::vector<T> cur(span, T(0));
        cur[off] = T(1);
        free_state[0] = cur;
        std::vector<T> next(span, T(0));
        for (int m = 1; m <= n; ++m) {
            const int lo = -m * c, hi = m * d;
            std::fill(next.begin() + (off + lo - margin), next.begin() + (off + hi + margin + 1), T(0));
            for (size_t i = 0; i < s.steps.size(); ++i) {
                const int j = s.steps[i].jump;
                const T w = wts[i];
                const T* src = cur.data() + (off + lo - j);
                T* dst = next.data() + (off + lo);
                for (int a = lo; a <= hi; ++a) *dst++ += w * *src++;
            }
            std::swap(cur, next);
            free_state[m] = cur;
        }
    }

    const int hmax = n * d;
    std::vector<T> cum(hmax + 1, T(0));
    parallel_for_chunks(hmax + 1, [&](long long h_lo, long long h_hi) {
        std::vector<T> cur(span), next(span, T(0));
        for (long long h = h_lo; h < h_hi; ++h) {
            const int m0 = std::min<long long>(n, h / d);
            cur = free_state[m0];
            for (int m = m0 + 1; m <= n; ++m) {
                const int lo = -m * c, hi = std::min<long long>(m * d, h);
                std::fill(next.begin() + (off + lo - margin), next.begin() + (off + hi + margin + 1), T(0));
                for (size_t i = 0; i < s.steps.size(); ++i) {
                    const int j = s.steps[i].jump;
                    const T w = wts[i];
                    const T* src = cur.data() + (off + lo - j);
                    T* dst = next.data() + (off + lo);
                    for (int a = lo; a <= hi; ++a) *dst++ += w * *src++;
                }
                std::swap(cur, next);
            }
            T acc(0);
            for (int a = -n * c; a <= std::min<long long>(n * d, h); ++a) acc += cur[off + a];
            cum[h] = acc;
        }
    });

    std::vector<T> mass(hmax + 1, T(0));
    mass[0] = cum[0];
    for (int h = 1; h <= hmax; ++h) mass[h] = cum[h] - cum[h - 1];
    return mass;
}

// ---- sign changes: planes by last nonzero sign, ambiguity only at altitude 0 ----

template <class T>
struct SignPlanes {
    // pos[k*rows + a] holds altitude a >= 1 (index a), last nonzero sign +.
    // neg likewise for altitude -a <= -1. At altitude 0 the three scalar rows
    // split by last nonzero sign: +, -, or none seen yet.
    std::vector<T> pos, neg, zp, zn, z0;
};

template <class T>
std::vector<T> signchange_masses(const StepSet& s, int n, bool bridges, const std::vector<T>& wts) {
    if (!s.motzkin_support())
        throw RefusalError("sign-change distribution needs a step support inside {-1,0,+1}");
    T wm(0), w0(0), wp(0);
    for (size_t i = 0; i < s.steps.size(); ++i) {
        if (s.steps[i].jump == -1) wm = wts[i];
        if (s.steps[i].jump == 0) w0 = wts[i];
        if (s.steps[i].jump == 1) wp = wts[i];
    }

    const int alts = n + 1;  // altitude rows 0..n (index 0 unused in pos/neg)
    check_dp_size(4LL * (n + 1) * alts * static_cast<long long>(sizeof(T)));
    SignPlanes<T> cur, next;
    auto zero_planes = [&](SignPlanes<T>& p) {
        p.pos.assign(static_cast<size_t>(n + 1) * alts, T(0));
        p.neg.assign(static_cast<size_t>(n + 1) * alts, T(0));
        p.zp.assign(n + 1, T(0));
        p.zn.assign(n + 1, T(0));
        p.z0.assign(n + 1, T(0));
    };
    zero_planes(cur);
    zero_planes(next);
    cur.z0[0] = T(1);

    for (int m = 1; m <= n; ++m) {
        const int amax = m;
        const int kmax = m;
        parallel_for_chunks(kmax + 1, [&](long long klo, long long khi) {
        for (long long k = klo; k < khi; ++k) {
            T* np = next.pos.data() + static_cast<size_t>(k) * alts;
            T* nn = next.neg.data() + static_cast<size_t>(k) * alts;
            const T* cp = cur.pos.data() + static_cast<size_t>(k) * alts;
            const T* cn = cur.neg.data() + static_cast<size_t>(k) * alts;
            // Interior moves keep the sign, so k is unchanged.
            for (int a = 1; a <= amax; ++a) {
                T acc = w0 * cp[a];
                if (a >= 2) acc += wp * cp[a - 1];
                if (a + 1 <= n) acc += wm * cp[a + 1];
                np[a] = acc;
            }
            for (int a = 1; a <= amax; ++a) {
                T acc = w0 * cn[a];
                if (a >= 2) acc += wm * cn[a - 1];
                if (a + 1 <= n) acc += wp * cn[a + 1];
                nn[a] = acc;
            }
            // Leaving altitude 0 against the remembered sign costs one change.
            np[1] += wp * cur.zp[k] + wp * cur.z0[k];
            nn[1] += wm * cur.zn[k] + wm * cur.z0[k];
            if (k >= 1) {
                np[1] += wp * cur.zn[k - 1];
                nn[1] += wm * cur.zp[k - 1];
            }
            next.zp[k] = w0 * cur.zp[k] + wm * cp[1];
            next.zn[k] = w0 * cur.zn[k] + wp * cn[1];
            next.z0[k] = w0 * cur.z0[k];
        }
        });
        std::swap(cur, next);
    }

    std::vector<T> mass(n + 1, T(0));
    for (int k = 0; k <= n; ++k) {
        T acc = cur.zp[k] + cur.zn[k] + cur.z0[k];
        if (!bridges) {
            const T* cp = cur.pos.data() + static_cast<size_t>(k) * alts;
            const T* cn = cur.neg.data() + static_cast<size_t>(k) * alts;
            for (int a = 1; a <= n; ++a) acc += cp[a] + cn[a];
        }
        mass[k] = acc;
    }
    return mass;
}

// ---- shared finishing: normalize, trim, moments ----

ExactDistribution finish_float(Statistic stat, int n, std::vector<double> mass) {
    ExactDistribution d;
    d.stat = stat;
    d.n = n;
    d.exact = false;
    const double total = compensated_sum(mass);
    d.probs.resize(mass.size());
    for (size_t k = 0; k < mass.size(); ++k) d.probs[k] = std::max(0.0, mass[k] / total);
    while (d.probs.size() > 1 && d.probs.back() == 0.0) d.probs.pop_back();
    return d;
}

ExactDistribution finish_exact(Statistic stat, int n, std::vector<Rational> mass) {
    ExactDistribution d;
    d.stat = stat;
    d.n = n;
    d.exact = true;
    Rational total(0);
    for (const Rational& q : mass) total += q;
    if (total == 0) throw NumericError("empty conditioning event: no walks of this kind");
    d.probs_exact.resize(mass.size());
    d.probs.resize(mass.size());
    for (size_t k = 0; k < mass.size(); ++k) {
        d.probs_exact[k] = mass[k] / total;
        d.probs[k] = to_double(d.probs_exact[k]);
    }
    while (d.probs_exact.size() > 1 && d.probs_exact.back() == 0) {
        d.probs_exact.pop_back();
        d.probs.pop_back();
    }
    return d;
}

}  // namespace

double ExactDistribution::mean() const {
    long double acc = 0;
    for (size_t k = 0; k < probs.size(); ++k) acc += static_cast<long double>(k) * probs[k];
    return static_cast<double>(acc);
}

double ExactDistribution::variance() const {
    const long double mu = mean();
    long double acc = 0;
    for (size_t k = 0; k < probs.size(); ++k) {
        const long double dd = static_cast<long double>(k) - mu;
        acc += dd * dd * probs[k];
    }
    return static_cast<double>(acc);
}

ExactDistribution dist_returns(const StepSet& s, int n, bool exact) {
    if (n < 0) throw ValidationError("n must be >= 0");
    if (exact) return finish_exact(Statistic::returns, n, returns_masses<Rational>(s, n, step_weights<Rational>(s, false)));
    return finish_float(Statistic::returns, n, returns_masses<double>(s, n, step_weights<double>(s, true)));
}

ExactDistribution dist_height(const StepSet& s, int n, bool exact) {
    if (n < 0) throw ValidationError("n must be >= 0");
    if (exact) return finish_exact(Statistic::height, n, height_masses<Rational>(s, n, step_weights<Rational>(s, false)));
    return finish_float(Statistic::height, n, height_masses<double>(s, n, step_weights<double>(s, true)));
}

ExactDistribution dist_signchanges(const StepSet& s, int n, bool bridges, bool exact) {
    if (n < 0) throw ValidationError("n must be >= 0");
    const Statistic st = bridges ? Statistic::signchanges_bridges : Statistic::signchanges;
    if (exact) return finish_exact(st, n, signchange_masses<Rational>(s, n, bridges, step_weights<Rational>(s, false)));
    return finish_float(st, n, signchange_masses<double>(s, n, bridges, step_weights<double>(s, true)));
}

ExactDistribution dist_compute(const StepSet& s, Statistic stat, int n, bool exact) {
    switch (stat) {
        case Statistic::returns: return dist_returns(s, n, exact);
        case Statistic::height: return dist_height(s, n, exact);
        case Statistic::signchanges: return dist_signchanges(s, n, false, exact);
        case Statistic::signchanges_bridges: return dist_signchanges(s, n, true, exact);
    }
    throw ValidationError("unknown statistic");
}

}  // namespace walklab

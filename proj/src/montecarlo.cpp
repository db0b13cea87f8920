#include "walklab/montecarlo.hpp"

#include <algorithm>
#include <cmath>

namespace walklab {

namespace {

// splitmix64: Steele, Lea & Flood's fixed-increment generator. Tiny state,
// solid equidistribution for this workload, trivially seedable per trial.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

// Vose's alias table: O(1) draws from the step distribution.
struct AliasTable {
    std::vector<double> prob;
    std::vector<int> alias;

    explicit AliasTable(const std::vector<double>& p) {
        const int m = static_cast<int>(p.size());
        prob.assign(m, 0.0);
        alias.assign(m, 0);
        std::vector<double> scaled(m);
        std::vector<int> small, large;
        for (int i = 0; i < m; ++i) {
            scaled[i] = p[i] * m;
            (scaled[i] < 1.0 ? small : large).push_back(i);
        }
        while (!small.empty() && !large.empty()) {
            const int s = small.back(), l = large.back();
            small.pop_back();
            large.pop_back();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        for (int i : large) prob[i] = 1.0;
        for (int i : small) prob[i] = 1.0;
    }

    int draw(SplitMix64& rng) const {
        const std::uint64_t r = rng.next();
        // High bits pick the column (unbiased enough at these column counts).
        const int i = static_cast<int>((static_cast<unsigned __int128>(r) * prob.size()) >> 64);
        return (rng.uniform01() < prob[i]) ? i : alias[i];
    }
};

}  // namespace

const std::vector<double>& SampleSummary::probs(Statistic stat) const {
    switch (stat) {
        case Statistic::returns: return returns_probs;
        case Statistic::height: return height_probs;
        case Statistic::signchanges:
            if (!has_signchanges)
                throw RefusalError("sign changes were not sampled for this step support");
            return signchanges_probs;
        case Statistic::signchanges_bridges:
            throw RefusalError("the sampler draws unconditioned walks; bridge laws are not available");
    }
    throw ValidationError("unknown statistic");
}

double SampleSummary::mean(Statistic stat) const {
    const auto& p = probs(stat);
    double acc = 0;
    for (size_t k = 0; k < p.size(); ++k) acc += double(k) * p[k];
    return acc;
}

double SampleSummary::variance(Statistic stat) const {
    const auto& p = probs(stat);
    const double mu = mean(stat);
    double acc = 0;
    for (size_t k = 0; k < p.size(); ++k) acc += (double(k) - mu) * (double(k) - mu) * p[k];
    return acc;
}

SampleSummary simulate(const StepSet& s, int n, std::int64_t trials, std::uint64_t seed) {
    if (n < 0) throw ValidationError("n must be >= 0");
    if (trials <= 0) throw ValidationError("trials must be positive");

    const double p1 = to_double(s.total_weight());
    std::vector<double> p;
    std::vector<int> jumps;
    for (const Step& st : s.steps) {
        p.push_back(st.w / p1);
        jumps.push_back(st.jump);
    }
    const AliasTable table(p);
    const bool track_signs = s.motzkin_support();

    std::vector<std::int64_t> ret_hist(n + 1, 0), hgt_hist(static_cast<size_t>(n) * s.d + 1, 0),
        sc_hist(n + 1, 0);

    for (std::int64_t t = 0; t < trials; ++t) {
        // Independent stream per trial: same increment family as the generator
        // itself, so streams never collide for distinct trial indexes.
        SplitMix64 rng(seed + static_cast<std::uint64_t>(t + 1) * 0x9E3779B97F4A7C15ULL);
        long alt = 0, maxalt = 0;
        int returns = 0, changes = 0, last_sign = 0;
        for (int i = 0; i < n; ++i) {
            alt += jumps[table.draw(rng)];
            if (alt == 0) ++returns;
            if (alt > maxalt) maxalt = alt;
            if (track_signs && alt != 0) {
                const int sign = alt > 0 ? 1 : -1;
                if (last_sign != 0 && sign != last_sign) ++changes;
                last_sign = sign;
            }
        }
        ++ret_hist[returns];
        ++hgt_hist[maxalt];
        if (track_signs) ++sc_hist[changes];
    }

    SampleSummary out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    out.has_signchanges = track_signs;
    auto to_probs = [&](const std::vector<std::int64_t>& h) {
        std::vector<double> v(h.size());
        for (size_t i = 0; i < h.size(); ++i) v[i] = double(h[i]) / double(trials);
        while (v.size() > 1 && v.back() == 0.0) v.pop_back();
        return v;
    };
    out.returns_probs = to_probs(ret_hist);
    out.height_probs = to_probs(hgt_hist);
    if (track_signs) out.signchanges_probs = to_probs(sc_hist);
    return out;
}

}  // namespace walklab

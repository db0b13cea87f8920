#include "walklab/steps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace walklab {

bool StepSet::has_jump(int j) const {
    for (const Step& st : steps)
        if (st.jump == j) return true;
    return false;
}

double StepSet::weight(int j) const {
    for (const Step& st : steps)
        if (st.jump == j) return st.w;
    return 0.0;
}

Rational StepSet::weight_exact(int j) const {
    for (const Step& st : steps)
        if (st.jump == j) return st.weight;
    return Rational(0);
}

bool StepSet::motzkin_support() const {
    if (c != 1 || d != 1) return false;
    for (const Step& st : steps)
        if (st.jump < -1 || st.jump > 1) return false;
    return true;
}

Rational StepSet::total_weight() const {
    Rational t(0);
    for (const Step& st : steps) t += st.weight;
    return t;
}

StepSet make_step_set(std::vector<std::pair<int, Rational>> entries) {
    if (entries.empty()) throw ValidationError("step set is empty");
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    StepSet s;
    int prev_jump = 0;
    bool first = true;
    for (auto& [jump, weight] : entries) {
        if (jump < -1024 || jump > 1024) throw ValidationError("jump out of range: " + std::to_string(jump));
        if (!first && jump == prev_jump) throw ValidationError("duplicate jump: " + std::to_string(jump));
        if (weight <= 0) throw ValidationError("weight must be positive for jump " + std::to_string(jump));
        prev_jump = jump;
        first = false;
        Step st;
        st.jump = jump;
        st.weight = weight;
        st.w = to_double(weight);
        s.steps.push_back(std::move(st));
    }
    const int lo = s.steps.front().jump, hi = s.steps.back().jump;
    if (lo >= 0) throw ValidationError("need at least one negative jump");
    if (hi <= 0) throw ValidationError("need at least one positive jump");
    s.c = -lo;
    s.d = hi;
    return s;
}

StepSet parse_step_set(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad step-set JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("steps") || !j["steps"].is_array())
        throw ValidationError("step-set JSON must be {\"steps\": [...]}");
    std::vector<std::pair<int, Rational>> entries;
    for (const auto& item : j["steps"]) {
        if (!item.is_object() || !item.contains("jump") || !item.contains("weight"))
            throw ValidationError("each step needs \"jump\" and \"weight\"");
        if (!item["jump"].is_number_integer()) throw ValidationError("\"jump\" must be an integer");
        const int jump = item["jump"].get<int>();
        Rational w;
        const auto& jw = item["weight"];
        if (jw.is_string())
            w = parse_rational(jw.get<std::string>());
        else if (jw.is_number_integer())
            w = Rational(static_cast<long>(jw.get<long long>()));
        else if (jw.is_number_float())
            w = parse_rational(jw.dump());  // shortest round-trip decimal, parsed exactly
        else
            throw ValidationError("\"weight\" must be a string or number");
        entries.emplace_back(jump, std::move(w));
    }
    return make_step_set(std::move(entries));
}

StepSet load_step_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open step-set file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_step_set(buf.str());
}

int period(std::span<const int> jumps) {
    if (jumps.size() < 2) return 0;
    int g = 0;
    const int base = jumps[0];
    for (size_t i = 1; i < jumps.size(); ++i) g = std::gcd(g, std::abs(jumps[i] - base));
    return g;
}

int period(const StepSet& s) {
    std::vector<int> jumps;
    jumps.reserve(s.steps.size());
    for (const Step& st : s.steps) jumps.push_back(st.jump);
    return period(jumps);
}

std::complex<double> identity_like(const std::complex<double>&) { return {1.0, 0.0}; }

std::complex<double> eval_P(const StepSet& s, std::complex<double> u, int order) {
    return eval_jump_poly(s, u, order);
}

double eval_P(const StepSet& s, double u, int order) {
    double acc = 0;
    for (const Step& st : s.steps) {
        double coef = st.w;
        int e = st.jump;
        if (order >= 1) { coef *= st.jump; e -= 1; }
        if (order >= 2) { coef *= st.jump - 1; e -= 1; }
        if (coef == 0.0) continue;
        acc += coef * std::pow(u, e);
    }
    return acc;
}

Rational eval_P_exact(const StepSet& s, const Rational& u, int order) {
    if (u == 0) throw DomainError("exact jump-polynomial evaluation needs u != 0");
    Rational acc(0);
    const Rational uinv = Rational(1) / u;
    for (const Step& st : s.steps) {
        Rational coef = st.weight;
        int e = st.jump;
        if (order >= 1) { coef *= st.jump; e -= 1; }
        if (order >= 2) { coef *= st.jump - 1; e -= 1; }
        if (coef == 0) continue;
        Rational p(1);
        const Rational& b = (e >= 0) ? u : uinv;
        for (int i = 0; i < std::abs(e); ++i) p *= b;
        acc += coef * p;
    }
    return acc;
}

int StructuralConstants::drift_sign() const {
    if (drift_exact) return sgn(*drift_exact);
    if (std::abs(drift) < 1e-12) return 0;
    return drift > 0 ? 1 : -1;
}

StructuralConstants structural_constants(const StepSet& s) {
    StructuralConstants k;
    k.period = period(s);
    k.drift_exact = eval_P_exact(s, Rational(1), 1);
    k.drift = to_double(*k.drift_exact);
    k.rho1_exact = Rational(1) / eval_P_exact(s, Rational(1), 0);
    k.rho1 = to_double(*k.rho1_exact);

    if (*k.drift_exact == 0) {
        // P' vanishes at 1, so tau = 1 and rho = 1/P(1), both exact.
        k.tau_exact = Rational(1);
        k.rho_exact = k.rho1_exact;
        k.tau = 1.0;
        k.rho = k.rho1;
    } else {
        // P' is strictly increasing on (0, inf): bracket then bisect, Newton polish.
        double lo = 1e-9, hi = 1.0;
        while (eval_P(s, hi, 1) < 0) {
            hi *= 2;
            if (hi > 1e12) throw NumericError("failed to bracket the structural constant");
        }
        if (eval_P(s, lo, 1) > 0) throw NumericError("failed to bracket the structural constant");
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (hi + lo); ++it) {
            const double mid = 0.5 * (lo + hi);
            (eval_P(s, mid, 1) < 0 ? lo : hi) = mid;
        }
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it) {
            const double d1 = eval_P(s, t, 1), d2 = eval_P(s, t, 2);
            if (d2 <= 0) break;
            t -= d1 / d2;
        }
        k.tau = t;
        k.rho = 1.0 / eval_P(s, t, 0);
    }
    k.big_c = std::sqrt(2.0 * eval_P(s, k.tau, 0) / eval_P(s, k.tau, 2));
    return k;
}

}  // namespace walklab

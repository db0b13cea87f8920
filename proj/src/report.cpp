#include "walklab/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace walklab {

std::string format_double(double x) {
    if (std::isnan(x)) return "null";
    if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string out(buf, res.ptr);
    // Bare integers stay parseable as doubles downstream either way; keep them bare.
    return out;
}

namespace {

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(v, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

Json json_steps(const StepSet& s) {
    Json arr = Json::array();
    for (const Step& st : s.steps) {
        Json e;
        e["jump"] = st.jump;
        e["weight"] = rational_to_string(st.weight);
        arr.push_back(e);
    }
    return arr;
}

Json json_constants(const StructuralConstants& k, bool exact) {
    Json c;
    c["tau"] = k.tau;
    if (exact && k.tau_exact) c["tau_exact"] = rational_to_string(*k.tau_exact);
    c["rho"] = k.rho;
    if (exact && k.rho_exact) c["rho_exact"] = rational_to_string(*k.rho_exact);
    c["rho1"] = k.rho1;
    if (exact && k.rho1_exact) c["rho1_exact"] = rational_to_string(*k.rho1_exact);
    c["drift"] = k.drift;
    if (exact && k.drift_exact) c["drift_exact"] = rational_to_string(*k.drift_exact);
    c["big_c"] = k.big_c;
    c["period"] = k.period;
    return c;
}

Json json_law(const LimitLaw& law) {
    Json out;
    out["law"] = law_name(law);
    Json params;
    if (const auto* g = std::get_if<Geometric>(&law.law)) {
        params["p"] = g->p;
        params["ratio"] = g->ratio();
    } else if (const auto* h = std::get_if<HalfNormal>(&law.law)) {
        params["sigma"] = h->sigma;
    } else if (const auto* r = std::get_if<RayleighLaw>(&law.law)) {
        params["sigma"] = r->sigma;
    } else if (const auto* nl = std::get_if<NormalLaw>(&law.law)) {
        params["mu"] = nl->mu;
        params["sigma2"] = nl->sigma2;
    } else if (const auto* dl = std::get_if<DiscreteLargeBranch>(&law.law)) {
        Json probs = Json::array();
        for (double p : dl->probs) probs.push_back(p);
        params["probs"] = probs;
        params["tail_mass"] = dl->tail_mass;
    }
    out["params"] = params;
    out["scaling"] = scaling_name(law.scaling);
    return out;
}

Json json_distribution(const ExactDistribution& d) {
    Json out;
    out["stat"] = to_string(d.stat);
    out["n"] = d.n;
    out["arithmetic"] = d.exact ? "exact" : "float";
    Json probs = Json::array();
    if (d.exact)
        for (const Rational& q : d.probs_exact) probs.push_back(rational_to_string(q));
    else
        for (double p : d.probs) probs.push_back(p);
    out["probs"] = probs;
    out["mean"] = d.mean();
    out["variance"] = d.variance();
    return out;
}

Json json_scheme(const SchemeReport& rep) {
    Json out;
    out["app"] = scheme_app_name(rep.app);
    out["rho"] = rep.rho;
    auto val = [](const ExtrapolatedValue& v) {
        Json j;
        j["value"] = v.value;
        j["error"] = v.error;
        return j;
    };
    Json vals;
    vals["g"] = val(rep.g);
    vals["h"] = val(rep.h);
    vals["g_u"] = val(rep.g_u);
    vals["g_uu"] = val(rep.g_uu);
    vals["g_z"] = val(rep.g_z);
    vals["h_u"] = val(rep.h_u);
    out["values"] = vals;
    if (std::isfinite(rep.sigma)) out["sigma"] = rep.sigma;
    if (rep.sigma_predicted) out["sigma_predicted"] = *rep.sigma_predicted;
    out["verdict"] = verdict_name(rep.verdict);
    Json conds = Json::array();
    for (const std::string& c : rep.conditions) conds.push_back(c);
    out["conditions"] = conds;
    out["assumed"] = rep.assumed;
    out["tol"] = rep.tol;
    return out;
}

Json json_branches(const KernelRoots& kr) {
    auto cplx = [](Complex v) {
        Json j;
        j["re"] = v.real();
        j["im"] = v.imag();
        return j;
    };
    Json out;
    out["z"] = cplx(kr.z);
    Json small = Json::array(), large = Json::array();
    for (Complex u : kr.small) small.push_back(cplx(u));
    for (Complex v : kr.large) large.push_back(cplx(v));
    out["small"] = small;
    out["large"] = large;
    out["principal_small"] = kr.principal_small;
    out["principal_large"] = kr.principal_large;
    Json res = Json::array();
    for (double r : kr.residuals) res.push_back(r);
    out["residuals"] = res;
    out["collided"] = kr.collided;
    return out;
}

Json json_convergence(const ConvergenceReport& rep) {
    Json out;
    out["stat"] = to_string(rep.stat);
    out["regime"] = rep.regime;
    out["law"] = json_law(rep.law);
    Json rows = Json::array();
    for (const ConvergenceRow& r : rep.rows) {
        Json row;
        row["n"] = r.n;
        row["d"] = r.d;
        if (r.e) row["e"] = *r.e;
        if (r.m) row["m"] = *r.m;
        rows.push_back(row);
    }
    out["rows"] = rows;
    out["distances_decreasing"] = rep.distances_decreasing;
    out["threshold"] = rep.threshold;
    out["final_below_threshold"] = rep.final_below_threshold;
    return out;
}

Json json_simulation(const SampleSummary& sum, Statistic stat) {
    Json out;
    out["stat"] = to_string(stat);
    out["n"] = sum.n;
    out["trials"] = sum.trials;
    out["seed"] = sum.seed;
    Json probs = Json::array();
    for (double p : sum.probs(stat)) probs.push_back(p);
    out["probs"] = probs;
    out["mean"] = sum.mean(stat);
    out["variance"] = sum.variance(stat);
    return out;
}

AnalysisReport analyze(const StepSet& s, bool exact) {
    AnalysisReport rep;
    rep.steps = s;
    rep.consts = structural_constants(s);
    rep.exact = exact;
    if (rep.consts.period != 1)
        rep.warnings.push_back("periodic step set (period " + std::to_string(rep.consts.period) +
                               "): limit-law predictions are not available");
    else if (!s.motzkin_support())
        rep.warnings.push_back(
            "step support goes beyond {-1,0,+1}: sign-change statistics are not available");
    return rep;
}

Json AnalysisReport::to_json() const {
    Json out;
    Json tool;
    tool["name"] = "walklab";
    tool["version"] = kToolVersion;
    tool["arithmetic"] = exact ? "exact" : "float";
    out["tool"] = tool;
    out["steps"] = json_steps(steps);
    out["constants"] = json_constants(consts, exact);
    const int sign = consts.drift_sign();
    out["regime"] = sign < 0 ? "negative drift" : (sign > 0 ? "positive drift" : "zero drift");
    Json warn = Json::array();
    for (const std::string& w : warnings) warn.push_back(w);
    out["warnings"] = warn;

    if (consts.period == 1) {
        Json pred;
        pred["returns"] = json_law(predict(steps, consts, Statistic::returns));
        pred["height"] = json_law(predict(steps, consts, Statistic::height));
        if (steps.motzkin_support()) {
            pred["signchanges"] = json_law(predict(steps, consts, Statistic::signchanges));
            pred["signchanges_bridges"] =
                json_law(predict(steps, consts, Statistic::signchanges_bridges));
        }
        out["predictions"] = pred;
    }

    Json rel = Json::array();
    {
        Json r;
        r["statistic"] = "returns";
        r["bivariate"] = "W(z,u) = W(z) / (u + (1-u) B(z))";
        r["components"] = Json::array({"W(z) = 1/(1 - z P(1))",
                                       "B(z) = z sum_i u_i'(z)/u_i(z)",
                                       "A(z) = 1 - 1/B(z)",
                                       "T(z) = W(z)/B(z)"});
        rel.push_back(r);
    }
    {
        Json r;
        r["statistic"] = "height";
        r["bivariate"] = "F(z,u) = -1 / (p_d z prod_i (1-u_i(z)) prod_l (u-v_l(z)))";
        r["components"] = Json::array({"M(z) = W(z) prod_i (1-u_i(z))",
                                       "E(z) = ((-1)^(c-1)/(p_{-c} z)) prod_i u_i(z)"});
        rel.push_back(r);
    }
    if (steps.motzkin_support()) {
        Json r;
        r["statistic"] = "signchanges";
        r["bivariate"] = "W(z,u) = B(z,u) T(z) + B_+(z,u) (T(z)-1)(u-1)";
        r["components"] = Json::array({"B(z,u) = C(z) (1 + 2 E1(z)/(1 - u E1(z)))",
                                       "B_+(z,u) = (E(z) - C(z))/(1 - u E1(z))",
                                       "C(z) = 1/(1 - p_0 z)",
                                       "E1(z) = E(z)/C(z) - 1"});
        rel.push_back(r);
    }
    out["gf_relations"] = rel;
    return out;
}

namespace {

void csv_rec(const Json& j, const std::string& path, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            csv_rec(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& v : j) csv_rec(v, path + "." + std::to_string(i++), out);
    } else if (j.is_number_float()) {
        out << path << "," << format_double(j.get<double>()) << "\n";
    } else if (j.is_string()) {
        out << path << "," << j.get<std::string>() << "\n";
    } else {
        out << path << "," << j.dump() << "\n";
    }
}

}  // namespace

std::string json_to_csv(const Json& j) {
    std::ostringstream out;
    csv_rec(j, "", out);
    return out.str();
}

}  // namespace walklab

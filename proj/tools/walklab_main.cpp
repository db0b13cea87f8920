#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "walklab/report.hpp"

namespace walklab {

namespace {

Statistic stat_from_name(const std::string& name) {
    for (Statistic st : {Statistic::returns, Statistic::height, Statistic::signchanges,
                         Statistic::signchanges_bridges})
        if (name == to_string(st)) return st;
    throw CLI::ValidationError("--stat", "unknown statistic: " + name);
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
        return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--z", "expected re or re,im");
    }
}

void emit(const Json& j, const std::string& out_mode) {
    if (out_mode == "csv")
        std::cout << json_to_csv(j);
    else
        std::cout << dump_json(j);
}

struct Options {
    std::string steps_path;
    std::string out_mode = "json";
    bool exact = false;
};

int cmd_analyze(const Options& opt) {
    StepSet s = load_step_set(opt.steps_path);
    AnalysisReport rep = analyze(s, opt.exact);
    emit(rep.to_json(), opt.out_mode);
    return rep.consts.period == 1 ? 0 : 2;
}

int cmd_dist(const Options& opt, const std::string& stat_name, int n) {
    StepSet s = load_step_set(opt.steps_path);
    ExactDistribution d = dist_compute(s, stat_from_name(stat_name), n, opt.exact);
    if (opt.out_mode == "csv") {
        std::cout << "k,probability\n";
        for (size_t k = 0; k < (d.exact ? d.probs_exact.size() : d.probs.size()); ++k) {
            std::cout << k << ",";
            if (d.exact)
                std::cout << rational_to_string(d.probs_exact[k]) << "\n";
            else
                std::cout << format_double(d.probs[k]) << "\n";
        }
    } else {
        emit(json_distribution(d), opt.out_mode);
    }
    return 0;
}

int cmd_predict(const Options& opt, const std::string& stat_name) {
    StepSet s = load_step_set(opt.steps_path);
    StructuralConstants k = structural_constants(s);
    LimitLaw law = predict(s, k, stat_from_name(stat_name));
    Json out;
    out["statistic"] = stat_name;
    const int sign = k.drift_sign();
    out["regime"] = sign < 0 ? "negative drift" : (sign > 0 ? "positive drift" : "zero drift");
    out.update(json_law(law));
    emit(out, opt.out_mode);
    return 0;
}

int cmd_converge(const Options& opt, const std::string& stat_name, std::vector<int> ns,
                 double threshold) {
    StepSet s = load_step_set(opt.steps_path);
    StructuralConstants k = structural_constants(s);
    ConvergenceReport rep = convergence_report(s, k, stat_from_name(stat_name), ns, threshold);
    if (opt.out_mode == "csv") {
        std::cout << "n,d_n,e_n,m_n\n";
        for (const ConvergenceRow& r : rep.rows) {
            std::cout << r.n << "," << format_double(r.d) << ",";
            if (r.e) std::cout << format_double(*r.e);
            std::cout << ",";
            if (r.m) std::cout << format_double(*r.m);
            std::cout << "\n";
        }
    } else {
        emit(json_convergence(rep), opt.out_mode);
    }
    return 0;
}

int cmd_scheme_check(const Options& opt, const std::string& app_name, double tol) {
    StepSet s = load_step_set(opt.steps_path);
    StructuralConstants k = structural_constants(s);
    SchemeReport rep = check_hypothesis(scheme_app_from_name(app_name), s, k, tol);
    emit(json_scheme(rep), opt.out_mode);
    return 0;
}

int cmd_simulate(const Options& opt, const std::string& stat_name, int n, long long trials,
                 unsigned long long seed) {
    StepSet s = load_step_set(opt.steps_path);
    SampleSummary sum = simulate(s, n, trials, seed);
    const Statistic st = stat_from_name(stat_name);
    if (opt.out_mode == "csv") {
        std::cout << "k,probability\n";
        const auto& p = sum.probs(st);
        for (size_t k = 0; k < p.size(); ++k)
            std::cout << k << "," << format_double(p[k]) << "\n";
    } else {
        emit(json_simulation(sum, st), opt.out_mode);
    }
    return 0;
}

int cmd_coeffs(const Options& opt, const std::string& family, int n) {
    StepSet s = load_step_set(opt.steps_path);
    SeriesTable t = coeffs(s, family_from_name(family), n, opt.exact);
    if (opt.out_mode == "csv") {
        std::cout << "n,coefficient\n";
        for (size_t m = 0; m < t.size(); ++m) {
            std::cout << m << ",";
            if (t.exact)
                std::cout << rational_to_string(t.exact_coeffs[m]) << "\n";
            else
                std::cout << format_double(t.values[m]) << "\n";
        }
    } else {
        Json out;
        out["family"] = family;
        out["arithmetic"] = t.exact ? "exact" : "float";
        Json cs = Json::array();
        if (t.exact)
            for (const Rational& q : t.exact_coeffs) cs.push_back(rational_to_string(q));
        else
            for (double v : t.values) cs.push_back(v);
        out["coefficients"] = cs;
        emit(out, opt.out_mode);
    }
    return 0;
}

int cmd_branches(const Options& opt, const std::string& z_text) {
    StepSet s = load_step_set(opt.steps_path);
    StructuralConstants k = structural_constants(s);
    KernelRoots kr = kernel_roots(s, k, parse_complex(z_text));
    emit(json_branches(kr), opt.out_mode);
    return 0;
}

int cmd_dispatch(int argc, char** argv) {
    CLI::App app{
        "walklab: exact distributions, limit laws, and singular-decomposition checks\n"
        "for statistics of weighted lattice paths. WALKLAB_THREADS caps DP workers."};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--out", opt.out_mode, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--exact", opt.exact, "use exact rational arithmetic where supported");

    auto add_steps = [&](CLI::App* cmd) {
        cmd->add_option("--steps", opt.steps_path, "step-set JSON file")->required();
    };

    auto* a_analyze = app.add_subcommand("analyze", "constants, regime, and limit-law predictions");
    add_steps(a_analyze);

    std::string stat = "returns";
    int n = 0;
    auto* a_dist = app.add_subcommand("dist", "finite-n distribution of a statistic");
    add_steps(a_dist);
    a_dist->add_option("--stat", stat, "statistic")->required();
    a_dist->add_option("--n", n, "walk length")->required();

    auto* a_predict = app.add_subcommand("predict", "limiting law of a statistic");
    add_steps(a_predict);
    a_predict->add_option("--stat", stat, "statistic")->required();

    std::vector<int> ns;
    double threshold = 0.05;
    auto* a_converge = app.add_subcommand("converge", "distance to the limit along a schedule of n");
    add_steps(a_converge);
    a_converge->add_option("--stat", stat, "statistic")->required();
    a_converge->add_option("--ns", ns, "lengths (comma separated)")->required()->delimiter(',');
    a_converge->add_option("--threshold", threshold, "final-distance acceptance bound")
        ->capture_default_str();

    std::string scheme_app = "returns";
    double tol = 1e-5;
    auto* a_scheme = app.add_subcommand("scheme-check", "singular-decomposition hypothesis check");
    add_steps(a_scheme);
    a_scheme->add_option("--app", scheme_app, "counting function to decompose")->required();
    a_scheme->add_option("--tol", tol, "extrapolation error budget")->capture_default_str();

    long long trials = 100000;
    unsigned long long seed = 12345;
    auto* a_sim = app.add_subcommand("simulate", "Monte Carlo histogram of a statistic");
    add_steps(a_sim);
    a_sim->add_option("--stat", stat, "statistic")->capture_default_str();
    a_sim->add_option("--n", n, "walk length")->required();
    a_sim->add_option("--trials", trials, "number of walks")->capture_default_str();
    a_sim->add_option("--seed", seed, "RNG seed")->capture_default_str();

    std::string family = "walks";
    auto* a_coeffs = app.add_subcommand("coeffs", "counting sequence of a walk family");
    add_steps(a_coeffs);
    a_coeffs->add_option("--family", family, "walk family")->required();
    a_coeffs->add_option("--n", n, "maximum length")->required();

    std::string z_text = "0.1";
    auto* a_branches = app.add_subcommand("branches", "kernel roots at a point");
    add_steps(a_branches);
    a_branches->add_option("--z", z_text, "evaluation point: re or re,im")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (a_analyze->parsed()) return cmd_analyze(opt);
        if (a_dist->parsed()) return cmd_dist(opt, stat, n);
        if (a_predict->parsed()) return cmd_predict(opt, stat);
        if (a_converge->parsed()) return cmd_converge(opt, stat, ns, threshold);
        if (a_scheme->parsed()) return cmd_scheme_check(opt, scheme_app, tol);
        if (a_sim->parsed()) return cmd_simulate(opt, stat, n, trials, seed);
        if (a_coeffs->parsed()) return cmd_coeffs(opt, family, n);
        if (a_branches->parsed()) return cmd_branches(opt, z_text);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SingularityError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

}  // namespace

}  // namespace walklab

int main(int argc, char** argv) { return walklab::cmd_dispatch(argc, argv); }

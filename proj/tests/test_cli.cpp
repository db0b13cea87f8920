#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Runs the installed CLI, capturing stdout; stderr is dropped.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WALKLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int rc = pclose(pipe);
    if (rc != -1 && WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
    return r;
}

std::string fixture_path(const std::string& name) {
    return std::string(WALKLAB_FIXTURES_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "cannot open ", path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

nlohmann::json parse_json(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("cli dist emits exact csv") {
    const auto r = run_cli("--exact --out csv dist --steps " + fixture_path("motzkin_111.json") +
                           " --stat returns --n 2");
    CHECK(r.status == 0);
    CHECK(r.out == "k,probability\n0,4/9\n1,4/9\n2,1/9\n");
}

TEST_CASE("cli coeffs emits exact csv") {
    const auto r = run_cli("--exact --out csv coeffs --steps " + fixture_path("motzkin_111.json") +
                           " --family excursions --n 6");
    CHECK(r.status == 0);
    CHECK(r.out == "n,coefficient\n0,1\n1,1\n2,2\n3,4\n4,9\n5,21\n6,51\n");
}

TEST_CASE("cli analyze emits a parseable report") {
    const auto r = run_cli("--exact analyze --steps " + fixture_path("motzkin_111.json"));
    CHECK(r.status == 0);
    const auto j = parse_json(r.out);
    CHECK(j["tool"]["name"] == "walklab");
    CHECK(j["tool"]["arithmetic"] == "exact");
    CHECK(j["constants"]["period"] == 1);
    CHECK(j["constants"]["rho_exact"] == "1/3");
    CHECK(j["constants"]["tau_exact"] == "1");
    CHECK(j["regime"] == "zero drift");
    CHECK(j["warnings"].empty());
    CHECK(j["predictions"]["returns"]["law"] == "half_normal");
    CHECK(j["predictions"]["returns"]["params"]["sigma"].get<double>() ==
          doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    CHECK(j["predictions"]["height"]["law"] == "half_normal");
    CHECK(j["predictions"]["signchanges"]["law"] == "half_normal");
    CHECK(j["predictions"]["signchanges_bridges"]["law"] == "rayleigh");
}

TEST_CASE("cli analyze output is byte stable") {
    for (const std::string m : {"111", "211", "112"}) {
        CAPTURE(m);
        const std::string golden = slurp(fixture_path("golden_analyze_" + m + ".json"));
        const auto r = run_cli("--exact analyze --steps " + fixture_path("motzkin_" + m + ".json"));
        CHECK(r.status == 0);
        CHECK(r.out == golden);
    }
}

TEST_CASE("cli predict names the law and regime") {
    {
        const auto r =
            run_cli("predict --steps " + fixture_path("motzkin_211.json") + " --stat returns");
        CHECK(r.status == 0);
        const auto j = parse_json(r.out);
        CHECK(j["statistic"] == "returns");
        CHECK(j["regime"] == "negative drift");
        CHECK(j["law"] == "geometric");
        CHECK(j["params"]["p"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(j["params"]["ratio"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(j["scaling"] == "none");
    }
    {
        const auto r =
            run_cli("predict --steps " + fixture_path("motzkin_112.json") + " --stat height");
        CHECK(r.status == 0);
        const auto j = parse_json(r.out);
        CHECK(j["regime"] == "positive drift");
        CHECK(j["law"] == "normal");
        CHECK(j["scaling"] == "standardized");
        CHECK(j["params"]["mu"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(j["params"]["sigma2"].get<double>() == doctest::Approx(0.6875).epsilon(1e-12));
    }
    {
        const auto r =
            run_cli("predict --steps " + fixture_path("motzkin_211.json") + " --stat signchanges");
        CHECK(r.status == 0);
        const auto j = parse_json(r.out);
        CHECK(j["law"] == "geometric");
        CHECK(j["params"]["p"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("cli exit codes distinguish refusals from bad input") {
    CHECK(run_cli("dist --stat returns --n 2").status == 1);
    CHECK(run_cli("analyze --steps " + fixture_path("no_such_file.json")).status == 1);
    CHECK(run_cli("analyze --steps " + fixture_path("bad_zero_weight.json")).status == 1);
    CHECK(run_cli("dist --steps " + fixture_path("motzkin_111.json") + " --stat bogus --n 2").status ==
          1);
    CHECK(run_cli("branches --steps " + fixture_path("motzkin_111.json") + " --z abc").status == 1);
    CHECK(run_cli("branches --steps " + fixture_path("motzkin_111.json") + " --z 0").status == 1);

    const auto refused =
        run_cli("predict --steps " + fixture_path("dyck.json") + " --stat returns");
    CHECK(refused.status == 2);
    CHECK(refused.out.empty());
    CHECK(run_cli("dist --steps " + fixture_path("wide.json") + " --stat signchanges --n 4").status ==
          2);
    CHECK(run_cli("scheme-check --steps " + fixture_path("dyck.json") + " --app returns").status == 2);
    CHECK(run_cli("coeffs --steps " + fixture_path("wide.json") + " --family e1 --n 4").status == 2);
    CHECK(run_cli("simulate --steps " + fixture_path("motzkin_111.json") +
                  " --stat signchanges_bridges --n 4 --trials 10")
              .status == 2);
    CHECK(run_cli("converge --steps " + fixture_path("dyck.json") + " --stat returns --ns 10,20")
              .status == 2);
}

TEST_CASE("cli analyze flags periodic step sets but still reports") {
    const auto r = run_cli("analyze --steps " + fixture_path("dyck.json"));
    CHECK(r.status == 2);
    const auto j = parse_json(r.out);
    CHECK(j["constants"]["period"] == 2);
    CHECK(!j.contains("predictions"));
    CHECK(j["warnings"].size() == 1);
}

TEST_CASE("cli simulate is deterministic for a fixed seed") {
    const std::string args = "simulate --steps " + fixture_path("motzkin_111.json") +
                             " --stat returns --n 6 --trials 2000 --seed 42";
    const auto r1 = run_cli(args);
    const auto r2 = run_cli(args);
    CHECK(r1.status == 0);
    CHECK(r1.out == r2.out);
    const auto j = parse_json(r1.out);
    CHECK(j["seed"] == 42);
    CHECK(j["trials"] == 2000);
    double total = 0.0;
    for (const auto& p : j["probs"]) total += p.get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli csv mode flattens nested reports") {
    const auto r = run_cli("--out csv analyze --steps " + fixture_path("motzkin_211.json"));
    CHECK(r.status == 0);
    CHECK(r.out.rfind("tool.name,walklab\n", 0) == 0);
    CHECK(r.out.find("\nconstants.period,1\n") != std::string::npos);
    CHECK(r.out.find("\nregime,negative drift\n") != std::string::npos);
}

TEST_CASE("cli converge emits the schedule as csv") {
    const auto r = run_cli("--out csv converge --steps " + fixture_path("motzkin_211.json") +
                           " --stat returns --ns 20,40 --threshold 0.5");
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "n,d_n,e_n,m_n");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("20,", 0) == 0);
    CHECK(line.substr(line.size() - 2) == ",,");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("40,", 0) == 0);
}

TEST_CASE("cli scheme-check reports a verdict") {
    const auto r =
        run_cli("scheme-check --steps " + fixture_path("motzkin_111.json") + " --app returns");
    CHECK(r.status == 0);
    const auto j = parse_json(r.out);
    CHECK(j["app"] == "returns");
    CHECK(j["verdict"] == "half_normal");
    CHECK(j["sigma"].get<double>() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-3));
    CHECK(j["sigma_predicted"].get<double>() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    CHECK(j["values"]["g"].contains("value"));
}

TEST_CASE("cli dist float mode stays normalized") {
    const auto r = run_cli("dist --steps " + fixture_path("motzkin_112.json") +
                           " --stat height --n 10");
    CHECK(r.status == 0);
    const auto j = parse_json(r.out);
    CHECK(j["stat"] == "height");
    CHECK(j["n"] == 10);
    CHECK(j["arithmetic"] == "float");
    double total = 0.0;
    for (const auto& p : j["probs"]) total += p.get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

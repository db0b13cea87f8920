#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "walklab/steps.hpp"

using namespace walklab;
using testing::motzkin;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("1e2") == Rational(100));
    CHECK(parse_rational(" 2 / 3 ") == Rational(2, 3));
    CHECK(rational_to_string(Rational(1, 4)) == "1/4");
    CHECK(rational_to_string(parse_rational("-8/2")) == "-4");
    CHECK_THROWS_AS(parse_rational(""), ValidationError);
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ValidationError);
}

TEST_CASE("step set validation") {
    CHECK_THROWS_AS(make_step_set({}), ValidationError);
    CHECK_THROWS_AS(make_step_set({{1, Rational(1)}}), ValidationError);   // no negative jump
    CHECK_THROWS_AS(make_step_set({{-1, Rational(1)}}), ValidationError);  // no positive jump
    CHECK_THROWS_AS(make_step_set({{-1, Rational(1)}, {1, Rational(0)}}), ValidationError);
    CHECK_THROWS_AS(make_step_set({{-1, Rational(1)}, {-1, Rational(2)}, {1, Rational(1)}}),
                    ValidationError);

    const StepSet s = motzkin(2, 1, 1);
    CHECK(s.c == 1);
    CHECK(s.d == 1);
    CHECK(s.weight(-1) == 2.0);
    CHECK(s.weight(5) == 0.0);
    CHECK(s.motzkin_support());
    CHECK(s.total_weight() == Rational(4));

    const StepSet big = make_step_set({{-2, Rational(1)}, {3, Rational(1, 2)}});
    CHECK(big.c == 2);
    CHECK(big.d == 3);
    CHECK(!big.motzkin_support());
}

TEST_CASE("step set JSON") {
    const StepSet s = parse_step_set(
        R"({"steps":[{"jump":-1,"weight":"1/2"},{"jump":0,"weight":0.25},{"jump":1,"weight":2}]})");
    CHECK(s.weight_exact(-1) == Rational(1, 2));
    CHECK(s.weight_exact(0) == Rational(1, 4));
    CHECK(s.weight_exact(1) == Rational(2));
    CHECK_THROWS_AS(parse_step_set("{\"steps\":3}"), ValidationError);
    CHECK_THROWS_AS(parse_step_set("not json"), ValidationError);
    CHECK_THROWS_AS(parse_step_set(R"({"steps":[{"jump":1}]})"), ValidationError);
}

TEST_CASE("period") {
    CHECK(period(motzkin(1, 1, 1)) == 1);
    CHECK(period(make_step_set({{-1, Rational(1)}, {1, Rational(1)}})) == 2);
    CHECK(period(make_step_set({{-2, Rational(1)}, {1, Rational(1)}})) == 3);
    CHECK(period(make_step_set({{-2, Rational(1)}, {2, Rational(1)}})) == 4);
    const int single[] = {3};
    CHECK(period(std::span<const int>(single)) == 0);
}

TEST_CASE("jump polynomial derivatives match finite differences") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> upick(0.4, 2.0);
    std::uniform_int_distribution<int> wpick(1, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::pair<int, Rational>> entries;
        std::uniform_int_distribution<int> cpick(1, 3), dpick(1, 3);
        const int c = cpick(rng), d = dpick(rng);
        for (int j = -c; j <= d; ++j) {
            if (j != -c && j != d && rng() % 2) continue;
            entries.emplace_back(j, Rational(wpick(rng)));
        }
        const StepSet s = make_step_set(std::move(entries));
        const double u = upick(rng);
        const double h = 1e-5 * u;
        for (int order = 0; order < 2; ++order) {
            const double fd =
                (eval_P(s, u + h, order) - eval_P(s, u - h, order)) / (2 * h);
            const double an = eval_P(s, u, order + 1);
            CHECK(std::abs(fd - an) < 1e-5 * (1.0 + std::abs(an)));
        }
    }
}

TEST_CASE("exact jump polynomial agrees with float") {
    const StepSet s = make_step_set({{-2, Rational(1, 3)}, {0, Rational(2)}, {1, Rational(5, 7)}});
    for (int order = 0; order <= 2; ++order) {
        const Rational at_half = eval_P_exact(s, Rational(1, 2), order);
        CHECK(std::abs(to_double(at_half) - eval_P(s, 0.5, order)) < 1e-12 * (1 + std::abs(to_double(at_half))));
    }
}

TEST_CASE("structural constants: zero drift is exact") {
    const StepSet s = motzkin(1, 1, 1);
    const StructuralConstants k = structural_constants(s);
    CHECK(k.period == 1);
    REQUIRE(k.drift_exact.has_value());
    CHECK(*k.drift_exact == 0);
    REQUIRE(k.tau_exact.has_value());
    CHECK(*k.tau_exact == 1);
    REQUIRE(k.rho_exact.has_value());
    CHECK(*k.rho_exact == Rational(1, 3));
    CHECK(k.tau == 1.0);
    CHECK(k.rho == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(k.big_c == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(k.drift_sign() == 0);
}

TEST_CASE("structural constants under drift") {
    const StepSet s = motzkin(2, 1, 1);
    const StructuralConstants k = structural_constants(s);
    CHECK(*k.drift_exact == Rational(-1));
    CHECK(k.drift_sign() == -1);
    CHECK(!k.tau_exact.has_value());
    CHECK(*k.rho1_exact == Rational(1, 4));
    CHECK(k.tau == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(k.rho == doctest::Approx(1.0 / (1.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-12));

    const StepSet m = motzkin(1, 1, 2);
    const StructuralConstants km = structural_constants(m);
    CHECK(km.drift_sign() == 1);
    // Mirror image: same radius, reciprocal structural constant.
    CHECK(km.rho == doctest::Approx(k.rho).epsilon(1e-13));
    CHECK(km.tau == doctest::Approx(1.0 / k.tau).epsilon(1e-12));
}

TEST_CASE("radius ordering follows the drift") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> wpick(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const StepSet s = motzkin(wpick(rng), wpick(rng), wpick(rng));
        const StructuralConstants k = structural_constants(s);
        CHECK(k.rho >= k.rho1 * (1 - 1e-12));
        if (k.drift_sign() == 0)
            CHECK(k.rho == doctest::Approx(k.rho1).epsilon(1e-14));
        else
            CHECK(k.rho > k.rho1 * (1 + 1e-12));
    }
}

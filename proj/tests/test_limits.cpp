#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "walklab/kernel.hpp"
#include "walklab/limits.hpp"

using namespace walklab;
using testing::motzkin;

namespace {

double integrate_pdf(const LimitLaw& l, double lo, double hi, int steps = 200000) {
    // Simpson rule; the integrand is smooth on the chosen ranges.
    const double h = (hi - lo) / steps;
    double acc = law_eval(l, Query::pdf, lo) + law_eval(l, Query::pdf, hi);
    for (int i = 1; i < steps; ++i)
        acc += law_eval(l, Query::pdf, lo + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("zero drift gives sqrt-n scaled limits with explicit spreads") {
    const StepSet s = motzkin(1, 1, 1);
    const StructuralConstants k = structural_constants(s);
    // P(1) = 3, P''(1) = 2.

    const LimitLaw ret = predict(s, k, Statistic::returns);
    REQUIRE(std::holds_alternative<HalfNormal>(ret.law));
    CHECK(ret.scaling == Scaling::sqrt_n);
    CHECK(std::get<HalfNormal>(ret.law).sigma == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));

    const LimitLaw hgt = predict(s, k, Statistic::height);
    REQUIRE(std::holds_alternative<HalfNormal>(hgt.law));
    CHECK(std::get<HalfNormal>(hgt.law).sigma == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    const LimitLaw sc = predict(s, k, Statistic::signchanges);
    REQUIRE(std::holds_alternative<HalfNormal>(sc.law));
    CHECK(std::get<HalfNormal>(sc.law).sigma ==
          doctest::Approx(0.5 * std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    const LimitLaw scb = predict(s, k, Statistic::signchanges_bridges);
    REQUIRE(std::holds_alternative<RayleighLaw>(scb.law));
    CHECK(scb.scaling == Scaling::sqrt_n);
    CHECK(std::get<RayleighLaw>(scb.law).sigma ==
          doctest::Approx(0.5 * std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("negative drift gives discrete limits") {
    const StepSet s = motzkin(2, 1, 1);
    const StructuralConstants k = structural_constants(s);

    CHECK(b_at_rho1(s, k) == doctest::Approx(4.0).epsilon(1e-9));

    const LimitLaw ret = predict(s, k, Statistic::returns);
    REQUIRE(std::holds_alternative<Geometric>(ret.law));
    CHECK(ret.scaling == Scaling::none);
    CHECK(std::get<Geometric>(ret.law).p == doctest::Approx(0.25).epsilon(1e-9));

    // The only large branch at 1/P(1) is 2, so the height limit is 2^-(k+1).
    const LimitLaw hgt = predict(s, k, Statistic::height);
    REQUIRE(std::holds_alternative<DiscreteLargeBranch>(hgt.law));
    const auto& law = std::get<DiscreteLargeBranch>(hgt.law);
    REQUIRE(law.probs.size() >= 20);
    for (int kk = 0; kk < 20; ++kk)
        CHECK(law.probs[kk] == doctest::Approx(std::pow(2.0, -(kk + 1))).epsilon(1e-9));
    double total = law.tail_mass;
    for (double p : law.probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    const LimitLaw sc = predict(s, k, Statistic::signchanges);
    REQUIRE(std::holds_alternative<Geometric>(sc.law));
    CHECK(std::get<Geometric>(sc.law).p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::get<Geometric>(sc.law).ratio() == doctest::Approx(0.5).epsilon(1e-12));

    const LimitLaw scb = predict(s, k, Statistic::signchanges_bridges);
    REQUIRE(std::holds_alternative<RayleighLaw>(scb.law));
    // tau = sqrt 2: P(tau) = 1 + 2 sqrt 2, P''(tau) = 4/tau^3 = sqrt 2.
    const double want = 0.5 * std::sqrt(2.0) * std::sqrt(std::sqrt(2.0) / (1.0 + 2.0 * std::sqrt(2.0)));
    CHECK(std::get<RayleighLaw>(scb.law).sigma == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("positive drift gives a normal height and geometric returns") {
    const StepSet s = motzkin(1, 1, 2);
    const StructuralConstants k = structural_constants(s);

    const LimitLaw hgt = predict(s, k, Statistic::height);
    REQUIRE(std::holds_alternative<NormalLaw>(hgt.law));
    CHECK(hgt.scaling == Scaling::standardized);
    const auto& nl = std::get<NormalLaw>(hgt.law);
    CHECK(nl.mu == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(nl.sigma2 == doctest::Approx(11.0 / 16.0).epsilon(1e-12));

    const LimitLaw ret = predict(s, k, Statistic::returns);
    REQUIRE(std::holds_alternative<Geometric>(ret.law));
    CHECK(std::get<Geometric>(ret.law).p == doctest::Approx(0.25).epsilon(1e-9));

    const LimitLaw sc = predict(s, k, Statistic::signchanges);
    REQUIRE(std::holds_alternative<Geometric>(sc.law));
    CHECK(std::get<Geometric>(sc.law).p == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bridge generating function value matches P(1)/|drift|") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> w(1, 5);
    for (int t = 0; t < 20; ++t) {
        const StepSet s = motzkin(w(rng), w(rng), w(rng));
        const StructuralConstants k = structural_constants(s);
        if (k.drift_sign() == 0) {
            CHECK_THROWS_AS(b_at_rho1(s, k), SingularityError);
            continue;
        }
        const double want = to_double(s.total_weight()) / std::abs(k.drift);
        CHECK(b_at_rho1(s, k) == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("discrete height law for a wider negative-drift support") {
    // Support {-1,0,+1} with weights (3,1,1): the large branch at 1/P(1) is 3,
    // giving probs (2/3) 3^-k.
    const StepSet s = motzkin(3, 1, 1);
    const StructuralConstants k = structural_constants(s);
    const LimitLaw l = height_discrete_law(s, k);
    const auto& law = std::get<DiscreteLargeBranch>(l.law);
    for (int kk = 0; kk < 10; ++kk)
        CHECK(law.probs[kk] == doctest::Approx((2.0 / 3.0) * std::pow(3.0, -kk)).epsilon(1e-9));
}

TEST_CASE("law evaluation identities") {
    SUBCASE("geometric") {
        LimitLaw l{Geometric{0.25}, Scaling::none};
        CHECK(law_eval(l, Query::pdf, 0) == doctest::Approx(0.25));
        CHECK(law_eval(l, Query::pdf, 3) == doctest::Approx(0.25 * std::pow(0.75, 3)));
        CHECK(law_eval(l, Query::pdf, 2.5) == 0.0);
        CHECK(law_eval(l, Query::cdf, 1.0) == doctest::Approx(1 - 0.75 * 0.75));
        CHECK(law_eval(l, Query::cdf, 1.9) == doctest::Approx(1 - 0.75 * 0.75));
        CHECK(law_eval(l, Query::cdf, -0.5) == 0.0);
        CHECK(law_eval(l, Query::mean) == doctest::Approx(0.75 / 0.25));
        CHECK(law_eval(l, Query::var) == doctest::Approx(0.75 / (0.25 * 0.25)));
    }
    SUBCASE("half normal") {
        LimitLaw l{HalfNormal{1.7}, Scaling::sqrt_n};
        CHECK(law_eval(l, Query::cdf, 0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(law_eval(l, Query::cdf, 1e9) == doctest::Approx(1.0));
        CHECK(law_eval(l, Query::pdf, -1) == 0.0);
        CHECK(law_eval(l, Query::mean) == doctest::Approx(1.7 * std::sqrt(2 / M_PI)));
        CHECK(law_eval(l, Query::var) == doctest::Approx(1.7 * 1.7 * (1 - 2 / M_PI)));
        CHECK(integrate_pdf(l, 0, 20 * 1.7) == doctest::Approx(1.0).epsilon(1e-8));
        // cdf matches the integral of the pdf at a generic point.
        CHECK(integrate_pdf(l, 0, 2.3) == doctest::Approx(law_eval(l, Query::cdf, 2.3)).epsilon(1e-9));
    }
    SUBCASE("rayleigh") {
        LimitLaw l{RayleighLaw{0.8}, Scaling::sqrt_n};
        CHECK(law_eval(l, Query::cdf, 1.0) == doctest::Approx(1.0 - std::exp(-1.0 / (2 * 0.64))));
        CHECK(law_eval(l, Query::mean) == doctest::Approx(0.8 * std::sqrt(M_PI / 2)));
        CHECK(law_eval(l, Query::var) == doctest::Approx(0.64 * (2 - M_PI / 2)));
        CHECK(integrate_pdf(l, 0, 16) == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("normal") {
        // The stored parameters are per step; law_eval reports the one-step law.
        LimitLaw l{NormalLaw{0.25, 11.0 / 16.0}, Scaling::standardized};
        CHECK(law_eval(l, Query::mean) == doctest::Approx(0.25));
        CHECK(law_eval(l, Query::var) == doctest::Approx(11.0 / 16.0));
        CHECK(law_eval(l, Query::cdf, 0.25) == doctest::Approx(0.5));
        CHECK(integrate_pdf(l, 0.25 - 12, 0.25 + 12) == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("discrete") {
        LimitLaw l{DiscreteLargeBranch{{0.5, 0.25, 0.125}, 0.125}, Scaling::none};
        CHECK(law_eval(l, Query::pdf, 1) == doctest::Approx(0.25));
        CHECK(law_eval(l, Query::pdf, 0.4) == 0.0);
        CHECK(law_eval(l, Query::cdf, 1.2) == doctest::Approx(0.75));
        CHECK(law_eval(l, Query::cdf, -1) == 0.0);
        CHECK(law_eval(l, Query::cdf, 50) == doctest::Approx(1.0));
    }
}

TEST_CASE("periodic or wide supports are refused") {
    const StepSet dyck = make_step_set({{-1, Rational(1)}, {1, Rational(1)}});
    const StructuralConstants kd = structural_constants(dyck);
    CHECK_THROWS_AS(predict(dyck, kd, Statistic::returns), RefusalError);

    const StepSet wide = make_step_set({{-1, Rational(1)}, {0, Rational(1)}, {2, Rational(1)}});
    const StructuralConstants kw = structural_constants(wide);
    CHECK_THROWS_AS(predict(wide, kw, Statistic::signchanges), RefusalError);
    CHECK_THROWS_AS(predict(wide, kw, Statistic::signchanges_bridges), RefusalError);
    CHECK_NOTHROW(predict(wide, kw, Statistic::height));
}

TEST_CASE("principal branches at the walk radius sit at hand-derived points") {
    // Negative drift: dominant small branch at 1; positive drift: at tau^2
    // for this mirror pair (the roots at 1/P(1) are {1, 2} and {1/2, 1}).
    const StepSet neg = motzkin(2, 1, 1);
    const StructuralConstants kn = structural_constants(neg);
    KernelRoots rn = kernel_roots(neg, kn, Complex(kn.rho1, 0));
    CHECK(std::abs(rn.small[rn.principal_small] - 1.0) < 1e-10);

    const StepSet pos = motzkin(1, 1, 2);
    const StructuralConstants kp = structural_constants(pos);
    KernelRoots rp = kernel_roots(pos, kp, Complex(kp.rho1, 0));
    CHECK(std::abs(rp.small[rp.principal_small] - 0.5) < 1e-10);
    CHECK(std::abs(rp.large[rp.principal_large] - 1.0) < 1e-10);
}

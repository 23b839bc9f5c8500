#include <catch_amalgamated.hpp>

#include <random>

#include "ramificant/integrability.hpp"

using namespace ramificant;

namespace {

NormalizedP0 random_p0(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<Complex> a;
    for (int j = 0; j < d; ++j) a.emplace_back(u(rng), u(rng));
    return NormalizedP0(d, a);
}

CPoly random_poly(std::mt19937& rng, int degree) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Complex> c;
    for (int j = 0; j <= degree; ++j) c.emplace_back(u(rng), u(rng));
    return CPoly(c);
}

// (A e^{P0})' / e^{P0}
CPoly integrable_from(const NormalizedP0& p0, const CPoly& a) { return derivative(a) + a * p0.derivative_poly(); }

} // namespace

TEST_CASE("solving A' + A P0' = Q", "[integrability]") {
    const NormalizedP0 p0(3, {Complex(0.2), Complex(0.1, 0.4), Complex(-0.3)});
    const auto one = solve_finite_terms(p0, p0.derivative_poly());
    REQUIRE(one.has_value());
    CHECK(max_abs_coefficient(*one - CPoly{1}) < 1e-14);

    const CPoly a{Complex(1, 2), Complex(-0.5), Complex(0, 0.25)};
    const auto found = solve_finite_terms(p0, integrable_from(p0, a));
    REQUIRE(found.has_value());
    CHECK(max_abs_coefficient(*found - a) < 1e-13);

    CHECK_FALSE(solve_finite_terms(NormalizedP0::zero(2), CPoly{1}).has_value());
    CHECK_FALSE(solve_finite_terms(p0, CPoly{0, 0, 0, 1}).has_value());
    CHECK(solve_finite_terms(p0, CPoly{}).has_value());

    // Over the rationals the residual is exactly zero or exactly not.
    const QPoly dp{make_rational(1, 3), 0, -1};
    const QPoly qa{2, make_rational(-1, 7)};
    const auto exact = solve_antiderivative(dp, derivative(qa) + qa * dp);
    CHECK(exact.residual.is_zero());
    CHECK(exact.a == qa);
    CHECK_FALSE(solve_antiderivative(dp, QPoly{0, 1}).residual.is_zero());
}

TEST_CASE("asymptotic values", "[integrability]") {
    const NormalizedP0 p0(3, {Complex(0.3, 0.1), Complex(0.2), Complex(-0.1, 0.2)});
    const auto av = asymptotic_values(p0, p0.derivative_poly());
    REQUIRE(av.values.size() == 3);
    for (const auto& v : av.values) CHECK(std::abs(v + std::exp(p0.a[0])) < 1e-10);

    const auto zero = asymptotic_values(p0, CPoly{});
    for (const auto& v : zero.values) CHECK(v == Complex(0));
    CHECK(zero.est_error == 0);

    const auto gauss = asymptotic_values(NormalizedP0::zero(2), CPoly{1});
    CHECK(std::abs(gauss.values[0] - std::sqrt(M_PI / 2)) < 1e-12);
    CHECK(std::abs(gauss.values[1] + std::sqrt(M_PI / 2)) < 1e-12);
}

TEST_CASE("reduced and direct asymptotic values agree", "[integrability][property]") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = 1 + trial % 4;
        const auto p0 = random_p0(rng, d);
        const auto q = random_poly(rng, 2 * d);
        const auto reduced = asymptotic_values(p0, q);
        const auto direct = direct_asymptotic_values(p0, q);
        for (int l = 0; l < d; ++l) {
            const auto i = static_cast<std::size_t>(l);
            REQUIRE(std::abs(reduced.values[i] - direct.values[i]) <= 1e-8 * std::max(1.0, std::abs(direct.values[i])));
        }
    }
}

TEST_CASE("integrability verdicts", "[integrability]") {
    const NormalizedP0 p0(3, {Complex(0.1), Complex(-0.2, 0.1), Complex(0.3)});
    const CPoly a{Complex(0.5, -1), Complex(2)};
    const auto yes = check_integrability(p0, integrable_from(p0, a));
    CHECK(yes.integrable_exact);
    CHECK(yes.integrable_numeric);
    CHECK(yes.agree);
    REQUIRE(yes.omega_constant.has_value());
    CHECK(std::abs(*yes.omega_constant + a[0] * std::exp(p0.a[0])) < 1e-9);
    REQUIRE(yes.antiderivative.has_value());
    CHECK(max_abs_coefficient(*yes.antiderivative - a) < 1e-12);
    CHECK(yes.gamma_periods.size() == 3);
    for (const auto& g : yes.gamma_periods) CHECK(std::abs(g) < 1e-9);
    CHECK_FALSE(yes.exact_rational_verdict.has_value());

    const auto no = check_integrability(NormalizedP0::zero(2), CPoly{1});
    CHECK_FALSE(no.integrable_exact);
    CHECK_FALSE(no.integrable_numeric);
    CHECK(no.agree);
    CHECK_FALSE(no.omega_constant.has_value());
    REQUIRE(no.exact_rational_verdict.has_value());
    CHECK_FALSE(*no.exact_rational_verdict);
    CHECK(std::abs(no.max_spread - 2 * std::sqrt(M_PI / 2)) < 1e-10);

    const NormalizedP0 real(2, {Complex(0.5), Complex(0.25)});
    const auto real_yes = check_integrability(real, real.derivative_poly() * Complex(3, -1));
    REQUIRE(real_yes.exact_rational_verdict.has_value());
    CHECK(*real_yes.exact_rational_verdict);
}

TEST_CASE("inconsistent branches raise DisagreementError", "[integrability]") {
    const NormalizedP0 p0(2, {Complex(0.1), Complex(0.2)});
    auto m = period_matrix(p0);
    m.entries(0, 1) += 0.5; // corrupted period
    const CPoly q = p0.derivative_poly();
    try {
        check_integrability(p0, q, m);
        FAIL("expected DisagreementError");
    } catch (const DisagreementError& e) {
        CHECK(e.exact_payload.find("integrable_exact=1") != std::string::npos);
        CHECK(e.numeric_payload.find("max_spread") != std::string::npos);
    }
    const auto quiet = check_integrability(p0, q, m, 1e-6, false);
    CHECK_FALSE(quiet.agree);
}

TEST_CASE("random integrable and generic integrands", "[integrability][property]") {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 3;
        const auto p0 = random_p0(rng, d);
        const auto a = random_poly(rng, trial % 3);
        const auto yes = check_integrability(p0, integrable_from(p0, a));
        REQUIRE(yes.integrable_exact);
        REQUIRE(std::abs(*yes.omega_constant + a[0] * std::exp(p0.a[0])) <= 1e-8);
        // Adding z^{d-1} breaks integrability.
        const auto no = check_integrability(p0, integrable_from(p0, a) + CPoly::monomial(static_cast<std::size_t>(d - 1), Complex(1)));
        REQUIRE_FALSE(no.integrable_exact);
        REQUIRE(no.agree);
    }
}

TEST_CASE("kernel of the asymptotic-value map", "[integrability][kernel]") {
    std::mt19937 rng(9);
    for (int d = 1; d <= 5; ++d) {
        const auto p0 = random_p0(rng, d);
        const auto m = period_matrix(p0);
        const auto k = kernel_analysis(p0, m);
        CHECK(k.singular_values_m.minCoeff() > 1e-6);
        CHECK(k.singular_values_augmented.size() == d);
        CHECK(k.alignment > 1 - 1e-9);
    }
}

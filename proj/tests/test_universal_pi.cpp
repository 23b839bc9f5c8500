#include <catch_amalgamated.hpp>

#include <random>
#include <thread>

#include "ramificant/periods.hpp"
#include "ramificant/universal_pi.hpp"

using namespace ramificant;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MultiPoly x(std::size_t nv, std::size_t k) { return MultiPoly::variable(nv, k); }

// Delta(0) straight from the Gamma values: det[omega_l^{k+1} d^{(k+1)/d-1} Gamma((k+1)/d)]
// (omega_l = e^{2 pi i (l-1)/d}) factors as prod_k (d^{(k+1)/d-1} Gamma((k+1)/d)) * prod_l omega_l * prod_{i<j} (omega_j - omega_i).
Complex gamma_product_oracle(int d) {
    Complex v(1);
    for (int k = 1; k <= d; ++k) v *= std::pow(static_cast<double>(d), static_cast<double>(k) / d - 1) * std::tgamma(static_cast<double>(k) / d);
    for (int l = 0; l < d; ++l) v *= std::polar(1.0, 2 * M_PI * l / d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) v *= std::polar(1.0, 2 * M_PI * j / d) - std::polar(1.0, 2 * M_PI * i / d);
    return v;
}

} // namespace

TEST_CASE("gradient components", "[pi]") {
    const auto g2 = pi_gradient(2);
    CHECK(g2[0] == MultiPoly::constant(2, 2));
    CHECK(g2[1] == x(2, 1));

    const auto g3 = pi_gradient(3);
    CHECK(g3[0] == MultiPoly::constant(3, 3));
    CHECK(g3[1] == x(3, 2) * BigRational(2));
    CHECK(g3[2] == x(3, 1) * BigRational(2) + x(3, 2) * x(3, 2) * BigRational(4));

    for (int d = 2; d <= 8; ++d) {
        const auto nv = static_cast<std::size_t>(d);
        CHECK(pi_gradient(d)[1] == x(nv, nv - 1) * BigRational(d - 1));
    }
    CHECK(pi_gradient(1) == std::vector<MultiPoly>{MultiPoly::constant(1, 1)});
    CHECK_THROWS_AS(pi_gradient(0), UsageError);
}

TEST_CASE("Pi for small degrees", "[pi]") {
    CHECK(pi_polynomial(1).pi == x(1, 0));
    CHECK(pi_polynomial(2).pi == x(2, 0) * BigRational(2) + x(2, 1) * x(2, 1) * BigRational(1, 2));
    const auto x1 = x(3, 1), x2 = x(3, 2);
    CHECK(pi_polynomial(3).pi == x(3, 0) * BigRational(3) + x1 * x2 * BigRational(2) + x2 * x2 * x2 * BigRational(4, 3));

    const auto p4 = pi_polynomial(4).pi;
    MultiPoly want(4);
    want += x(4, 0) * BigRational(4);
    want += x(4, 1) * x(4, 3) * BigRational(3);
    want += x(4, 2) * x(4, 2) * BigRational(2);
    want += x(4, 2) * x(4, 3) * x(4, 3) * BigRational(9);
    want += x(4, 3) * x(4, 3) * x(4, 3) * x(4, 3) * BigRational(27, 4);
    CHECK(p4 == want);
    CHECK(to_string(pi_polynomial(2).pi) == "2*X0 + 1/2*X1^2");
}

TEST_CASE("Pi is linear in X0 with coefficient d and closed", "[pi][property]") {
    for (int d = 1; d <= 9; ++d) {
        const auto r = pi_polynomial(d);
        const auto nv = static_cast<std::size_t>(d);
        CHECK(partial(r.pi, 0) == MultiPoly::constant(nv, BigRational(d)));
        CHECK_NOTHROW(check_closed(r.gradient));
        for (std::size_t k = 0; k < nv; ++k) CHECK(partial(r.pi, k) == r.gradient[k]);
        // Weighted homogeneity: X_j has weight d - j, Pi has weight d.
        for (std::size_t k = 1; k < nv; ++k) CHECK(r.pi.degree_in(k) <= static_cast<int>(d / (d - k)));
    }
}

TEST_CASE("check_closed rejects a non-exact form", "[pi]") {
    std::vector<MultiPoly> bad{x(2, 1), MultiPoly(2)};
    CHECK_THROWS_AS(check_closed(bad), ExactnessViolation);
}

TEST_CASE("Delta at the origin", "[pi][delta]") {
    CHECK_THAT(delta_zero(1).value.real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::abs(delta_zero(1).value.imag()), WithinAbs(0.0, 1e-15));
    CHECK_THAT(delta_zero(2).value.real(), WithinRel(std::sqrt(2 * M_PI), 1e-14));
    CHECK_THAT(std::abs(delta_zero(2).value.imag()), WithinAbs(0.0, 1e-14));
    CHECK_THAT(delta_zero(3).value.imag(), WithinRel(-2 * M_PI, 1e-13));
    CHECK_THAT(std::abs(delta_zero(3).value.real()), WithinAbs(0.0, 1e-13));
    CHECK_THAT(std::abs(delta_zero(4).value), WithinRel(15.7496, 1e-4));
    CHECK_THAT(delta_zero(2).printed_constant, WithinRel(2 * std::sqrt(2 * M_PI), 1e-14));
    CHECK_THROWS_AS(delta_zero(0), UsageError);

    for (int d = 1; d <= 7; ++d) {
        const Complex oracle = gamma_product_oracle(d);
        CHECK(std::abs(delta_zero(d).value - oracle) <= 1e-12 * std::abs(oracle));
    }
    for (int d = 1; d <= 4; ++d) {
        const Complex numeric = ramificant_det(period_matrix(NormalizedP0::zero(d)));
        CHECK(std::abs(numeric - delta_zero(d).value) <= 1e-9 * std::abs(numeric));
    }
}

TEST_CASE("closed-form Delta", "[pi][delta]") {
    const NormalizedP0 p2(2, {Complex(0.25), Complex(0.5)});
    // Pi_2 = 2 a0 + a1^2 / 2
    CHECK(std::abs(pi_value(p2) - Complex(0.625)) < 1e-15);
    CHECK(std::abs(delta_closed_form(p2) - delta_zero(2).value * std::exp(0.625)) < 1e-14);

    const NormalizedP0 p4(4, {Complex(0), Complex(0), Complex(0), Complex(0.3, 0.1)});
    const Complex a3(0.3, 0.1);
    CHECK(std::abs(pi_value(p4) - 6.75 * std::pow(a3, 4)) < 1e-15);
    const auto report = verify_identity(p4);
    CHECK(report.rel_err < 1e-8);

    const NormalizedP0 huge(2, {Complex(400), Complex(0)});
    CHECK_THROWS_AS(delta_closed_form(huge), RangeError);
}

TEST_CASE("Delta is scaled by e^{d h} under a0 -> a0 + h", "[pi][property]") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + trial % 6;
        std::vector<Complex> a;
        for (int j = 0; j < d; ++j) a.emplace_back(u(rng), u(rng));
        const NormalizedP0 p0(d, a);
        auto shifted = p0;
        const Complex h(u(rng), u(rng));
        shifted.a[0] += h;
        const Complex ratio = delta_closed_form(shifted) / delta_closed_form(p0);
        REQUIRE(std::abs(ratio - std::exp(static_cast<double>(d) * h)) <= 1e-12 * std::abs(ratio));
    }
}

TEST_CASE("cache is safe under concurrent readers", "[pi]") {
    std::vector<std::string> seen(8);
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < seen.size(); ++i)
            pool.emplace_back([&seen, i] { seen[i] = to_string(pi_polynomial_cached(6).pi); });
    }
    const auto want = to_string(pi_polynomial(6).pi);
    for (const auto& s : seen) CHECK(s == want);
    CHECK(&pi_polynomial_cached(6) == &pi_polynomial_cached(6));
}

#include <catch_amalgamated.hpp>

#include <random>

#include "ramificant/ode.hpp"

using namespace ramificant;

namespace {

CPoly random_p0_poly(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<Complex> c;
    for (int j = 0; j < d; ++j) c.emplace_back(u(rng), u(rng));
    c.emplace_back(-1.0 / d);
    return CPoly(c);
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

} // namespace

TEST_CASE("Q table", "[ode]") {
    const CPoly p0{Complex(0.5), Complex(2), Complex(-0.5)}; // P0' = 2 - z
    const auto q = q_table(p0, 2);
    CHECK(q[0][0] == CPoly{1});
    CHECK(q[0][1] == CPoly{2, -1});
    CHECK(q[1][1] == CPoly{1});
    // Q_{0,2} = P0'' + P0'^2
    CHECK(q[0][2] == CPoly{-1} + CPoly{2, -1} * CPoly{2, -1});
    CHECK(q[1][2] == CPoly{4, -2});
    CHECK(q[2][2] == CPoly{1});
    CHECK(q[2][1].is_zero());
    CHECK_THROWS_AS(q_table(p0, 0), UsageError);
}

TEST_CASE("ODE coefficients", "[ode]") {
    // d = 1, P0 = a0 - z: y' + y = 0.
    const auto o1 = build_ode(CPoly{Complex(0.3), Complex(-1)});
    REQUIRE(o1.b.size() == 1);
    CHECK(o1.b[0] == CPoly{1});

    // P0 = -z^2/2: annihilates e^{-z^2/2} and z e^{-z^2/2}.
    const auto o2 = build_ode(CPoly{0, 0, -0.5});
    REQUIRE(o2.b.size() == 2);
    CHECK(operator_residual(o2, 0).is_zero());
    CHECK(operator_residual(o2, 1).is_zero());

    // General d = 2 with s = P0' = a1 - z: b1 = -2 s, b0 = s^2 + 1.
    const Complex a1(0.4, -0.2);
    const auto og = build_ode(CPoly{Complex(0.1), a1, Complex(-0.5)});
    const CPoly s{a1, Complex(-1)};
    CHECK(max_abs_coefficient(og.b[1] - s * Complex(-2)) < 1e-15);
    CHECK(max_abs_coefficient(og.b[0] - (s * s + CPoly{1})) < 1e-15);
    CHECK(max_abs_coefficient(operator_residual(og, 0)) < 1e-14);
    CHECK(max_abs_coefficient(operator_residual(og, 1)) < 1e-14);

    CHECK_THROWS_AS(build_ode(CPoly{1}), UsageError);
}

TEST_CASE("exact ODE over the rationals", "[ode]") {
    const QPoly p0{make_rational(1, 2), make_rational(1, 3), make_rational(-2, 5), make_rational(-1, 3)};
    const auto ode = build_ode(p0);
    for (int k = 0; k < 3; ++k) CHECK(operator_residual(ode, k).is_zero());
}

TEST_CASE("fundamental solutions annihilated", "[ode][property]") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + trial % 6;
        const auto ode = build_ode(random_p0_poly(rng, d));
        REQUIRE(static_cast<int>(ode.b.size()) == d);
        for (int k = 0; k < d; ++k) REQUIRE(max_abs_coefficient(operator_residual(ode, k)) <= 1e-9);
        // deg b_j <= (d - j)(d - 1)
        for (int j = 0; j < d; ++j) REQUIRE(ode.b[static_cast<std::size_t>(j)].degree() <= (d - j) * (d - 1));
    }
}

TEST_CASE("Q table entries are monic along the diagonal", "[ode][property]") {
    std::mt19937 rng(6);
    for (int d = 1; d <= 6; ++d) {
        const auto q = q_table(random_p0_poly(rng, d), d);
        for (int m = 0; m <= d; ++m) {
            CHECK(q[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] == CPoly{1});
            for (int n = m + 1; n <= d; ++n) CHECK(q[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)].is_zero());
        }
    }
}

TEST_CASE("Wronskian is the constant prod k!", "[ode][wronskian]") {
    const std::vector<Complex> pts{Complex(0), Complex(0.5, 0.3), Complex(-0.7, 0.2), Complex(1.1, -0.4)};
    std::mt19937 rng(12);
    for (int d = 1; d <= 4; ++d) {
        double want = 1;
        for (int k = 0; k < d; ++k) want *= factorial(k);
        const auto r = wronskian_check(random_p0_poly(rng, d), pts);
        // Complex arithmetic leaves rounding residue in the higher coefficients.
        CHECK(max_abs_coefficient(r.symbolic - CPoly{r.constant}) < 1e-12 * want);
        CHECK(std::abs(r.constant - Complex(want)) < 1e-12 * want);
        CHECK(r.consistent);
        CHECK(r.sampled.size() == pts.size());
    }
    CHECK_THROWS_AS(wronskian_check(CPoly{0, 1}, {Complex(0)}), UsageError);
    CHECK_THROWS_AS(wronskian_check(CPoly{1}, pts), UsageError);
}

TEST_CASE("polynomial determinant", "[ode]") {
    std::vector<std::vector<QPoly>> m{{QPoly{0, 1}, QPoly{1}}, {QPoly{1}, QPoly{0, 1}}};
    CHECK(poly_determinant(m) == QPoly{-1, 0, 1});
    CHECK(poly_determinant(std::vector<std::vector<QPoly>>{}) == QPoly{1});
}

TEST_CASE("Cauchy derivatives of an exponential", "[ode]") {
    const auto der = cauchy_derivatives([](Complex z) { return std::exp(2.0 * z); }, Complex(0.1, 0.2), 4);
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(der[static_cast<std::size_t>(n)] - std::pow(2.0, n) * std::exp(Complex(0.2, 0.4))) < 1e-10);
}

TEST_CASE("primitives satisfy the lifted equation", "[ode]") {
    const auto ode = build_ode(CPoly{Complex(0.1), Complex(0.2, -0.1), Complex(0.1), Complex(-1.0 / 3)});
    CHECK(lift_residual(ode, {Complex(0.2, 0.1), Complex(-0.4, 0.3)}) < 1e-8);
}

#include <catch_amalgamated.hpp>

#include "ramificant/quadrature.hpp"

using namespace ramificant;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Composite Simpson on [0, b] with n panels.
template <class F>
double simpson(F f, double b, int n) {
    const double h = b / n;
    double s = f(0.0) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

} // namespace

TEST_CASE("segment integrals", "[quadrature]") {
    const QuadConfig cfg;
    CHECK(integrate_segment(CPoly{Complex(0, 0), Complex(-1)}, CPoly{}, Complex(1), cfg).value == Complex(0));
    CHECK(close(integrate_segment(CPoly{0, -1}, CPoly{1}, Complex(1), cfg).value, Complex(1 - std::exp(-1.0)), 1e-13));
    CHECK(close(integrate_segment(CPoly{0, -1}, CPoly{1}, Complex(2), cfg).value, Complex(1 - std::exp(-2.0)), 1e-13));
    // int_0^{i pi} e^{t} dt = e^{i pi} - 1 = -2
    CHECK(close(integrate_segment(CPoly{0, 1}, CPoly{1}, Complex(0, M_PI), cfg).value, Complex(-2), 1e-13));

    const NormalizedP0 p0(2, {Complex(0), Complex(0)});
    // F_1(z) = 1 - e^{-z^2/2}
    const Complex z(0.7, 0.4);
    CHECK(close(integrate_segment(p0, 1, z, cfg).value, 1.0 - std::exp(-z * z / 2.0), 1e-13));
    CHECK(integrate_segment(p0, 1, Complex(0), cfg).value == Complex(0));
    CHECK_THROWS_AS(integrate_segment(p0, -1, z, cfg), UsageError);
}

TEST_CASE("ray integrals at the origin", "[quadrature]") {
    const QuadConfig cfg;
    const auto p2 = NormalizedP0::zero(2);
    CHECK(close(integrate_ray({p2, 1, 1}, cfg).value, Complex(1), 1e-12));
    CHECK(close(integrate_ray({p2, 0, 1}, cfg).value, Complex(std::sqrt(M_PI / 2)), 1e-12));
    CHECK(close(integrate_ray({p2, 0, 2}, cfg).value, Complex(-std::sqrt(M_PI / 2)), 1e-12));

    const auto p3 = NormalizedP0::zero(3);
    const Complex w2 = root_of_unity(3, 2);
    CHECK(close(integrate_ray({p3, 0, 2}, cfg).value, w2 * std::pow(3.0, -2.0 / 3) * std::tgamma(1.0 / 3), 1e-12));

    const auto r = integrate_ray({p2, 3, 1}, cfg);
    CHECK(r.radius > 1);
    CHECK(r.est_error >= cfg.tail_tol);
    CHECK(r.nodes_used > 0);
    CHECK_THROWS_AS(integrate_ray({p2, -1, 1}, cfg), UsageError);
}

TEST_CASE("gamma function", "[quadrature]") {
    CHECK_THAT(gamma_fn(1), WithinRel(1.0, 1e-15));
    CHECK_THAT(gamma_fn(5), WithinRel(24.0, 1e-15));
    CHECK_THAT(gamma_fn(0.5), WithinRel(std::sqrt(M_PI), 1e-15));
    // Gamma(1/3) = 3 int_0^inf e^{-s^3} ds, tail beyond 6 is below e^{-216}.
    const double oracle = 3.0 * simpson([](double s) { return std::exp(-s * s * s); }, 6.0, 20000);
    CHECK_THAT(gamma_fn(1.0 / 3), WithinRel(oracle, 1e-12));
    CHECK_THROWS_AS(gamma_fn(0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("rays through the origin are path independent", "[quadrature][property]") {
    // F_k(R omega) along the straight segment, completed by the tail, matches the ray value.
    const QuadConfig cfg;
    const NormalizedP0 p0(3, {Complex(0.1, 0.1), Complex(-0.2, 0.3), Complex(0.25, -0.1)});
    for (int l = 1; l <= 3; ++l)
        for (int k = 0; k < 3; ++k) {
            const auto ray = integrate_ray({p0, k, l}, cfg);
            // Reach the ray end through a bent path: 0 -> 0.5i -> R omega.
            const Complex bend(0, 0.5), end = ray.radius * root_of_unity(3, l);
            const CPoly q = CPoly::monomial(static_cast<std::size_t>(k), Complex(1));
            const auto first = integrate_segment(p0.full(), q, bend, cfg).value;
            auto f = [&](double s) {
                const Complex t = bend + s * (end - bend);
                return (end - bend) * q.eval(t) * std::exp(p0.full().eval(t));
            };
            const auto second = integrate_interval(f, 0.0, 1.0, cfg).value;
            CHECK(close(first + second, ray.value, 1e-9));
        }
}

TEST_CASE("doubling the truncation radius changes nothing", "[quadrature][property]") {
    const QuadConfig cfg;
    const NormalizedP0 p0(4, {Complex(0.2), Complex(0.4, -0.3), Complex(-0.1, 0.2), Complex(0.3, 0.3)});
    for (int l = 1; l <= 4; ++l) {
        const CPoly q = CPoly::monomial(2, Complex(1));
        const auto base = integrate_ray(p0, q, l, cfg);
        const auto wide = integrate_ray(p0, q, l, cfg, 2.0);
        CHECK(std::abs(base.value - wide.value) <= base.est_error + wide.est_error + 1e-12 * std::abs(base.value));
    }
}

TEST_CASE("quadrature failure modes", "[quadrature]") {
    QuadConfig tight;
    tight.rel_tol = 1e-14;
    tight.abs_floor = 1e-300;
    tight.max_subdivisions = 1;
    try {
        integrate_segment(CPoly{0, Complex(0, 200)}, CPoly{1}, Complex(10), tight);
        FAIL("expected ToleranceNotMet");
    } catch (const ToleranceNotMet& e) {
        CHECK(e.achieved_error > 0);
        CHECK(std::isfinite(e.best_estimate.real()));
    }

    const NormalizedP0 wild(2, {Complex(0), Complex(1e6)});
    CHECK_THROWS_AS(integrate_ray({wild, 0, 1}, QuadConfig{}), TailBoundFailure);

    QuadConfig bad;
    bad.rel_tol = 0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    CHECK_THROWS_AS(integrate_interval([](double) { return Complex(1); }, 0.0, 1.0, bad), UsageError);
    CHECK(integrate_interval([](double) { return Complex(1); }, 2.0, 2.0, QuadConfig{}).value == Complex(0));
}

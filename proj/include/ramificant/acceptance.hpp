#pragma once

/**
 * @file acceptance.hpp
 * @brief The end-to-end acceptance checks, shared by the test binary and `selftest`.
 *
 * Every check is seeded, so two runs produce identical numbers.
 */

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramificant/integrability.hpp"
#include "ramificant/multipoly.hpp"
#include "ramificant/ode.hpp"
#include "ramificant/periods.hpp"
#include "ramificant/quadrature.hpp"
#include "ramificant/reduction.hpp"
#include "ramificant/universal_pi.hpp"

namespace ramificant::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double time_limit = 0;
};

/// Complex numbers uniform in the disc of the given radius.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    Complex in_disc(double radius) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double r = radius * std::sqrt(u(rng_));
        return std::polar(r, 2 * M_PI * u(rng_));
    }

    Complex in_unit_square() {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double re = u(rng_);
        return {re, u(rng_)};
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    NormalizedP0 p0(int d, double radius) {
        std::vector<Complex> a;
        for (int j = 0; j < d; ++j) a.push_back(in_disc(radius));
        return NormalizedP0(d, std::move(a));
    }

    CPoly poly(int degree) {
        std::vector<Complex> c;
        for (int j = 0; j <= degree; ++j) c.push_back(in_unit_square());
        return CPoly(std::move(c));
    }

private:
    std::mt19937_64 rng_;
};

namespace detail {

inline MultiPoly term(std::size_t nv, Exponent e, BigRational c) {
    MultiPoly p(nv);
    p.add_term(std::move(e), c);
    return p;
}

inline CriterionResult run(int id, std::string name, double limit, const std::function<bool(std::ostringstream&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.time_limit = limit;
    std::ostringstream detail;
    detail.precision(3);
    const auto start = std::chrono::steady_clock::now();
    try {
        r.passed = body(detail);
    } catch (const std::exception& e) {
        r.passed = false;
        detail << " exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > limit) {
        r.passed = false;
        detail << " time limit exceeded";
    }
    r.detail = detail.str();
    return r;
}

} // namespace detail

inline CriterionResult universal_polynomials() {
    return detail::run(1, "universal polynomials Pi_1..Pi_4", 1.0, [](std::ostringstream& out) {
        using detail::term;
        const MultiPoly pi1 = term(1, {1}, 1);
        const MultiPoly pi2 = term(2, {1, 0}, 2) + term(2, {0, 2}, BigRational(1, 2));
        const MultiPoly pi3 = term(3, {1, 0, 0}, 3) + term(3, {0, 1, 1}, 2) + term(3, {0, 0, 3}, BigRational(4, 3));
        bool ok = pi_polynomial(1).pi == pi1 && pi_polynomial(2).pi == pi2 && pi_polynomial(3).pi == pi3;
        out << "Pi_1..Pi_3 " << (ok ? "equal" : "differ");

        const MultiPoly pi4 = pi_polynomial(4).pi;
        const MultiPoly mixed = term(4, {1, 0, 0, 0}, 4) + term(4, {0, 1, 0, 1}, 3) + term(4, {0, 0, 2, 0}, 2) +
                                term(4, {0, 0, 1, 2}, 9);
        bool ok4 = true;
        MultiPoly pure_x3(4);
        for (const auto& [e, c] : pi4.terms()) {
            if (e[0] == 0 && e[1] == 0 && e[2] == 0) pure_x3.add_term(e, c);
            else ok4 = ok4 && mixed.coefficient(e) == c;
        }
        ok4 = ok4 && (pi4 - pure_x3) == mixed;
        out << "; Pi_4 = " << to_string(pi4) << " (pure X3 part " << to_string(pure_x3) << ")";
        return ok && ok4;
    });
}

inline CriterionResult gradient_exactness() {
    return detail::run(2, "gradient exactness d=1..6", 10.0, [](std::ostringstream& out) {
        bool ok = true;
        for (int d = 1; d <= 6; ++d) {
            const auto r = pi_polynomial(d);
            for (std::size_t j = 0; j < r.gradient.size(); ++j) {
                ok = ok && partial(r.pi, j) == r.gradient[j];
                for (std::size_t k = j + 1; k < r.gradient.size(); ++k)
                    ok = ok && partial(r.gradient[k], j) == partial(r.gradient[j], k);
                if (2 * j < static_cast<std::size_t>(d)) ok = ok && r.pi.degree_in(j) <= 1;
            }
            out << "d=" << d << ":" << r.pi.size() << " terms ";
        }
        return ok;
    });
}

inline CriterionResult master_identity() {
    return detail::run(3, "master determinant identity", 60.0, [](std::ostringstream& out) {
        Sampler s(20240301);
        double worst = 0;
        for (int d = 1; d <= 3; ++d) {
            const Complex delta0 = ramificant_det(period_matrix(NormalizedP0::zero(d)));
            for (int draw = 0; draw < 20; ++draw) {
                const auto p0 = s.p0(d, 0.5);
                const Complex ratio = ramificant_det(period_matrix(p0)) / delta0;
                const Complex expected = std::exp(pi_value(p0));
                worst = std::max(worst, std::abs(ratio - expected) / std::abs(expected));
            }
        }
        out << "worst rel_err " << worst << " (tol 1e-6)";
        return worst <= 1e-6;
    });
}

inline CriterionResult delta_zero_audit() {
    return detail::run(4, "Delta(0) constant audit", 10.0, [](std::ostringstream& out) {
        out.precision(12);
        const Complex quad = ramificant_det(period_matrix(NormalizedP0::zero(2)));
        const auto dz = delta_zero(2);
        const double rel = std::abs(quad - dz.value) / std::abs(dz.value);
        out << "quadrature " << quad.real() << ", Vandermonde assembly " << dz.value.real() << ", rel " << rel
            << "; printed (2 pi d)^{d/2}/sqrt(2 pi) = " << dz.printed_constant
            << ", printed/measured = " << dz.printed_constant / std::abs(quad);
        return rel <= 1e-8;
    });
}

inline CriterionResult reduction_postcondition() {
    return detail::run(5, "reduction postcondition", 10.0, [](std::ostringstream& out) {
        Sampler s(77001);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const int d = s.integer(1, 5);
            const auto p0 = s.p0(d, 0.5);
            const CPoly q = s.poly(s.integer(0, 3 * d));
            const auto red = reduce_primitive(p0, q);
            const double err = max_abs_coefficient(reconstruct_integrand(p0, red) - q) / max_abs_coefficient(q);
            worst = std::max(worst, err);
            if (std::abs(red.a0_poly[0]) != 0) worst = std::max(worst, 1.0);
        }
        out << "worst relative coefficient error " << worst << " (tol 1e-10)";
        return worst <= 1e-10;
    });
}

inline CriterionResult integrability_equivalence() {
    return detail::run(6, "integrability equivalence", 120.0, [](std::ostringstream& out) {
        Sampler s(424242);
        int agree = 0, disagree = 0, excused = 0, integrable = 0;
        double worst_recovery = 0;
        for (int i = 0; i < 200; ++i) {
            const int d = s.integer(1, 4);
            const auto p0 = s.p0(d, 0.5);
            const auto m = period_matrix(p0);
            const bool constructed = i % 2 == 0;
            CPoly a, q;
            if (constructed) {
                a = s.poly(s.integer(0, d + 1));
                q = a * p0.derivative_poly() + derivative(a);
            } else {
                q = s.poly(s.integer(0, 2 * d));
            }
            const auto rep = check_integrability(p0, q, m, 1e-6, false);
            if (rep.integrable_exact) ++integrable;
            if (rep.agree) {
                ++agree;
            } else if (100.0 * rep.est_error > 1e-6) {
                ++excused;
            } else {
                ++disagree;
            }
            if (constructed) {
                if (!rep.antiderivative) {
                    worst_recovery = std::max(worst_recovery, 1.0);
                } else {
                    const double err = max_abs_coefficient(*rep.antiderivative - a) / std::max(1.0, max_abs_coefficient(a));
                    worst_recovery = std::max(worst_recovery, err);
                }
            }
        }
        out << agree << " agree, " << disagree << " disagree, " << excused << " excused (est_error-limited); "
            << integrable << " integrable; worst antiderivative error " << worst_recovery;
        return disagree == 0 && worst_recovery <= 1e-9;
    });
}

inline CriterionResult torelli_roundtrip() {
    return detail::run(7, "Torelli roundtrip", 60.0, [](std::ostringstream& out) {
        Sampler s(9001);
        double worst_a = 0, worst_exp = 0;
        for (int d = 2; d <= 3; ++d) {
            for (int draw = 0; draw < 10; ++draw) {
                const auto p0 = s.p0(d, 0.5);
                const auto rec = recover_coefficients(period_matrix(p0));
                for (int j = 1; j < d; ++j)
                    worst_a = std::max(worst_a, std::abs(rec.a[static_cast<std::size_t>(j - 1)] - p0.a[static_cast<std::size_t>(j)]));
                const Complex e = std::exp(p0.a[0]);
                worst_exp = std::max(worst_exp, std::abs(rec.exp_a0 - e) / std::abs(e));
            }
        }
        out << "worst |a_j| error " << worst_a << ", worst e^{a0} rel error " << worst_exp << " (tol 1e-6)";
        return worst_a <= 1e-6 && worst_exp <= 1e-6;
    });
}

inline CriterionResult jacobian_etale() {
    return detail::run(8, "Jacobian / etale", 60.0, [](std::ostringstream& out) {
        Sampler s(31337);
        double worst_entry = 0, worst_det = 0;
        for (int d = 2; d <= 3; ++d) {
            std::vector<NormalizedP0> cases{NormalizedP0::zero(d)};
            for (int draw = 0; draw < 3; ++draw) cases.push_back(s.p0(d, 0.5));
            for (const auto& p0 : cases) {
                const auto rep = jacobian_check(p0, 1e-4);
                worst_entry = std::max(worst_entry, rep.max_rel_deviation);
                worst_det = std::max(worst_det, rep.det_rel_error);
            }
        }
        out << "worst entry deviation " << worst_entry << " (tol 1e-4), worst det error " << worst_det << " (tol 1e-3)";
        return worst_entry <= 1e-4 && worst_det <= 1e-3;
    });
}

inline CriterionResult ode_construction() {
    return detail::run(9, "ODE construction", 5.0, [](std::ostringstream& out) {
        bool ok = true;
        // d = 1: y' - P0' y = 0.
        const CPoly line{Complex(0.3, -0.2), Complex(-1, 0)};
        const auto first = build_ode(line);
        ok = ok && first.b.size() == 1 && first.b[0] == -derivative(line);
        // P0 = z^2: y'' - 4z y' + (4z^2 - 2) y = 0.
        const auto gauss = build_ode(CPoly{Complex(0), Complex(0), Complex(1)});
        ok = ok && gauss.b[1] == CPoly{Complex(0), Complex(-4)} && gauss.b[0] == CPoly{Complex(-2), Complex(0), Complex(4)};
        out << "d=1 and z^2 examples " << (ok ? "match" : "differ");

        Sampler s(5150);
        double worst = 0;
        for (int d = 1; d <= 5; ++d) {
            for (int draw = 0; draw < 4; ++draw) {
                std::vector<Complex> c;
                for (int j = 0; j <= d; ++j) c.push_back(s.in_disc(1.0));
                if (std::abs(c.back()) < 0.1) c.back() = 1.0;
                const auto ode = build_ode(CPoly(c));
                double scale = 0;
                for (const auto& b : ode.b) scale = std::max(scale, max_abs_coefficient(b));
                for (int k = 0; k < d; ++k)
                    worst = std::max(worst, max_abs_coefficient(operator_residual(ode, k)) / std::max(1.0, scale));
            }
        }
        out << "; worst symbolic residual " << worst;
        ok = ok && worst <= 1e-9;

        const std::vector<Complex> points{Complex(0.2, 0.1), Complex(-0.7, 0.4), Complex(1.1, -0.3)};
        for (int d = 1; d <= 3; ++d) {
            const auto w = wronskian_check(s.p0(d, 0.5).full(), points);
            double expected = 1;
            for (int k = 2; k < d; ++k) expected *= k;
            const bool good = w.consistent && std::abs(w.constant - expected) <= 1e-9 * expected &&
                              max_abs_coefficient(w.symbolic - CPoly{w.constant}) <= 1e-9 * expected;
            out << "; W const d=" << d << " = " << w.constant.real();
            ok = ok && good;
        }
        return ok;
    });
}

/// z on the growth ray R e^{i pi/d} d^{1/d} with the largest R keeping |P0(z)| <= 600.
inline Complex growth_point(const NormalizedP0& p0, double cap = 600.0) {
    const Complex dir = std::polar(std::pow(static_cast<double>(p0.d), 1.0 / p0.d), M_PI / p0.d);
    double lo = 0, hi = 1;
    while (std::abs(p0.eval(hi * dir)) <= cap) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(p0.eval(mid * dir)) <= cap ? lo : hi) = mid;
    }
    return lo * dir;
}

inline CriterionResult asymptotics() {
    return detail::run(10, "asymptotics along growth directions", 10.0, [](std::ostringstream& out) {
        Sampler s(2718);
        double worst = 0;
        for (int d = 1; d <= 4; ++d) {
            for (const auto& p0 : {NormalizedP0::zero(d), s.p0(d, 0.5)}) {
                const Complex z = growth_point(p0);
                const Complex dp = p0.derivative_poly().eval(z);
                for (int j = 0; j < d; ++j) {
                    const Complex f = integrate_segment(p0, j, z, {}).value;
                    const Complex ratio = f * dp / (std::pow(z, j) * std::exp(p0.eval(z)));
                    worst = std::max(worst, std::abs(ratio - 1.0));
                }
            }
        }
        out << "worst |ratio - 1| " << worst << " (tol 0.05)";
        return worst <= 0.05;
    });
}

inline std::vector<CriterionResult> run_all() {
    return {universal_polynomials(), gradient_exactness(), master_identity(),      delta_zero_audit(),
            reduction_postcondition(), integrability_equivalence(), torelli_roundtrip(), jacobian_etale(),
            ode_construction(),      asymptotics()};
}

} // namespace ramificant::acceptance

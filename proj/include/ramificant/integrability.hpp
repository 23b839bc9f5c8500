#pragma once

/**
 * @file integrability.hpp
 * @brief Integrability in finite terms of int_0^z Q e^{P0}, decided twice.
 *
 * Algebraically: a polynomial A with A P0' + A' = Q exists. Numerically:
 * the d asymptotic values of the primitive coincide. The two verdicts are
 * computed independently and compared.
 */

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/periods.hpp"
#include "ramificant/poly.hpp"
#include "ramificant/quadrature.hpp"
#include "ramificant/reduction.hpp"

namespace ramificant {

template <class T>
struct AntiderivativeAttempt {
    Poly<T> a;
    Poly<T> residual; // Q - (A P0' + A')
};

/// Descending coefficient solve of A P0' + A' = Q; the residual is what no A can absorb.
template <class T>
AntiderivativeAttempt<T> solve_antiderivative(const Poly<T>& p0_prime, const Poly<T>& q) {
    if (p0_prime.is_zero()) throw UsageError("P0' must be nonzero");
    const int dm1 = p0_prime.degree();
    std::vector<T> rem = q.coefficients();
    const int deg_a = q.degree() - dm1;
    if (deg_a < 0) return {{}, q};
    std::vector<T> a(static_cast<std::size_t>(deg_a) + 1, T{});
    const T lead = p0_prime.leading();
    for (int i = deg_a; i >= 0; --i) {
        const auto top = static_cast<std::size_t>(i + dm1);
        const T c = rem[top] / lead;
        a[static_cast<std::size_t>(i)] = c;
        for (int j = 0; j < dm1; ++j) rem[static_cast<std::size_t>(i + j)] -= c * p0_prime[static_cast<std::size_t>(j)];
        rem[top] = T{};
        if (i > 0) rem[static_cast<std::size_t>(i - 1)] -= c * T(static_cast<long>(i));
    }
    return {Poly<T>(std::move(a)), Poly<T>(std::move(rem))};
}

inline constexpr double kSolveResidualTol = 1e-9;

inline std::optional<CPoly> solve_finite_terms(const NormalizedP0& p0, const CPoly& q) {
    auto attempt = solve_antiderivative(p0.derivative_poly(), q);
    const double bound = kSolveResidualTol * std::max(1.0, max_abs_coefficient(q));
    if (max_abs_coefficient(attempt.residual) > bound) return std::nullopt;
    return attempt.a;
}

/**
 * Exact decision over the rationals, available when every a_j is real.
 * Every double is a dyadic rational, so the inputs are taken exactly; the
 * real and imaginary parts of Q are solved separately since P0 is real.
 * Returns nullopt when P0 has a non-real coefficient.
 */
inline std::optional<bool> integrable_exact_rational(const NormalizedP0& p0, const CPoly& q) {
    if (!p0.is_real()) return std::nullopt;
    std::vector<BigRational> dp(static_cast<std::size_t>(p0.d));
    for (int k = 1; k < p0.d; ++k) dp[static_cast<std::size_t>(k - 1)] = rational_from_double(p0.a[static_cast<std::size_t>(k)].real()) * k;
    dp[static_cast<std::size_t>(p0.d - 1)] = -1;
    const QPoly p0_prime(std::move(dp));
    std::vector<BigRational> re, im;
    for (const auto& c : q.coefficients()) {
        re.push_back(rational_from_double(c.real()));
        im.push_back(rational_from_double(c.imag()));
    }
    return solve_antiderivative(p0_prime, QPoly(std::move(re))).residual.is_zero() &&
           solve_antiderivative(p0_prime, QPoly(std::move(im))).residual.is_zero();
}

struct AsymptoticValues {
    std::vector<Complex> values; // Omega_l(F), l = 1..d
    double est_error = 0;
};

/// Via the reduction: Omega_l(F) = sum_k b_k M(l, k) + c, the A0 e^{P0} part decays on every ray.
inline AsymptoticValues asymptotic_values(const NormalizedP0& p0, const CPoly& q, const PeriodMatrix& m) {
    const auto red = reduce_primitive(p0, q);
    AsymptoticValues out;
    double weight = 0;
    for (const auto& b : red.basis_coeffs) weight += std::abs(b);
    for (int l = 0; l < p0.d; ++l) {
        Complex v = red.const_term;
        for (int k = 0; k < p0.d; ++k) v += red.basis_coeffs[static_cast<std::size_t>(k)] * m.entries(l, k);
        out.values.push_back(v);
    }
    out.est_error = weight * m.est_error;
    return out;
}

inline AsymptoticValues asymptotic_values(const NormalizedP0& p0, const CPoly& q, const QuadConfig& cfg = {}) {
    return asymptotic_values(p0, q, period_matrix(p0, cfg));
}

/// Independent route: ray quadrature of Q e^{P0} itself.
inline AsymptoticValues direct_asymptotic_values(const NormalizedP0& p0, const CPoly& q, const QuadConfig& cfg = {}) {
    AsymptoticValues out;
    for (const auto& r : ray_values(p0, q, cfg)) {
        out.values.push_back(r.value);
        out.est_error = std::max(out.est_error, r.est_error);
    }
    return out;
}

struct IntegrabilityReport {
    bool integrable_exact = false;
    std::optional<CPoly> antiderivative;
    double solve_residual = 0;
    std::optional<bool> exact_rational_verdict;
    std::vector<Complex> asymptotic_values;
    std::vector<Complex> gamma_periods; // Omega_{l+1} - Omega_l, indices mod d
    double max_spread = 0;
    double est_error = 0;
    double spread_threshold = 0;
    bool integrable_numeric = false;
    std::optional<Complex> omega_constant;
    bool agree = false;
};

inline double max_pairwise_spread(const std::vector<Complex>& v) {
    double spread = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) spread = std::max(spread, std::abs(v[i] - v[j]));
    return spread;
}

/**
 * Runs the algebraic and the numeric branch. The numeric verdict is
 * "integrable" when max_spread <= max(spread_tol, 100 est_error). With
 * throw_on_disagreement the conflicting case raises DisagreementError.
 */
inline IntegrabilityReport check_integrability(const NormalizedP0& p0, const CPoly& q, const PeriodMatrix& m,
                                               double spread_tol = 1e-6, bool throw_on_disagreement = true) {
    IntegrabilityReport r;
    auto attempt = solve_antiderivative(p0.derivative_poly(), q);
    r.solve_residual = max_abs_coefficient(attempt.residual);
    r.integrable_exact = r.solve_residual <= kSolveResidualTol * std::max(1.0, max_abs_coefficient(q));
    if (r.integrable_exact) r.antiderivative = attempt.a;
    r.exact_rational_verdict = integrable_exact_rational(p0, q);

    const auto av = asymptotic_values(p0, q, m);
    r.asymptotic_values = av.values;
    r.est_error = av.est_error;
    const auto d = r.asymptotic_values.size();
    for (std::size_t l = 0; l < d; ++l) r.gamma_periods.push_back(r.asymptotic_values[(l + 1) % d] - r.asymptotic_values[l]);
    r.max_spread = max_pairwise_spread(r.asymptotic_values);
    r.spread_threshold = std::max(spread_tol, 100.0 * r.est_error);
    r.integrable_numeric = r.max_spread <= r.spread_threshold;
    if (r.integrable_numeric) {
        Complex mean{};
        for (const auto& v : r.asymptotic_values) mean += v;
        r.omega_constant = mean / static_cast<double>(d);
    }
    r.agree = r.integrable_exact == r.integrable_numeric;
    if (!r.agree && throw_on_disagreement) {
        std::ostringstream exact, numeric;
        exact << "integrable_exact=" << r.integrable_exact << " residual=" << r.solve_residual;
        numeric << "max_spread=" << r.max_spread << " threshold=" << r.spread_threshold << " est_error=" << r.est_error;
        throw DisagreementError("exact and numeric integrability verdicts disagree", exact.str(), numeric.str());
    }
    return r;
}

inline IntegrabilityReport check_integrability(const NormalizedP0& p0, const CPoly& q, const QuadConfig& cfg = {},
                                               double spread_tol = 1e-6, bool throw_on_disagreement = true) {
    return check_integrability(p0, q, period_matrix(p0, cfg), spread_tol, throw_on_disagreement);
}

struct KernelReport {
    Eigen::VectorXd singular_values_m;          // of M alone
    Eigen::VectorXd singular_values_augmented;  // of [1 | M]
    Eigen::VectorXcd kernel_vector;             // right singular vector for the kernel of [1 | M]
    double alignment = 0; // |<kernel, (e^{a0}, P0' coeffs)>| / norms; 1 means the e^{P0} line
};

/**
 * Vanishing asymptotic values. On span{F_k} the map b -> M b must be
 * injective. On span{1, F_k} the map (c, b) -> c 1 + M b has a
 * one-dimensional kernel, which must be the e^{P0} combination
 * (e^{a0}, a_1, 2 a_2, ..., -1).
 */
inline KernelReport kernel_analysis(const NormalizedP0& p0, const PeriodMatrix& m) {
    KernelReport r;
    const int d = p0.d;
    r.singular_values_m = Eigen::JacobiSVD<ComplexMatrix>(m.entries).singularValues();
    ComplexMatrix aug(d, d + 1);
    aug.col(0) = ComplexVector::Ones(d);
    aug.rightCols(d) = m.entries;
    Eigen::JacobiSVD<ComplexMatrix> svd(aug, Eigen::ComputeFullV);
    r.singular_values_augmented = svd.singularValues();
    r.kernel_vector = svd.matrixV().col(d);
    ComplexVector expected(d + 1);
    expected(0) = std::exp(p0.a[0]);
    expected.tail(d) = derivative_vector(p0);
    r.alignment = std::abs(expected.dot(r.kernel_vector)) / (expected.norm() * r.kernel_vector.norm());
    return r;
}

} // namespace ramificant

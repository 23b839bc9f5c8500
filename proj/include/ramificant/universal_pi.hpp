#pragma once

/**
 * @file universal_pi.hpp
 * @brief The universal polynomials Pi_d and the closed form of the Ramificant.
 *
 * The logarithmic derivatives c_k = d_{a_k} log Delta are exact polynomials
 * read off the remainder table:
 *
 *     c_0 = d,   c_k = sum_{j=d-k}^{d-1} A_{j+k, j}   (k >= 1).
 *
 * Pi_d is the potential of the closed form sum_k c_k dX_k with Pi_d(0) = 0.
 * It is obtained by Euler integration: each homogeneous component of degree
 * g of sum_k X_k c_k is divided by g.
 */

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/multipoly.hpp"
#include "ramificant/poly.hpp"
#include "ramificant/reduction.hpp"

namespace ramificant {

struct PiResult {
    int d = 0;
    MultiPoly pi;
    std::vector<MultiPoly> gradient; // c_0 .. c_{d-1}
};

inline std::vector<MultiPoly> pi_gradient(int d) {
    if (d < 1) throw UsageError("pi_gradient: degree must be >= 1");
    const auto nv = static_cast<std::size_t>(d);
    std::vector<MultiPoly> grad(nv, MultiPoly(nv));
    // The remainder-table sum degenerates at k = 0; d_{a_0} Delta = d Delta directly.
    grad[0] = MultiPoly::constant(nv, BigRational(d));
    if (d == 1) return grad;
    const auto table = remainder_table(d, 2 * d - 2);
    for (int k = 1; k < d; ++k)
        for (int j = d - k; j < d; ++j)
            grad[static_cast<std::size_t>(k)] += table.at(static_cast<std::size_t>(j + k), static_cast<std::size_t>(j));
    return grad;
}

inline void check_closed(const std::vector<MultiPoly>& grad) {
    for (std::size_t j = 0; j < grad.size(); ++j)
        for (std::size_t k = j + 1; k < grad.size(); ++k)
            if (partial(grad[k], j) != partial(grad[j], k))
                throw ExactnessViolation("gradient is not closed: d_" + std::to_string(j) + " c_" + std::to_string(k) +
                                         " != d_" + std::to_string(k) + " c_" + std::to_string(j));
}

inline PiResult pi_polynomial(int d) {
    PiResult out;
    out.d = d;
    out.gradient = pi_gradient(d);
    check_closed(out.gradient);

    const auto nv = static_cast<std::size_t>(d);
    MultiPoly euler(nv);
    for (std::size_t k = 0; k < nv; ++k) euler += MultiPoly::variable(nv, k) * out.gradient[k];

    out.pi = MultiPoly(nv);
    const int top = euler.total_degree();
    for (int g = 1; g <= top; ++g) out.pi += euler.homogeneous_component(static_cast<unsigned>(g)) * BigRational(1, g);

    for (std::size_t k = 0; k < nv; ++k)
        if (partial(out.pi, k) != out.gradient[k])
            throw ExactnessViolation("Euler potential does not reproduce gradient component " + std::to_string(k));
    return out;
}

/// pi_polynomial memoized per degree; safe for concurrent callers.
inline const PiResult& pi_polynomial_cached(int d) {
    static std::shared_mutex mutex;
    static std::map<int, PiResult> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }
    PiResult fresh = pi_polynomial(d);
    std::unique_lock lock(mutex);
    return cache.try_emplace(d, std::move(fresh)).first->second;
}

/// Vandermonde determinant prod_{i<j} (omega_j - omega_i) of the d-th roots of unity.
inline Complex vandermonde_roots_of_unity(int d) {
    Complex v(1, 0);
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) v *= root_of_unity(d, j) - root_of_unity(d, i);
    return v;
}

struct DeltaZero {
    Complex value;             // Delta(0, ..., 0)
    Complex vandermonde;       // V_d
    double printed_constant;   // (2 pi d)^{d/2} / sqrt(2 pi), kept for comparison
};

/**
 * Delta(0) = (2 pi / d)^{d/2} / sqrt(2 pi) * (-1)^{d-1} * V_d, from the
 * Gamma values at the origin combined with Gauss multiplication. The
 * second constant is a common printed simplification that assumes
 * |V_d| = d^d; it disagrees for d >= 2 and is only reported.
 */
inline DeltaZero delta_zero(int d) {
    if (d < 1) throw UsageError("delta_zero: degree must be >= 1");
    const double two_pi = 2.0 * M_PI;
    const Complex v = vandermonde_roots_of_unity(d);
    const double sign = (d % 2 == 1) ? 1.0 : -1.0;
    const double scale = std::pow(two_pi / d, 0.5 * d) / std::sqrt(two_pi);
    return {scale * sign * v, v, std::pow(two_pi * d, 0.5 * d) / std::sqrt(two_pi)};
}

inline Complex pi_value(const NormalizedP0& p0) {
    const auto& pr = pi_polynomial_cached(p0.d);
    return pr.pi.evaluate<Complex>(std::span<const Complex>(p0.a));
}

/// Delta(0) exp(Pi_d(a)).
inline Complex delta_closed_form(const NormalizedP0& p0) {
    const Complex exponent = pi_value(p0);
    if (exponent.real() > std::log(std::numeric_limits<double>::max()))
        throw RangeError("exp(Pi_d(a)) overflows double range", exponent);
    return delta_zero(p0.d).value * std::exp(exponent);
}

} // namespace ramificant

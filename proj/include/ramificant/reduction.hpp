#pragma once

/**
 * @file reduction.hpp
 * @brief Reduction of primitives of Q e^{P0} to the canonical basis.
 *
 * Every primitive vanishing at 0 is written uniquely as
 *
 *     A0(z) e^{P0(z)} + c + b_0 F_0(z) + ... + b_{d-1} F_{d-1}(z),  A0(0) = 0,
 *
 * with F_k(z) = int_0^z t^k e^{P0(t)} dt. The remainder tables A_{n,k}
 * (coefficients of z^n mod z P0') feed the exact construction of the
 * universal polynomials.
 */

#include <complex>
#include <cstddef>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/multipoly.hpp"
#include "ramificant/poly.hpp"

namespace ramificant {

struct ReductionResult {
    CPoly a0_poly;                    // A0, with A0(0) = 0
    Complex const_term{};             // coefficient of the constant function 1
    std::vector<Complex> basis_coeffs; // b_0 .. b_{d-1}
};

template <class T>
struct CanonicalForm {
    Poly<T> a0_poly;
    std::vector<T> basis_coeffs;
};

/**
 * Field-generic reduction. p0_prime must have degree d-1 (any nonzero
 * leading coefficient); q is arbitrary.
 *
 * Repeated Euclidean division Q = A P0' + B followed by integration by
 * parts, int A P0' e^{P0} = [A e^{P0}] - int A' e^{P0}, until the running
 * integrand has degree < d. The accumulated A(0) e^{P0} is then folded
 * into the basis through e^{P0(z)} = e^{P0(0)} + sum_k p_k F_k(z), which
 * also cancels the constant term.
 */
template <class T>
CanonicalForm<T> reduce_canonical(const Poly<T>& p0_prime, int d, Poly<T> q) {
    if (d < 1 || p0_prime.degree() != d - 1) throw UsageError("reduce: P0' must have degree d-1");
    Poly<T> g;
    std::vector<T> b(static_cast<std::size_t>(d), T{});
    while (q.degree() >= d) {
        auto [a, rest] = divmod(q, p0_prime);
        g += a;
        for (std::size_t k = 0; k < rest.size(); ++k) b[k] += rest[k];
        q = -derivative(a);
    }
    for (std::size_t k = 0; k < q.size(); ++k) b[k] += q[k];

    const T g0 = g[0];
    if (g0 != T{}) {
        g -= Poly<T>::constant(g0);
        for (std::size_t k = 0; k < p0_prime.size(); ++k) b[k] += g0 * p0_prime[k];
    }
    return {std::move(g), std::move(b)};
}

inline ReductionResult reduce_primitive(const NormalizedP0& p0, const CPoly& q) {
    auto form = reduce_canonical(p0.derivative_poly(), p0.d, q);
    ReductionResult out;
    out.const_term = -form.a0_poly[0] * std::exp(p0.a[0]);
    out.a0_poly = std::move(form.a0_poly);
    out.basis_coeffs = std::move(form.basis_coeffs);
    return out;
}

/// A0' + A0 P0' + sum_k b_k z^k, which equals q when the reduction is right.
inline CPoly reconstruct_integrand(const NormalizedP0& p0, const ReductionResult& r) {
    CPoly sum = derivative(r.a0_poly) + r.a0_poly * p0.derivative_poly();
    sum += CPoly(r.basis_coeffs);
    return sum;
}

struct RemainderTable {
    int d = 0;
    /// rows[n][k] = A_{n,k} as a polynomial in X_0..X_{d-1}.
    std::vector<std::vector<MultiPoly>> rows;

    const MultiPoly& at(std::size_t n, std::size_t k) const { return rows.at(n).at(k); }
};

/**
 * Remainders of z^n modulo z P0' for the generic normalized P0, rows
 * n = 0..n_max. Rows n < d are unit vectors; for n >= d
 *
 *     A_{n,k} = sum_{i=1}^{d-1} i X_i A_{n-d+i,k},
 *
 * which reproduces A_{d,k} = k X_k from the unit rows.
 */
inline RemainderTable remainder_table(int d, int n_max) {
    if (d < 1) throw UsageError("remainder_table: degree must be >= 1");
    if (n_max < 0) throw UsageError("remainder_table: n_max must be >= 0");
    const auto nv = static_cast<std::size_t>(d);
    RemainderTable table;
    table.d = d;
    table.rows.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        std::vector<MultiPoly> row(nv, MultiPoly(nv));
        if (n < d) {
            row[static_cast<std::size_t>(n)] = MultiPoly::constant(nv, BigRational(1));
        } else {
            // d = 1: z^n is a multiple of z P0' = -z for n >= 1, so the row stays zero.
            for (int i = 1; i < d; ++i) {
                const MultiPoly weight = MultiPoly::variable(nv, static_cast<std::size_t>(i)) * BigRational(i);
                const auto& prev = table.rows[static_cast<std::size_t>(n - d + i)];
                for (std::size_t k = 0; k < nv; ++k)
                    if (!prev[k].is_zero()) row[k] += weight * prev[k];
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace ramificant

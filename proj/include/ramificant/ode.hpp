#pragma once

/**
 * @file ode.hpp
 * @brief The order-d linear ODE annihilating z^k e^{P0}, k < d.
 *
 * With y_{0,0} = e^{P0} and y_{n,m+1} = y_{n-1,m} + y'_{n,m}, every
 * y_{n,m} = Q_{n,m} e^{P0} with
 *
 *     Q_{n,m+1} = Q_{n-1,m} + Q'_{n,m} + P0' Q_{n,m},   Q_{n,n} = 1.
 *
 * Plugging z^k e^{P0} into y^{(d)} + b_{d-1} y^{(d-1)} + ... + b_0 y and
 * grouping by powers of z gives the unit-diagonal triangular system
 * b_j + sum_{i>j} b_i Q_{j,i} + Q_{j,d} = 0.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/poly.hpp"
#include "ramificant/quadrature.hpp"

namespace ramificant {

template <class T>
using QTable = std::vector<std::vector<Poly<T>>>; // [n][m], zero for n > m

template <class T>
QTable<T> q_table(const Poly<T>& p0_poly, int d) {
    if (d < 1) throw UsageError("q_table: order must be >= 1");
    const auto size = static_cast<std::size_t>(d) + 1;
    const Poly<T> dp = derivative(p0_poly);
    QTable<T> q(size, std::vector<Poly<T>>(size));
    q[0][0] = Poly<T>::constant(T(1));
    for (std::size_t m = 0; m + 1 < size; ++m) {
        for (std::size_t n = 0; n <= m + 1; ++n) {
            Poly<T> next;
            if (n >= 1) next += q[n - 1][m];
            if (n <= m) next += derivative(q[n][m]) + dp * q[n][m];
            q[n][m + 1] = std::move(next);
        }
    }
    return q;
}

template <class T>
struct OdeResultT {
    Poly<T> p0_poly;
    int d = 0;
    std::vector<Poly<T>> b; // y^{(d)} + b_{d-1} y^{(d-1)} + ... + b_0 y = 0
    QTable<T> q;
};

using OdeResult = OdeResultT<Complex>;

template <class T>
OdeResultT<T> build_ode(const Poly<T>& p0_poly) {
    if (p0_poly.degree() < 1) throw UsageError("build_ode: P0 must have degree >= 1");
    OdeResultT<T> out;
    out.p0_poly = p0_poly;
    out.d = p0_poly.degree();
    out.q = q_table(p0_poly, out.d);
    const auto d = static_cast<std::size_t>(out.d);
    out.b.assign(d, Poly<T>{});
    for (std::size_t j = d; j-- > 0;) {
        Poly<T> bj = -out.q[j][d];
        for (std::size_t i = j + 1; i < d; ++i) bj -= out.b[i] * out.q[j][i];
        out.b[j] = std::move(bj);
    }
    return out;
}

/// D p = p' + P0' p, i.e. (p e^{P0})' = (D p) e^{P0}.
template <class T>
Poly<T> twisted_derivative(const Poly<T>& p, const Poly<T>& p0_prime) {
    return derivative(p) + p0_prime * p;
}

/// Polynomial factor of L(z^k e^{P0}) / e^{P0}; zero when the ODE is right.
template <class T>
Poly<T> operator_residual(const OdeResultT<T>& ode, int k) {
    const Poly<T> dp = derivative(ode.p0_poly);
    Poly<T> current = Poly<T>::monomial(static_cast<std::size_t>(k), T(1));
    Poly<T> sum;
    for (int l = 0; l < ode.d; ++l) {
        sum += ode.b[static_cast<std::size_t>(l)] * current;
        current = twisted_derivative(current, dp);
    }
    return sum + current;
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
template <class T>
Poly<T> poly_determinant(const std::vector<std::vector<Poly<T>>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Poly<T>::constant(T(1));
    if (n == 1) return m[0][0];
    Poly<T> det;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<Poly<T>>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly<T>> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Poly<T> term = m[0][col] * poly_determinant(minor);
        if (col % 2 == 0) det += term; else det -= term;
    }
    return det;
}

struct WronskianReport {
    CPoly symbolic;                 // W / e^{d P0}, expected constant
    Complex constant{};             // c
    std::vector<Complex> sampled;   // W(z) / e^{d P0(z)} at each sample
    double max_rel_deviation = 0;
    bool consistent = false;
};

/**
 * Wronskian of the fundamental solutions z^k e^{P0}, k < d. Symbolically it
 * is e^{d P0} det[D^i z^k]; numerically each sample evaluates the
 * derivatives through the Q-table expansion
 *     (z^k e^{P0})^{(l)} = sum_i k!/(k-i)! z^{k-i} Q_{i,l} e^{P0}.
 */
inline WronskianReport wronskian_check(const CPoly& p0_poly, const std::vector<Complex>& sample_points) {
    if (sample_points.size() < 2) throw UsageError("wronskian_check needs at least two sample points");
    const int d = p0_poly.degree();
    if (d < 1) throw UsageError("wronskian_check: P0 must have degree >= 1");
    const auto n = static_cast<std::size_t>(d);
    const CPoly dp = derivative(p0_poly);

    std::vector<std::vector<CPoly>> m(n, std::vector<CPoly>(n));
    for (std::size_t k = 0; k < n; ++k) {
        CPoly current = CPoly::monomial(k, Complex(1, 0));
        for (std::size_t i = 0; i < n; ++i) {
            m[i][k] = current;
            current = twisted_derivative(current, dp);
        }
    }
    WronskianReport r;
    r.symbolic = poly_determinant(m);
    r.constant = r.symbolic[0];

    const auto table = q_table(p0_poly, d);
    for (const auto& z : sample_points) {
        Eigen::MatrixXcd w(d, d);
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t k = 0; k < n; ++k) {
                Complex entry{};
                double falling = 1; // k!/(k-i)!
                for (std::size_t i = 0; i <= std::min(k, l); ++i) {
                    entry += falling * std::pow(z, static_cast<int>(k - i)) * table[i][l].eval(z);
                    falling *= static_cast<double>(k - i);
                }
                w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = entry;
            }
        }
        // The e^{P0} per entry and the e^{-d P0} normalization cancel.
        r.sampled.push_back(Eigen::PartialPivLU<Eigen::MatrixXcd>(w).determinant());
    }
    for (const auto& c : r.sampled)
        r.max_rel_deviation = std::max(r.max_rel_deviation, std::abs(c - r.constant) / std::abs(r.constant));
    r.consistent = r.max_rel_deviation <= 1e-8;
    return r;
}

/// Derivatives 0..order of an entire f at z0 by the trapezoid rule on a circle.
template <class F>
std::vector<Complex> cauchy_derivatives(F&& f, Complex z0, int order, double radius = 0.5, int points = 48) {
    std::vector<Complex> samples(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j)
        samples[static_cast<std::size_t>(j)] = f(z0 + std::polar(radius, 2 * M_PI * j / points));
    std::vector<Complex> out;
    double factorial = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) factorial *= n;
        Complex acc{};
        for (int j = 0; j < points; ++j)
            acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -2 * M_PI * n * j / points);
        out.push_back(acc * factorial / (points * std::pow(radius, n)));
    }
    return out;
}

/**
 * Relative residual of the lifted equation y^{(d+1)} + b_{d-1} y^{(d)} + ...
 * + b_0 y' = 0 on F_k, with F_k evaluated by segment quadrature and its
 * derivatives by Cauchy's formula. Worst case over k and the sample points.
 */
inline double lift_residual(const OdeResult& ode, const std::vector<Complex>& points, const QuadConfig& cfg = {}) {
    double worst = 0;
    for (int k = 0; k < ode.d; ++k) {
        const CPoly integrand = CPoly::monomial(static_cast<std::size_t>(k), Complex(1, 0));
        auto fk = [&](Complex z) { return integrate_segment(ode.p0_poly, integrand, z, cfg).value; };
        for (const auto& z0 : points) {
            const auto der = cauchy_derivatives(fk, z0, ode.d + 1);
            Complex sum = der[static_cast<std::size_t>(ode.d + 1)];
            double scale = std::abs(sum);
            for (int j = 0; j < ode.d; ++j) {
                const Complex term = ode.b[static_cast<std::size_t>(j)].eval(z0) * der[static_cast<std::size_t>(j + 1)];
                sum += term;
                scale += std::abs(term);
            }
            worst = std::max(worst, std::abs(sum) / scale);
        }
    }
    return worst;
}

} // namespace ramificant

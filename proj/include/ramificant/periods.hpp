#pragma once

/**
 * @file periods.hpp
 * @brief Period matrices, the numeric Ramificant, and what they determine.
 *
 * Entry (l, k) of the period matrix (0-based here) is
 *     Omega = int_0^{+inf omega_{l+1}} t^k e^{P0(t)} dt,
 * so rows are directions and columns are the basis integrands 1, t, ...
 */

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/poly.hpp"
#include "ramificant/quadrature.hpp"
#include "ramificant/universal_pi.hpp"

namespace ramificant {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct PeriodMatrix {
    int d = 0;
    ComplexMatrix entries;
    double est_error = 0;
    std::size_t nodes_used = 0;
};

/// RAMIFICANT_THREADS if set and positive, else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("RAMIFICANT_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs job(i) for i in [0, n) on up to worker_count() threads; rethrows the first failure.
template <class Job>
void parallel_for(std::size_t n, Job&& job) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        job(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Ray integrals of q against every direction, one per row.
inline std::vector<QuadResult> ray_values(const NormalizedP0& p0, const CPoly& q, const QuadConfig& cfg) {
    std::vector<QuadResult> out(static_cast<std::size_t>(p0.d));
    parallel_for(out.size(), [&](std::size_t l) { out[l] = integrate_ray(p0, q, static_cast<int>(l) + 1, cfg); });
    return out;
}

inline PeriodMatrix period_matrix(const NormalizedP0& p0, const QuadConfig& cfg = {}) {
    const auto d = static_cast<std::size_t>(p0.d);
    std::vector<QuadResult> cells(d * d);
    parallel_for(cells.size(), [&](std::size_t idx) {
        const std::size_t l = idx / d, k = idx % d;
        cells[idx] = integrate_ray(RayIntegralSpec{p0, static_cast<int>(k), static_cast<int>(l) + 1}, cfg);
    });
    PeriodMatrix m;
    m.d = p0.d;
    m.entries.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    double worst = 0;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        m.entries(static_cast<Eigen::Index>(idx / d), static_cast<Eigen::Index>(idx % d)) = cells[idx].value;
        worst = std::max(worst, cells[idx].est_error);
        m.nodes_used += cells[idx].nodes_used;
    }
    m.est_error = worst * static_cast<double>(d);
    return m;
}

inline Complex ramificant_det(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
    if (m.rows() == 0) return {1, 0};
    return Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
}

inline Complex ramificant_det(const PeriodMatrix& m) { return ramificant_det(m.entries); }

/// (a_1, 2 a_2, ..., (d-1) a_{d-1}, -1): the coefficients of P0'.
inline ComplexVector derivative_vector(const NormalizedP0& p0) {
    const CPoly dp = p0.derivative_poly();
    ComplexVector v(p0.d);
    for (int k = 0; k < p0.d; ++k) v(k) = dp[static_cast<std::size_t>(k)];
    return v;
}

/// || M v + e^{a_0} (1, ..., 1) ||_inf with v = derivative_vector(p0).
inline double row_identity_residual(const NormalizedP0& p0, const PeriodMatrix& m) {
    const ComplexVector r = m.entries * derivative_vector(p0) + ComplexVector::Constant(p0.d, std::exp(p0.a[0]));
    return r.cwiseAbs().maxCoeff();
}

struct IdentityReport {
    Complex delta_numeric;
    Complex delta_zero_numeric;
    Complex ratio_numeric;
    Complex exp_pi;
    double rel_err = 0;
    double printed_constant = 0;
    Complex vandermonde_constant;
    Complex delta_zero_closed;
    double est_error = 0;
};

/// Compares Delta(a) / Delta(0), both by quadrature, with exp(Pi_d(a)).
inline IdentityReport verify_identity(const NormalizedP0& p0, const QuadConfig& cfg = {}) {
    IdentityReport r;
    const auto m = period_matrix(p0, cfg);
    const auto m0 = period_matrix(NormalizedP0::zero(p0.d), cfg);
    r.delta_numeric = ramificant_det(m);
    r.delta_zero_numeric = ramificant_det(m0);
    r.ratio_numeric = r.delta_numeric / r.delta_zero_numeric;
    const Complex exponent = pi_value(p0);
    if (exponent.real() > std::log(std::numeric_limits<double>::max()))
        throw RangeError("exp(Pi_d(a)) overflows double range", exponent);
    r.exp_pi = std::exp(exponent);
    r.rel_err = std::abs(r.ratio_numeric - r.exp_pi) / std::abs(r.exp_pi);
    const auto dz = delta_zero(p0.d);
    r.printed_constant = dz.printed_constant;
    r.vandermonde_constant = dz.vandermonde;
    r.delta_zero_closed = dz.value;
    r.est_error = std::max(m.est_error, m0.est_error);
    return r;
}

struct RecoveryResult {
    Complex exp_a0;
    std::vector<Complex> a; // a_1 .. a_{d-1}
    double residual = 0;
    Complex log_a0_mod_2pi_i; // principal branch only
};

/**
 * Solves M y = (1, ..., 1). Since y = -e^{-a_0} (a_1, 2 a_2, ..., -1),
 * e^{a_0} = 1 / y_d and a_j = -y_j / (j y_d).
 */
inline RecoveryResult recover_coefficients(const ComplexMatrix& m) {
    const auto d = m.rows();
    if (d < 1 || m.cols() != d) throw UsageError("recover: period matrix must be square and non-empty");
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const double norm = m.cwiseAbs().maxCoeff();
    const auto& packed = lu.matrixLU();
    for (Eigen::Index i = 0; i < d; ++i)
        if (std::abs(packed(i, i)) < 1e-12 * norm) throw SingularMatrix("period matrix is numerically singular");
    const ComplexVector ones = ComplexVector::Ones(d);
    const ComplexVector y = lu.solve(ones);
    RecoveryResult out;
    const Complex yd = y(d - 1);
    out.exp_a0 = 1.0 / yd;
    for (Eigen::Index j = 1; j < d; ++j) out.a.push_back(-y(j - 1) / (static_cast<double>(j) * yd));
    out.residual = (m * y - ones).norm();
    out.log_a0_mod_2pi_i = std::log(out.exp_a0);
    return out;
}

inline RecoveryResult recover_coefficients(const PeriodMatrix& m) { return recover_coefficients(m.entries); }

struct JacobianReport {
    ComplexMatrix jacobian; // finite-difference D Upsilon, rows = directions, cols = a_j
    double max_rel_deviation = 0;
    double det_rel_error = 0;
    Complex det_jacobian;
    Complex delta;
    double step = 0;
};

/// Upsilon(a) = (F_0(+inf omega_l))_l.
inline ComplexVector period_map(const NormalizedP0& p0, const QuadConfig& cfg) {
    const auto vals = ray_values(p0, CPoly{Complex(1, 0)}, cfg);
    ComplexVector v(p0.d);
    for (int l = 0; l < p0.d; ++l) v(l) = vals[static_cast<std::size_t>(l)].value;
    return v;
}

/**
 * Central differences of Upsilon in each a_j against d_{a_j} F_0(+inf omega_l)
 * = int t^j e^{P0}, i.e. column j of the period matrix. Deviations are
 * relative to max(|entry|, 1e-3 max|M|).
 */
inline JacobianReport jacobian_check(const NormalizedP0& p0, double h, const QuadConfig& cfg = {}) {
    if (!(h >= 1e-6 && h <= 1e-3)) throw UsageError("jacobian step must lie in [1e-6, 1e-3]");
    const auto m = period_matrix(p0, cfg);
    JacobianReport r;
    r.step = h;
    r.jacobian.resize(p0.d, p0.d);
    for (int j = 0; j < p0.d; ++j) {
        NormalizedP0 plus = p0, minus = p0;
        plus.a[static_cast<std::size_t>(j)] += h;
        minus.a[static_cast<std::size_t>(j)] -= h;
        r.jacobian.col(j) = (period_map(plus, cfg) - period_map(minus, cfg)) / (2.0 * h);
    }
    const double floor = 1e-3 * m.entries.cwiseAbs().maxCoeff();
    for (int l = 0; l < p0.d; ++l)
        for (int j = 0; j < p0.d; ++j) {
            const double dev = std::abs(r.jacobian(l, j) - m.entries(l, j)) / std::max(std::abs(m.entries(l, j)), floor);
            r.max_rel_deviation = std::max(r.max_rel_deviation, dev);
        }
    r.det_jacobian = ramificant_det(r.jacobian);
    r.delta = ramificant_det(m);
    r.det_rel_error = std::abs(r.det_jacobian - r.delta) / std::abs(r.delta);
    return r;
}

struct SeparationReport {
    double min_row_gap = std::numeric_limits<double>::infinity();
    double threshold = 0; // 10 * est_error
    bool separated = true;
};

/// Smallest sup-norm distance between two rows; distinct directions must stay apart.
inline SeparationReport separation_check(const PeriodMatrix& m) {
    SeparationReport r;
    r.threshold = 10.0 * m.est_error;
    for (int l = 0; l < m.d; ++l)
        for (int k = l + 1; k < m.d; ++k)
            r.min_row_gap = std::min(r.min_row_gap, (m.entries.row(l) - m.entries.row(k)).cwiseAbs().maxCoeff());
    r.separated = r.min_row_gap > r.threshold;
    return r;
}

} // namespace ramificant

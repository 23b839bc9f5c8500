#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod integration along straight complex paths.
 *
 * Segment integrals give F_k(z); ray integrals to +inf * omega_l give the
 * exponential periods. Rays are truncated at a radius R past which a
 * rigorous tail bound holds; [0, R] is then handled by the same globally
 * adaptive G7/K15 scheme as segments.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/poly.hpp"

namespace ramificant {

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_floor = 1e-14;
    int max_subdivisions = 60; // bisection depth cap per interval
    double tail_tol = 1e-16;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_floor > 0) || !(tail_tol > 0) || max_subdivisions < 1)
            throw UsageError("quadrature tolerances must be positive");
    }
};

struct QuadResult {
    Complex value{};
    double est_error = 0;
    std::size_t nodes_used = 0;
    double radius = 0; // truncation radius for rays, |z_end| for segments
};

struct RayIntegralSpec {
    NormalizedP0 p0;
    int power = 0;           // exponent of t, i.e. k-1 for Omega_{kl}
    int direction_index = 1; // l in 1..d
};

namespace detail {

// Kronrod nodes on [-1, 1] (non-negative half, descending), Kronrod and Gauss weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    Complex value;
    double error;
    double resabs; // int |f| over the panel
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

/// One G7/K15 panel with the QUADPACK error heuristic applied to |.|.
template <class F>
Panel gk15(F& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<Complex, 15> fv;
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        fv[static_cast<std::size_t>(j)] = f(center - dx);
        fv[static_cast<std::size_t>(14 - j)] = f(center + dx);
    }
    Complex kron = fv[7] * kWgk[7];
    Complex gauss = fv[7] * kWg[3];
    double resabs = std::abs(fv[7]) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const Complex pair = fv[ju] + fv[14 - ju];
        kron += kWgk[ju] * pair;
        resabs += kWgk[ju] * (std::abs(fv[ju]) + std::abs(fv[14 - ju]));
        if (j % 2 == 1) gauss += kWg[ju / 2] * pair;
    }
    const Complex mean = 0.5 * kron;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        resasc += kWgk[ju] * (std::abs(fv[ju] - mean) + std::abs(fv[14 - ju] - mean));
    }
    const double scale = std::abs(half);
    kron *= half;
    gauss *= half;
    resabs *= scale;
    resasc *= scale;
    double err = std::abs(kron - gauss);
    if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
    if (!std::isfinite(kron.real()) || !std::isfinite(kron.imag()))
        throw NumericFailure("integrand produced a non-finite value");
    return {a, b, kron, err, resabs, depth};
}

} // namespace detail

/// Globally adaptive integration of a complex-valued f over the real interval [a, b].
template <class F>
QuadResult integrate_interval(F&& f, double a, double b, const QuadConfig& cfg) {
    cfg.validate();
    QuadResult out;
    if (a == b) return out;
    constexpr std::size_t kMaxPanels = 20000;

    std::priority_queue<detail::Panel> open;
    std::vector<detail::Panel> frozen; // panels at the depth cap
    auto first = detail::gk15(f, a, b, 0);
    Complex total = first.value;
    double error = first.error;
    double magnitude = first.resabs;
    std::size_t evaluated = 1;
    open.push(first);

    // Below 100 eps int|f| the panel estimates are pure roundoff and further
    // bisection cannot help; est_error still reports that level honestly.
    constexpr double kRoundoff = 100 * std::numeric_limits<double>::epsilon();
    auto tolerance = [&] { return std::max({cfg.rel_tol * std::abs(total), cfg.abs_floor, kRoundoff * magnitude}); };

    while (error > tolerance()) {
        if (open.empty() || evaluated >= kMaxPanels) {
            throw ToleranceNotMet("adaptive quadrature exhausted its subdivisions", total, error);
        }
        auto worst = open.top();
        open.pop();
        if (worst.depth >= cfg.max_subdivisions) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(f, worst.a, mid, worst.depth + 1);
        auto right = detail::gk15(f, mid, worst.b, worst.depth + 1);
        evaluated += 2;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        magnitude += left.resabs + right.resabs - worst.resabs;
        open.push(left);
        open.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    Complex sum{};
    double err = 0;
    for (const auto& p : frozen) {
        sum += p.value;
        err += p.error;
    }
    while (!open.empty()) {
        sum += open.top().value;
        err += open.top().error;
        open.pop();
    }
    out.value = sum;
    out.est_error = err;
    out.nodes_used = 15 * evaluated;
    out.radius = b - a;
    return out;
}

/// int_0^{z_end} q(t) e^{exponent(t)} dt along the straight segment.
inline QuadResult integrate_segment(const CPoly& exponent, const CPoly& q, Complex z_end, const QuadConfig& cfg) {
    auto f = [&](double s) {
        const Complex t = s * z_end;
        return z_end * q.eval(t) * std::exp(exponent.eval(t));
    };
    auto r = integrate_interval(f, 0.0, 1.0, cfg);
    r.radius = std::abs(z_end);
    return r;
}

/// F_k(z_end) = int_0^{z_end} t^k e^{P0(t)} dt.
inline QuadResult integrate_segment(const NormalizedP0& p0, int power, Complex z_end, const QuadConfig& cfg) {
    if (power < 0) throw UsageError("power must be >= 0");
    return integrate_segment(p0.full(), CPoly::monomial(static_cast<std::size_t>(power), Complex(1, 0)), z_end, cfg);
}

/**
 * Log of an upper bound for |q(r omega) e^{P0(r omega)}| on r >= 1:
 *     g(r) = ln C + m ln r - r^d/d + sum_{1<=j<d} |a_j| r^j + Re a_0,
 * with C = sum |q_j| and m = deg q.
 */
struct RayEnvelope {
    int d;
    double log_c;
    int m;
    std::vector<double> abs_a;
    double re_a0;

    RayEnvelope(const NormalizedP0& p0, const CPoly& q) : d(p0.d), m(std::max(q.degree(), 0)), re_a0(p0.a[0].real()) {
        double c = 0;
        for (const auto& x : q.coefficients()) c += std::abs(x);
        log_c = std::log(c);
        for (const auto& x : p0.a) abs_a.push_back(std::abs(x));
    }

    double g(double r) const {
        double v = log_c + m * std::log(r) - std::pow(r, d) / d + re_a0;
        for (int j = 1; j < d; ++j) v += abs_a[static_cast<std::size_t>(j)] * std::pow(r, j);
        return v;
    }

    double dg(double r) const {
        double v = m / r - std::pow(r, d - 1);
        for (int j = 1; j < d; ++j) v += j * abs_a[static_cast<std::size_t>(j)] * std::pow(r, j - 1);
        return v;
    }

    /// g is concave on [r, inf) iff this holds at r (each positive term of g'' decays faster).
    bool concave_from(double r) const {
        double rhs = 0;
        for (int j = 2; j < d; ++j) rhs += j * (j - 1) * abs_a[static_cast<std::size_t>(j)] * std::pow(r, j - d);
        return (d - 1) >= rhs;
    }

    /// Rigorous bound on int_r^inf e^{g}, or +inf where it does not apply.
    double tail_bound(double r) const {
        const double slope = dg(r);
        if (r < 1 || slope >= 0 || !concave_from(r)) return std::numeric_limits<double>::infinity();
        return std::exp(g(r)) / -slope;
    }
};

inline double ray_radius_limit(int d, double tail_tol) {
    return 10.0 * std::pow(d * std::log(1.0 / tail_tol), 1.0 / d) + 50.0;
}

/// Truncation radius: the last crossing of g(R) = ln tail_tol, found by bisection, plus 20%.
inline double ray_truncation_radius(const NormalizedP0& p0, const CPoly& q, double tail_tol) {
    const RayEnvelope env(p0, q);
    const double limit = ray_radius_limit(p0.d, tail_tol);
    const double target = std::log(tail_tol);
    if (env.g(limit) >= target)
        throw TailBoundFailure("no truncation radius bounds the ray tail", limit);

    double hi = limit;
    double lo = hi;
    while (lo > 1.0 && env.g(lo) < target) lo *= 0.97;
    double radius = 1.0;
    if (env.g(lo) >= target) {
        for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (env.g(mid) >= target ? lo : hi) = mid;
        }
        radius = hi;
    }
    radius = std::max(1.0, 1.2 * radius);
    while (env.tail_bound(radius) >= tail_tol) {
        radius *= 1.2;
        if (radius > limit) throw TailBoundFailure("tail bound not met inside the radius limit", limit);
    }
    return radius;
}

/// int_0^{+inf omega_l} q(t) e^{P0(t)} dt along the straight ray.
inline QuadResult integrate_ray(const NormalizedP0& p0, const CPoly& q, int direction_index, const QuadConfig& cfg,
                                double radius_multiplier = 1.0) {
    cfg.validate();
    const Complex omega = root_of_unity(p0.d, direction_index);
    if (q.is_zero()) return {};
    const double radius = radius_multiplier * ray_truncation_radius(p0, q, cfg.tail_tol);
    const CPoly full = p0.full();
    auto f = [&](double r) {
        const Complex t = r * omega;
        return omega * q.eval(t) * std::exp(full.eval(t));
    };
    auto res = integrate_interval(f, 0.0, radius, cfg);
    res.est_error += cfg.tail_tol * (1.0 + std::abs(res.value));
    res.radius = radius;
    return res;
}

inline QuadResult integrate_ray(const RayIntegralSpec& spec, const QuadConfig& cfg) {
    if (spec.power < 0) throw UsageError("power must be >= 0");
    return integrate_ray(spec.p0, CPoly::monomial(static_cast<std::size_t>(spec.power), Complex(1, 0)),
                         spec.direction_index, cfg);
}

inline double gamma_fn(double x) {
    if (!(x > 0)) throw std::domain_error("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

} // namespace ramificant

#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over a field.
 *
 * The same template serves two coefficient fields: std::complex<double>
 * (CPoly, the numeric layer) and BigRational (the exact layer). Coefficients
 * are stored in ascending degree; trailing exact zeros are trimmed so the
 * zero polynomial is the empty list.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/rational.hpp"

namespace ramificant {

using Complex = std::complex<double>;

template <class T>
class Poly {
public:
    using value_type = T;

    Poly() = default;
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }

    /// v * z^k
    static Poly monomial(std::size_t k, const T& v) {
        std::vector<T> c(k + 1, T{});
        c[k] = v;
        return Poly(std::move(c));
    }

    const std::vector<T>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }

    T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }
    const T& leading() const {
        if (c_.empty()) throw UsageError("leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly& operator+=(const Poly& rhs) {
        if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), T{});
        for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
        trim();
        return *this;
    }

    Poly& operator-=(const Poly& rhs) {
        if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), T{});
        for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
        trim();
        return *this;
    }

    Poly& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= T(-1); }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T{});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Horner evaluation.
    template <class U>
    U eval(const U& z) const {
        U acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + U(*it);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T{}) c_.pop_back();
    }

    std::vector<T> c_;
};

using CPoly = Poly<Complex>;
using QPoly = Poly<BigRational>;

template <class T>
Poly<T> derivative(const Poly<T>& p) {
    if (p.size() <= 1) return {};
    std::vector<T> out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * T(static_cast<long>(i));
    return Poly<T>(std::move(out));
}

template <class T>
struct DivMod {
    Poly<T> quotient;
    Poly<T> remainder;
};

/// Euclidean division by the leading coefficient of den, without pivoting.
template <class T>
DivMod<T> divmod(const Poly<T>& num, const Poly<T>& den) {
    if (den.is_zero()) throw UsageError("polynomial division by the zero polynomial");
    const int dn = den.degree();
    if (num.degree() < dn) return {{}, num};
    std::vector<T> rem = num.coefficients();
    std::vector<T> quo(static_cast<std::size_t>(num.degree() - dn + 1), T{});
    const T& lead = den.leading();
    for (int i = num.degree() - dn; i >= 0; --i) {
        const auto top = static_cast<std::size_t>(i + dn);
        T q = rem[top] / lead;
        quo[static_cast<std::size_t>(i)] = q;
        for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(i + j)] -= q * den[static_cast<std::size_t>(j)];
        rem[top] = T{};
    }
    rem.resize(static_cast<std::size_t>(dn));
    return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

/// Largest coefficient modulus; 0 for the zero polynomial.
inline double max_abs_coefficient(const CPoly& p) {
    double m = 0;
    for (const auto& c : p.coefficients()) m = std::max(m, std::abs(c));
    return m;
}

/// Degree-d polynomial -(1/d) z^d + a_{d-1} z^{d-1} + ... + a_0.
struct NormalizedP0 {
    int d = 1;
    std::vector<Complex> a{Complex{}};

    NormalizedP0() = default;
    NormalizedP0(int degree, std::vector<Complex> coeffs) : d(degree), a(std::move(coeffs)) {
        if (d < 1) throw UsageError("normalized polynomial needs degree >= 1");
        if (a.size() != static_cast<std::size_t>(d))
            throw UsageError("normalized polynomial of degree d needs exactly d free coefficients");
        for (const auto& x : a)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                throw UsageError("normalized polynomial has a non-finite coefficient");
    }

    /// a = 0: the polynomial -z^d/d.
    static NormalizedP0 zero(int degree) {
        return NormalizedP0(degree, std::vector<Complex>(static_cast<std::size_t>(std::max(degree, 1)), Complex{}));
    }

    CPoly full() const {
        std::vector<Complex> c(a.begin(), a.end());
        c.push_back(Complex(-1.0 / d, 0.0));
        return CPoly(std::move(c));
    }

    /// P0' = a_1 + 2 a_2 z + ... + (d-1) a_{d-1} z^{d-2} - z^{d-1}; leading coefficient exactly -1.
    CPoly derivative_poly() const {
        std::vector<Complex> c(static_cast<std::size_t>(d));
        for (int k = 1; k < d; ++k) c[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * a[static_cast<std::size_t>(k)];
        c[static_cast<std::size_t>(d - 1)] = Complex(-1.0, 0.0);
        return CPoly(std::move(c));
    }

    Complex eval(Complex z) const { return full().eval(z); }

    bool is_real() const {
        return std::all_of(a.begin(), a.end(), [](const Complex& x) { return x.imag() == 0.0; });
    }

    friend bool operator==(const NormalizedP0&, const NormalizedP0&) = default;
};

/// d-th root of unity e^{2 pi i (l-1)/d}, l = 1..d.
inline Complex root_of_unity(int d, int l) {
    if (d < 1 || l < 1 || l > d) throw UsageError("root of unity index out of range");
    if (l == 1) return {1.0, 0.0};
    const double theta = 2.0 * M_PI * static_cast<double>(l - 1) / static_cast<double>(d);
    return std::polar(1.0, theta);
}

} // namespace ramificant

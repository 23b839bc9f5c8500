#pragma once

/**
 * @file multipoly.hpp
 * @brief Sparse multivariate polynomials over the rationals.
 *
 * Terms are kept in a map keyed by exponent vector, ordered graded
 * lexicographically: ascending total degree, and inside one degree the
 * lexicographically larger exponent (X0 heaviest) first. That order is what
 * every printer and serializer walks, so output is reproducible.
 */

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/rational.hpp"

namespace ramificant {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

struct GradedLexOrder {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class MultiPoly {
public:
    using TermMap = std::map<Exponent, BigRational, GradedLexOrder>;

    explicit MultiPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

    static MultiPoly constant(std::size_t num_vars, const BigRational& c) {
        MultiPoly p(num_vars);
        p.add_term(Exponent(num_vars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t num_vars, std::size_t k) {
        if (k >= num_vars) throw UsageError("variable index out of range");
        Exponent e(num_vars, 0);
        e[k] = 1;
        MultiPoly p(num_vars);
        p.add_term(std::move(e), BigRational(1));
        return p;
    }

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    BigRational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigRational(0) : it->second;
    }

    /// Adds c to the coefficient of x^e, dropping the term if it cancels.
    void add_term(Exponent e, BigRational c) {
        if (e.size() != num_vars_) throw UsageError("exponent length does not match num_vars");
        c.canonicalize(); // mpq_class(n, d) is not reduced on construction
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// -1 for the zero polynomial.
    int total_degree() const {
        return terms_.empty() ? -1 : static_cast<int>(ramificant::total_degree(terms_.rbegin()->first));
    }

    int degree_in(std::size_t k) const {
        if (k >= num_vars_) throw UsageError("variable index out of range");
        int deg = -1;
        for (const auto& [e, c] : terms_) deg = std::max(deg, static_cast<int>(e[k]));
        return deg;
    }

    /// Sum of the terms of total degree g.
    MultiPoly homogeneous_component(unsigned g) const {
        MultiPoly h(num_vars_);
        for (const auto& [e, c] : terms_)
            if (ramificant::total_degree(e) == g) h.terms_.emplace(e, c);
        return h;
    }

    MultiPoly& operator+=(const MultiPoly& rhs) {
        check_vars(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& rhs) {
        check_vars(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }

    MultiPoly& operator*=(BigRational s) {
        s.canonicalize();
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const BigRational& s) { return a *= s; }
    friend MultiPoly operator*(const BigRational& s, MultiPoly a) { return a *= s; }
    friend MultiPoly operator-(MultiPoly a) { return a *= BigRational(-1); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_vars(b);
        MultiPoly out(a.num_vars_);
        Exponent e(a.num_vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    MultiPoly& operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

    /// Evaluates with coefficients rounded to the scalar type.
    template <class Scalar>
    Scalar evaluate(std::span<const Scalar> point) const {
        if (point.size() != num_vars_) throw UsageError("evaluation point has wrong dimension");
        Scalar sum{};
        for (const auto& [e, c] : terms_) {
            Scalar term(c.get_d());
            for (std::size_t i = 0; i < num_vars_; ++i)
                for (unsigned j = 0; j < e[i]; ++j) term *= point[i];
            sum += term;
        }
        return sum;
    }

private:
    void check_vars(const MultiPoly& other) const {
        if (other.num_vars_ != num_vars_) throw UsageError("MultiPoly operands have mismatched num_vars");
    }

    std::size_t num_vars_;
    TermMap terms_;
};

/// Exact partial derivative with respect to X_k.
inline MultiPoly partial(const MultiPoly& p, std::size_t k) {
    if (k >= p.num_vars()) throw UsageError("partial: variable index out of range");
    MultiPoly out(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        if (e[k] == 0) continue;
        Exponent de = e;
        --de[k];
        out.add_term(std::move(de), c * e[k]);
    }
    return out;
}

namespace detail {

inline void write_monomial(std::ostream& os, const Exponent& e, bool latex) {
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first && !latex) os << '*';
        first = false;
        if (latex) {
            os << "X_{" << i << '}';
            if (e[i] > 1) os << "^{" << e[i] << '}';
        } else {
            os << 'X' << i;
            if (e[i] > 1) os << '^' << e[i];
        }
    }
}

inline std::string render(const MultiPoly& p, bool latex) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        BigRational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool constant = ramificant::total_degree(e) == 0;
        if (mag != 1 || constant) {
            if (latex && mag.get_den() != 1)
                os << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << '}';
            else
                os << mag.get_str();
            if (!constant && !latex) os << '*';
        }
        if (!constant) write_monomial(os, e, latex);
    }
    return os.str();
}

} // namespace detail

/// Plain text, e.g. "2*X0 + 1/2*X1^2".
inline std::string to_string(const MultiPoly& p) { return detail::render(p, false); }

/// LaTeX, e.g. "2X_{0} + \frac{1}{2}X_{1}^{2}".
inline std::string to_latex(const MultiPoly& p) { return detail::render(p, true); }

} // namespace ramificant

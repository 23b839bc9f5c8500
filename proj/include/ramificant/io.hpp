#pragma once

/**
 * @file io.hpp
 * @brief JSON encodings of the ramificant value types.
 *
 *   Complex        [re, im]
 *   CPoly          [[re, im], ...] ascending degree
 *   MultiPoly      [{"exp": [e0, ...], "coef": "num/den"}, ...] graded-lex order
 *   NormalizedP0   {"d": n, "a": [[re, im], ...]}
 *   PeriodMatrix   {"d": n, "entries": [[[re, im], ...], ...], "est_error": x}
 */

#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ramificant/errors.hpp"
#include "ramificant/integrability.hpp"
#include "ramificant/multipoly.hpp"
#include "ramificant/ode.hpp"
#include "ramificant/periods.hpp"
#include "ramificant/poly.hpp"
#include "ramificant/reduction.hpp"
#include "ramificant/universal_pi.hpp"

namespace ramificant::io {

using json = nlohmann::ordered_json;

/// Adding +0.0 folds negative zero so output does not depend on sign-of-zero noise.
inline json encode(const Complex& z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

inline Complex decode_complex(const json& j) {
    double re = 0, im = 0;
    if (j.is_number()) {
        re = j.get<double>();
    } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        re = j[0].get<double>();
        im = j[1].get<double>();
    } else {
        throw UsageError("complex value must be [re, im] or a number, got " + j.dump());
    }
    if (!std::isfinite(re) || !std::isfinite(im)) throw UsageError("complex value is not finite");
    return {re, im};
}

inline json encode(const std::vector<Complex>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(encode(z));
    return out;
}

inline std::vector<Complex> decode_complex_list(const json& j) {
    if (!j.is_array()) throw UsageError("expected a list of [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(decode_complex(e));
    return out;
}

inline json encode(const CPoly& p) { return encode(p.coefficients()); }
inline CPoly decode_cpoly(const json& j) { return CPoly(decode_complex_list(j)); }

inline json encode(const MultiPoly& p) {
    json out = json::array();
    for (const auto& [e, c] : p.terms()) {
        json term;
        term["exp"] = e;
        term["coef"] = to_fraction_string(c);
        out.push_back(std::move(term));
    }
    return out;
}

/// num_vars must be given explicitly when the list is empty.
inline MultiPoly decode_multipoly(const json& j, std::optional<std::size_t> num_vars = std::nullopt) {
    if (!j.is_array()) throw UsageError("MultiPoly must be a list of terms");
    if (!num_vars) {
        if (j.empty()) throw UsageError("cannot infer num_vars of an empty MultiPoly");
        num_vars = j[0].at("exp").size();
    }
    MultiPoly p(*num_vars);
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("exp") || !term.contains("coef"))
            throw UsageError("MultiPoly term needs 'exp' and 'coef'");
        p.add_term(term["exp"].get<Exponent>(), parse_rational(term["coef"].get<std::string>()));
    }
    return p;
}

inline json encode(const NormalizedP0& p0) { return json{{"d", p0.d}, {"a", encode(p0.a)}}; }

inline NormalizedP0 decode_p0(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("a")) throw UsageError("NormalizedP0 needs 'd' and 'a'");
    if (!j["d"].is_number_integer()) throw UsageError("NormalizedP0 'd' must be an integer");
    return NormalizedP0(j["d"].get<int>(), decode_complex_list(j["a"]));
}

inline json encode(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index l = 0; l < m.rows(); ++l) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(encode(Complex(m(l, k))));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json encode(const PeriodMatrix& m) {
    return json{{"d", m.d}, {"entries", encode(m.entries)}, {"est_error", m.est_error}};
}

/// Also accepts a full `periods` report and reads its outputs.
inline PeriodMatrix decode_matrix(const json& in) {
    const json& j = in.is_object() && in.contains("outputs") ? in["outputs"] : in;
    if (!j.is_object() || !j.contains("d") || !j.contains("entries")) throw UsageError("matrix needs 'd' and 'entries'");
    PeriodMatrix m;
    m.d = j["d"].get<int>();
    const auto& rows = j["entries"];
    if (m.d < 1 || !rows.is_array() || rows.size() != static_cast<std::size_t>(m.d))
        throw UsageError("matrix entries must be d rows");
    m.entries.resize(m.d, m.d);
    for (int l = 0; l < m.d; ++l) {
        const auto& row = rows[static_cast<std::size_t>(l)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(m.d)) throw UsageError("matrix rows must have d entries");
        for (int k = 0; k < m.d; ++k) m.entries(l, k) = decode_complex(row[static_cast<std::size_t>(k)]);
    }
    m.est_error = j.value("est_error", 0.0);
    return m;
}

inline json encode(const ReductionResult& r) {
    return json{{"a0_poly", encode(r.a0_poly)}, {"const_term", encode(r.const_term)}, {"basis_coeffs", encode(r.basis_coeffs)}};
}

inline ReductionResult decode_reduction(const json& j) {
    ReductionResult r;
    r.a0_poly = decode_cpoly(j.at("a0_poly"));
    r.const_term = decode_complex(j.at("const_term"));
    r.basis_coeffs = decode_complex_list(j.at("basis_coeffs"));
    return r;
}

inline json encode(const PiResult& r) {
    json grad = json::array();
    for (const auto& g : r.gradient) grad.push_back(encode(g));
    return json{{"d", r.d}, {"pi", encode(r.pi)}, {"gradient", grad}};
}

inline json encode(const IdentityReport& r) {
    return json{{"delta_numeric", encode(r.delta_numeric)},
                {"delta_zero_numeric", encode(r.delta_zero_numeric)},
                {"ratio_numeric", encode(r.ratio_numeric)},
                {"exp_pi", encode(r.exp_pi)},
                {"rel_err", r.rel_err},
                {"printed_constant", r.printed_constant},
                {"vandermonde_constant", encode(r.vandermonde_constant)},
                {"delta_zero_closed", encode(r.delta_zero_closed)},
                {"est_error", r.est_error}};
}

inline json encode(const RecoveryResult& r) {
    return json{{"exp_a0", encode(r.exp_a0)},
                {"a", encode(r.a)},
                {"residual", r.residual},
                {"log_a0", encode(r.log_a0_mod_2pi_i)},
                {"log_a0_note", "principal branch, mod 2 pi i"}};
}

inline json encode(const JacobianReport& r) {
    return json{{"jacobian", encode(r.jacobian)},
                {"max_rel_deviation", r.max_rel_deviation},
                {"det_jacobian", encode(r.det_jacobian)},
                {"delta", encode(r.delta)},
                {"det_rel_error", r.det_rel_error},
                {"step", r.step}};
}

inline json encode(const SeparationReport& r) {
    json gap = std::isinf(r.min_row_gap) ? json("inf") : json(r.min_row_gap);
    return json{{"min_row_gap", gap}, {"threshold", r.threshold}, {"separated", r.separated}};
}

inline json encode(const IntegrabilityReport& r) {
    json out{{"integrable_exact", r.integrable_exact},
             {"antiderivative", r.antiderivative ? encode(*r.antiderivative) : json(nullptr)},
             {"solve_residual", r.solve_residual},
             {"exact_rational_verdict", r.exact_rational_verdict ? json(*r.exact_rational_verdict) : json(nullptr)},
             {"asymptotic_values", encode(r.asymptotic_values)},
             {"gamma_periods", encode(r.gamma_periods)},
             {"max_spread", r.max_spread},
             {"spread_threshold", r.spread_threshold},
             {"est_error", r.est_error},
             {"integrable_numeric", r.integrable_numeric},
             {"omega_constant", r.omega_constant ? encode(*r.omega_constant) : json(nullptr)},
             {"agree", r.agree}};
    return out;
}

inline json encode(const OdeResult& r) {
    json b = json::array();
    for (const auto& p : r.b) b.push_back(encode(p));
    return json{{"d", r.d}, {"p0_poly", encode(r.p0_poly)}, {"b", b}};
}

inline json encode(const WronskianReport& r) {
    return json{{"wronskian_constant", encode(r.constant)},
                {"symbolic", encode(r.symbolic)},
                {"sampled", encode(r.sampled)},
                {"max_rel_deviation", r.max_rel_deviation},
                {"consistent", r.consistent}};
}

inline json encode(const QuadResult& r) {
    return json{{"value", encode(r.value)}, {"est_error", r.est_error}, {"nodes_used", r.nodes_used}, {"radius", r.radius}};
}

/// "@path" reads a file, an existing path is read too, anything else is parsed as inline JSON.
inline json load_argument(const std::string& arg) {
    std::string path;
    if (!arg.empty() && arg.front() == '@') path = arg.substr(1);
    else if (std::ifstream probe(arg); probe.good() && !arg.empty() && arg.front() != '{' && arg.front() != '[') path = arg;
    std::string text = arg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace ramificant::io

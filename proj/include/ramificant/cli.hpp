#pragma once

/**
 * @file cli.hpp
 * @brief Command dispatch for the `ramificant` tool.
 *
 * Every command writes exactly one JSON document to the output stream:
 *
 *   {"command": ..., "inputs": ..., "outputs": ..., "diagnostics": {...}}
 *
 * Exit codes: 0 success, 2 usage error, 3 numeric tolerance failure,
 * 1 internal error. Timings are only reported with --timings so that
 * repeated runs stay byte-identical.
 */

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ramificant/acceptance.hpp"
#include "ramificant/errors.hpp"
#include "ramificant/integrability.hpp"
#include "ramificant/io.hpp"
#include "ramificant/ode.hpp"
#include "ramificant/periods.hpp"
#include "ramificant/quadrature.hpp"
#include "ramificant/reduction.hpp"
#include "ramificant/universal_pi.hpp"

namespace ramificant::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kTolerance = 3 };

struct Options {
    std::string p0, q, poly, matrix, to;
    int degree = 0;
    int power = 0;
    int ray = 0;
    double h = 1e-4;
    double spread_tol = 1e-6;
    bool latex = false;
    bool json_format = false;
    bool timings = false;
    QuadConfig quad;
};

inline json tolerances_json(const QuadConfig& cfg) {
    return json{{"rel_tol", cfg.rel_tol},
                {"abs_floor", cfg.abs_floor},
                {"max_subdivisions", cfg.max_subdivisions},
                {"tail_tol", cfg.tail_tol}};
}

inline void add_quad_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--rel-tol", o.quad.rel_tol, "relative tolerance")->capture_default_str();
    cmd->add_option("--abs-floor", o.quad.abs_floor, "absolute tolerance floor")->capture_default_str();
    cmd->add_option("--max-subdivisions", o.quad.max_subdivisions, "bisection depth cap")->capture_default_str();
    cmd->add_option("--tail-tol", o.quad.tail_tol, "ray truncation tolerance")->capture_default_str();
}

inline Complex parse_point(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("point must be 're,im', got '" + text + "'");
    }
}

/// Fills outputs and diagnostics for the selected command; returns the exit code.
inline int execute(const std::string& command, const Options& o, json& report, double& est_error) {
    json& in = report["inputs"];
    json& outputs = report["outputs"];
    int code = kOk;

    if (command == "pi") {
        in["degree"] = o.degree;
        const auto& r = pi_polynomial_cached(o.degree);
        outputs = io::encode(r);
        outputs["text"] = to_string(r.pi);
        if (o.latex) outputs["latex"] = to_latex(r.pi);
    } else if (command == "delta") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        in["p0"] = io::encode(p0);
        const auto dz = delta_zero(p0.d);
        outputs["closed_form"] = io::encode(delta_closed_form(p0));
        outputs["delta_zero"] = io::encode(dz.value);
        outputs["pi_value"] = io::encode(pi_value(p0));
        outputs["vandermonde"] = io::encode(dz.vandermonde);
        outputs["printed_constant"] = dz.printed_constant;
    } else if (command == "periods") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        in["p0"] = io::encode(p0);
        const auto m = period_matrix(p0, o.quad);
        outputs = io::encode(m);
        outputs["nodes_used"] = m.nodes_used;
        est_error = m.est_error;
    } else if (command == "check-ramificant") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        in["p0"] = io::encode(p0);
        const auto rep = verify_identity(p0, o.quad);
        const auto m = period_matrix(p0, o.quad);
        outputs = io::encode(rep);
        outputs["delta"] = io::encode(rep.delta_numeric);
        outputs["row_identity_residual"] = row_identity_residual(p0, m);
        outputs["separation"] = io::encode(separation_check(m));
        outputs["nonvanishing"] = std::abs(rep.delta_numeric) > 1e3 * m.est_error;
        est_error = rep.est_error;
    } else if (command == "reduce") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        const auto q = io::decode_cpoly(io::load_argument(o.q));
        in["p0"] = io::encode(p0);
        in["q"] = io::encode(q);
        outputs = io::encode(reduce_primitive(p0, q));
    } else if (command == "integrable") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        const auto q = io::decode_cpoly(io::load_argument(o.q));
        in["p0"] = io::encode(p0);
        in["q"] = io::encode(q);
        in["spread_tol"] = o.spread_tol;
        const auto rep = check_integrability(p0, q, o.quad, o.spread_tol, true);
        outputs = io::encode(rep);
        est_error = rep.est_error;
    } else if (command == "recover") {
        const auto m = io::decode_matrix(io::load_argument(o.matrix));
        in["matrix"] = io::encode(m);
        outputs = io::encode(recover_coefficients(m));
        est_error = m.est_error;
    } else if (command == "jacobian") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        in["p0"] = io::encode(p0);
        in["h"] = o.h;
        outputs = io::encode(jacobian_check(p0, o.h, o.quad));
    } else if (command == "ode") {
        const auto poly = io::decode_cpoly(io::load_argument(o.poly));
        in["poly"] = io::encode(poly);
        const auto ode = build_ode(poly);
        const auto w = wronskian_check(poly, {Complex(0.25, 0.1), Complex(-0.5, 0.3), Complex(0.75, -0.4)});
        outputs = io::encode(ode);
        outputs["wronskian_constant"] = io::encode(w.constant);
        outputs["wronskian"] = io::encode(w);
    } else if (command == "integrate") {
        const auto p0 = io::decode_p0(io::load_argument(o.p0));
        in["p0"] = io::encode(p0);
        in["power"] = o.power;
        if ((o.ray != 0) == !o.to.empty()) throw UsageError("integrate needs exactly one of --ray or --to");
        QuadResult r;
        if (o.ray != 0) {
            in["ray"] = o.ray;
            r = integrate_ray(RayIntegralSpec{p0, o.power, o.ray}, o.quad);
        } else {
            const Complex z = parse_point(o.to);
            in["to"] = io::encode(z);
            r = integrate_segment(p0, o.power, z, o.quad);
        }
        outputs = io::encode(r);
        est_error = r.est_error;
    } else if (command == "selftest") {
        json criteria = json::array();
        bool all = true;
        for (const auto& c : acceptance::run_all()) {
            all = all && c.passed;
            json item{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
            if (o.timings) item["seconds"] = c.seconds;
            criteria.push_back(std::move(item));
        }
        outputs["criteria"] = std::move(criteria);
        outputs["all_passed"] = all;
        if (!all) code = kTolerance;
    }
    return code;
}

/// Runs one invocation. args excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exponential periods, Ramificant determinants and universal polynomials", "ramificant"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--timings", o.timings, "include wall-clock timings (breaks byte-for-byte determinism)");

    const std::string p0_help = R"(normalized polynomial, inline {"d":n,"a":[[re,im],...]} or @file)";
    const std::string q_help = "polynomial [[re,im],...] ascending degree, inline or @file";

    auto* pi = app.add_subcommand("pi", "universal polynomial Pi_d");
    pi->add_option("--degree", o.degree, "degree d >= 1")->required()->check(CLI::PositiveNumber);
    auto* fmt = pi->add_option_group("format");
    fmt->add_flag("--json", o.json_format, "JSON term list (default)");
    fmt->add_flag("--latex", o.latex, "add a LaTeX rendering");
    fmt->require_option(0, 1);

    auto* delta = app.add_subcommand("delta", "closed-form Ramificant Delta(0) exp(Pi_d(a))");
    delta->add_option("--p0", o.p0, p0_help)->required();

    auto* periods = app.add_subcommand("periods", "period matrix by ray quadrature");
    periods->add_option("--p0", o.p0, p0_help)->required();
    add_quad_flags(periods, o);

    auto* check = app.add_subcommand("check-ramificant", "quadrature Delta against the closed form");
    check->add_option("--p0", o.p0, p0_help)->required();
    add_quad_flags(check, o);

    auto* reduce = app.add_subcommand("reduce", "canonical form of int_0^z q e^{P0}");
    reduce->add_option("--p0", o.p0, p0_help)->required();
    reduce->add_option("--q", o.q, q_help)->required();

    auto* integrable = app.add_subcommand("integrable", "integrability in finite terms, two ways");
    integrable->add_option("--p0", o.p0, p0_help)->required();
    integrable->add_option("--q", o.q, q_help)->required();
    integrable->add_option("--spread-tol", o.spread_tol, "absolute floor of the equal-values threshold")->capture_default_str();
    add_quad_flags(integrable, o);

    auto* recover = app.add_subcommand("recover", "coefficients from a period matrix");
    recover->add_option("--matrix", o.matrix, R"(matrix {"d":n,"entries":[[[re,im],...],...],"est_error":x}, inline or @file)")
        ->required();

    auto* jacobian = app.add_subcommand("jacobian", "finite-difference period-map Jacobian");
    jacobian->set_help_flag("--help", "print this help message and exit");
    jacobian->add_option("--p0", o.p0, p0_help)->required();
    jacobian->add_option("--h", o.h, "step in [1e-6, 1e-3]")->capture_default_str();
    add_quad_flags(jacobian, o);

    auto* ode = app.add_subcommand("ode", "linear ODE annihilating z^k e^{P0}");
    ode->add_option("--poly", o.poly, "P0 as [[re,im],...] ascending degree, any leading coefficient")->required();

    auto* integrate = app.add_subcommand("integrate", "int t^k e^{P0} along a ray or a segment");
    integrate->add_option("--p0", o.p0, p0_help)->required();
    integrate->add_option("--power", o.power, "exponent k of t")->required()->check(CLI::NonNegativeNumber);
    integrate->add_option("--ray", o.ray, "direction index l in 1..d");
    integrate->add_option("--to", o.to, "segment end point 're,im'");
    add_quad_flags(integrate, o);

    app.add_subcommand("selftest", "run the acceptance suite");

    json report;
    std::string command;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        command = app.get_subcommands().front()->get_name();
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        out << json{{"command", "help"}, {"outputs", nullptr}}.dump(2) << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        out << json{{"command", nullptr}, {"error", {{"type", "usage"}, {"message", e.what()}}}}.dump(2) << '\n';
        return kUsage;
    }

    report["command"] = command;
    report["inputs"] = json::object();
    report["outputs"] = json::object();
    double est_error = 0;
    int code = kOk;
    const auto start = std::chrono::steady_clock::now();
    auto fail = [&](const char* type, const std::string& message, int c) {
        report["error"] = {{"type", type}, {"message", message}};
        err << command << ": " << message << '\n';
        code = c;
    };
    try {
        code = execute(command, o, report, est_error);
    } catch (const ToleranceNotMet& e) {
        fail("tolerance", e.what(), kTolerance);
        report["error"]["best_estimate"] = io::encode(e.best_estimate);
        report["error"]["achieved_error"] = e.achieved_error;
    } catch (const DisagreementError& e) {
        fail("disagreement", e.what(), kTolerance);
        report["error"]["exact"] = e.exact_payload;
        report["error"]["numeric"] = e.numeric_payload;
    } catch (const NumericFailure& e) {
        fail("numeric", e.what(), kTolerance);
    } catch (const UsageError& e) {
        fail("usage", e.what(), kUsage);
        err << app.get_subcommand(command)->help();
    } catch (const std::domain_error& e) {
        fail("usage", e.what(), kUsage);
    } catch (const nlohmann::json::exception& e) {
        fail("usage", e.what(), kUsage);
    } catch (const std::exception& e) {
        fail("internal", e.what(), kInternal);
    }

    json diagnostics{{"est_error", est_error}, {"tolerances", tolerances_json(o.quad)}};
    if (o.timings)
        diagnostics["timings_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["diagnostics"] = std::move(diagnostics);
    out << report.dump(2) << '\n';
    return code;
}

} // namespace ramificant::cli

#pragma once

// Command implementations behind the `mordell` CLI. Each returns an
// Envelope; failures surface as mordell::Error subclasses which the driver
// maps onto exit codes with exit_code_for().

#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mordell/cli/envelope.hpp"
#include "mordell/curve.hpp"
#include "mordell/descent.hpp"
#include "mordell/ec_heights.hpp"
#include "mordell/group_law.hpp"
#include "mordell/heights.hpp"
#include "mordell/two_descent.hpp"

namespace mordell::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kPoint = 3,
    kModel = 4,
    kDescent = 5,
};

/// Default search height for commands that need a pool of known points.
inline double const kDefaultSearchLog = std::log(100.0);

inline int exit_code_for(std::exception const& e) {
    if (dynamic_cast<ParseError const*>(&e)) return kParse;
    if (dynamic_cast<PointNotOnCurve const*>(&e)) return kPoint;
    if (dynamic_cast<NonIntegralModel const*>(&e) || dynamic_cast<SingularCurve const*>(&e)) return kModel;
    if (dynamic_cast<NonContraction const*>(&e) || dynamic_cast<IncompleteCosets const*>(&e)) return kDescent;
    return kFailure;
}

inline char const* error_kind(std::exception const& e) {
    if (dynamic_cast<ParseError const*>(&e)) return "ParseError";
    if (dynamic_cast<PointNotOnCurve const*>(&e)) return "PointNotOnCurve";
    if (dynamic_cast<NonIntegralModel const*>(&e)) return "NonIntegralModel";
    if (dynamic_cast<SingularCurve const*>(&e)) return "SingularCurve";
    if (dynamic_cast<NonContraction const*>(&e)) return "NonContraction";
    if (dynamic_cast<IncompleteCosets const*>(&e)) return "IncompleteCosets";
    return "Error";
}

inline Envelope error_envelope(std::string command, json inputs, std::exception const& e) {
    Envelope env{std::move(command), std::move(inputs), json::object(), true};
    env.result["error"] = {{"kind", error_kind(e)}, {"message", e.what()}, {"exit_code", exit_code_for(e)}};
    return env;
}

namespace detail {

inline Point require_on_curve(GeneralCurve const& c, Point const& p) {
    if (!is_on_curve(c, p)) throw PointNotOnCurve(to_string(p) + " is not on the curve");
    return p;
}

/// Short, integral and nonsingular, as the height and descent commands need.
inline ShortCurve require_integral_short(ParsedCurve const& c) {
    if (!c.curve.is_short())
        throw NonIntegralModel("this command needs a short model y^2 = x^3 + Ax + B; see curve-info for one");
    ShortCurve s = c.short_curve();
    if (!s.is_integral()) throw NonIntegralModel("this command needs integral A, B; see curve-info for a scaling");
    if (s.is_singular()) throw SingularCurve("discriminant is zero: not an elliptic curve");
    return s;
}

inline json invariants_to_json(Invariants const& inv) {
    return {{"b2", to_string(inv.b2)}, {"b4", to_string(inv.b4)}, {"b6", to_string(inv.b6)},
            {"b8", to_string(inv.b8)}, {"c4", to_string(inv.c4)}, {"c6", to_string(inv.c6)},
            {"delta", to_string(inv.delta)}};
}

inline json points_with_heights(std::vector<Point> const& points) {
    json arr = json::array();
    for (auto const& p : points) arr.push_back({{"point", point_to_json(p)}, {"H", to_string(hx(p).magnitude)}});
    return arr;
}

}  // namespace detail

inline Envelope cmd_curve_info(ParsedCurve const& c) {
    Envelope env{"curve-info", {{"curve", curve_to_json(c)}}, json::object(), true};
    auto const inv = c.curve.invariants();
    env.result["invariants"] = detail::invariants_to_json(inv);
    bool const singular = inv.delta == 0;
    env.result["singular"] = singular;
    if (singular) {
        env.result["note"] = "delta = 0, not an elliptic curve";
        return env;
    }
    auto const sf = short_form(c.curve);
    auto const integral = integral_model(sf.curve);
    env.result["short_model"] = {{"A", to_string(sf.curve.A())}, {"B", to_string(sf.curve.B())}};
    env.result["integral_short_model"] = {{"A", to_string(integral.curve.A())},
                                          {"B", to_string(integral.curve.B())},
                                          {"u", to_string(integral.scale)}};
    return env;
}

/// op is one of add, sub, neg, double, mul; `operands` are the textual inputs.
inline Envelope cmd_point(ParsedCurve const& c, std::string const& op, std::vector<std::string> const& operands) {
    Envelope env{"point", {{"curve", curve_to_json(c)}, {"op", op}, {"operands", operands}}, json::object(), true};
    if (c.curve.is_singular()) throw SingularCurve("discriminant is zero: not an elliptic curve");
    GeneralCurve const& g = c.curve;
    auto point_arg = [&](std::size_t i) { return detail::require_on_curve(g, parse_point(operands.at(i))); };
    auto expect = [&](std::size_t n) {
        if (operands.size() != n)
            throw ParseError("'" + op + "' takes " + std::to_string(n) + " operand(s), got " +
                             std::to_string(operands.size()));
    };
    Point out;
    if (op == "add") {
        expect(2);
        out = add(g, point_arg(0), point_arg(1));
    } else if (op == "sub") {
        expect(2);
        out = subtract(g, point_arg(0), point_arg(1));
    } else if (op == "neg") {
        expect(1);
        out = negate(g, point_arg(0));
    } else if (op == "double") {
        expect(1);
        out = double_point(g, point_arg(0));
    } else if (op == "mul") {
        expect(2);
        Integer n = parse_integer(operands[0]);
        out = mul(g, n, point_arg(1));
    } else {
        throw ParseError("unknown point operation '" + op + "' (add, sub, neg, double, mul)");
    }
    env.result["point"] = point_to_json(out);
    return env;
}

inline Envelope cmd_search(ParsedCurve const& c, double height_log, unsigned threads = 1) {
    Envelope env{"search", {{"curve", curve_to_json(c)}, {"height_log", height_log}}, json::object(), true};
    ShortCurve const s = detail::require_integral_short(c);
    Integer const bound = height_bound_from_log(height_log);
    auto const points = enumerate_points_by_height(s, bound, threads);
    env.result["height_bound"] = to_string(bound);
    env.result["count"] = points.size();
    env.result["points"] = detail::points_with_heights(points);
    return env;
}

/// constants: nullopt for "auto" (empirical estimate over the search pool).
inline Envelope cmd_descend(ParsedCurve const& c, Point const& p, std::optional<std::pair<double, double>> constants,
                            double search_log = kDefaultSearchLog) {
    Envelope env{"descend",
                 {{"curve", curve_to_json(c)},
                  {"point", point_to_json(p)},
                  {"constants", constants ? json::array({constants->first, constants->second}) : json("auto")},
                  {"search_log", search_log}},
                 json::object(),
                 false};
    ShortCurve const s = detail::require_integral_short(c);
    detail::require_on_curve(s.general(), p);
    auto const model = FullTwoTorsionModel::from_curve(s);
    if (!model) throw NonIntegralModel("descent needs full rational 2-torsion");
    auto const reps = coset_representatives(*model, search_log);
    double c1 = 0, c2 = 0;
    if (constants) {
        std::tie(c1, c2) = *constants;
    } else {
        std::vector<Point> negated;
        for (auto const& q : reps) negated.push_back(negate(s.general(), q));
        auto const est = estimate_constants(s, search_log, negated);
        c1 = est.c1_prime;
        c2 = est.c2;
        env.result["constants_sample_size"] = est.sample_size;
    }
    auto const problem = make_elliptic_problem(s, reps, c1, c2);
    auto const chain = descend(problem, p);

    env.result["coset_reps"] = points_to_json(reps);
    env.result["c1_prime"] = c1;
    env.result["c2"] = c2;
    env.result["threshold"] = problem.threshold();
    env.result["start"] = {{"point", point_to_json(p)}, {"height", height_to_json(hx(p))}};
    json steps = json::array();
    for (auto const& step : chain.steps)
        steps.push_back({{"rep_index", step.index},
                         {"rep", point_to_json(reps[step.index])},
                         {"point", point_to_json(step.element)},
                         {"height", height_to_json(hx(step.element))}});
    env.result["steps"] = steps;
    env.result["final"] = point_to_json(chain.final_element());
    env.result["final_within_threshold"] = chain.final_height() <= problem.threshold() + 1e-9;
    env.result["reconstruction_exact"] = reconstruct(problem, chain) == p;
    env.result["audit_holds"] = audit_chain(problem, chain);
    return env;
}

inline Envelope cmd_rank_bounds(ParsedCurve const& c, double search_log = kDefaultSearchLog) {
    Envelope env{"rank-bounds", {{"curve", curve_to_json(c)}, {"search_log", search_log}}, json::object(), true};
    ShortCurve const s = detail::require_integral_short(c);
    auto const model = FullTwoTorsionModel::from_curve(s);
    if (!model) throw NonIntegralModel("rank bounds need full rational 2-torsion");
    auto const rb = rank_bounds(*model, search_log);
    env.result["lower"] = rb.lower;
    env.result["upper"] = rb.upper;
    env.result["support_primes"] = integers_to_json(rb.support_primes);
    env.result["evidence_points"] = points_to_json(rb.evidence_points);
    json images = json::array();
    for (auto const& p : rb.evidence_points) {
        auto const d = delta_map(*model, p);
        images.push_back(json::array({to_string(d.c1), to_string(d.c2)}));
    }
    env.result["evidence_images"] = images;
    env.result["points_searched"] = rb.points_searched;
    env.result["two_torsion_roots"] = json::array({to_string(model->e1()), to_string(model->e2()), to_string(model->e3())});
    return env;
}

inline Envelope cmd_torsion(ParsedCurve const& c, std::optional<double> search_log = std::nullopt) {
    Envelope env{"torsion",
                 {{"curve", curve_to_json(c)}, {"search_log", search_log ? json(*search_log) : json("default")}},
                 json::object(),
                 true};
    ShortCurve const s = detail::require_integral_short(c);
    auto const t = torsion_subgroup(s, search_log);
    GeneralCurve const g = s.general();
    env.result["structure"] = t.structure;
    env.result["order"] = t.order;
    env.result["search_bound"] = to_string(t.search_bound);
    json pts = json::array();
    for (auto const& p : t.points) pts.push_back({{"point", point_to_json(p)}, {"order", *order_of_point(g, p, 24)}});
    env.result["points"] = pts;
    env.result["generators"] = points_to_json(t.generators);
    return env;
}

inline Envelope cmd_verify(ParsedCurve const& c, double search_log = kDefaultSearchLog) {
    Envelope env{"verify", {{"curve", curve_to_json(c)}, {"search_log", search_log}}, json::object(), true};
    ShortCurve const s = detail::require_integral_short(c);
    GeneralCurve const g = s.general();

    bool sublemma = true;
    try {
        build_duplication_system(s.A(), s.B());
    } catch (IdentityFailure const&) {
        sublemma = false;
    }
    env.result["duplication_identities"] = sublemma;
    env.result["quotient_identity"] = quotient_identity_check(s.A(), s.B());

    auto const points = enumerate_points(s, search_log);
    std::size_t checks = 0, failures = 0;
    for (auto const& p : points)
        for (auto const& q : points) {
            if (p.is_infinity() || q.is_infinity()) continue;
            Point const sum = add(g, p, q), diff = subtract(g, p, q);
            if (sum.is_infinity() || diff.is_infinity()) continue;
            ++checks;
            if (!(g_map(s.A(), s.B(), sigma(x_coordinate(p), x_coordinate(q))) ==
                  sigma(x_coordinate(sum), x_coordinate(diff))))
                ++failures;
        }
    env.result["commutative_diagram"] = {{"checks", checks}, {"failures", failures}, {"holds", failures == 0}};
    env.result["all_pass"] = sublemma && env.result["quotient_identity"].get<bool>() && failures == 0;
    return env;
}

/// Plain-text rendering: one "path = value" line per leaf, in key order.
inline void render_text(json const& j, std::string const& path, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            render_text(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) &&
               !(j.size() == 2 && j.front().is_string())) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out += path + " = " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

inline std::string render_text(Envelope const& env) {
    std::string out = "command = " + env.command + "\n";
    render_text(env.inputs, "inputs", out);
    render_text(env.result, "result", out);
    return out;
}

}  // namespace mordell::cli

// mordell: command-line front end for the exact elliptic-curve toolkit.
//
//   mordell curve-info [--short] CURVE
//   mordell point CURVE OP OPERAND...
//   mordell search CURVE --height-log H
//   mordell descend CURVE POINT [--constants auto|C1,C2]
//   mordell rank-bounds CURVE
//   mordell torsion CURVE
//   mordell verify CURVE [--identities]
//
// CURVE is "A,B" or "a1,a2,a3,a4,a6"; rationals are integers or "p/q".
// Every subcommand takes --json for the machine-readable envelope.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mordell/cli/commands.hpp"

namespace {

using mordell::cli::Envelope;
using mordell::cli::json;

struct Options {
    std::string curve;
    bool short_only = false;
    bool as_json = false;
    unsigned threads = 1;
    std::string op;
    std::vector<std::string> operands;
    double height_log = 0.0;
    std::string point;
    std::string constants = "auto";
    std::optional<double> search_log;
    bool identities = true;
};

unsigned threads_from_env() {
    if (char const* env = std::getenv("THREADS")) {
        try {
            int const n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (std::exception const&) {
        }
    }
    return 1;
}

mordell::ParsedCurve read_curve(Options const& opts) {
    auto parsed = mordell::parse_curve(opts.curve);
    if (opts.short_only && !parsed.is_short_input) throw mordell::ParseError("--short expects 'A,B'");
    return parsed;
}

std::optional<std::pair<double, double>> read_constants(std::string const& text) {
    if (text == "auto") return std::nullopt;
    auto comma = text.find(',');
    if (comma == std::string::npos) throw mordell::ParseError("--constants expects 'auto' or 'C1,C2'");
    try {
        return std::make_pair(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (std::exception const&) {
        throw mordell::ParseError("--constants expects 'auto' or 'C1,C2'");
    }
}

int emit(Envelope const& env, bool as_json, int code) {
    if (as_json)
        std::cout << env.dump();
    else
        std::cout << mordell::cli::render_text(env);
    return code;
}

int run(std::string const& name, Options const& opts, std::function<Envelope()> const& body) {
    try {
        return emit(body(), opts.as_json, mordell::cli::kOk);
    } catch (std::exception const& e) {
        json inputs = {{"curve", opts.curve}};
        auto env = mordell::cli::error_envelope(name, inputs, e);
        if (!opts.as_json) std::cerr << "error: " << e.what() << "\n";
        return emit(env, opts.as_json, mordell::cli::exit_code_for(e));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic, heights and descent on elliptic curves over Q"};
    app.require_subcommand(1);
    Options opts;
    opts.threads = threads_from_env();

    auto common = [&](CLI::App* sub) {
        sub->add_option("curve", opts.curve, "A,B or a1,a2,a3,a4,a6")->required();
        sub->add_flag("--short", opts.short_only, "require the short form A,B");
        sub->add_flag("--json", opts.as_json, "emit the JSON envelope");
    };

    auto* info = app.add_subcommand("curve-info", "invariants, discriminant and short/integral models");
    common(info);

    auto* point = app.add_subcommand("point", "group law: add, sub, neg, double, mul N P");
    common(point);
    point->add_option("op", opts.op, "add | sub | neg | double | mul")->required();
    point->add_option("operands", opts.operands, "points as x,y or O; mul takes N then P")->required();

    auto* search = app.add_subcommand("search", "all points with h_x <= H");
    common(search);
    search->add_option("--height-log", opts.height_log, "log height bound H")->required();
    search->add_option("--threads", opts.threads, "worker threads for the search");

    auto* descend = app.add_subcommand("descend", "descent chain for a point (full 2-torsion curves)");
    common(descend);
    descend->add_option("point", opts.point, "x,y or O")->required();
    descend->add_option("--constants", opts.constants, "auto or C1,C2");
    descend->add_option("--search-log", opts.search_log, "log height of the point pool");

    auto* rank = app.add_subcommand("rank-bounds", "crude 2-descent rank bounds (full 2-torsion curves)");
    common(rank);
    rank->add_option("--search-log", opts.search_log, "log height of the point search");

    auto* torsion = app.add_subcommand("torsion", "rational torsion subgroup");
    common(torsion);
    torsion->add_option("--search-log", opts.search_log, "log height of the point search");

    auto* verify = app.add_subcommand("verify", "check the duplication and height identities for a curve");
    common(verify);
    verify->add_flag("--identities", opts.identities, "run the identity checks (default)");
    verify->add_option("--search-log", opts.search_log, "log height of the point pool");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : mordell::cli::kParse;
    }

    using namespace mordell::cli;
    double const pool = opts.search_log.value_or(kDefaultSearchLog);
    if (*info) return run("curve-info", opts, [&] { return cmd_curve_info(read_curve(opts)); });
    if (*point) return run("point", opts, [&] { return cmd_point(read_curve(opts), opts.op, opts.operands); });
    if (*search)
        return run("search", opts, [&] { return cmd_search(read_curve(opts), opts.height_log, opts.threads); });
    if (*descend)
        return run("descend", opts, [&] {
            return cmd_descend(read_curve(opts), mordell::parse_point(opts.point), read_constants(opts.constants), pool);
        });
    if (*rank) return run("rank-bounds", opts, [&] { return cmd_rank_bounds(read_curve(opts), pool); });
    if (*torsion) return run("torsion", opts, [&] { return cmd_torsion(read_curve(opts), opts.search_log); });
    if (*verify) return run("verify", opts, [&] { return cmd_verify(read_curve(opts), pool); });
    return kFailure;
}

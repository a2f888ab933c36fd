// tvws: command-line driver for the spectrum-sharing equilibrium detectors.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvws/tvws.hpp"

namespace {

using namespace tvws;
namespace fs = std::filesystem;

constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;
constexpr int exit_io = 4;

struct UsageError : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct GameOptions {
    std::string config;
    std::string game;
    std::optional<std::size_t> n;
    std::optional<double> w;
    std::optional<double> k;
    std::string bounds;
    std::optional<double> tie;
};

struct OutputOptions {
    std::string out;
    std::string svg;
    std::string axes;
    std::string trace;
};

struct DetectOptions {
    std::string rationality;
    bool np_relation { false };
    bool strict_nash { false };
    std::optional<double> eps;
    std::optional<std::size_t> pop;
    std::optional<std::size_t> gens;
    std::optional<std::uint64_t> seed;
    std::string mode;
    bool no_stop { false };
    std::string preset;
};

struct OracleOptions {
    std::string method;
    std::string rationality;
    std::optional<double> step;
    std::optional<double> eps;
};

struct SweepOptions {
    std::vector<double> w;
};

auto add_game_options(CLI::App* app, GameOptions& g) -> void
{
    app->add_option("--config", g.config, "key=value configuration file ([game], [detect], [oracle], [output])");
    app->add_option("--game", g.game, "cournot, stackelberg or bertrand");
    app->add_option("--n", g.n, "number of radios (Cournot only)");
    app->add_option("--W", g.w, "whitespace channel count");
    app->add_option("--K", g.k, "cost per channel");
    app->add_option("--bounds", g.bounds, "lo:hi, or one lo:hi per player separated by commas");
    app->add_option("--tie-tolerance", g.tie, "Bertrand price tie tolerance");
}

auto add_output_options(CLI::App* app, OutputOptions& o) -> void
{
    app->add_option("--out", o.out, "CSV output path (stdout when omitted)");
    app->add_option("--svg", o.svg, "SVG scatter output path (2 players only)");
    app->add_option("--axes", o.axes, "SVG axes: strategy or payoff")->check(CLI::IsMember({ "strategy", "payoff" }));
}

auto load_config(std::string const& path) -> ConfigFile
{
    if (path.empty()) { return { }; }
    return ConfigFile::load(path);
}

auto value_or(ConfigFile const& cfg, std::string const& section, std::string const& key, std::string fallback) -> std::string
{
    auto v = cfg.get(section, key);
    return v ? *v : fallback;
}

auto build_game(GameOptions const& g, ConfigFile const& cfg) -> GameSpec
{
    auto section = cfg.section("game");
    if (!g.game.empty()) { section["kind"] = g.game; }
    if (g.n) { section["n"] = std::to_string(*g.n); }
    if (g.w) { section["w"] = format_fixed(*g.w); }
    if (g.k) { section["k"] = format_fixed(*g.k); }
    if (!g.bounds.empty()) { section["bounds"] = g.bounds; }
    if (g.tie) { section["tie_tolerance"] = format_fixed(*g.tie); }
    if (!section.contains("kind")) { throw UsageError("no game given (use --game or a [game] section)"); }
    if (!section.contains("w")) { section["w"] = "10"; }
    if (!section.contains("k")) { section["k"] = "1"; }
    return game_from_section(section);
}

auto parse_axes(std::string const& text) -> PlotAxes
{
    if (text.empty() || text == "strategy") { return PlotAxes::StrategySpace; }
    if (text == "payoff") { return PlotAxes::PayoffSpace; }
    throw UsageError("unknown axes '" + text + "' (expected strategy or payoff)");
}

/// Relative paths land in $TVWS_OUT_DIR when it is set.
auto resolve_output(std::string const& path) -> std::string
{
    if (path.empty() || path == "-") { return path; }
    fs::path p(path);
    if (p.is_relative()) {
        if (char const* dir = std::getenv("TVWS_OUT_DIR"); dir != nullptr && *dir != '\0') {
            fs::create_directories(dir);
            p = fs::path(dir) / p;
        }
    }
    return p.string();
}

auto print_point(std::ostream& out, char const* what, std::span<double const> v) -> void
{
    out << what << " (";
    for (std::size_t i = 0; i < v.size(); ++i) { out << (i ? ", " : "") << format_fixed(v[i]); }
    out << ")\n";
}

auto emit(std::vector<EquilibriumReport> const& reports, OutputOptions const& o) -> void
{
    auto const out = resolve_output(o.out);
    if (out.empty() || out == "-") {
        for (auto const& r : reports) { write_csv(r, std::cout); }
    } else {
        if (reports.size() == 1) {
            export_csv(reports.front(), out);
        } else {
            std::ofstream file(out, std::ios::binary);
            if (!file) { throw IoError("cannot open '" + out + "' for writing"); }
            bool first = true;
            for (auto const& r : reports) {
                std::ostringstream csv;
                write_csv(r, csv);
                auto text = csv.str();
                if (!first) { text.erase(0, text.find('\n') + 1); }
                file << text;
                first = false;
            }
            if (!file) { throw IoError("write to '" + out + "' failed"); }
        }
        std::cerr << "wrote " << out << '\n';
    }
    if (!o.svg.empty()) {
        auto const svg = resolve_output(o.svg);
        export_svg_scatter(reports, parse_axes(o.axes), svg);
        std::cerr << "wrote " << svg << '\n';
    }
    if (!o.trace.empty()) {
        auto const path = resolve_output(o.trace);
        std::ofstream file(path, std::ios::binary);
        if (!file) { throw IoError("cannot open '" + path + "' for writing"); }
        for (auto const& r : reports) {
            if (r.source == Source::Evolve) { write_trace_csv(r, file); }
        }
        std::cerr << "wrote " << path << '\n';
    }
}

auto relation_for(std::string const& text, std::size_t players, bool np_relation, double eps, bool strict) -> DominanceKind
{
    auto const r = RationalityProfile::parse(text);
    if (r.size() != players) { throw UsageError("rationality '" + text + "' does not match " + std::to_string(players) + " players"); }
    if (r.all_of(Rationality::Pareto) && !np_relation) { return ParetoDominance { }; }
    return JointNashPareto { r, eps, strict };
}

auto detection_config(DetectOptions const& d, ConfigFile const& cfg) -> DetectionConfig
{
    DetectionConfig c;
    if (auto v = cfg.get("detect", "pop")) { c.population_size = parse_count(*v, "pop"); }
    if (auto v = cfg.get("detect", "gens")) { c.max_generations = parse_count(*v, "gens"); }
    if (auto v = cfg.get("detect", "seed")) { c.seed = parse_count(*v, "seed"); }
    if (auto v = cfg.get("detect", "mode")) { c.stackelberg_mode = parse_stackelberg_mode(*v); }
    if (auto v = cfg.get("detect", "stop_on_convergence")) { c.stop_on_convergence = *v != "false" && *v != "0"; }
    if (d.pop) { c.population_size = *d.pop; }
    if (d.gens) { c.max_generations = *d.gens; }
    if (d.seed) { c.seed = *d.seed; }
    if (!d.mode.empty()) { c.stackelberg_mode = parse_stackelberg_mode(d.mode); }
    if (d.no_stop) { c.stop_on_convergence = false; }
    c.validate();
    return c;
}

auto config_flag(ConfigFile const& cfg, std::string const& section, std::string const& key) -> bool
{
    auto v = cfg.get(section, key);
    return v && (*v == "true" || *v == "1" || *v == "yes");
}

auto summarize(EquilibriumReport const& r) -> void
{
    auto const& last = r.trace.empty() ? GenerationRecord { } : r.trace.back();
    std::cerr << r.label << ": " << r.profiles.size() << " front profiles after " << r.generations << " generations";
    if (r.converged_generation) { std::cerr << " (converged at " << *r.converged_generation << ")"; }
    std::cerr << '\n';
    if (!last.centroid.values().empty()) {
        print_point(std::cerr, "  centroid", last.centroid.span());
        print_point(std::cerr, "  payoff centroid", last.payoff_centroid.span());
    }
}

struct Preset {
    GameKind kind;
    PlotAxes axes;
};

auto preset(std::string const& name) -> Preset
{
    if (name == "fig1") { return { GameKind::Cournot, PlotAxes::StrategySpace }; }
    if (name == "fig2") { return { GameKind::Cournot, PlotAxes::PayoffSpace }; }
    if (name == "fig3") { return { GameKind::Stackelberg, PlotAxes::StrategySpace }; }
    if (name == "fig4") { return { GameKind::Stackelberg, PlotAxes::PayoffSpace }; }
    if (name == "fig5") { return { GameKind::Bertrand, PlotAxes::StrategySpace }; }
    if (name == "fig6") { return { GameKind::Bertrand, PlotAxes::PayoffSpace }; }
    throw UsageError("unknown preset '" + name + "' (expected fig1 ... fig6)");
}

auto run_preset(DetectOptions const& d, OutputOptions const& o) -> void
{
    auto const p = preset(d.preset);
    GameSpec const game { p.kind, 2, 10, 1 };
    DetectionConfig cfg;
    if (d.seed) { cfg.seed = *d.seed; }
    if (d.gens) { cfg.max_generations = *d.gens; }
    if (!d.mode.empty()) { cfg.stackelberg_mode = parse_stackelberg_mode(d.mode); }
    cfg.validate();
    // Price games need the strict comparison for (1,1) to survive.
    bool const strict = p.kind == GameKind::Bertrand || d.strict_nash;

    std::vector<EquilibriumReport> reports;
    for (std::string r : { "PP", "NN", "NP", "PN" }) {
        auto const relation = relation_for(r, 2, false, 0.0, strict);
        auto report = evolve(game, relation, cfg);
        report.label = r == "PP" ? "Pareto" : r;
        summarize(report);
        reports.push_back(std::move(report));
    }
    reports.push_back(closed_form_report(game));
    print_point(std::cout, "closed form", reports.back().profiles.front().span());
    print_point(std::cout, "closed form payoffs", reports.back().payoffs.front().span());

    OutputOptions files = o;
    if (files.out.empty()) { files.out = d.preset + ".csv"; }
    if (files.svg.empty()) { files.svg = d.preset + ".svg"; }
    if (files.axes.empty()) { files.axes = p.axes == PlotAxes::PayoffSpace ? "payoff" : "strategy"; }
    emit(reports, files);
}

auto run_detect(GameOptions const& g, DetectOptions const& d, OutputOptions const& o) -> void
{
    if (!d.preset.empty()) { return run_preset(d, o); }
    auto const file = load_config(g.config);
    auto const game = build_game(g, file);
    auto const cfg = detection_config(d, file);
    auto const rationality
        = !d.rationality.empty() ? d.rationality : value_or(file, "detect", "rationality", std::string(game.players(), 'N'));
    auto const eps = d.eps ? *d.eps : parse_real(value_or(file, "detect", "eps", "0"), "eps");
    if (eps < 0) { throw UsageError("--eps must be >= 0"); }
    auto const strict = d.strict_nash || config_flag(file, "detect", "strict_nash");
    auto const np = d.np_relation || config_flag(file, "detect", "np_relation");
    auto report = evolve(game, relation_for(rationality, game.players(), np, eps, strict), cfg);
    report.label = rationality;
    summarize(report);

    OutputOptions files = o;
    if (files.out.empty()) { files.out = value_or(file, "output", "out", ""); }
    if (files.svg.empty()) { files.svg = value_or(file, "output", "svg", ""); }
    if (files.axes.empty()) { files.axes = value_or(file, "output", "axes", ""); }
    if (files.trace.empty()) { files.trace = value_or(file, "output", "trace", ""); }
    emit({ std::move(report) }, files);
}

auto run_oracle(GameOptions const& g, OracleOptions const& opt, OutputOptions const& o) -> void
{
    auto const file = load_config(g.config);
    auto const game = build_game(g, file);
    auto const method = !opt.method.empty() ? opt.method : value_or(file, "oracle", "method", "nash");
    auto const step = opt.step ? *opt.step : parse_real(value_or(file, "oracle", "step", "0.25"), "step");
    auto const eps = opt.eps ? *opt.eps : parse_real(value_or(file, "oracle", "eps", "1e-9"), "eps");
    auto const grid = Grid::over(game, step);
    std::cerr << "grid of " << grid.size() << " profiles\n";

    auto const all_nash = RationalityProfile::all(game.players(), Rationality::Nash);
    EquilibriumReport report { game };
    if (method == "nash") {
        report = oracle_report(game, JointNashPareto { all_nash }, brute_force_nash(game, grid, eps), "grid Nash");
    } else if (method == "pareto") {
        report = oracle_report(game, ParetoDominance { }, brute_force_pareto(game, grid), "grid Pareto");
    } else if (method == "np") {
        auto const text = !opt.rationality.empty() ? opt.rationality : value_or(file, "oracle", "rationality", std::string(game.players(), 'N'));
        auto const r = RationalityProfile::parse(text);
        if (r.size() != game.players()) { throw UsageError("rationality '" + text + "' does not match the player count"); }
        report = oracle_report(game, JointNashPareto { r }, brute_force_np(game, r, grid), "grid " + text);
    } else {
        throw UsageError("unknown oracle method '" + method + "' (expected nash, pareto or np)");
    }
    std::cerr << report.label << ": " << report.profiles.size() << " profiles\n";
    if (report.profiles.empty()) { throw InvalidInput("the oracle found no profiles on this grid"); }

    OutputOptions files = o;
    if (files.out.empty()) { files.out = value_or(file, "output", "out", ""); }
    if (files.svg.empty()) { files.svg = value_or(file, "output", "svg", ""); }
    if (files.axes.empty()) { files.axes = value_or(file, "output", "axes", ""); }
    emit({ std::move(report) }, files);
}

auto run_closed_form(GameOptions const& g, OutputOptions const& o) -> void
{
    auto const file = load_config(g.config);
    auto const game = build_game(g, file);
    auto report = closed_form_report(game);
    print_point(std::cout, "equilibrium", report.profiles.front().span());
    print_point(std::cout, "payoffs", report.payoffs.front().span());
    if (!o.out.empty() || !o.svg.empty()) { emit({ std::move(report) }, o); }
}

auto run_sweep(GameOptions g, SweepOptions const& s, DetectOptions const& d, OutputOptions const& o) -> void
{
    auto const file = load_config(g.config);
    auto values = s.w;
    if (values.empty()) { values = { 10, 20, 50, 100 }; }
    auto cfg = detection_config(d, file);
    if (!d.gens && !file.get("detect", "gens")) { cfg.max_generations = 50; }
    auto const rationality = !d.rationality.empty() ? d.rationality : value_or(file, "detect", "rationality", "");
    auto const strict = d.strict_nash || config_flag(file, "detect", "strict_nash");

    std::vector<EquilibriumReport> reports;
    std::cout << "W,front_size,generations,centroid,closed_form,distance\n";
    for (auto w : values) {
        g.w = w;
        auto const game = build_game(g, file);
        auto const r = rationality.empty() ? std::string(game.players(), 'N') : rationality;
        auto report = evolve(game, relation_for(r, game.players(), d.np_relation, 0.0, strict), cfg);
        report.label = "W=" + format_fixed(w);
        auto const& centroid = report.trace.back().centroid;
        std::optional<StrategyProfile> exact;
        try {
            exact = closed_form_equilibrium(game);
        } catch (Error const&) {
        }
        std::ostringstream row;
        row << format_fixed(w) << ',' << report.profiles.size() << ',' << report.generations << ",(";
        for (std::size_t i = 0; i < centroid.size(); ++i) { row << (i ? " " : "") << format_fixed(centroid[i]); }
        row << "),";
        if (exact) {
            double dist = 0;
            row << '(';
            for (std::size_t i = 0; i < exact->size(); ++i) {
                row << (i ? " " : "") << format_fixed((*exact)[i]);
                dist = std::max(dist, std::abs((*exact)[i] - centroid[i]));
            }
            row << ")," << format_fixed(dist);
        } else {
            row << "n/a,n/a";
        }
        std::cout << row.str() << '\n';
        reports.push_back(std::move(report));
    }
    if (!o.out.empty() || !o.trace.empty()) { emit(reports, o); }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "Equilibrium detection for TV-whitespace spectrum-sharing games" };
    app.require_subcommand(1);

    GameOptions game;
    OutputOptions output;
    DetectOptions detect;
    OracleOptions oracle;
    SweepOptions sweep;

    auto* det = app.add_subcommand("detect", "evolutionary detection of a generative-relation front");
    add_game_options(det, game);
    add_output_options(det, output);
    det->add_option("--rationality", detect.rationality, "one N or P per player, e.g. NN, NP, PP");
    det->add_flag("--np-relation", detect.np_relation, "use the joint relation even when every player is P");
    det->add_flag("--strict-nash", detect.strict_nash, "count a Nash deviation only when it strictly improves");
    det->add_option("--eps", detect.eps, "payoff comparison tolerance");
    det->add_option("--pop", detect.pop, "population size (even, >= 4)");
    det->add_option("--gens", detect.gens, "generation cap");
    det->add_option("--seed", detect.seed, "random seed");
    det->add_option("--mode", detect.mode, "Stackelberg search: bilevel or simultaneous");
    det->add_flag("--no-stop", detect.no_stop, "run every generation even after convergence");
    det->add_option("--preset", detect.preset, "fig1 ... fig6: run Pareto, NN, NP and PN at W=10, K=1, pop 100");
    det->add_option("--trace", output.trace, "per-generation trace CSV path");

    auto* ora = app.add_subcommand("oracle", "brute-force lattice search");
    add_game_options(ora, game);
    add_output_options(ora, output);
    ora->add_option("--method", oracle.method, "nash, pareto or np")->check(CLI::IsMember({ "nash", "pareto", "np" }));
    ora->add_option("--rationality", oracle.rationality, "rationality for --method np");
    ora->add_option("--step", oracle.step, "lattice step");
    ora->add_option("--eps", oracle.eps, "Nash improvement tolerance");

    auto* cf = app.add_subcommand("closed-form", "analytic equilibrium");
    add_game_options(cf, game);
    add_output_options(cf, output);

    auto* sw = app.add_subcommand("sweep", "detect over several whitespace sizes and compare with the closed form");
    add_game_options(sw, game);
    sw->remove_option(sw->get_option("--W"));
    sw->add_option("--W", sweep.w, "whitespace sizes (default 10 20 50 100)");
    sw->add_option("--out", output.out, "CSV of all fronts");
    sw->add_option("--trace", output.trace, "per-generation trace CSV path");
    sw->add_option("--rationality", detect.rationality, "one N or P per player");
    sw->add_flag("--strict-nash", detect.strict_nash, "count a Nash deviation only when it strictly improves");
    sw->add_option("--pop", detect.pop, "population size");
    sw->add_option("--gens", detect.gens, "generation cap (default 50)");
    sw->add_option("--seed", detect.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        return app.exit(e) == 0 ? 0 : exit_usage;
    }

    try {
        if (det->parsed()) {
            run_detect(game, detect, output);
        } else if (ora->parsed()) {
            run_oracle(game, oracle, output);
        } else if (cf->parsed()) {
            run_closed_form(game, output);
        } else if (sw->parsed()) {
            run_sweep(game, sweep, detect, output);
        }
    } catch (NumericFailure const& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    } catch (IoError const& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (Error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (fs::filesystem_error const& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    }
    return 0;
}

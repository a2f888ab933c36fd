#ifndef TVWS_IO_HPP
#define TVWS_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tvws/config.hpp"
#include "tvws/errors.hpp"
#include "tvws/report.hpp"
#include "tvws/types.hpp"

namespace tvws {

/// Seed column value for reports that have no seed.
inline constexpr std::string_view no_seed = "—";

/// Fixed six-decimal rendering; values that round to zero print unsigned.
[[nodiscard]] inline auto format_fixed(double v) -> std::string
{
    if (std::abs(v) < 5e-7) { v = 0.0; }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

[[nodiscard]] inline auto csv_header(std::size_t players) -> std::string
{
    std::string h;
    for (std::size_t i = 1; i <= players; ++i) { h += "player_" + std::to_string(i) + "_strategy,"; }
    for (std::size_t i = 1; i <= players; ++i) { h += "player_" + std::to_string(i) + "_payoff,"; }
    return h + "source,seed";
}

inline auto write_csv(EquilibriumReport const& report, std::ostream& out) -> void
{
    if (report.profiles.empty()) { throw InvalidInput("cannot export an empty equilibrium report"); }
    if (report.profiles.size() != report.payoffs.size()) { throw InvalidInput("report profiles and payoffs are not aligned"); }
    auto const n = report.game.players();
    out << csv_header(n) << '\n';
    auto const seed = report.seed ? std::to_string(*report.seed) : std::string(no_seed);
    for (std::size_t r = 0; r < report.profiles.size(); ++r) {
        for (auto v : report.profiles[r]) { out << format_fixed(v) << ','; }
        for (auto v : report.payoffs[r]) { out << format_fixed(v) << ','; }
        out << to_string(report.source) << ',' << seed << '\n';
    }
}

/// Writes the report as CSV; one row per profile.
inline auto export_csv(EquilibriumReport const& report, std::string const& path) -> void
{
    if (report.profiles.empty()) { throw InvalidInput("cannot export an empty equilibrium report"); }
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw IoError("cannot open '" + path + "' for writing"); }
    write_csv(report, out);
    if (!out) { throw IoError("write to '" + path + "' failed"); }
}

struct CsvRow {
    StrategyProfile profile;
    PayoffVector payoffs;
    Source source { Source::Evolve };
    std::optional<std::uint64_t> seed;
};

namespace detail {
    inline auto split(std::string_view line, char sep) -> std::vector<std::string_view>
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true) {
            auto const pos = line.find(sep, start);
            out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
            if (pos == std::string_view::npos) { return out; }
            start = pos + 1;
        }
    }
} // namespace detail

/// Reads back a report CSV written by `write_csv`.
[[nodiscard]] inline auto read_csv(std::istream& in) -> std::vector<CsvRow>
{
    std::string line;
    if (!std::getline(in, line)) { throw InvalidInput("CSV is empty"); }
    if (!line.empty() && line.back() == '\r') { line.pop_back(); }
    auto const header = detail::split(line, ',');
    if (header.size() < 4 || (header.size() - 2) % 2 != 0) { throw InvalidInput("unrecognised CSV header"); }
    auto const n = (header.size() - 2) / 2;
    if (line != csv_header(n)) { throw InvalidInput("unrecognised CSV header '" + line + "'"); }

    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') { line.pop_back(); }
        if (line.empty()) { continue; }
        auto const cells = detail::split(line, ',');
        if (cells.size() != header.size()) { throw InvalidInput("CSV row has " + std::to_string(cells.size()) + " cells"); }
        CsvRow row { StrategyProfile(n), PayoffVector(n), Source::Evolve, std::nullopt };
        for (std::size_t i = 0; i < n; ++i) {
            row.profile[i] = parse_real(cells[i], "strategy");
            row.payoffs[i] = parse_real(cells[n + i], "payoff");
        }
        row.source = parse_source(cells[2 * n]);
        if (cells[2 * n + 1] != no_seed) { row.seed = parse_count(cells[2 * n + 1], "seed"); }
        rows.push_back(std::move(row));
    }
    return rows;
}

[[nodiscard]] inline auto read_csv(std::string const& path) -> std::vector<CsvRow>
{
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw IoError("cannot open '" + path + "'"); }
    return read_csv(in);
}

/// Per-generation convergence trace as CSV.
inline auto write_trace_csv(EquilibriumReport const& report, std::ostream& out) -> void
{
    auto const n = report.game.players();
    out << "generation,front_size";
    for (std::size_t i = 1; i <= n; ++i) { out << ",centroid_" << i; }
    for (std::size_t i = 1; i <= n; ++i) { out << ",payoff_centroid_" << i; }
    out << ",movement\n";
    for (auto const& rec : report.trace) {
        out << rec.generation << ',' << rec.front_size;
        for (auto v : rec.centroid) { out << ',' << format_fixed(v); }
        for (auto v : rec.payoff_centroid) { out << ',' << format_fixed(v); }
        out << ',' << (std::isfinite(rec.movement) ? format_fixed(rec.movement) : std::string("inf")) << '\n';
    }
}

// ---------------------------------------------------------------------------
// SVG scatter

enum class PlotAxes { StrategySpace, PayoffSpace };

namespace detail {

    inline auto xml_escape(std::string_view s) -> std::string
    {
        std::string out;
        for (auto c : s) {
            switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
            }
        }
        return out;
    }

    inline auto svg_number(double v) -> std::string
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }

    inline auto axis_name(GameKind kind, PlotAxes axes, std::size_t player) -> std::string
    {
        auto const p = std::to_string(player);
        if (axes == PlotAxes::PayoffSpace) { return "u" + p + " (payoff of player " + p + ")"; }
        if (kind == GameKind::Bertrand) { return "p" + p + " (price of player " + p + ")"; }
        return "c" + p + " (channels of player " + p + ")";
    }

    inline auto marker(Source source, double x, double y, std::string_view color, double dx, double dy) -> std::string
    {
        std::ostringstream m;
        auto const data = " data-x=\"" + format_fixed(dx) + "\" data-y=\"" + format_fixed(dy) + "\"";
        auto const cls = std::string(" class=\"marker ") + std::string(to_string(source)) + "\"";
        switch (source) {
        case Source::Evolve:
            m << "<circle" << cls << data << " cx=\"" << svg_number(x) << "\" cy=\"" << svg_number(y) << "\" r=\"3\" fill=\"" << color
              << "\" fill-opacity=\"0.7\"/>";
            break;
        case Source::Oracle:
            m << "<rect" << cls << data << " x=\"" << svg_number(x - 3) << "\" y=\"" << svg_number(y - 3)
              << "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"" << color << "\"/>";
            break;
        case Source::ClosedForm:
            m << "<polygon" << cls << data << " points=\"" << svg_number(x) << ',' << svg_number(y - 7) << ' ' << svg_number(x + 7) << ','
              << svg_number(y) << ' ' << svg_number(x) << ',' << svg_number(y + 7) << ' ' << svg_number(x - 7) << ',' << svg_number(y)
              << "\" fill=\"" << color << "\" stroke=\"black\"/>";
            break;
        }
        return m.str();
    }

} // namespace detail

/// Standalone SVG scatter of two-player reports. Marker shape encodes the
/// source (circle evolve, square oracle, diamond closed form); colour
/// encodes the report.
[[nodiscard]] inline auto render_svg_scatter(std::span<EquilibriumReport const> reports, PlotAxes axes) -> std::string
{
    if (reports.empty()) { throw InvalidInput("nothing to plot"); }
    for (auto const& r : reports) {
        if (r.game.players() != 2) { throw UnsupportedDimension("scatter plots need exactly 2 players"); }
        if (r.profiles.empty()) { throw InvalidInput("cannot plot an empty equilibrium report"); }
    }
    auto point = [axes](EquilibriumReport const& r, std::size_t i) {
        return axes == PlotAxes::StrategySpace ? std::pair { r.profiles[i][0], r.profiles[i][1] }
                                               : std::pair { r.payoffs[i][0], r.payoffs[i][1] };
    };

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (auto const& r : reports) {
        for (std::size_t i = 0; i < r.profiles.size(); ++i) {
            auto [x, y] = point(r, i);
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    auto pad = [](double& lo, double& hi) {
        auto const span = hi - lo;
        if (span <= 0.0) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            lo -= 0.05 * span;
            hi += 0.05 * span;
        }
    };
    pad(xmin, xmax);
    pad(ymin, ymax);

    constexpr double width = 560;
    constexpr double height = 480;
    constexpr double left = 70;
    constexpr double right = 160;
    constexpr double top = 20;
    constexpr double bottom = 60;
    constexpr double plot_w = width - left - right;
    constexpr double plot_h = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double y) { return top + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    static constexpr std::string_view palette[] = { "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf" };
    auto const kind = reports.front().game.kind();

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 5; ++t) {
        auto const fx = xmin + (xmax - xmin) * t / 5.0;
        auto const fy = ymin + (ymax - ymin) * t / 5.0;
        svg << "<line x1=\"" << detail::svg_number(sx(fx)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << detail::svg_number(sx(fx))
            << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << detail::svg_number(sx(fx)) << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"middle\">"
            << detail::svg_number(fx) << "</text>\n";
        svg << "<line x1=\"" << left - 4 << "\" y1=\"" << detail::svg_number(sy(fy)) << "\" x2=\"" << left << "\" y2=\""
            << detail::svg_number(sy(fy)) << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << detail::svg_number(sy(fy) + 4) << "\" text-anchor=\"end\">"
            << detail::svg_number(fy) << "</text>\n";
    }
    svg << "<text class=\"axis-label\" x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
        << detail::xml_escape(detail::axis_name(kind, axes, 1)) << "</text>\n";
    svg << "<text class=\"axis-label\" x=\"15\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << top + plot_h / 2 << ")\">" << detail::xml_escape(detail::axis_name(kind, axes, 2)) << "</text>\n";

    for (std::size_t r = 0; r < reports.size(); ++r) {
        auto const color = palette[r % std::size(palette)];
        auto const& rep = reports[r];
        svg << "<g class=\"series\">\n";
        for (std::size_t i = 0; i < rep.profiles.size(); ++i) {
            auto [x, y] = point(rep, i);
            svg << detail::marker(rep.source, sx(x), sy(y), color, x, y) << '\n';
        }
        svg << "</g>\n";
        auto const ly = top + 10 + 18.0 * static_cast<double>(r);
        auto const lx = left + plot_w + 20;
        svg << "<g class=\"legend\">" << detail::marker(rep.source, lx, ly, color, 0, 0) << "<text x=\"" << lx + 12 << "\" y=\""
            << ly + 4 << "\">" << detail::xml_escape(rep.label.empty() ? std::string(to_string(rep.source)) : rep.label) << " ("
            << to_string(rep.source) << ")</text></g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline auto export_svg_scatter(std::span<EquilibriumReport const> reports, PlotAxes axes, std::string const& path) -> void
{
    auto const svg = render_svg_scatter(reports, axes);
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw IoError("cannot open '" + path + "' for writing"); }
    out << svg;
    if (!out) { throw IoError("write to '" + path + "' failed"); }
}

inline auto export_svg_scatter(EquilibriumReport const& report, PlotAxes axes, std::string const& path) -> void
{
    export_svg_scatter(std::span<EquilibriumReport const>(&report, 1), axes, path);
}

} // namespace tvws

#endif

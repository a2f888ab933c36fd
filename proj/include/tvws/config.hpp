#ifndef TVWS_CONFIG_HPP
#define TVWS_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tvws/errors.hpp"
#include "tvws/game.hpp"

namespace tvws {

/// Plain-text scenario file: `[section]` headers followed by `key = value`
/// lines. `#` and `;` start comments. Keys are case-insensitive; entries
/// before the first header land in the unnamed section "".
///
///     [game]
///     kind = cournot
///     n = 2
///     W = 10
///     K = 1
///     bounds = 0:10          # or one lo:hi per player, comma separated
class ConfigFile {
public:
    using Section = std::map<std::string, std::string>;

    static auto parse(std::istream& in) -> ConfigFile
    {
        ConfigFile cfg;
        std::string current;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto const cut = line.find_first_of("#;");
            if (cut != std::string::npos) { line.erase(cut); }
            auto text = trim(line);
            if (text.empty()) { continue; }
            if (text.front() == '[') {
                if (text.back() != ']') { throw InvalidInput("config line " + std::to_string(lineno) + ": unterminated section header"); }
                current = lower(trim(text.substr(1, text.size() - 2)));
                cfg.sections_[current];
                continue;
            }
            auto const eq = text.find('=');
            if (eq == std::string::npos) {
                throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
            }
            auto key = lower(trim(text.substr(0, eq)));
            if (key.empty()) { throw InvalidInput("config line " + std::to_string(lineno) + ": empty key"); }
            cfg.sections_[current][key] = std::string(trim(text.substr(eq + 1)));
        }
        return cfg;
    }

    static auto parse(std::string_view text) -> ConfigFile
    {
        std::istringstream in { std::string(text) };
        return parse(in);
    }

    static auto load(std::string const& path) -> ConfigFile
    {
        std::ifstream in(path);
        if (!in) { throw IoError("cannot open config file '" + path + "'"); }
        return parse(in);
    }

    [[nodiscard]] auto has(std::string const& section) const -> bool { return sections_.contains(section); }

    [[nodiscard]] auto section(std::string const& name) const -> Section
    {
        auto it = sections_.find(name);
        return it == sections_.end() ? Section { } : it->second;
    }

    [[nodiscard]] auto get(std::string const& section, std::string const& key) const -> std::optional<std::string>
    {
        auto it = sections_.find(section);
        if (it == sections_.end()) { return std::nullopt; }
        auto kv = it->second.find(lower(key));
        if (kv == it->second.end()) { return std::nullopt; }
        return kv->second;
    }

    static auto lower(std::string_view s) -> std::string
    {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    }

    static auto trim(std::string_view s) -> std::string_view
    {
        auto const first = s.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos) { return { }; }
        auto const last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

private:
    std::map<std::string, Section> sections_;
};

[[nodiscard]] inline auto parse_real(std::string_view text, std::string_view what) -> double
{
    auto const t = ConfigFile::trim(text);
    double value = 0.0;
    auto const* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (t.empty() || ec != std::errc { } || ptr != end) {
        throw InvalidInput("malformed number for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

[[nodiscard]] inline auto parse_count(std::string_view text, std::string_view what) -> std::size_t
{
    auto const t = ConfigFile::trim(text);
    std::size_t value = 0;
    auto const* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (t.empty() || ec != std::errc { } || ptr != end) {
        throw InvalidInput("malformed count for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

/// "lo:hi" applied to every player, or one "lo:hi" per player separated by commas.
[[nodiscard]] inline auto parse_bounds(std::string_view text, std::size_t players) -> std::vector<Interval>
{
    std::vector<Interval> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto const comma = text.find(',', start);
        auto const item = ConfigFile::trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        auto const colon = item.find(':');
        if (colon == std::string_view::npos) { throw InvalidInput("bounds entry '" + std::string(item) + "' must be lo:hi"); }
        out.push_back({ parse_real(item.substr(0, colon), "bounds"), parse_real(item.substr(colon + 1), "bounds") });
        if (comma == std::string_view::npos) { break; }
        start = comma + 1;
    }
    if (out.size() == 1 && players > 1) { out.assign(players, out.front()); }
    if (out.size() != players) { throw InvalidInput("bounds list must have one entry or one per player"); }
    return out;
}

/// Builds a game from a `[game]` section. `kind`, `W` and `K` are required;
/// `n` defaults to 2, bounds to [0, W].
[[nodiscard]] inline auto game_from_section(ConfigFile::Section const& section) -> GameSpec
{
    auto require = [&](std::string const& key) -> std::string const& {
        auto it = section.find(key);
        if (it == section.end()) { throw InvalidInput("game configuration is missing '" + key + "'"); }
        return it->second;
    };
    for (auto const& [key, value] : section) {
        static constexpr std::string_view known[] = { "kind", "n", "w", "k", "bounds", "tie_tolerance" };
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw InvalidInput("unknown game configuration key '" + key + "'");
        }
    }
    auto const kind = parse_game_kind(require("kind"));
    auto const n = section.contains("n") ? parse_count(section.at("n"), "n") : std::size_t { 2 };
    auto const w = parse_real(require("w"), "W");
    auto const k = parse_real(require("k"), "K");
    std::vector<Interval> bounds;
    if (section.contains("bounds")) { bounds = parse_bounds(section.at("bounds"), n); }
    auto const tie = section.contains("tie_tolerance") ? parse_real(section.at("tie_tolerance"), "tie_tolerance") : 0.0;
    return { kind, n, w, k, std::move(bounds), tie };
}

} // namespace tvws

#endif

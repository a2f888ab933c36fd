#ifndef TVWS_REPORT_HPP
#define TVWS_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvws/detection_config.hpp"
#include "tvws/equilibria.hpp"
#include "tvws/game.hpp"
#include "tvws/types.hpp"

namespace tvws {

enum class Source { Evolve, Oracle, ClosedForm };

[[nodiscard]] inline auto to_string(Source source) -> std::string_view
{
    switch (source) {
    case Source::Evolve: return "evolve";
    case Source::Oracle: return "oracle";
    case Source::ClosedForm: return "closed_form";
    }
    return "unknown";
}

[[nodiscard]] inline auto parse_source(std::string_view text) -> Source
{
    if (text == "evolve") { return Source::Evolve; }
    if (text == "oracle") { return Source::Oracle; }
    if (text == "closed_form") { return Source::ClosedForm; }
    throw InvalidInput("unknown equilibrium source '" + std::string(text) + "'");
}

/// One generation of a detector run, measured on the rank-0 front.
struct GenerationRecord {
    std::size_t generation { 0 };
    std::size_t front_size { 0 };
    StrategyProfile centroid;
    PayoffVector payoff_centroid;
    /// Euclidean distance the centroid moved since the previous generation
    /// (infinite for generation 0).
    double movement { std::numeric_limits<double>::infinity() };
};

/// A detected equilibrium set. `profiles` and `payoffs` are index-aligned
/// and the payoffs are those of the game's simultaneous payoff functions.
struct EquilibriumReport {
    GameSpec game;
    DominanceKind relation { ParetoDominance { } };
    Source source { Source::ClosedForm };
    std::vector<StrategyProfile> profiles { };
    std::vector<PayoffVector> payoffs { };
    std::vector<GenerationRecord> trace { };
    std::optional<std::uint64_t> seed { };
    std::optional<DetectionConfig> config { };
    std::optional<std::size_t> converged_generation { };
    std::size_t generations { 0 };
    /// Free-form label, e.g. the rationality string of the run.
    std::string label { };
};

/// Report holding the game's analytic equilibrium.
[[nodiscard]] inline auto closed_form_report(GameSpec const& game) -> EquilibriumReport
{
    auto profile = closed_form_equilibrium(game);
    EquilibriumReport report { game };
    report.relation = JointNashPareto { RationalityProfile::all(game.players(), Rationality::Nash) };
    report.source = Source::ClosedForm;
    report.payoffs.push_back(payoffs(game, profile));
    report.profiles.push_back(std::move(profile));
    report.label = "closed form";
    return report;
}

} // namespace tvws

#endif

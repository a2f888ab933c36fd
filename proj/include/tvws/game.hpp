#ifndef TVWS_GAME_HPP
#define TVWS_GAME_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvws/errors.hpp"
#include "tvws/types.hpp"

namespace tvws {

enum class GameKind { Cournot, Stackelberg, Bertrand };

[[nodiscard]] inline auto to_string(GameKind kind) -> std::string_view
{
    switch (kind) {
    case GameKind::Cournot: return "cournot";
    case GameKind::Stackelberg: return "stackelberg";
    case GameKind::Bertrand: return "bertrand";
    }
    return "unknown";
}

inline auto operator<<(std::ostream& out, GameKind kind) -> std::ostream& { return out << to_string(kind); }

[[nodiscard]] inline auto parse_game_kind(std::string_view text) -> GameKind
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "cournot") { return GameKind::Cournot; }
    if (lower == "stackelberg") { return GameKind::Stackelberg; }
    if (lower == "bertrand") { return GameKind::Bertrand; }
    throw InvalidInput("unknown game kind '" + std::string(text) + "' (expected cournot, stackelberg or bertrand)");
}

/// A spectrum-access game: n radios sharing a whitespace of W channels at a
/// per-channel access cost K. Player indices are zero-based throughout the
/// library; player 0 is the Stackelberg leader.
///
/// Strategy bounds default to [0, W] for every player. Stackelberg and
/// Bertrand games are two-player only.
class GameSpec {
public:
    GameSpec(GameKind kind, std::size_t players, double whitespace, double cost,
             std::vector<Interval> bounds = {}, double tie_tolerance = 0.0)
        : kind_(kind), players_(players), whitespace_(whitespace), cost_(cost),
          bounds_(std::move(bounds)), tie_tolerance_(tie_tolerance)
    {
        if (players_ < 1) { throw InvalidInput("a game needs at least one player"); }
        if (!std::isfinite(whitespace_) || whitespace_ <= 0.0) { throw InvalidInput("whitespace W must be finite and > 0"); }
        if (!std::isfinite(cost_) || cost_ < 0.0) { throw InvalidInput("access cost K must be finite and >= 0"); }
        if (kind_ != GameKind::Cournot && players_ != 2) {
            throw InvalidInput(std::string(to_string(kind_)) + " games are defined for exactly 2 players");
        }
        if (!std::isfinite(tie_tolerance_) || tie_tolerance_ < 0.0) { throw InvalidInput("tie tolerance must be finite and >= 0"); }
        if (bounds_.empty()) {
            bounds_.assign(players_, Interval { 0.0, whitespace_ });
        }
        if (bounds_.size() != players_) { throw InvalidInput("one strategy interval is required per player"); }
        for (auto const& b : bounds_) {
            if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
                throw InvalidInput("strategy bounds must be finite with lo <= hi");
            }
        }
    }

    static auto cournot(std::size_t players, double whitespace, double cost) -> GameSpec
    {
        return { GameKind::Cournot, players, whitespace, cost };
    }
    static auto stackelberg(double whitespace, double cost) -> GameSpec
    {
        return { GameKind::Stackelberg, 2, whitespace, cost };
    }
    static auto bertrand(double whitespace, double cost, double tie_tolerance = 0.0) -> GameSpec
    {
        return { GameKind::Bertrand, 2, whitespace, cost, {}, tie_tolerance };
    }

    [[nodiscard]] auto kind() const noexcept -> GameKind { return kind_; }
    [[nodiscard]] auto players() const noexcept -> std::size_t { return players_; }
    [[nodiscard]] auto whitespace() const noexcept -> double { return whitespace_; }
    [[nodiscard]] auto cost() const noexcept -> double { return cost_; }
    [[nodiscard]] auto bounds() const noexcept -> std::span<Interval const> { return bounds_; }
    [[nodiscard]] auto bounds(std::size_t i) const -> Interval const& { return bounds_.at(i); }
    [[nodiscard]] auto tie_tolerance() const noexcept -> double { return tie_tolerance_; }

    friend auto operator==(GameSpec const&, GameSpec const&) -> bool = default;

private:
    GameKind kind_;
    std::size_t players_;
    double whitespace_;
    double cost_;
    std::vector<Interval> bounds_;
    double tie_tolerance_;
};

/// Inverse demand: non-interfered symbols per channel at aggregate
/// occupation C. Zero once the whitespace is saturated.
[[nodiscard]] inline auto demand(double aggregate, double whitespace) -> double
{
    if (!(whitespace > 0.0)) { throw InvalidInput("whitespace W must be > 0"); }
    if (!(aggregate >= 0.0)) { throw InvalidInput("aggregate channel count must be >= 0"); }
    return aggregate < whitespace ? whitespace - aggregate : 0.0;
}

namespace detail {

    inline auto clamped_demand(double aggregate, double whitespace) noexcept -> double
    {
        return aggregate < whitespace ? whitespace - aggregate : 0.0;
    }

    inline auto quantity_payoff(double own, double aggregate, double whitespace, double cost) noexcept -> double
    {
        return clamped_demand(aggregate, whitespace) * own - cost * own;
    }

    inline auto bertrand_payoff(double own, double other, double whitespace, double cost, double tie_tolerance) noexcept -> double
    {
        auto const margin = (own - cost) * (whitespace - own);
        if (std::abs(own - other) <= tie_tolerance) { return 0.5 * margin; }
        return own < other ? margin : 0.0;
    }

    inline auto check_profile(GameSpec const& spec, std::span<double const> profile) -> void
    {
        if (profile.size() != spec.players()) {
            throw InvalidInput("strategy profile has " + std::to_string(profile.size()) + " entries, game has "
                               + std::to_string(spec.players()) + " players");
        }
        for (std::size_t k = 0; k < profile.size(); ++k) {
            if (!spec.bounds(k).contains(profile[k])) {
                throw InvalidInput("strategy of player " + std::to_string(k + 1) + " (" + std::to_string(profile[k])
                                   + ") is outside its bounds");
            }
        }
    }

    inline auto check_player(GameSpec const& spec, std::size_t i) -> void
    {
        if (i >= spec.players()) { throw InvalidInput("player index " + std::to_string(i) + " out of range"); }
    }

    inline auto check_kind(GameSpec const& spec, GameKind expected) -> void
    {
        if (spec.kind() != expected) {
            throw InvalidInput("expected a " + std::string(to_string(expected)) + " game, got " + std::string(to_string(spec.kind())));
        }
    }

    /// Payoff of player i; no validation.
    inline auto payoff(GameSpec const& spec, std::span<double const> profile, std::size_t i) noexcept -> double
    {
        if (spec.kind() == GameKind::Bertrand) {
            return bertrand_payoff(profile[i], profile[1 - i], spec.whitespace(), spec.cost(), spec.tie_tolerance());
        }
        double aggregate = 0.0;
        for (auto c : profile) { aggregate += c; }
        return quantity_payoff(profile[i], aggregate, spec.whitespace(), spec.cost());
    }

    /// Payoff of player i after replacing its strategy in `base` by `replacement`; no validation.
    inline auto deviation_payoff(GameSpec const& spec, std::span<double const> base, std::size_t i, double replacement) noexcept -> double
    {
        if (spec.kind() == GameKind::Bertrand) {
            return bertrand_payoff(replacement, base[1 - i], spec.whitespace(), spec.cost(), spec.tie_tolerance());
        }
        double aggregate = replacement;
        for (std::size_t k = 0; k < base.size(); ++k) {
            if (k != i) { aggregate += base[k]; }
        }
        return quantity_payoff(replacement, aggregate, spec.whitespace(), spec.cost());
    }

} // namespace detail

/// u_i(c) = P(sum c) c_i - K c_i with P clamped at zero.
[[nodiscard]] inline auto cournot_payoff(GameSpec const& spec, StrategyProfile const& profile, std::size_t i) -> double
{
    detail::check_kind(spec, GameKind::Cournot);
    detail::check_player(spec, i);
    detail::check_profile(spec, profile.span());
    return detail::payoff(spec, profile.span(), i);
}

/// Simultaneous-form Stackelberg payoff; identical to the two-player Cournot
/// payoff. The leader/follower sequencing lives in the equilibrium.
[[nodiscard]] inline auto stackelberg_payoff(GameSpec const& spec, StrategyProfile const& profile, std::size_t i) -> double
{
    detail::check_kind(spec, GameKind::Stackelberg);
    detail::check_player(spec, i);
    detail::check_profile(spec, profile.span());
    return detail::payoff(spec, profile.span(), i);
}

/// Undercutting radio takes (p_i - K)(W - p_i), a tie splits it, the higher
/// price gets nothing. Ties are detected within the game's tie tolerance.
[[nodiscard]] inline auto bertrand_payoff(GameSpec const& spec, StrategyProfile const& profile, std::size_t i) -> double
{
    detail::check_kind(spec, GameKind::Bertrand);
    detail::check_player(spec, i);
    detail::check_profile(spec, profile.span());
    return detail::payoff(spec, profile.span(), i);
}

[[nodiscard]] inline auto payoff(GameSpec const& spec, StrategyProfile const& profile, std::size_t i) -> double
{
    detail::check_player(spec, i);
    detail::check_profile(spec, profile.span());
    return detail::payoff(spec, profile.span(), i);
}

[[nodiscard]] inline auto payoffs(GameSpec const& spec, StrategyProfile const& profile) -> PayoffVector
{
    detail::check_profile(spec, profile.span());
    PayoffVector u(spec.players());
    for (std::size_t i = 0; i < spec.players(); ++i) {
        u[i] = detail::payoff(spec, profile.span(), i);
    }
    return u;
}

namespace detail {
    inline auto check_within_bounds(GameSpec const& spec, StrategyProfile const& profile) -> StrategyProfile
    {
        for (std::size_t k = 0; k < profile.size(); ++k) {
            if (!spec.bounds(k).contains(profile[k])) {
                throw InvalidInput("closed-form equilibrium lies outside the strategy bounds");
            }
        }
        return profile;
    }
} // namespace detail

/// Symmetric Cournot equilibrium, every radio accesses (W - K) / (n + 1).
[[nodiscard]] inline auto cournot_nash(GameSpec const& spec) -> StrategyProfile
{
    detail::check_kind(spec, GameKind::Cournot);
    if (spec.whitespace() < spec.cost()) {
        throw NoInteriorEquilibrium("W < K: no radio can access channels profitably", StrategyProfile(spec.players(), 0.0));
    }
    auto const c = (spec.whitespace() - spec.cost()) / static_cast<double>(spec.players() + 1);
    return detail::check_within_bounds(spec, StrategyProfile(spec.players(), c));
}

/// Follower's best reply max(0, (W - K - c1) / 2), projected onto its bounds.
[[nodiscard]] inline auto follower_best_response(GameSpec const& spec, double leader_channels) -> double
{
    detail::check_kind(spec, GameKind::Stackelberg);
    if (!(leader_channels >= 0.0) || !std::isfinite(leader_channels)) {
        throw InvalidInput("leader channel count must be finite and >= 0");
    }
    auto const reply = std::max(0.0, (spec.whitespace() - spec.cost() - leader_channels) / 2.0);
    return spec.bounds(1).clamp(reply);
}

/// Leader takes (W - K) / 2 and the follower replies with (W - K) / 4.
[[nodiscard]] inline auto stackelberg_equilibrium(GameSpec const& spec) -> StrategyProfile
{
    detail::check_kind(spec, GameKind::Stackelberg);
    if (spec.whitespace() < spec.cost()) {
        throw NoInteriorEquilibrium("W < K: the leader has no profitable access level", StrategyProfile(2, 0.0));
    }
    auto const leader = (spec.whitespace() - spec.cost()) / 2.0;
    return detail::check_within_bounds(spec, StrategyProfile { leader, follower_best_response(spec, leader) });
}

/// Both radios price at cost; each earns zero.
[[nodiscard]] inline auto bertrand_nash(GameSpec const& spec) -> StrategyProfile
{
    detail::check_kind(spec, GameKind::Bertrand);
    if (spec.whitespace() <= spec.cost()) {
        throw DegenerateMarket("W <= K: no price leaves a positive margin");
    }
    return detail::check_within_bounds(spec, StrategyProfile(2, spec.cost()));
}

[[nodiscard]] inline auto closed_form_equilibrium(GameSpec const& spec) -> StrategyProfile
{
    switch (spec.kind()) {
    case GameKind::Cournot: return cournot_nash(spec);
    case GameKind::Stackelberg: return stackelberg_equilibrium(spec);
    case GameKind::Bertrand: return bertrand_nash(spec);
    }
    throw InvalidInput("unknown game kind");
}

} // namespace tvws

#endif

#ifndef TVWS_MODEL_HPP
#define TVWS_MODEL_HPP

#include <concepts>
#include <cstddef>
#include <span>

#include "tvws/game.hpp"
#include "tvws/types.hpp"

namespace tvws {

/// What the dominance relations and the detector need from a game.
///
/// A model separates decision coordinates (what evolves) from players (who
/// receive payoffs). Every coordinate is owned by one player; a player may
/// own no coordinate, e.g. a Stackelberg follower whose move is fixed by its
/// best reply. `expand` maps a decision vector to the full strategy profile.
template <typename M>
concept PayoffModel = requires(M const& m, StrategyProfile const& s, std::size_t k, double v) {
    { m.players() } -> std::convertible_to<std::size_t>;
    { m.dimensions() } -> std::convertible_to<std::size_t>;
    { m.bounds(k) } -> std::convertible_to<Interval>;
    { m.owner(k) } -> std::convertible_to<std::size_t>;
    { m.payoffs(s) } -> std::convertible_to<PayoffVector>;
    { m.deviation_payoff(s, k, v) } -> std::convertible_to<double>;
    { m.expand(s) } -> std::convertible_to<StrategyProfile>;
};

/// Every player moves at once and owns its own coordinate.
class SimultaneousGame {
public:
    explicit SimultaneousGame(GameSpec spec) : spec_(std::move(spec)) { }

    [[nodiscard]] auto spec() const noexcept -> GameSpec const& { return spec_; }
    [[nodiscard]] auto players() const noexcept -> std::size_t { return spec_.players(); }
    [[nodiscard]] auto dimensions() const noexcept -> std::size_t { return spec_.players(); }
    [[nodiscard]] auto bounds(std::size_t k) const -> Interval { return spec_.bounds(k); }
    [[nodiscard]] auto owner(std::size_t k) const noexcept -> std::size_t { return k; }

    [[nodiscard]] auto payoffs(StrategyProfile const& s) const -> PayoffVector
    {
        PayoffVector u(spec_.players());
        for (std::size_t i = 0; i < u.size(); ++i) { u[i] = detail::payoff(spec_, s.span(), i); }
        return u;
    }

    [[nodiscard]] auto deviation_payoff(StrategyProfile const& base, std::size_t k, double replacement) const -> double
    {
        return detail::deviation_payoff(spec_, base.span(), k, replacement);
    }

    [[nodiscard]] auto expand(StrategyProfile const& s) const -> StrategyProfile { return s; }

private:
    GameSpec spec_;
};

/// Reduced Stackelberg game in which only the leader's channel count evolves
/// and the follower always plays its best reply. A leader deviation moves
/// the follower with it, so the leader's payoff is u_1(c1, b2(c1)).
class StackelbergLeaderView {
public:
    explicit StackelbergLeaderView(GameSpec spec) : spec_(std::move(spec))
    {
        detail::check_kind(spec_, GameKind::Stackelberg);
    }

    [[nodiscard]] auto spec() const noexcept -> GameSpec const& { return spec_; }
    [[nodiscard]] auto players() const noexcept -> std::size_t { return 2; }
    [[nodiscard]] auto dimensions() const noexcept -> std::size_t { return 1; }
    [[nodiscard]] auto bounds(std::size_t /*k*/) const -> Interval { return spec_.bounds(0); }
    [[nodiscard]] auto owner(std::size_t /*k*/) const noexcept -> std::size_t { return 0; }

    [[nodiscard]] auto follower(double leader) const -> double { return follower_best_response(spec_, leader); }

    [[nodiscard]] auto expand(StrategyProfile const& s) const -> StrategyProfile
    {
        return StrategyProfile { s[0], follower(s[0]) };
    }

    [[nodiscard]] auto payoffs(StrategyProfile const& s) const -> PayoffVector
    {
        auto const full = expand(s);
        return PayoffVector { detail::payoff(spec_, full.span(), 0), detail::payoff(spec_, full.span(), 1) };
    }

    /// Leader payoff once the follower has reacted to `replacement`.
    [[nodiscard]] auto deviation_payoff(StrategyProfile const& /*base*/, std::size_t /*k*/, double replacement) const -> double
    {
        return leader_payoff(replacement);
    }

    [[nodiscard]] auto leader_payoff(double leader) const -> double
    {
        auto const full = StrategyProfile { leader, follower(leader) };
        return detail::payoff(spec_, full.span(), 0);
    }

private:
    GameSpec spec_;
};

static_assert(PayoffModel<SimultaneousGame>);
static_assert(PayoffModel<StackelbergLeaderView>);

/// Bilevel view of a Stackelberg game.
[[nodiscard]] inline auto stackelberg_bilevel_wrap(GameSpec const& spec) -> StackelbergLeaderView
{
    return StackelbergLeaderView(spec);
}

} // namespace tvws

#endif

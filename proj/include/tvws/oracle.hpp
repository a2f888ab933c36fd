#ifndef TVWS_ORACLE_HPP
#define TVWS_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <iostream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tvws/equilibria.hpp"
#include "tvws/errors.hpp"
#include "tvws/game.hpp"
#include "tvws/model.hpp"
#include "tvws/report.hpp"
#include "tvws/types.hpp"

namespace tvws {

/// Endpoint-inclusive lattice over per-player intervals. Each axis holds
/// lo, lo + step, lo + 2 step, ... and always ends exactly at hi.
class Grid {
public:
    Grid(double step, std::vector<Interval> bounds) : step_(step), bounds_(std::move(bounds))
    {
        if (!(step_ > 0.0) || !std::isfinite(step_)) { throw InvalidInput("grid step must be finite and > 0"); }
        if (bounds_.empty()) { throw InvalidInput("grid needs at least one axis"); }
        for (auto const& b : bounds_) {
            if (!(b.lo <= b.hi)) { throw InvalidInput("grid bounds must have lo <= hi"); }
            axes_.push_back(make_axis(b));
        }
    }

    /// Lattice over the game's own strategy bounds.
    static auto over(GameSpec const& spec, double step) -> Grid
    {
        return { step, std::vector<Interval>(spec.bounds().begin(), spec.bounds().end()) };
    }

    [[nodiscard]] auto step() const noexcept -> double { return step_; }
    [[nodiscard]] auto dimensions() const noexcept -> std::size_t { return axes_.size(); }
    [[nodiscard]] auto axis(std::size_t k) const -> std::vector<double> const& { return axes_.at(k); }

    /// Number of lattice points, as a double so huge lattices do not overflow.
    [[nodiscard]] auto size() const noexcept -> double
    {
        double n = 1.0;
        for (auto const& a : axes_) { n *= static_cast<double>(a.size()); }
        return n;
    }

    /// All lattice profiles, last coordinate varying fastest.
    [[nodiscard]] auto profiles() const -> std::vector<StrategyProfile>
    {
        std::vector<StrategyProfile> out;
        std::vector<std::size_t> idx(axes_.size(), 0);
        out.reserve(static_cast<std::size_t>(size()));
        while (true) {
            StrategyProfile p(axes_.size());
            for (std::size_t k = 0; k < axes_.size(); ++k) { p[k] = axes_[k][idx[k]]; }
            out.push_back(std::move(p));
            std::size_t k = axes_.size();
            while (k > 0) {
                --k;
                if (++idx[k] < axes_[k].size()) { break; }
                idx[k] = 0;
                if (k == 0) { return out; }
            }
        }
    }

private:
    auto make_axis(Interval b) const -> std::vector<double>
    {
        std::vector<double> axis;
        auto const count = static_cast<std::size_t>(std::floor((b.hi - b.lo) / step_ + 1e-9));
        for (std::size_t i = 0; i <= count; ++i) {
            auto const v = b.lo + static_cast<double>(i) * step_;
            if (v > b.hi) { break; }
            axis.push_back(v);
        }
        if (axis.back() < b.hi - 1e-12 * std::max(1.0, std::abs(b.hi))) {
            axis.push_back(b.hi);
        } else {
            axis.back() = std::min(axis.back(), b.hi);
        }
        return axis;
    }

    double step_;
    std::vector<Interval> bounds_;
    std::vector<std::vector<double>> axes_;
};

/// Size thresholds for the brute-force searches. Above `warn` a notice goes
/// to `warnings` (if set); above `max` the search refuses to run.
struct OracleLimits {
    double warn;
    double max;
    std::ostream* warnings { &std::clog };
};

inline constexpr double nash_warn_points = 1e7;
inline constexpr double nash_max_points = 1e9;
inline constexpr double pairwise_warn_points = 1e4;
inline constexpr double pairwise_max_points = 5e4;

namespace detail {

    inline auto check_grid(GameSpec const& spec, Grid const& grid, OracleLimits const& limits, std::string const& what) -> void
    {
        if (grid.dimensions() != spec.players()) { throw InvalidInput("grid dimension does not match the player count"); }
        for (std::size_t k = 0; k < grid.dimensions(); ++k) {
            for (auto v : grid.axis(k)) {
                if (!spec.bounds(k).contains(v)) { throw InvalidInput("grid extends outside the strategy bounds"); }
            }
        }
        auto const points = grid.size();
        if (points > limits.max) {
            throw ResourceLimit(what + ": lattice of " + std::to_string(points) + " points exceeds the limit of "
                                + std::to_string(limits.max));
        }
        if (points > limits.warn && limits.warnings != nullptr) {
            *limits.warnings << "warning: " << what << " over " << points << " lattice points may be slow\n";
        }
    }

} // namespace detail

/// Lattice profiles where no player has a lattice deviation that raises its
/// payoff by more than `eps`.
[[nodiscard]] inline auto brute_force_nash(GameSpec const& spec, Grid const& grid, double eps = 1e-9,
                                           OracleLimits const& limits = { nash_warn_points, nash_max_points })
    -> std::vector<StrategyProfile>
{
    detail::check_grid(spec, grid, limits, "grid Nash search");
    std::vector<StrategyProfile> out;
    for (auto const& profile : grid.profiles()) {
        bool stable = true;
        for (std::size_t i = 0; i < spec.players() && stable; ++i) {
            auto const current = detail::payoff(spec, profile.span(), i);
            for (auto v : grid.axis(i)) {
                if (detail::deviation_payoff(spec, profile.span(), i, v) > current + eps) {
                    stable = false;
                    break;
                }
            }
        }
        if (stable) { out.push_back(profile); }
    }
    return out;
}

namespace detail {

    inline auto lattice_minimal(GameSpec const& spec, DominanceKind const& kind, Grid const& grid, OracleLimits const& limits,
                                std::string const& what) -> std::vector<StrategyProfile>
    {
        detail::check_grid(spec, grid, limits, what);
        SimultaneousGame const model(spec);
        check_relation(model, kind);
        std::vector<Evaluated> lattice;
        for (auto& p : grid.profiles()) {
            auto u = model.payoffs(p);
            lattice.push_back({ std::move(p), std::move(u) });
        }
        std::vector<StrategyProfile> out;
        for (auto i : nondominated_indices(model, kind, std::span<Evaluated const>(lattice))) { out.push_back(lattice[i].profile); }
        return out;
    }

} // namespace detail

/// Pareto-non-dominated lattice profiles.
[[nodiscard]] inline auto brute_force_pareto(GameSpec const& spec, Grid const& grid,
                                             OracleLimits const& limits = { pairwise_warn_points, pairwise_max_points })
    -> std::vector<StrategyProfile>
{
    return detail::lattice_minimal(spec, ParetoDominance { }, grid, limits, "grid Pareto search");
}

/// Lattice profiles that no other lattice profile dominates under the joint
/// Nash-Pareto relation for rationality `r`.
[[nodiscard]] inline auto brute_force_np(GameSpec const& spec, RationalityProfile const& r, Grid const& grid,
                                         OracleLimits const& limits = { pairwise_warn_points, pairwise_max_points })
    -> std::vector<StrategyProfile>
{
    return detail::lattice_minimal(spec, JointNashPareto { r }, grid, limits, "grid joint Nash-Pareto search");
}

/// Wraps an oracle result as a report.
[[nodiscard]] inline auto oracle_report(GameSpec const& spec, DominanceKind const& relation, std::vector<StrategyProfile> profiles,
                                        std::string label) -> EquilibriumReport
{
    EquilibriumReport report { spec };
    report.relation = relation;
    report.source = Source::Oracle;
    report.label = std::move(label);
    for (auto& p : profiles) {
        report.payoffs.push_back(payoffs(spec, p));
        report.profiles.push_back(std::move(p));
    }
    return report;
}

} // namespace tvws

#endif

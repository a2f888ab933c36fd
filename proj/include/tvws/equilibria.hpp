#ifndef TVWS_EQUILIBRIA_HPP
#define TVWS_EQUILIBRIA_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tvws/errors.hpp"
#include "tvws/game.hpp"
#include "tvws/model.hpp"
#include "tvws/types.hpp"

namespace tvws {

enum class Rationality { Nash, Pareto };

/// Per-player rationality labels, written as a string over {N, P}:
/// "NP" is player 1 Nash-biased and player 2 Pareto-biased.
class RationalityProfile {
public:
    RationalityProfile() = default;
    explicit RationalityProfile(std::vector<Rationality> labels) : labels_(std::move(labels)) { }

    static auto parse(std::string_view text) -> RationalityProfile
    {
        std::vector<Rationality> labels;
        for (auto c : text) {
            switch (c) {
            case 'N': case 'n': labels.push_back(Rationality::Nash); break;
            case 'P': case 'p': labels.push_back(Rationality::Pareto); break;
            default: throw InvalidInput("rationality string '" + std::string(text) + "' may only contain N and P");
            }
        }
        if (labels.empty()) { throw InvalidInput("empty rationality string"); }
        return RationalityProfile(std::move(labels));
    }

    static auto all(std::size_t n, Rationality r) -> RationalityProfile
    {
        return RationalityProfile(std::vector<Rationality>(n, r));
    }

    [[nodiscard]] auto size() const noexcept -> std::size_t { return labels_.size(); }
    [[nodiscard]] auto operator[](std::size_t i) const -> Rationality { return labels_[i]; }
    [[nodiscard]] auto labels() const noexcept -> std::vector<Rationality> const& { return labels_; }

    [[nodiscard]] auto nash_players() const -> std::vector<std::size_t> { return indices(Rationality::Nash); }
    [[nodiscard]] auto pareto_players() const -> std::vector<std::size_t> { return indices(Rationality::Pareto); }

    [[nodiscard]] auto all_of(Rationality r) const noexcept -> bool
    {
        for (auto l : labels_) { if (l != r) { return false; } }
        return true;
    }

    [[nodiscard]] auto to_string() const -> std::string
    {
        std::string s;
        for (auto l : labels_) { s += (l == Rationality::Nash ? 'N' : 'P'); }
        return s;
    }

    friend auto operator==(RationalityProfile const&, RationalityProfile const&) -> bool = default;

private:
    [[nodiscard]] auto indices(Rationality r) const -> std::vector<std::size_t>
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < labels_.size(); ++i) { if (labels_[i] == r) { out.push_back(i); } }
        return out;
    }

    std::vector<Rationality> labels_;
};

/// Classical Pareto dominance on payoff vectors.
struct ParetoDominance {
    friend auto operator==(ParetoDominance const&, ParetoDominance const&) -> bool = default;
};

/// Generative relation of the joint Nash-Pareto equilibrium. With every
/// label Nash this is the Nash generative relation. `eps` widens every
/// payoff comparison inside the efficiency count (0 means exact).
struct JointNashPareto {
    RationalityProfile rationality;
    double eps { 0.0 };
    bool strict_nash { false };

    friend auto operator==(JointNashPareto const&, JointNashPareto const&) -> bool = default;
};

using DominanceKind = std::variant<ParetoDominance, JointNashPareto>;

[[nodiscard]] inline auto describe(DominanceKind const& kind) -> std::string
{
    if (auto const* np = std::get_if<JointNashPareto>(&kind)) { return "np:" + np->rationality.to_string(); }
    return "pareto";
}

/// A profile together with its payoffs under some model.
struct Evaluated {
    StrategyProfile profile;
    PayoffVector payoffs;
};

// ---------------------------------------------------------------------------
// Model-generic relations on evaluated profiles

/// x Pareto dominates y: nobody is worse off and somebody is strictly better.
[[nodiscard]] inline auto pareto_dominates(PayoffVector const& ux, PayoffVector const& uy) noexcept -> bool
{
    bool strictly = false;
    for (std::size_t i = 0; i < ux.size(); ++i) {
        if (ux[i] < uy[i]) { return false; }
        if (ux[i] > uy[i]) { strictly = true; }
    }
    return strictly;
}

/// E(y, x): Nash-biased players that weakly gain by unilaterally switching
/// from y to their strategy in x, plus (when x != y) Pareto-biased players
/// strictly better off at x than at y.
template <PayoffModel M>
[[nodiscard]] auto relative_efficiency(M const& model, RationalityProfile const& r, Evaluated const& y, Evaluated const& x,
                                       double eps = 0.0, bool strict = false) -> std::size_t
{
    std::size_t count = 0;
    for (std::size_t k = 0; k < model.dimensions(); ++k) {
        auto const owner = model.owner(k);
        if (r[owner] != Rationality::Nash || x.profile[k] == y.profile[k]) { continue; }
        auto const deviation = model.deviation_payoff(y.profile, k, x.profile[k]);
        if (strict ? deviation > y.payoffs[owner] + eps : deviation >= y.payoffs[owner] - eps) { ++count; }
    }
    if (x.profile != y.profile) {
        for (std::size_t j = 0; j < model.players(); ++j) {
            if (r[j] == Rationality::Pareto && y.payoffs[j] < x.payoffs[j] - eps) { ++count; }
        }
    }
    return count;
}

/// y <NP x, read as "y dominates x": E(y, x) < E(x, y).
template <PayoffModel M>
[[nodiscard]] auto np_dominates(M const& model, RationalityProfile const& r, Evaluated const& y, Evaluated const& x,
                                double eps = 0.0, bool strict = false) -> bool
{
    return relative_efficiency(model, r, y, x, eps, strict) < relative_efficiency(model, r, x, y, eps, strict);
}

/// `a` dominates `b` under the chosen relation.
template <PayoffModel M>
[[nodiscard]] auto dominates(M const& model, DominanceKind const& kind, Evaluated const& a, Evaluated const& b) -> bool
{
    if (auto const* np = std::get_if<JointNashPareto>(&kind)) {
        return np_dominates(model, np->rationality, a, b, np->eps, np->strict_nash);
    }
    return pareto_dominates(a.payoffs, b.payoffs);
}

template <PayoffModel M>
auto check_relation(M const& model, DominanceKind const& kind) -> void
{
    if (auto const* np = std::get_if<JointNashPareto>(&kind)) {
        if (np->rationality.size() != model.players()) {
            throw InvalidInput("rationality profile has " + std::to_string(np->rationality.size()) + " labels, game has "
                               + std::to_string(model.players()) + " players");
        }
        if (!(np->eps >= 0.0)) { throw InvalidInput("comparison tolerance must be >= 0"); }
    }
}

// ---------------------------------------------------------------------------
// GameSpec-level API (simultaneous form)

namespace detail {
    inline auto evaluate(GameSpec const& spec, StrategyProfile const& s) -> Evaluated
    {
        return { s, payoffs(spec, s) };
    }
} // namespace detail

/// u_i at `base` with player i's strategy replaced.
[[nodiscard]] inline auto unilateral_deviation_payoff(GameSpec const& spec, StrategyProfile const& base, std::size_t i,
                                                      double replacement) -> double
{
    detail::check_player(spec, i);
    detail::check_profile(spec, base.span());
    if (!spec.bounds(i).contains(replacement)) {
        throw InvalidInput("replacement strategy for player " + std::to_string(i + 1) + " is outside its bounds");
    }
    return detail::deviation_payoff(spec, base.span(), i, replacement);
}

[[nodiscard]] inline auto pareto_dominates(GameSpec const& spec, StrategyProfile const& x, StrategyProfile const& y) -> bool
{
    return pareto_dominates(payoffs(spec, x), payoffs(spec, y));
}

[[nodiscard]] inline auto relative_efficiency(GameSpec const& spec, RationalityProfile const& r, StrategyProfile const& y,
                                              StrategyProfile const& x, double eps = 0.0) -> std::size_t
{
    SimultaneousGame const model(spec);
    check_relation(model, JointNashPareto { r, eps });
    return relative_efficiency(model, r, detail::evaluate(spec, y), detail::evaluate(spec, x), eps);
}

[[nodiscard]] inline auto np_dominates(GameSpec const& spec, RationalityProfile const& r, StrategyProfile const& y,
                                       StrategyProfile const& x, double eps = 0.0) -> bool
{
    SimultaneousGame const model(spec);
    check_relation(model, JointNashPareto { r, eps });
    return np_dominates(model, r, detail::evaluate(spec, y), detail::evaluate(spec, x), eps);
}

[[nodiscard]] inline auto dominates(GameSpec const& spec, DominanceKind const& kind, StrategyProfile const& a,
                                    StrategyProfile const& b) -> bool
{
    SimultaneousGame const model(spec);
    check_relation(model, kind);
    return dominates(model, kind, detail::evaluate(spec, a), detail::evaluate(spec, b));
}

/// Indices of the members of `set` that no other member dominates.
template <PayoffModel M>
[[nodiscard]] auto nondominated_indices(M const& model, DominanceKind const& kind, std::span<Evaluated const> set)
    -> std::vector<std::size_t>
{
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < set.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < set.size() && !dominated; ++j) {
            dominated = j != i && dominates(model, kind, set[j], set[i]);
        }
        if (!dominated) { keep.push_back(i); }
    }
    return keep;
}

/// Members of `set` not dominated by any other member, in input order.
[[nodiscard]] inline auto nondominated_filter(GameSpec const& spec, DominanceKind const& kind,
                                              std::vector<StrategyProfile> const& set) -> std::vector<StrategyProfile>
{
    if (set.empty()) { throw InvalidInput("cannot filter an empty profile set"); }
    SimultaneousGame const model(spec);
    check_relation(model, kind);
    std::vector<Evaluated> evaluated;
    evaluated.reserve(set.size());
    for (auto const& s : set) { evaluated.push_back(detail::evaluate(spec, s)); }
    std::vector<StrategyProfile> out;
    for (auto i : nondominated_indices(model, kind, std::span<Evaluated const>(evaluated))) { out.push_back(set[i]); }
    return out;
}

} // namespace tvws

#endif

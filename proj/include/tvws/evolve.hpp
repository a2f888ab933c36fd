#ifndef TVWS_EVOLVE_HPP
#define TVWS_EVOLVE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "tvws/detection_config.hpp"
#include "tvws/equilibria.hpp"
#include "tvws/errors.hpp"
#include "tvws/game.hpp"
#include "tvws/model.hpp"
#include "tvws/report.hpp"
#include "tvws/types.hpp"

namespace tvws {

using Rng = std::mt19937_64;

/// Member of the detector's population. `profile` is the decision vector of
/// the model being searched; `payoffs` are cached for it.
struct Individual : Evaluated {
    std::size_t rank { 0 };
    double crowding { 0.0 };
};

using Front = std::vector<std::size_t>;

/// Partitions `pop` into fronts F0, F1, ... where each front is the
/// non-dominated subset of what remains after removing earlier fronts.
///
/// The joint Nash-Pareto relation is not transitive and may contain cycles
/// that leave no undominated member. Such a remainder is resolved greedily:
/// members are taken in order of fewest dominators (then index) as long as
/// they are unrelated to everything already taken, so every front stays
/// internally mutually non-dominated.
template <PayoffModel M>
[[nodiscard]] auto nondominated_sort(M const& model, DominanceKind const& kind, std::span<Individual const> pop) -> std::vector<Front>
{
    auto const n = pop.size();
    std::vector<char> dom(n * n, 0); // dom[a * n + b]: a dominates b
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b) { dom[a * n + b] = dominates(model, kind, pop[a], pop[b]) ? 1 : 0; }
        }
    }

    std::vector<std::size_t> dominators(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) { dominators[b] += static_cast<std::size_t>(dom[a * n + b]); }
    }

    std::vector<char> assigned(n, 0);
    std::size_t remaining = n;
    std::vector<Front> fronts;
    while (remaining > 0) {
        Front front;
        for (std::size_t i = 0; i < n; ++i) {
            if (!assigned[i] && dominators[i] == 0) { front.push_back(i); }
        }
        if (front.empty()) {
            std::vector<std::size_t> order;
            for (std::size_t i = 0; i < n; ++i) { if (!assigned[i]) { order.push_back(i); } }
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dominators[a] < dominators[b]; });
            for (auto i : order) {
                auto unrelated = std::none_of(front.begin(), front.end(), [&](auto j) { return dom[i * n + j] || dom[j * n + i]; });
                if (unrelated) { front.push_back(i); }
            }
        }
        for (auto i : front) {
            assigned[i] = 1;
            --remaining;
        }
        for (auto i : front) {
            for (std::size_t j = 0; j < n; ++j) {
                if (dom[i * n + j] && !assigned[j]) { --dominators[j]; }
            }
        }
        fronts.push_back(std::move(front));
    }
    return fronts;
}

[[nodiscard]] inline auto nondominated_sort(GameSpec const& spec, DominanceKind const& kind, std::span<Individual const> pop)
    -> std::vector<Front>
{
    SimultaneousGame const model(spec);
    check_relation(model, kind);
    return nondominated_sort(model, kind, pop);
}

/// Payoff-space crowding distance of each member of one front. The extreme
/// members along any payoff axis get +infinity; everyone else gets the sum
/// over axes of the neighbour gap normalised by the front's range on that axis.
[[nodiscard]] inline auto crowding_distance(std::span<PayoffVector const> front) -> std::vector<double>
{
    auto const n = front.size();
    constexpr auto inf = std::numeric_limits<double>::infinity();
    if (n <= 2) { return std::vector<double>(n, inf); }
    std::vector<double> distance(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < front[0].size(); ++m) {
        std::iota(order.begin(), order.end(), std::size_t { 0 });
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return front[a][m] < front[b][m]; });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        auto const range = front[order.back()][m] - front[order.front()][m];
        if (range <= 0.0) { continue; }
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / range;
        }
    }
    return distance;
}

[[nodiscard]] inline auto crowding_distance(std::span<Individual const> front) -> std::vector<double>
{
    std::vector<PayoffVector> u;
    u.reserve(front.size());
    for (auto const& ind : front) { u.push_back(ind.payoffs); }
    return crowding_distance(std::span<PayoffVector const>(u));
}

namespace detail {

    inline auto uniform(Rng& rng) -> double { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

    /// Bounded simulated binary crossover on one coordinate.
    inline auto sbx(double a, double b, Interval bounds, double eta, Rng& rng) -> std::pair<double, double>
    {
        auto const y1 = std::min(a, b);
        auto const y2 = std::max(a, b);
        auto const spread = y2 - y1;
        auto const u = uniform(rng);
        auto const exponent = 1.0 / (eta + 1.0);
        auto betaq = [&](double beta) {
            auto const alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            return u <= 1.0 / alpha ? std::pow(u * alpha, exponent) : std::pow(1.0 / (2.0 - u * alpha), exponent);
        };
        auto c1 = 0.5 * ((y1 + y2) - betaq(1.0 + 2.0 * (y1 - bounds.lo) / spread) * spread);
        auto c2 = 0.5 * ((y1 + y2) + betaq(1.0 + 2.0 * (bounds.hi - y2) / spread) * spread);
        c1 = bounds.clamp(c1);
        c2 = bounds.clamp(c2);
        if (uniform(rng) < 0.5) { std::swap(c1, c2); }
        return { c1, c2 };
    }

    /// Bounded polynomial mutation of one coordinate.
    inline auto polynomial_mutation(double y, Interval bounds, double eta, Rng& rng) -> double
    {
        auto const width = bounds.width();
        auto const d1 = (y - bounds.lo) / width;
        auto const d2 = (bounds.hi - y) / width;
        auto const u = uniform(rng);
        auto const power = 1.0 / (eta + 1.0);
        double deltaq = 0.0;
        if (u < 0.5) {
            auto const val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
            deltaq = std::pow(val, power) - 1.0;
        } else {
            auto const val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, power);
        }
        return bounds.clamp(y + deltaq * width);
    }

} // namespace detail

/// SBX-style recombination followed by polynomial mutation. Offspring are
/// clamped to `bounds`; coordinates with a degenerate interval never move.
[[nodiscard]] inline auto variation(StrategyProfile const& first, StrategyProfile const& second, std::span<Interval const> bounds,
                                    DetectionConfig const& cfg, Rng& rng) -> std::pair<StrategyProfile, StrategyProfile>
{
    auto a = first;
    auto b = second;
    auto const dims = a.size();
    if (detail::uniform(rng) < cfg.crossover_rate) {
        for (std::size_t k = 0; k < dims; ++k) {
            if (detail::uniform(rng) >= 0.5) { continue; }
            if (std::abs(a[k] - b[k]) <= 1e-14 || bounds[k].width() <= 0.0) { continue; }
            std::tie(a[k], b[k]) = detail::sbx(a[k], b[k], bounds[k], cfg.crossover_distribution_index, rng);
        }
    }
    auto const rate = cfg.effective_mutation_rate(dims);
    for (auto* child : { &a, &b }) {
        for (std::size_t k = 0; k < dims; ++k) {
            if (detail::uniform(rng) < rate && bounds[k].width() > 0.0) {
                (*child)[k] = detail::polynomial_mutation((*child)[k], bounds[k], cfg.mutation_distribution_index, rng);
            }
        }
    }
    for (std::size_t k = 0; k < dims; ++k) {
        a[k] = bounds[k].clamp(a[k]);
        b[k] = bounds[k].clamp(b[k]);
    }
    return { std::move(a), std::move(b) };
}

/// Raw outcome of a detector run over an arbitrary payoff model.
struct DetectionRun {
    std::vector<Individual> population;
    /// Indices into `population` of the final rank-0 front.
    Front front;
    std::vector<GenerationRecord> trace;
    std::optional<std::size_t> converged_generation;
    std::size_t generations { 0 };
};

namespace detail {

    template <PayoffModel M>
    auto evaluate_checked(M const& model, StrategyProfile profile) -> Individual
    {
        Individual ind;
        ind.payoffs = model.payoffs(profile);
        for (auto v : ind.payoffs) {
            if (!std::isfinite(v)) { throw NumericFailure("non-finite payoff encountered", model.expand(profile)); }
        }
        ind.profile = std::move(profile);
        return ind;
    }

    /// Ranks and crowds `pop` in place; returns the fronts.
    template <PayoffModel M>
    auto rank_population(M const& model, DominanceKind const& kind, std::vector<Individual>& pop) -> std::vector<Front>
    {
        auto fronts = nondominated_sort(model, kind, std::span<Individual const>(pop));
        for (std::size_t r = 0; r < fronts.size(); ++r) {
            std::vector<PayoffVector> u;
            u.reserve(fronts[r].size());
            for (auto i : fronts[r]) { u.push_back(pop[i].payoffs); }
            auto const d = crowding_distance(std::span<PayoffVector const>(u));
            for (std::size_t k = 0; k < fronts[r].size(); ++k) {
                pop[fronts[r][k]].rank = r;
                pop[fronts[r][k]].crowding = d[k];
            }
        }
        return fronts;
    }

    inline auto better(Individual const& a, Individual const& b) -> bool
    {
        if (a.rank != b.rank) { return a.rank < b.rank; }
        return a.crowding > b.crowding;
    }

    template <PayoffModel M>
    auto record(M const& model, std::vector<Individual> const& pop, Front const& front, std::size_t generation,
                GenerationRecord const* previous) -> GenerationRecord
    {
        GenerationRecord rec;
        rec.generation = generation;
        rec.front_size = front.size();
        rec.centroid = StrategyProfile(model.expand(pop[front.front()].profile).size(), 0.0);
        rec.payoff_centroid = PayoffVector(model.players(), 0.0);
        for (auto i : front) {
            auto const full = model.expand(pop[i].profile);
            for (std::size_t k = 0; k < full.size(); ++k) { rec.centroid[k] += full[k]; }
            for (std::size_t k = 0; k < pop[i].payoffs.size(); ++k) { rec.payoff_centroid[k] += pop[i].payoffs[k]; }
        }
        auto const count = static_cast<double>(front.size());
        for (auto& c : rec.centroid) { c /= count; }
        for (auto& c : rec.payoff_centroid) { c /= count; }
        if (previous != nullptr) {
            double sq = 0.0;
            for (std::size_t k = 0; k < rec.centroid.size(); ++k) {
                auto const d = rec.centroid[k] - previous->centroid[k];
                sq += d * d;
            }
            rec.movement = std::sqrt(sq);
        }
        return rec;
    }

} // namespace detail

/// Called after every generation (0 is the initial population) with the
/// ranked population.
using GenerationObserver = std::function<void(std::size_t, std::span<Individual const>)>;

/// NSGA-II-style search for the non-dominated set of `kind` over `model`.
///
/// Binary tournament on (rank, crowding), SBX + polynomial mutation, and
/// (mu + lambda) elitist replacement. Deterministic for a fixed seed.
template <PayoffModel M>
[[nodiscard]] auto evolve(M const& model, DominanceKind const& kind, DetectionConfig const& cfg, GenerationObserver const& observer = { })
    -> DetectionRun
{
    cfg.validate();
    check_relation(model, kind);

    auto const dims = model.dimensions();
    std::vector<Interval> bounds;
    for (std::size_t k = 0; k < dims; ++k) { bounds.push_back(model.bounds(k)); }

    Rng rng(cfg.seed);
    auto const size = cfg.population_size;

    std::vector<Individual> pop;
    pop.reserve(2 * size);
    for (std::size_t i = 0; i < size; ++i) {
        StrategyProfile s(dims);
        for (std::size_t k = 0; k < dims; ++k) {
            s[k] = bounds[k].lo + detail::uniform(rng) * bounds[k].width();
        }
        pop.push_back(detail::evaluate_checked(model, std::move(s)));
    }

    DetectionRun run;
    auto fronts = detail::rank_population(model, kind, pop);
    run.trace.push_back(detail::record(model, pop, fronts.front(), 0, nullptr));
    if (observer) { observer(0, pop); }

    std::size_t calm = 0;
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    auto tournament = [&]() -> Individual const& {
        auto const a = pick(rng);
        auto const b = pick(rng);
        return detail::better(pop[b], pop[a]) ? pop[b] : pop[a];
    };

    for (std::size_t gen = 1; gen <= cfg.max_generations; ++gen) {
        std::vector<Individual> merged = pop;
        while (merged.size() < 2 * size) {
            auto const& p1 = tournament();
            auto const& p2 = tournament();
            auto [c1, c2] = variation(p1.profile, p2.profile, bounds, cfg, rng);
            merged.push_back(detail::evaluate_checked(model, std::move(c1)));
            merged.push_back(detail::evaluate_checked(model, std::move(c2)));
        }

        auto merged_fronts = detail::rank_population(model, kind, merged);
        std::vector<Individual> next;
        next.reserve(2 * size);
        Front next_front;
        for (auto& front : merged_fronts) {
            if (next.size() == size) { break; }
            if (next.size() + front.size() > size) {
                std::stable_sort(front.begin(), front.end(), [&](auto a, auto b) { return merged[a].crowding > merged[b].crowding; });
                front.resize(size - next.size());
            }
            for (auto i : front) {
                if (merged[i].rank == 0) { next_front.push_back(next.size()); }
                next.push_back(merged[i]);
            }
        }
        pop = std::move(next);

        run.trace.push_back(detail::record(model, pop, next_front, gen, &run.trace.back()));
        run.generations = gen;
        if (observer) { observer(gen, pop); }
        calm = run.trace.back().movement < cfg.convergence_tol ? calm + 1 : 0;
        if (calm >= cfg.convergence_window && !run.converged_generation) {
            run.converged_generation = gen;
            if (cfg.stop_on_convergence) { break; }
        }
    }

    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (pop[i].rank == 0) { run.front.push_back(i); }
    }
    run.population = std::move(pop);
    return run;
}

/// Detects the non-dominated set of `kind` for `spec` and packages the
/// rank-0 front as a report. Stackelberg games are searched through the
/// leader view unless the config selects simultaneous mode.
[[nodiscard]] inline auto evolve(GameSpec const& spec, DominanceKind const& kind, DetectionConfig const& cfg) -> EquilibriumReport
{
    auto package = [&](auto const& model) {
        auto run = evolve(model, kind, cfg);
        EquilibriumReport report { spec };
        report.relation = kind;
        report.source = Source::Evolve;
        report.seed = cfg.seed;
        report.config = cfg;
        report.trace = std::move(run.trace);
        report.converged_generation = run.converged_generation;
        report.generations = run.generations;
        report.label = describe(kind);

        std::vector<StrategyProfile> profiles;
        for (auto i : run.front) { profiles.push_back(model.expand(run.population[i].profile)); }
        std::sort(profiles.begin(), profiles.end(), [](auto const& a, auto const& b) { return a.values() < b.values(); });
        profiles.erase(std::unique(profiles.begin(), profiles.end()), profiles.end());
        for (auto& p : profiles) {
            report.payoffs.push_back(payoffs(spec, p));
            report.profiles.push_back(std::move(p));
        }
        return report;
    };

    if (spec.kind() == GameKind::Stackelberg && cfg.stackelberg_mode == StackelbergMode::BilevelFollowerBR) {
        return package(StackelbergLeaderView(spec));
    }
    return package(SimultaneousGame(spec));
}

} // namespace tvws

#endif

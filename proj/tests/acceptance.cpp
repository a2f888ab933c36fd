// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "test_oracles.hpp"
#include "tvws/tvws.hpp"

namespace {

using namespace tvws;

struct Outcome {
    bool pass;
    std::string detail;
};

auto fmt(char const* f, auto... args) -> std::string
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

auto dist(std::span<double const> a, std::span<double const> b) -> double
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) { s += (a[i] - b[i]) * (a[i] - b[i]); }
    return std::sqrt(s);
}

auto max_norm(StrategyProfile const& a, StrategyProfile const& b) -> double
{
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) { d = std::max(d, std::abs(a[i] - b[i])); }
    return d;
}

auto round2(double v) -> double { return std::round(v * 100.0) / 100.0; }

auto front_centroid(EquilibriumReport const& r) -> std::pair<StrategyProfile, PayoffVector>
{
    auto const n = r.game.players();
    StrategyProfile c(n);
    PayoffVector u(n);
    for (std::size_t k = 0; k < r.profiles.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            c[i] += r.profiles[k][i] / static_cast<double>(r.profiles.size());
            u[i] += r.payoffs[k][i] / static_cast<double>(r.profiles.size());
        }
    }
    return { c, u };
}

auto const cournot = GameSpec::cournot(2, 10, 1);
auto const nn = RationalityProfile::parse("NN");

auto criterion1() -> Outcome
{
    auto const ne = cournot_nash(cournot);
    auto const u = payoffs(cournot, ne);
    bool const ok = ne == StrategyProfile { 3, 3 } && u == PayoffVector { 9, 9 }
                    && testing::ref_cournot(3, 3, 10, 1) == 9.0;
    return { ok, fmt("NE (%.17g, %.17g), payoffs (%.17g, %.17g)", ne[0], ne[1], u[0], u[1]) };
}

auto criterion2() -> Outcome
{
    int good = 0;
    int converged = 0;
    int accurate = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        DetectionConfig cfg;
        cfg.population_size = 100;
        cfg.seed = seed;
        auto const report = evolve(cournot, JointNashPareto { nn }, cfg);
        auto const [c, u] = front_centroid(report);
        bool const near = dist(c.span(), StrategyProfile { 3, 3 }.span()) <= 0.1 && dist(u.span(), PayoffVector { 9, 9 }.span()) <= 0.2;
        bool const fast = report.converged_generation && *report.converged_generation <= 20;
        accurate += near ? 1 : 0;
        converged += fast ? 1 : 0;
        good += near && fast ? 1 : 0;
    }
    return { good >= 95, fmt("%d/100 seeds pass (accurate %d/100, converged within 20 generations %d/100; need 95)", good, accurate,
                             converged) };
}

auto criterion3() -> Outcome
{
    std::size_t checked = 0;
    std::size_t bad = 0;
    double worst_line = 0;
    double worst_box = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        DetectionConfig cfg;
        cfg.seed = seed;
        auto const report = evolve(cournot, ParetoDominance { }, cfg);
        for (std::size_t k = 0; k < report.profiles.size(); ++k) {
            auto const& c = report.profiles[k];
            auto const sum = report.payoffs[k][0] + report.payoffs[k][1];
            auto const line = std::abs(c[0] + c[1] - 4.5);
            auto const box = std::max({ 0.0, -0.05 - c[0], -0.05 - c[1], c[0] - 4.55, c[1] - 4.55 });
            worst_line = std::max(worst_line, line);
            worst_box = std::max(worst_box, box);
            ++checked;
            if (box > 0 || line > 0.1 || !(sum > 18.0 && sum <= 20.35)) { ++bad; }
        }
    }
    return { bad == 0 && checked > 0, fmt("%zu/%zu front profiles violate (worst |c1+c2-4.5| = %.3f, worst box excess = %.3f)", bad,
                                          checked, worst_line, worst_box) };
}

auto criterion4() -> Outcome
{
    auto const g = GameSpec::stackelberg(10, 1);
    auto const s = stackelberg_equilibrium(g);
    auto const u = payoffs(g, s);
    bool const ok = s == StrategyProfile { 4.5, 2.25 } && u == PayoffVector { 10.125, 5.0625 } && round2(u[0]) == 10.13
                    && round2(u[1]) == 5.06;
    return { ok, fmt("(%.6g, %.6g) payoffs (%.6g, %.6g), rounded (%.2f, %.2f)", s[0], s[1], u[0], u[1], round2(u[0]), round2(u[1])) };
}

auto criterion5() -> Outcome
{
    auto const g = GameSpec::bertrand(10, 1);
    auto const p = bertrand_nash(g);
    auto const u = payoffs(g, p);
    auto const grid = brute_force_nash(g, Grid::over(g, 0.5), 1e-9);
    bool const in_grid = std::find(grid.begin(), grid.end(), StrategyProfile { 1, 1 }) != grid.end();
    bool const ok = p == StrategyProfile { 1, 1 } && u == PayoffVector { 0, 0 } && in_grid;
    return { ok, fmt("NE (%.6g, %.6g) payoffs (%.6g, %.6g); grid oracle %s (1, 1)", p[0], p[1], u[0], u[1],
                     in_grid ? "includes" : "misses") };
}

auto criterion6() -> Outcome
{
    double const step = 0.25;
    auto const oracle = brute_force_nash(cournot, Grid::over(cournot, step), 1e-9);
    double worst_oracle = 0;
    for (auto const& p : oracle) { worst_oracle = std::max(worst_oracle, max_norm(p, { 3, 3 })); }
    double worst_front = 0;
    std::size_t front = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        DetectionConfig cfg;
        cfg.seed = seed;
        auto const report = evolve(cournot, JointNashPareto { nn }, cfg);
        for (auto const& p : report.profiles) {
            double nearest = std::numeric_limits<double>::infinity();
            for (auto const& q : oracle) { nearest = std::min(nearest, max_norm(p, q)); }
            worst_front = std::max(worst_front, nearest);
            ++front;
        }
    }
    bool const ok = !oracle.empty() && worst_oracle <= step + 1e-12 && worst_front <= step + 1e-12;
    return { ok, fmt("%zu oracle profiles, farthest %.3f from (3,3); %zu evolved profiles, farthest %.4f from the oracle set", oracle.size(),
                     worst_oracle, front, worst_front) };
}

auto criterion7() -> Outcome
{
    auto const e1 = relative_efficiency(cournot, nn, { 3, 3 }, { 4, 4 });
    auto const e2 = relative_efficiency(cournot, nn, { 4, 4 }, { 3, 3 });
    auto const r1 = testing::ref_cournot_efficiency({ true, true }, { 3, 3 }, { 4, 4 }).total();
    auto const r2 = testing::ref_cournot_efficiency({ true, true }, { 4, 4 }, { 3, 3 }).total();
    bool const ok = e1 == 0 && e2 == 2 && r1 == 0 && r2 == 2;
    return { ok, fmt("E((3,3),(4,4)) = %d, E((4,4),(3,3)) = %d", static_cast<int>(e1), static_cast<int>(e2)) };
}

auto criterion8() -> Outcome
{
    auto const np = RationalityProfile::parse("NP");
    auto const pn = RationalityProfile::parse("PN");
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0, 10);
    int exceptions = 0;
    int dominated = 0;
    for (int t = 0; t < 1000; ++t) {
        StrategyProfile const y { u(rng), u(rng) };
        StrategyProfile const x { u(rng), u(rng) };
        auto const a = np_dominates(cournot, np, y, x);
        auto const b = np_dominates(cournot, pn, { y[1], y[0] }, { x[1], x[0] });
        dominated += a ? 1 : 0;
        exceptions += a != b ? 1 : 0;
    }
    return { exceptions == 0, fmt("%d exceptions over 1000 pairs (%d dominated)", exceptions, dominated) };
}

auto criterion9() -> Outcome
{
    auto const g = GameSpec::cournot(2, 100, 1);
    auto const target = cournot_nash(g);
    int good = 0;
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        DetectionConfig cfg;
        cfg.seed = seed;
        cfg.max_generations = 50;
        auto const report = evolve(g, JointNashPareto { nn }, cfg);
        auto const [c, u] = front_centroid(report);
        auto const d = dist(c.span(), target.span());
        worst = std::max(worst, d);
        good += d <= 1.0 && report.generations <= 50 ? 1 : 0;
    }
    return { good == 20, fmt("%d/20 seeds within 1.0 of (%.0f, %.0f) in <= 50 generations (worst %.3f)", good, target[0], target[1], worst) };
}

auto criterion10() -> Outcome
{
    std::vector<DominanceKind> const relations {
        ParetoDominance { },
        JointNashPareto { nn },
        JointNashPareto { RationalityProfile::parse("NP") },
        JointNashPareto { RationalityProfile::parse("PN") },
        JointNashPareto { RationalityProfile::parse("PP") },
    };
    std::string detail;
    bool ok = true;
    for (auto kind : { GameKind::Cournot, GameKind::Stackelberg, GameKind::Bertrand }) {
        GameSpec const g { kind, 2, 10, 1 };
        SimultaneousGame const model(g);
        std::mt19937_64 rng(10);
        std::uniform_real_distribution<double> u(0, 10);
        std::uniform_int_distribution<int> lattice(0, 20);
        auto random_eval = [&] {
            StrategyProfile s { u(rng), u(rng) };
            return Evaluated { s, model.payoffs(s) };
        };
        auto lattice_eval = [&] {
            StrategyProfile s { lattice(rng) * 0.5, lattice(rng) * 0.5 };
            return Evaluated { s, model.payoffs(s) };
        };
        std::size_t failures = 0;
        std::size_t chains = 0;
        for (int t = 0; t < 10000; ++t) {
            auto const a = random_eval();
            auto const b = random_eval();
            for (auto const& rel : relations) {
                if (dominates(model, rel, a, a)) { ++failures; }
            }
            if (pareto_dominates(a.payoffs, b.payoffs) && pareto_dominates(b.payoffs, a.payoffs)) { ++failures; }
            auto const x = lattice_eval();
            auto const y = lattice_eval();
            auto const z = lattice_eval();
            if (pareto_dominates(x.payoffs, y.payoffs) && pareto_dominates(y.payoffs, z.payoffs)) {
                ++chains;
                if (!pareto_dominates(x.payoffs, z.payoffs)) { ++failures; }
            }
        }

        // Detector fronts: every ordered pair of front members, across relations and seeds.
        std::size_t pairs = 0;
        std::uint64_t seed = 1;
        while (pairs < 10000) {
            for (auto const& rel : relations) {
                DetectionConfig cfg;
                cfg.seed = seed;
                auto check = [&](auto const& m) {
                    auto const run = evolve(m, rel, cfg);
                    for (auto i : run.front) {
                        for (auto j : run.front) {
                            ++pairs;
                            if (dominates(m, rel, run.population[i], run.population[j])) { ++failures; }
                        }
                    }
                };
                if (kind == GameKind::Stackelberg) {
                    check(StackelbergLeaderView(g));
                } else {
                    check(model);
                }
            }
            ++seed;
        }
        ok = ok && failures == 0 && chains > 0;
        detail += fmt("%s: %zu violations (%zu chains, %zu front pairs); ", std::string(to_string(kind)).c_str(), failures, chains, pairs);
    }
    detail.erase(detail.size() - 2);
    return { ok, detail };
}

} // namespace

int main()
{
    std::vector<std::pair<char const*, std::function<Outcome()>>> const criteria {
        { "Cournot closed form", criterion1 },
        { "Cournot all-Nash detection, 95/100 seeds within 20 generations", criterion2 },
        { "Cournot Pareto front on c1 + c2 = 4.5", criterion3 },
        { "Stackelberg closed form", criterion4 },
        { "Bertrand closed form and grid oracle", criterion5 },
        { "grid oracle and detector agree within one step", criterion6 },
        { "relative efficiency unit values", criterion7 },
        { "NP/PN swap symmetry", criterion8 },
        { "W = 100 Cournot detection within 50 generations", criterion9 },
        { "dominance laws and front mutual non-domination", criterion10 },
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome result { false, "" };
        try {
            result = criteria[i].second();
        } catch (std::exception const& e) {
            result = { false, std::string("exception: ") + e.what() };
        }
        failed += result.pass ? 0 : 1;
        std::printf("%s criterion %2zu: %s -- %s\n", result.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, result.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "test_oracles.hpp"
#include "tvws/equilibria.hpp"

namespace tvws {
namespace {

auto const cournot = GameSpec::cournot(2, 10, 1);
auto const nn = RationalityProfile::parse("NN");
auto const np = RationalityProfile::parse("NP");
auto const pn = RationalityProfile::parse("PN");
auto const pp = RationalityProfile::parse("PP");

auto random_profile(std::mt19937_64& rng, GameSpec const& g) -> StrategyProfile
{
    StrategyProfile s(g.players());
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = std::uniform_real_distribution<double>(g.bounds(i).lo, g.bounds(i).hi)(rng);
    }
    return s;
}

auto swap(StrategyProfile const& s) -> StrategyProfile { return { s[1], s[0] }; }

TEST(RationalityProfile, ParsesAndPartitions)
{
    auto const r = RationalityProfile::parse("NPN");
    EXPECT_EQ(r.size(), 3u);
    EXPECT_EQ(r.nash_players(), (std::vector<std::size_t> { 0, 2 }));
    EXPECT_EQ(r.pareto_players(), (std::vector<std::size_t> { 1 }));
    EXPECT_EQ(r.to_string(), "NPN");
    EXPECT_THROW(RationalityProfile::parse("NX"), InvalidInput);
    EXPECT_THROW(RationalityProfile::parse(""), InvalidInput);
}

TEST(UnilateralDeviation, Examples)
{
    EXPECT_DOUBLE_EQ(unilateral_deviation_payoff(cournot, { 3, 3 }, 0, 4), 8);
    EXPECT_DOUBLE_EQ(cournot_payoff(cournot, { 4, 3 }, 0), 8);
    EXPECT_DOUBLE_EQ(unilateral_deviation_payoff(cournot, { 3, 3 }, 0, 3), cournot_payoff(cournot, { 3, 3 }, 0));
    auto const bertrand = GameSpec::bertrand(10, 1);
    EXPECT_DOUBLE_EQ(unilateral_deviation_payoff(bertrand, { 1, 1 }, 0, 0.5), (0.5 - 1) * (10 - 0.5));
    EXPECT_DOUBLE_EQ(unilateral_deviation_payoff(bertrand, { 1, 1 }, 0, 0.5), -4.75);
    EXPECT_THROW((void)unilateral_deviation_payoff(cournot, { 3, 3 }, 0, 10.5), InvalidInput);
}

TEST(ParetoDominates, Examples)
{
    EXPECT_TRUE(pareto_dominates(cournot, { 2.25, 2.25 }, { 2, 2 }));
    EXPECT_FALSE(pareto_dominates(cournot, { 2, 2 }, { 2, 2 }));
    EXPECT_FALSE(pareto_dominates(cournot, { 3, 3 }, { 2.25, 2.25 }));
    EXPECT_TRUE(pareto_dominates(cournot, { 2.25, 2.25 }, { 3, 3 }));
}

TEST(RelativeEfficiency, Examples)
{
    EXPECT_EQ(relative_efficiency(cournot, nn, { 3, 3 }, { 4, 4 }), 0u);
    EXPECT_EQ(relative_efficiency(cournot, nn, { 4, 4 }, { 3, 3 }), 2u);
    EXPECT_EQ(testing::ref_cournot_efficiency({ true, true }, { 3, 3 }, { 4, 4 }).total(), 0);
    EXPECT_EQ(testing::ref_cournot_efficiency({ true, true }, { 4, 4 }, { 3, 3 }).total(), 2);
    for (auto const& r : { nn, np, pn, pp }) {
        EXPECT_EQ(relative_efficiency(cournot, r, { 1.7, 6.2 }, { 1.7, 6.2 }), 0u);
    }
}

TEST(RelativeEfficiency, MatchesTermByTermReference)
{
    std::mt19937_64 rng(17);
    std::array<std::pair<RationalityProfile, std::array<bool, 2>>, 4> const cases { {
        { nn, { true, true } }, { np, { true, false } }, { pn, { false, true } }, { pp, { false, false } } } };
    for (int t = 0; t < 5000; ++t) {
        auto const y = random_profile(rng, cournot);
        auto x = random_profile(rng, cournot);
        if (t % 5 == 0) { x[0] = y[0]; } // exercise the x_i == y_i exclusion
        for (auto const& [r, mask] : cases) {
            auto const ref = testing::ref_cournot_efficiency(mask, { y[0], y[1] }, { x[0], x[1] });
            EXPECT_EQ(relative_efficiency(cournot, r, y, x), static_cast<std::size_t>(ref.total()));
        }
        // All-Nash has no Pareto term and all-Pareto has no Nash term.
        EXPECT_EQ(testing::ref_cournot_efficiency({ true, true }, { y[0], y[1] }, { x[0], x[1] }).pareto_term, 0);
        EXPECT_EQ(testing::ref_cournot_efficiency({ false, false }, { y[0], y[1] }, { x[0], x[1] }).nash_term, 0);
    }
}

TEST(RelativeEfficiency, WeakInequalityCountsEqualPayoffDeviations)
{
    auto const bertrand = GameSpec::bertrand(10, 1);
    // From (1,1) a move to 2 earns 0 = u_1(1,1); the weak comparison counts it.
    EXPECT_EQ(relative_efficiency(bertrand, nn, { 1, 1 }, { 2, 2 }), 2u);
    SimultaneousGame const model(bertrand);
    Evaluated const y { { 1, 1 }, model.payoffs({ 1, 1 }) };
    Evaluated const x { { 2, 2 }, model.payoffs({ 2, 2 }) };
    EXPECT_EQ(relative_efficiency(model, nn, y, x, 0.0, true), 0u);
}

TEST(RelativeEfficiency, RejectsMismatchedRationality)
{
    EXPECT_THROW((void)relative_efficiency(cournot, RationalityProfile::parse("NNN"), { 3, 3 }, { 4, 4 }), InvalidInput);
}

TEST(NpDominates, Examples)
{
    EXPECT_TRUE(np_dominates(cournot, nn, { 3, 3 }, { 4, 4 }));
    EXPECT_FALSE(np_dominates(cournot, nn, { 4, 4 }, { 3, 3 }));
    EXPECT_FALSE(np_dominates(cournot, nn, { 2.5, 7 }, { 2.5, 7 }));
}

TEST(NpDominates, NashEquilibriumIsNeverDominatedOnGrid)
{
    for (int a = 0; a <= 100; ++a) {
        for (int b = 0; b <= 100; ++b) {
            StrategyProfile const x { a * 0.1, b * 0.1 };
            EXPECT_FALSE(np_dominates(cournot, nn, x, { 3, 3 })) << x[0] << "," << x[1];
        }
    }
}

TEST(NpDominates, NashParetoMirrorsParetoNash)
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 1000; ++t) {
        auto const y = random_profile(rng, cournot);
        auto const x = random_profile(rng, cournot);
        EXPECT_EQ(np_dominates(cournot, np, y, x), np_dominates(cournot, pn, swap(y), swap(x)));
    }
}

class DominanceLaws : public ::testing::TestWithParam<GameKind> { };

TEST_P(DominanceLaws, HoldOnRandomInstances)
{
    GameSpec const g { GetParam(), 2, 10, 1 };
    SimultaneousGame const model(g);
    std::mt19937_64 rng(29);
    std::vector<DominanceKind> const relations { ParetoDominance { }, JointNashPareto { nn }, JointNashPareto { np },
                                                 JointNashPareto { pn }, JointNashPareto { pp } };
    for (int t = 0; t < 10000; ++t) {
        auto eval = [&](StrategyProfile s) { return Evaluated { s, model.payoffs(s) }; };
        auto const a = eval(random_profile(rng, g));
        auto const b = eval(random_profile(rng, g));
        auto const c = eval(random_profile(rng, g));
        for (auto const& rel : relations) {
            EXPECT_FALSE(dominates(model, rel, a, a));
            EXPECT_FALSE(dominates(model, rel, a, b) && dominates(model, rel, b, a));
        }
        if (pareto_dominates(a.payoffs, b.payoffs) && pareto_dominates(b.payoffs, c.payoffs)) {
            EXPECT_TRUE(pareto_dominates(a.payoffs, c.payoffs));
        }
    }
}

TEST_P(DominanceLaws, ParetoTransitiveOnLatticeChains)
{
    // Random continuous triples rarely form chains; a coarse lattice does.
    GameSpec const g { GetParam(), 2, 10, 1 };
    std::vector<PayoffVector> u;
    for (int a = 0; a <= 20; ++a) {
        for (int b = 0; b <= 20; ++b) { u.push_back(payoffs(g, { a * 0.5, b * 0.5 })); }
    }
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    int chains = 0;
    for (int t = 0; t < 10000; ++t) {
        auto const& a = u[pick(rng)];
        auto const& b = u[pick(rng)];
        auto const& c = u[pick(rng)];
        if (pareto_dominates(a, b) && pareto_dominates(b, c)) {
            ++chains;
            EXPECT_TRUE(pareto_dominates(a, c));
        }
    }
    EXPECT_GT(chains, 0);
}

INSTANTIATE_TEST_SUITE_P(AllGames, DominanceLaws, ::testing::Values(GameKind::Cournot, GameKind::Stackelberg, GameKind::Bertrand),
                         [](auto const& info) { return std::string(to_string(info.param)); });

TEST(NondominatedFilter, ParetoExampleResolvedByBruteForce)
{
    std::vector<StrategyProfile> const set { { 2.25, 2.25 }, { 2, 2 }, { 3, 3 } };
    // Oracle: u = (10.125, 10.125), (10, 10), (9, 9); the first dominates both others.
    EXPECT_DOUBLE_EQ(testing::ref_cournot(2.25, 2.25, 10, 1), 10.125);
    EXPECT_DOUBLE_EQ(testing::ref_cournot(2, 2, 10, 1), 10);
    EXPECT_DOUBLE_EQ(testing::ref_cournot(3, 3, 10, 1), 9);
    EXPECT_EQ(nondominated_filter(cournot, ParetoDominance { }, set), (std::vector<StrategyProfile> { { 2.25, 2.25 } }));
}

TEST(NondominatedFilter, SingletonAndEmpty)
{
    std::vector<StrategyProfile> const one { { 1, 2 } };
    EXPECT_EQ(nondominated_filter(cournot, ParetoDominance { }, one), one);
    EXPECT_THROW((void)nondominated_filter(cournot, ParetoDominance { }, { }), InvalidInput);
}

TEST(NondominatedFilter, AllNashKeepsEquilibrium)
{
    std::vector<StrategyProfile> const set { { 3, 3 }, { 4, 4 }, { 2, 2 } };
    for (auto const& z : set) { EXPECT_EQ(testing::ref_cournot_efficiency({ true, true }, { 3, 3 }, { z[0], z[1] }).total(), 0); }
    auto const kept = nondominated_filter(cournot, JointNashPareto { nn }, set);
    EXPECT_NE(std::find(kept.begin(), kept.end(), StrategyProfile { 3, 3 }), kept.end());
}

TEST(NondominatedFilter, PreservesInputOrder)
{
    std::vector<StrategyProfile> const set { { 0, 4.5 }, { 2, 2 }, { 4.5, 0 }, { 2.25, 2.25 } };
    EXPECT_EQ(nondominated_filter(cournot, ParetoDominance { }, set),
              (std::vector<StrategyProfile> { { 0, 4.5 }, { 4.5, 0 }, { 2.25, 2.25 } }));
}

} // namespace
} // namespace tvws

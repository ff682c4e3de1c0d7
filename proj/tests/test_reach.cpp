#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "wlg/errors.hpp"
#include "wlg/oracle.hpp"
#include "wlg/reach.hpp"
#include "wlg/verify.hpp"

using namespace wlg;
using fixtures::at;
using fixtures::R;

namespace {

struct Sample {
    ProductArena p;
    VertexSet goal;
};

// Random product with a random goal set, so that goal sets other than F are covered.
Sample sample(std::uint64_t seed, std::mt19937_64& rng) {
    GenParams params;
    params.seed = seed;
    auto [a, d] = gen_random_instance(params);
    ProductArena p = build_product(a, d);
    VertexSet goal = p.goal();
    if (seed % 2 == 1) {
        std::bernoulli_distribution coin(0.25);
        for (std::size_t v = 0; v < goal.size(); ++v) {
            goal[v] = coin(rng);
        }
    }
    return {std::move(p), std::move(goal)};
}

} // namespace

TEST_CASE("reach_step on G1 and G2") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const GameGraph& g = p.graph();
    const Ranking r1 = reach_step(g, p.goal(), Ranking(4, kInfinity));
    CHECK(r1[at(p, "v0", "q0")] == kInfinity);
    CHECK(r1[at(p, "v0", "qb")] == R(0));
    CHECK(r1[at(p, "v1", "q0")] == kInfinity);
    CHECK(r1[at(p, "v1", "qb")] == R(0));
    const Ranking r2 = reach_step(g, p.goal(), r1);
    CHECK(r2[at(p, "v0", "q0")] == R(2));
    CHECK(r2[at(p, "v0", "qb")] == R(0));
    CHECK(r2[at(p, "v1", "q0")] == kInfinity);
    CHECK(r2[at(p, "v1", "qb")] == R(0));

    const ProductArena p2 = fixtures::product(fixtures::g2());
    Ranking r(p2.num_vertices(), kInfinity);
    for (VertexIndex v = 0; v < r.size(); ++v) {
        if (p2.is_goal(v)) {
            r[v] = R(0);
        }
    }
    CHECK(reach_step(p2.graph(), p2.goal(), r)[at(p2, "v0", "q0")] == R(4));
}

TEST_CASE("reach_fixpoint on G1 with goal (v1,qb)") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const VertexSet goal = fixtures::only(4, {at(p, "v1", "qb")});
    const ReachSolution sol = reach_fixpoint(p, goal);
    CHECK(sol.ranks[at(p, "v1", "qb")] == R(0));
    CHECK(sol.ranks[at(p, "v0", "q0")] == R(2));
    CHECK(sol.ranks[at(p, "v0", "qb")] == R(2));
    CHECK(sol.ranks[at(p, "v1", "q0")] == R(5));
    CHECK(sol.settling[at(p, "v1", "qb")] == 1);
    CHECK(sol.settling[at(p, "v0", "q0")] == 2);
    CHECK(sol.settling[at(p, "v0", "qb")] == 2);
    CHECK(sol.settling[at(p, "v1", "q0")] == 3);
    CHECK(sol.iterations == 3);
    CHECK(sol.ranks == oracle_reach_value(p.graph(), goal));
}

TEST_CASE("reach_fixpoint on G1 with goal F") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const ReachSolution sol = reach_fixpoint(p, p.goal());
    CHECK(sol.ranks[at(p, "v0", "q0")] == R(2));
    CHECK(sol.ranks[at(p, "v0", "qb")] == R(0));
    CHECK(sol.ranks[at(p, "v1", "q0")] == R(5));
    CHECK(sol.ranks[at(p, "v1", "qb")] == R(0));
    CHECK(sol.iterations == 3);
    CHECK(sol.ranks == oracle_reach_value(p.graph(), p.goal()));
}

TEST_CASE("reach_fixpoint on the single-vertex arena") {
    const ProductArena p = fixtures::product(fixtures::ginf());
    const ReachSolution sol = reach_fixpoint(p, p.goal());
    // A goal vertex is ranked 0 and settles at the first application.
    CHECK(sol.ranks[at(p, "v0", "qb")] == R(0));
    CHECK(sol.settling[at(p, "v0", "qb")] == 1);
    CHECK(sol.ranks[at(p, "v0", "q0")] == kInfinity);
    CHECK(sol.settling[at(p, "v0", "q0")] == 0);
    CHECK(sol.iterations == 1);
}

TEST_CASE("reach_fixpoint with an empty goal") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const ReachSolution sol = reach_fixpoint(p, VertexSet(4, false));
    CHECK(sol.ranks == Ranking(4, kInfinity));
    CHECK(sol.settling == std::vector<std::size_t>(4, 0));
    CHECK(sol.iterations == 0);
}

TEST_CASE("complete_ranking") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const ReachSolution sol = reach_fixpoint(p, p.goal());
    const Ranking c = complete_ranking(p.graph(), p.goal(), sol.ranks);
    CHECK(c[at(p, "v1", "qb")] == R(5));
    CHECK(c[at(p, "v0", "qb")] == R(2));
    CHECK(c[at(p, "v0", "q0")] == sol.ranks[at(p, "v0", "q0")]);
    CHECK(c[at(p, "v1", "q0")] == sol.ranks[at(p, "v1", "q0")]);
    CHECK(complete_ranking(p.graph(), VertexSet(4, false), sol.ranks) == sol.ranks);

    const ProductArena p2 = fixtures::product(fixtures::g2());
    const ReachSolution sol2 = reach_fixpoint(p2, p2.goal());
    const Ranking c2 = complete_ranking(p2.graph(), p2.goal(), sol2.ranks);
    CHECK(c2[at(p2, "v1", "qb")] == R(4));
    CHECK(c2[at(p2, "v2", "qb")] == R(4));
    CHECK(c2[at(p2, "v0", "qb")] == R(4));
}

TEST_CASE("optimal_successor") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const ReachSolution sol = reach_fixpoint(p, p.goal());
    CHECK(optimal_successor(p.graph(), at(p, "v0", "q0"), sol.ranks, R(2), false, &sol.settling) ==
          at(p, "v1", "qb"));
    CHECK_THROWS_AS(optimal_successor(p.graph(), at(p, "v0", "q0"), sol.ranks, R(3), false), InvariantError);

    const ProductArena p2 = fixtures::product(fixtures::g2());
    const ReachSolution sol2 = reach_fixpoint(p2, p2.goal());
    CHECK(optimal_successor(p2.graph(), at(p2, "v0", "q0"), sol2.ranks, R(4), true) == at(p2, "v2", "qb"));

    // Two successors realize the same value: the lower index wins.
    const GameGraph tie({Player::zero, Player::zero, Player::zero}, {{0, 1, 1}, {0, 2, 1}, {1, 1, 0}, {2, 2, 0}});
    const Ranking r{R(1), R(0), R(0)};
    CHECK(optimal_successor(tie, 0, r, R(1), false) == 1);
    CHECK(optimal_successor(tie, 0, r, R(1), true) == 1);
}

TEST_CASE("extract_reach_strategies") {
    const ProductArena p = fixtures::product(fixtures::g1());
    const ReachSolution sol = reach_fixpoint(p, fixtures::only(4, {at(p, "v1", "qb")}));
    const auto [s0, s1] = extract_reach_strategies(p.graph(), sol);
    CHECK(s0.next(at(p, "v0", "q0"), 0) == at(p, "v1", "qb"));
    CHECK(s0.next(at(p, "v1", "qb"), 0) == at(p, "v0", "q0"));
    for (VertexIndex v = 0; v < 4; ++v) {
        CHECK(s1.next(v, 0) == FiniteStateStrategy::kNoMove);
    }

    const ProductArena p2 = fixtures::product(fixtures::g2());
    const auto [t0, t1] = extract_reach_strategies(p2.graph(), reach_fixpoint(p2, p2.goal()));
    CHECK(t1.next(at(p2, "v0", "q0"), 0) == at(p2, "v2", "qb"));

    const GameGraph line({Player::zero, Player::zero}, {{0, 1, 7}, {1, 1, 0}});
    const VertexSet goal = fixtures::only(2, {1});
    const auto [l0, l1] = extract_reach_strategies(line, reach_fixpoint(line, goal));
    CHECK(eval_reach_value(line, goal, simulate_duel(line, l0, l1, 0)) == R(7));
}

TEST_CASE("reach fixed points satisfy the structural properties") {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto [p, goal] = sample(seed, rng);
        const GameGraph& g = p.graph();
        const std::size_t n = g.num_vertices();
        const ReachSolution sol = reach_fixpoint(g, goal);
        CAPTURE(seed);

        CHECK(audit_reach_solution(g, sol).empty());
        CHECK(reach_step(g, goal, sol.ranks) == sol.ranks);
        CHECK(sol.iterations <= n + 1);
        CHECK(sol.ranks == oracle_reach_value(g, goal));

        Ranking cur(n, kInfinity);
        for (std::size_t j = 0; j <= sol.iterations; ++j) {
            const Ranking next = reach_step(g, goal, cur);
            for (VertexIndex v = 0; v < n; ++v) {
                CHECK(next[v] <= cur[v]);
            }
            cur = next;
        }
        CHECK(cur == sol.ranks);

        for (VertexIndex v = 0; v < n; ++v) {
            std::size_t most = 0;
            for (const auto& s : g.successors(v)) {
                most = std::max(most, sol.settling[s.target]);
            }
            CHECK(sol.settling[v] <= most + 1);
            if (sol.ranks[v].is_finite()) {
                CHECK(sol.ranks[v].value() <= n * g.max_weight());
            }
        }

        // A larger goal set never ranks a vertex higher.
        VertexSet bigger = goal;
        bigger[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = true;
        const ReachSolution more = reach_fixpoint(g, bigger);
        for (VertexIndex v = 0; v < n; ++v) {
            CHECK(sol.ranks[v] >= more.ranks[v]);
        }
    }
}

TEST_CASE("positional reach strategies are optimal") {
    std::mt19937_64 rng(23);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto [p, goal] = sample(seed, rng);
        const GameGraph& g = p.graph();
        const ReachSolution sol = reach_fixpoint(g, goal);
        const auto [s0, s1] = extract_reach_strategies(g, sol);
        CAPTURE(seed);
        for (VertexIndex v = 0; v < p.base().num_vertices(); ++v) {
            const VertexIndex e = p.entry(v);
            CHECK(eval_reach_value(g, goal, simulate_duel(g, s0, s1, e)) == sol.ranks[e]);
            for (int b = 0; b < 50; ++b) {
                const auto adv1 = random_strategy(g, Player::one, 3, rng);
                const auto adv0 = random_strategy(g, Player::zero, 3, rng);
                CHECK(eval_reach_value(g, goal, simulate_duel(g, s0, adv1, e)) <= sol.ranks[e]);
                CHECK(eval_reach_value(g, goal, simulate_duel(g, adv0, s1, e)) >= sol.ranks[e]);
            }
        }
    }
}

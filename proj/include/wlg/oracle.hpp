#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "wlg/game.hpp"
#include "wlg/product.hpp"
#include "wlg/reach.hpp"

namespace wlg {

/// The same play with the shortest stem and a primitive cycle.
Lasso normalize_lasso(Lasso l);

/// Plays two finite-state strategies against each other from `start` until
/// a (vertex, memory0, memory1) triple repeats. The returned lasso is
/// normalized.
Lasso simulate_duel(const GameGraph& g, const FiniteStateStrategy& s0, const FiniteStateStrategy& s1,
                    VertexIndex start);

/// Limit value of the lasso play: the largest weight between a position and
/// the next later position in `goal`; INFINITY if the cycle avoids `goal`.
Rank eval_limit_value(const GameGraph& g, const VertexSet& goal, const Lasso& l);

/// Weight of the shortest prefix ending in `goal` (position 0 included).
Rank eval_reach_value(const GameGraph& g, const VertexSet& goal, const Lasso& l);

inline Rank eval_limit_value(const ProductArena& p, const Lasso& l) { return eval_limit_value(p.graph(), p.goal(), l); }
inline Rank eval_reach_value(const ProductArena& p, const Lasso& l) { return eval_reach_value(p.graph(), p.goal(), l); }

/// Attractor of `target` for `player` inside the subgame `arena_set`.
VertexSet attractor(const GameGraph& g, const VertexSet& arena_set, const VertexSet& target, Player player);

/// Player-0 winning region of the Buchi game "visit target infinitely often".
VertexSet buchi_solve(const GameGraph& g, const VertexSet& target);

/// Vertices u from which Player 0 keeps every gap between consecutive goal
/// visits at most `k` while visiting the goal infinitely often.
VertexSet threshold_buchi_wins(const GameGraph& g, const VertexSet& goal, Weight k);

/// Least k with v in threshold_buchi_wins(k), by bisection over
/// [0, (|V| + 1) * W]; INFINITY if none.
Ranking oracle_limit_value(const GameGraph& g, const VertexSet& goal, Exec exec = Exec::parallel);

/// Least k such that Player 0 reaches `goal` with accumulated weight <= k,
/// by bisection over [0, |V| * W]; INFINITY if none.
Ranking oracle_reach_value(const GameGraph& g, const VertexSet& goal, Exec exec = Exec::parallel);

inline Ranking oracle_limit_value(const ProductArena& p, Exec exec = Exec::parallel) {
    return oracle_limit_value(p.graph(), p.goal(), exec);
}

struct GenParams {
    std::size_t max_vertices = 6;
    std::size_t max_dfa_states = 4;
    std::size_t max_out_degree = 3;
    Weight max_weight = 5;
    std::size_t max_colors = 3;
    double accepting_fraction = 0.5;
    std::uint64_t seed = 0;
};

/// Random valid (arena, DFA) pair; a deterministic function of `params`.
/// Generator: std::mt19937_64 seeded with `params.seed`.
std::pair<Arena, Dfa> gen_random_instance(const GenParams& params);

/// Random finite-state strategy over `g` for `player` with 1..max_memory
/// memory states; used as an adversary in simulations.
FiniteStateStrategy random_strategy(const GameGraph& g, Player player, std::size_t max_memory, std::mt19937_64& rng);

} // namespace wlg

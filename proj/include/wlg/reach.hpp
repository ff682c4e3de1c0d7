#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wlg/game.hpp"
#include "wlg/product.hpp"

namespace wlg {

/// Execution policy for the data-parallel kernels. Both policies produce
/// bit-identical results; `serial` is the reference.
enum class Exec { serial, parallel };

/// Least fixed point of the reachability operator for one goal set.
struct ReachSolution {
    VertexSet goal;
    Ranking ranks;
    /// First iteration at which each vertex holds its final rank; 0 for
    /// vertices that stay at INFINITY.
    std::vector<std::size_t> settling;
    /// Index n of the fixed point: minimal n with r_n = r_{n+1}.
    std::size_t iterations = 0;
};

namespace kernels {

/// One full sweep of the reachability operator, `out[v]` from `in` only.
/// Returns false if some finite sum left the rank range.
bool reach_step_serial(const GameGraph& g, const VertexSet& goal, const Ranking& in, Ranking& out);
bool reach_step_omp(const GameGraph& g, const VertexSet& goal, const Ranking& in, Ranking& out);

} // namespace kernels

/// One application of the operator for `goal`:
///   0                                      on goal vertices,
///   min{r(v), min_{v'} w(v,v') + r(v')}    on other Player-0 vertices,
///   min{r(v), max_{v'} w(v,v') + r(v')}    on other Player-1 vertices.
Ranking reach_step(const GameGraph& g, const VertexSet& goal, const Ranking& r, Exec exec = Exec::parallel);

/// Iterates reach_step from the all-INFINITY ranking until stable. Throws
/// InvariantError if stability takes more than |V| + 1 applications.
ReachSolution reach_fixpoint(const GameGraph& g, const VertexSet& goal, Exec exec = Exec::parallel);

inline ReachSolution reach_fixpoint(const ProductArena& p, const VertexSet& goal, Exec exec = Exec::parallel) {
    return reach_fixpoint(p.graph(), goal, exec);
}

/// Re-scores goal vertices by the cost of reaching the goal once more:
/// min (Player 0) or max (Player 1) over successors of w + r(v').
Ranking complete_ranking(const GameGraph& g, const VertexSet& goal, const Ranking& r);

/// Lowest-index successor s of v with expected == w(v, s) + target[s]. With
/// `settling` supplied, a finite `expected` and `maximize == false`, prefers
/// a successor with settling[v] == settling[s] + 1. Throws InvariantError if
/// no successor satisfies the rank equation.
VertexIndex optimal_successor(const GameGraph& g, VertexIndex v, const Ranking& target, Rank expected, bool maximize,
                              const std::vector<std::size_t>* settling = nullptr);

/// Positional strategies for the reachability game: Player 0 follows optimal
/// successors (with settling-time progress) off the goal; Player 1 follows
/// max-realizing successors off the goal. Elsewhere the lowest-index
/// successor is taken.
std::pair<FiniteStateStrategy, FiniteStateStrategy> extract_reach_strategies(const GameGraph& g,
                                                                             const ReachSolution& sol);

} // namespace wlg

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wlg/product.hpp"
#include "wlg/reach.hpp"

namespace wlg {

/// Goal vertices stratified by their current rank. Level h (0-based here)
/// holds the goal vertices ranked at most thresholds[h], the reachability
/// fixed point for that level, and its completion.
struct RankHierarchy {
    std::vector<Rank> thresholds;       // strictly increasing
    std::vector<VertexSet> levels;      // levels[h] = {v in F | r(v) <= thresholds[h]}
    std::vector<ReachSolution> inner;   // inner[h].ranks is the least fixed point for levels[h]
    std::vector<Ranking> completed;     // completed[h] = completion of inner[h].ranks

    std::size_t size() const { return thresholds.size(); }
    bool empty() const { return thresholds.empty(); }
};

struct LimitIterate {
    Ranking ranks;            // r_j
    RankHierarchy hierarchy;  // built from r_j, produces r_{j+1}
};

struct LimitSolution {
    Ranking ranks;                                // the fixed point r*
    std::vector<std::size_t> settling;            // min{j | r_j(v) = r*(v)}
    std::vector<LimitIterate> history;            // j = 0 .. iterations
    std::vector<std::optional<std::size_t>> h_of; // smallest level realizing r*(v); empty if no levels
    std::size_t iterations = 0;                   // minimal n with r_n = r_{n+1}

    const RankHierarchy& final_hierarchy() const { return history.back().hierarchy; }
};

/// Builds the hierarchy for `r`. The per-level reachability fixed points are
/// independent and run concurrently under Exec::parallel.
RankHierarchy build_hierarchy(const GameGraph& g, const VertexSet& goal, const Ranking& r,
                              Exec exec = Exec::parallel);

/// l_L(r)(v) = min over levels h of max{r(v), completed_h(v), threshold_h};
/// INFINITY everywhere when there are no levels.
std::pair<Ranking, RankHierarchy> limit_step(const GameGraph& g, const VertexSet& goal, const Ranking& r,
                                             Exec exec = Exec::parallel);

/// Iterates limit_step from the all-zero ranking until stable, keeping the
/// full history. Throws InvariantError if the iteration count exceeds
/// |F| + 1 or a finite rank exceeds (|V| + 1) * W.
LimitSolution limit_fixpoint(const GameGraph& g, const VertexSet& goal, Exec exec = Exec::parallel);

inline LimitSolution limit_fixpoint(const ProductArena& p, Exec exec = Exec::parallel) {
    return limit_fixpoint(p.graph(), p.goal(), exec);
}

/// Player-0 strategy over the product with memory {levels}: the memory holds
/// the level chosen on the last goal visit and is reset on reaching it.
FiniteStateStrategy extract_limit_strategy_p0(const GameGraph& g, const VertexSet& goal, const LimitSolution& sol);

enum class VertexType { zero, one, two };

struct Classification {
    VertexType type = VertexType::zero;
    std::optional<std::size_t> level;  // 0-based
};

/// Type of `v` for the Player-1 strategy, read off the hierarchy of
/// iteration settling(v) - 1. With an empty goal set (no levels ever),
/// vertices are type two without a level.
Classification classify_p1(VertexIndex v, const LimitSolution& sol);

/// Player-1 strategy over the product; memory = product vertices, holding
/// the start vertex or the most recently visited goal vertex.
FiniteStateStrategy extract_limit_strategy_p1(const GameGraph& g, const VertexSet& goal, const LimitSolution& sol);

struct WinningRegions {
    std::vector<VertexIndex> w0;
    std::vector<VertexIndex> w1;
};

/// W0 = base vertices with finite value at their entry point; W1 the rest.
WinningRegions winning_regions(const ProductArena& p, const LimitSolution& sol);

/// Arena x M_s with Player-0 moves fixed by `s`; ids are "<id>#<memory>".
Arena restrict_arena(const Arena& a, const FiniteStateStrategy& s);

/// Worst-case (Player-1 maximal) value of Player-0 strategy `s` from every
/// base vertex.
std::vector<Rank> strategy_value(const Arena& a, const Dfa& d, const FiniteStateStrategy& s,
                                 Exec exec = Exec::parallel);

/// Everything the solve command reports.
struct LimitGameSolution {
    ProductArena product;
    LimitSolution solution;
    FiniteStateStrategy sigma_product;  // Player 0 over the product
    FiniteStateStrategy tau_product;    // Player 1 over the product
    FiniteStateStrategy sigma;          // Player 0 over the arena (memory Q x levels)
    FiniteStateStrategy tau;            // Player 1 over the arena (memory Q x product vertices)

    Rank value(VertexIndex v) const { return solution.ranks[product.entry(v)]; }
};

LimitGameSolution solve_limit_game(const Arena& a, const Dfa& d, Exec exec = Exec::parallel,
                                   bool with_strategies = true);

} // namespace wlg

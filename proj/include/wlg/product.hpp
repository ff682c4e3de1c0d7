#pragma once

#include <utility>
#include <vector>

#include "wlg/game.hpp"

namespace wlg {

/// The DFA-induced memory structure: states Q, init(v) = delta(q_I, c(v)),
/// upd(q, v) = delta(q, c(v)). Requires `d` validated against `a`'s colors.
MemoryStructure memory_from_dfa(const Dfa& d, const Arena& a);

/// Expanded graph G x M: vertex (v, m) has index v * |M| + m, and
/// ((v, m), (v', m')) is an edge iff (v, v') is one and m' = upd(m, v').
GameGraph expand_graph(const GameGraph& g, const MemoryStructure& mem);

/// Arena x M_dfa with the goal set of all pairs (v, q) where q accepts.
class ProductArena {
public:
    ProductArena() = default;
    ProductArena(Arena base, Dfa dfa);

    const Arena& base() const { return base_; }
    const Dfa& dfa() const { return dfa_; }
    const GameGraph& graph() const { return graph_; }
    const MemoryStructure& memory() const { return memory_; }
    /// Goal set F of the product (pairs with an accepting DFA state).
    const VertexSet& goal() const { return goal_; }

    std::size_t num_vertices() const { return graph_.num_vertices(); }
    std::size_t num_states() const { return dfa_.num_states(); }
    std::size_t num_goal() const;

    VertexIndex index(VertexIndex v, StateIndex q) const { return v * num_states() + q; }
    VertexIndex base_vertex(VertexIndex p) const { return p / num_states(); }
    StateIndex state(VertexIndex p) const { return p % num_states(); }
    /// (v, delta(q_I, c(v))).
    VertexIndex entry(VertexIndex v) const { return index(v, memory_.init[v]); }

    bool is_goal(VertexIndex p) const { return goal_[p]; }

    /// Largest edge weight W of the base arena.
    Weight max_weight() const { return graph_.max_weight(); }

    /// "(id,state)" for display.
    std::string label(VertexIndex p) const;

private:
    Arena base_;
    Dfa dfa_;
    MemoryStructure memory_;
    GameGraph graph_;
    VertexSet goal_;
};

/// Validates both inputs and builds the full product over V x Q. Throws
/// InputError on invalid inputs or when (|V|*|Q| + 1) * W does not fit in
/// the finite rank range.
ProductArena build_product(const Arena& a, const Dfa& d);

/// ext(prefix): (v0, init(v0)) (v1, upd(m0, v1)) ... Throws InputError at the
/// first step that is not an edge of `g`.
std::vector<std::pair<VertexIndex, MemoryIndex>> extend_play(const GameGraph& g, const MemoryStructure& mem,
                                                             const std::vector<VertexIndex>& prefix);

/// Flattens a strategy over G x M (implemented by M') into a strategy over
/// G implemented by M x M', pair (m, m') encoded as m * |M'| + m'.
FiniteStateStrategy compose_strategy(const GameGraph& g, const MemoryStructure& mem,
                                     const FiniteStateStrategy& inner);

/// Lifts a lasso of the base arena to the product, unrolling the cycle
/// until the DFA state at the cycle start repeats.
Lasso lift_lasso(const ProductArena& p, const Lasso& base_lasso);

} // namespace wlg

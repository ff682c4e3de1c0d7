#include "wlg/reach.hpp"

#include <algorithm>
#include <iostream>

#include "wlg/errors.hpp"

namespace wlg {

namespace {

// w + r without exceptions so it can run inside parallel regions.
inline Rank add_or_flag(Rank r, Weight w, bool& overflow) {
    if (r.is_infinite()) {
        return r;
    }
    const std::uint64_t v = r.value();
    if (w > Rank::kMaxFinite - v) {
        overflow = true;
        return kInfinity;
    }
    return Rank(v + w);
}

inline Rank sweep_vertex(const GameGraph& g, const VertexSet& goal, const Ranking& in, VertexIndex v,
                         bool& overflow) {
    if (goal[v]) {
        return Rank(0);
    }
    const bool maximize = g.owner(v) == Player::one;
    bool first = true;
    Rank best = kInfinity;
    for (const auto& s : g.successors(v)) {
        const Rank cand = add_or_flag(in[s.target], s.weight, overflow);
        if (first || (maximize ? cand > best : cand < best)) {
            best = cand;
            first = false;
        }
    }
    return std::min(in[v], best);
}

} // namespace

namespace kernels {

bool reach_step_serial(const GameGraph& g, const VertexSet& goal, const Ranking& in, Ranking& out) {
    const std::size_t n = g.num_vertices();
    out.resize(n);
    bool overflow = false;
    for (std::size_t v = 0; v < n; ++v) {
        out[v] = sweep_vertex(g, goal, in, v, overflow);
    }
    return !overflow;
}

bool reach_step_omp(const GameGraph& g, const VertexSet& goal, const Ranking& in, Ranking& out) {
    const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
    out.resize(static_cast<std::size_t>(n));
    bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
    for (std::ptrdiff_t v = 0; v < n; ++v) {
        bool local = false;
        out[static_cast<std::size_t>(v)] = sweep_vertex(g, goal, in, static_cast<VertexIndex>(v), local);
        overflow = overflow || local;
    }
    return !overflow;
}

} // namespace kernels

Ranking reach_step(const GameGraph& g, const VertexSet& goal, const Ranking& r, Exec exec) {
    Ranking out;
    const bool ok = exec == Exec::serial ? kernels::reach_step_serial(g, goal, r, out)
                                         : kernels::reach_step_omp(g, goal, r, out);
    if (!ok) {
        throw std::overflow_error("reach_step: rank overflow");
    }
    return out;
}

ReachSolution reach_fixpoint(const GameGraph& g, const VertexSet& goal, Exec exec) {
    const std::size_t n = g.num_vertices();
    ReachSolution sol;
    sol.goal = goal;
    sol.settling.assign(n, 0);
    Ranking cur(n, kInfinity);
    Ranking next;
    for (std::size_t j = 0;; ++j) {
        const bool ok = exec == Exec::serial ? kernels::reach_step_serial(g, goal, cur, next)
                                             : kernels::reach_step_omp(g, goal, cur, next);
        if (!ok) {
            throw std::overflow_error("reach_fixpoint: rank overflow");
        }
        bool changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (next[v] != cur[v]) {
                sol.settling[v] = j + 1;
                changed = true;
            }
        }
        if (!changed) {
            sol.iterations = j;
            break;
        }
        if (j + 1 > n + 1) {
            throw InvariantError("reach_fixpoint: no fixed point after |V| + 1 applications");
        }
        cur.swap(next);
    }
    sol.ranks = std::move(cur);
    return sol;
}

Ranking complete_ranking(const GameGraph& g, const VertexSet& goal, const Ranking& r) {
    Ranking out = r;
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        if (!goal[v]) {
            continue;
        }
        const bool maximize = g.owner(v) == Player::one;
        bool first = true;
        Rank best = kInfinity;
        for (const auto& s : g.successors(v)) {
            const Rank cand = r[s.target] + s.weight;
            if (first || (maximize ? cand > best : cand < best)) {
                best = cand;
                first = false;
            }
        }
        out[v] = best;
    }
    return out;
}

VertexIndex optimal_successor(const GameGraph& g, VertexIndex v, const Ranking& target, Rank expected, bool maximize,
                              const std::vector<std::size_t>* settling) {
    std::optional<VertexIndex> first_match;
    const bool refine = settling != nullptr && expected.is_finite() && !maximize;
    for (const auto& s : g.successors(v)) {
        if (target[s.target] + s.weight != expected) {
            continue;
        }
        if (!refine) {
            return s.target;
        }
        if (!first_match) {
            first_match = s.target;
        }
        if ((*settling)[v] == (*settling)[s.target] + 1) {
            return s.target;
        }
    }
    if (!first_match) {
        throw InvariantError("optimal_successor: no successor of vertex " + std::to_string(v) +
                             " realizes rank " + expected.to_string());
    }
    std::cerr << "wlg: warning: no successor of vertex " << v
              << " satisfies the settling-time equation; falling back to rank-only choice\n";
    return *first_match;
}

std::pair<FiniteStateStrategy, FiniteStateStrategy> extract_reach_strategies(const GameGraph& g,
                                                                             const ReachSolution& sol) {
    const std::size_t n = g.num_vertices();
    auto s0 = FiniteStateStrategy::blank(Player::zero, MemoryStructure::trivial(n));
    auto s1 = FiniteStateStrategy::blank(Player::one, MemoryStructure::trivial(n));
    for (VertexIndex v = 0; v < n; ++v) {
        const VertexIndex lowest = g.successors(v).front().target;
        if (g.owner(v) == Player::zero) {
            const bool free_move = sol.goal[v] || sol.ranks[v].is_infinite();
            s0.set_next(v, 0, free_move ? lowest : optimal_successor(g, v, sol.ranks, sol.ranks[v], false, &sol.settling));
        } else {
            s1.set_next(v, 0, sol.goal[v] ? lowest : optimal_successor(g, v, sol.ranks, sol.ranks[v], true));
        }
    }
    return {std::move(s0), std::move(s1)};
}

} // namespace wlg

#include "wlg/limit.hpp"

#include <algorithm>
#include <exception>

#include "wlg/errors.hpp"

namespace wlg {

RankHierarchy build_hierarchy(const GameGraph& g, const VertexSet& goal, const Ranking& r, Exec exec) {
    const std::size_t n = g.num_vertices();
    RankHierarchy h;
    for (VertexIndex v = 0; v < n; ++v) {
        if (goal[v]) {
            h.thresholds.push_back(r[v]);
        }
    }
    std::sort(h.thresholds.begin(), h.thresholds.end());
    h.thresholds.erase(std::unique(h.thresholds.begin(), h.thresholds.end()), h.thresholds.end());

    const std::size_t k = h.thresholds.size();
    h.levels.assign(k, VertexSet(n, false));
    for (std::size_t lvl = 0; lvl < k; ++lvl) {
        for (VertexIndex v = 0; v < n; ++v) {
            h.levels[lvl][v] = goal[v] && r[v] <= h.thresholds[lvl];
        }
    }
    h.inner.resize(k);
    h.completed.resize(k);

    auto solve_level = [&](std::size_t lvl) {
        h.inner[lvl] = reach_fixpoint(g, h.levels[lvl], Exec::serial);
        h.completed[lvl] = complete_ranking(g, h.levels[lvl], h.inner[lvl].ranks);
    };
    if (exec == Exec::serial) {
        for (std::size_t lvl = 0; lvl < k; ++lvl) {
            solve_level(lvl);
        }
        return h;
    }
    std::exception_ptr failure;
    const auto kk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t lvl = 0; lvl < kk; ++lvl) {
        try {
            solve_level(static_cast<std::size_t>(lvl));
        } catch (...) {
#pragma omp critical(wlg_hierarchy_failure)
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return h;
}

std::pair<Ranking, RankHierarchy> limit_step(const GameGraph& g, const VertexSet& goal, const Ranking& r,
                                             Exec exec) {
    RankHierarchy h = build_hierarchy(g, goal, r, exec);
    const std::size_t n = g.num_vertices();
    Ranking out(n, kInfinity);
    for (VertexIndex v = 0; v < n; ++v) {
        for (std::size_t lvl = 0; lvl < h.size(); ++lvl) {
            out[v] = std::min(out[v], std::max({r[v], h.completed[lvl][v], h.thresholds[lvl]}));
        }
    }
    return {std::move(out), std::move(h)};
}

LimitSolution limit_fixpoint(const GameGraph& g, const VertexSet& goal, Exec exec) {
    const std::size_t n = g.num_vertices();
    const auto goal_count = static_cast<std::size_t>(std::count(goal.begin(), goal.end(), true));
    const std::uint64_t value_bound = checked_mul(n + 1, g.max_weight()).value_or(Rank::kMaxFinite);

    LimitSolution sol;
    sol.settling.assign(n, 0);
    Ranking cur(n, Rank(0));
    for (std::size_t j = 0;; ++j) {
        auto [next, hierarchy] = limit_step(g, goal, cur, exec);
        bool changed = false;
        for (VertexIndex v = 0; v < n; ++v) {
            if (next[v] != cur[v]) {
                sol.settling[v] = j + 1;
                changed = true;
            }
            if (next[v].is_finite() && next[v].value() > value_bound) {
                throw InvariantError("limit_fixpoint: finite rank above (|V| + 1) * W");
            }
        }
        sol.history.push_back({cur, std::move(hierarchy)});
        if (!changed) {
            sol.iterations = j;
            break;
        }
        if (j + 1 > goal_count + 1) {
            throw InvariantError("limit_fixpoint: no fixed point after |F| + 1 applications");
        }
        cur = std::move(next);
    }
    sol.ranks = std::move(cur);

    const RankHierarchy& fin = sol.final_hierarchy();
    sol.h_of.assign(n, std::nullopt);
    for (VertexIndex v = 0; v < n; ++v) {
        for (std::size_t lvl = 0; lvl < fin.size(); ++lvl) {
            if (std::max({sol.ranks[v], fin.completed[lvl][v], fin.thresholds[lvl]}) == sol.ranks[v]) {
                sol.h_of[v] = lvl;
                break;
            }
        }
        if (!fin.empty() && !sol.h_of[v]) {
            throw InvariantError("limit_fixpoint: no level realizes the fixed-point rank");
        }
    }
    return sol;
}

FiniteStateStrategy extract_limit_strategy_p0(const GameGraph& g, const VertexSet& /*goal*/, const LimitSolution& sol) {
    const std::size_t n = g.num_vertices();
    const RankHierarchy& h = sol.final_hierarchy();
    const std::size_t k = h.size();

    MemoryStructure mem;
    mem.size = std::max<std::size_t>(k, 1);
    mem.init.resize(n);
    mem.upd.resize(n * mem.size);
    for (VertexIndex v = 0; v < n; ++v) {
        mem.init[v] = sol.h_of[v].value_or(0);
    }
    for (MemoryIndex lvl = 0; lvl < mem.size; ++lvl) {
        for (VertexIndex v = 0; v < n; ++v) {
            const bool reached = k > 0 && h.levels[lvl][v];
            mem.upd[lvl * n + v] = reached ? mem.init[v] : lvl;
        }
    }

    auto s = FiniteStateStrategy::blank(Player::zero, std::move(mem));
    for (VertexIndex v = 0; v < n; ++v) {
        if (g.owner(v) != Player::zero) {
            continue;
        }
        for (MemoryIndex lvl = 0; lvl < s.memory.size; ++lvl) {
            VertexIndex to = g.successors(v).front().target;
            if (k > 0) {
                const ReachSolution& inner = h.inner[lvl];
                to = h.levels[lvl][v]
                         ? optimal_successor(g, v, inner.ranks, h.completed[lvl][v], false)
                         : optimal_successor(g, v, inner.ranks, inner.ranks[v], false, &inner.settling);
            }
            s.set_next(v, lvl, to);
        }
    }
    return s;
}

Classification classify_p1(VertexIndex v, const LimitSolution& sol) {
    const Rank r = sol.ranks[v];
    if (r == Rank(0)) {
        return {VertexType::zero, std::nullopt};
    }
    const std::size_t t = sol.settling[v];
    if (t == 0) {
        throw InvariantError("classify_p1: positive rank with settling time 0");
    }
    const RankHierarchy& h = sol.history[t - 1].hierarchy;
    if (h.empty()) {
        return {VertexType::two, std::nullopt};
    }
    for (std::size_t lvl = h.size(); lvl-- > 0;) {
        if (h.completed[lvl][v] == r) {
            return {VertexType::one, lvl};
        }
    }
    for (std::size_t lvl = 0; lvl < h.size(); ++lvl) {
        if (h.thresholds[lvl] == r) {
            return {VertexType::two, lvl};
        }
    }
    throw InvariantError("classify_p1: vertex " + std::to_string(v) + " is neither type one nor type two");
}

FiniteStateStrategy extract_limit_strategy_p1(const GameGraph& g, const VertexSet& goal, const LimitSolution& sol) {
    const std::size_t n = g.num_vertices();
    MemoryStructure mem;
    mem.size = n;
    mem.init.resize(n);
    mem.upd.resize(n * n);
    for (VertexIndex v = 0; v < n; ++v) {
        mem.init[v] = v;
    }
    for (MemoryIndex m = 0; m < n; ++m) {
        for (VertexIndex v = 0; v < n; ++v) {
            mem.upd[m * n + v] = goal[v] ? v : m;
        }
    }

    std::vector<VertexIndex> p1_vertices;
    for (VertexIndex v = 0; v < n; ++v) {
        if (g.owner(v) == Player::one) {
            p1_vertices.push_back(v);
        }
    }

    auto s = FiniteStateStrategy::blank(Player::one, std::move(mem));
    for (MemoryIndex m = 0; m < n; ++m) {
        const Classification c = classify_p1(m, sol);
        std::optional<std::size_t> use_level;
        if (c.type == VertexType::one) {
            use_level = c.level;
        } else if (c.type == VertexType::two && c.level && *c.level > 0) {
            use_level = *c.level - 1;
        }
        const RankHierarchy* h = use_level ? &sol.history[sol.settling[m] - 1].hierarchy : nullptr;
        for (VertexIndex v : p1_vertices) {
            VertexIndex to = g.successors(v).front().target;
            if (h != nullptr) {
                to = optimal_successor(g, v, h->inner[*use_level].ranks, h->completed[*use_level][v], true);
            }
            s.set_next(v, m, to);
        }
    }
    return s;
}

WinningRegions winning_regions(const ProductArena& p, const LimitSolution& sol) {
    WinningRegions out;
    for (VertexIndex v = 0; v < p.base().num_vertices(); ++v) {
        (sol.ranks[p.entry(v)].is_finite() ? out.w0 : out.w1).push_back(v);
    }
    return out;
}

Arena restrict_arena(const Arena& a, const FiniteStateStrategy& s) {
    const GameGraph g = a.graph();
    const std::size_t msize = s.memory.size;
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        for (MemoryIndex m = 0; m < msize; ++m) {
            const auto& rec = a.vertices()[v];
            vertices.push_back({rec.id + "#" + std::to_string(m), rec.owner, rec.color});
            auto add = [&](VertexIndex to, Weight w) {
                edges.push_back({v * msize + m, to * msize + s.memory.update(m, to), static_cast<std::int64_t>(w)});
            };
            if (rec.owner == s.player) {
                const VertexIndex to = s.next(v, m);
                add(to, *g.edge_weight(v, to));
            } else {
                for (const auto& succ : g.successors(v)) {
                    add(succ.target, succ.weight);
                }
            }
        }
    }
    return Arena(std::move(vertices), std::move(edges));
}

std::vector<Rank> strategy_value(const Arena& a, const Dfa& d, const FiniteStateStrategy& s, Exec exec) {
    if (s.player != Player::zero) {
        throw InputError("strategy_value expects a Player-0 strategy");
    }
    if (auto r = validate_strategy(a.graph(), s); !r.ok()) {
        throw InputError("invalid strategy:\n" + r.to_string());
    }
    const Arena restricted = restrict_arena(a, s);
    const ProductArena p = build_product(restricted, d);
    const LimitSolution sol = limit_fixpoint(p, exec);
    std::vector<Rank> values(a.num_vertices());
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        values[v] = sol.ranks[p.entry(v * s.memory.size + s.memory.init[v])];
    }
    return values;
}

LimitGameSolution solve_limit_game(const Arena& a, const Dfa& d, Exec exec, bool with_strategies) {
    LimitGameSolution out{build_product(a, d), {}, {}, {}, {}, {}};
    out.solution = limit_fixpoint(out.product, exec);
    if (with_strategies) {
        const auto& g = out.product.graph();
        const auto& goal = out.product.goal();
        out.sigma_product = extract_limit_strategy_p0(g, goal, out.solution);
        out.tau_product = extract_limit_strategy_p1(g, goal, out.solution);
        const GameGraph base = a.graph();
        out.sigma = compose_strategy(base, out.product.memory(), out.sigma_product);
        out.tau = compose_strategy(base, out.product.memory(), out.tau_product);
    }
    return out;
}

} // namespace wlg

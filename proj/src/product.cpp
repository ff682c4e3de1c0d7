#include "wlg/product.hpp"

#include <algorithm>
#include <map>

#include "wlg/errors.hpp"

namespace wlg {

MemoryStructure memory_from_dfa(const Dfa& d, const Arena& a) {
    const std::size_t n = a.num_vertices();
    MemoryStructure mem;
    mem.size = d.num_states();
    mem.init.resize(n);
    mem.upd.resize(n * mem.size);
    for (VertexIndex v = 0; v < n; ++v) {
        mem.init[v] = d.step(d.initial(), a.color(v));
        for (StateIndex q = 0; q < mem.size; ++q) {
            mem.upd[q * n + v] = d.step(q, a.color(v));
        }
    }
    return mem;
}

GameGraph expand_graph(const GameGraph& g, const MemoryStructure& mem) {
    const std::size_t n = g.num_vertices();
    const std::size_t msize = mem.size;
    std::vector<Player> owners(n * msize);
    std::vector<std::tuple<VertexIndex, VertexIndex, Weight>> edges;
    edges.reserve(g.num_edges() * msize);
    for (VertexIndex v = 0; v < n; ++v) {
        for (MemoryIndex m = 0; m < msize; ++m) {
            owners[v * msize + m] = g.owner(v);
            for (const auto& s : g.successors(v)) {
                edges.emplace_back(v * msize + m, s.target * msize + mem.update(m, s.target), s.weight);
            }
        }
    }
    return GameGraph(std::move(owners), edges);
}

ProductArena::ProductArena(Arena base, Dfa dfa) : base_(std::move(base)), dfa_(std::move(dfa)) {
    memory_ = memory_from_dfa(dfa_, base_);
    graph_ = expand_graph(base_.graph(), memory_);
    goal_.assign(graph_.num_vertices(), false);
    for (VertexIndex p = 0; p < graph_.num_vertices(); ++p) {
        goal_[p] = dfa_.is_accepting(state(p));
    }
}

std::size_t ProductArena::num_goal() const {
    return static_cast<std::size_t>(std::count(goal_.begin(), goal_.end(), true));
}

std::string ProductArena::label(VertexIndex p) const {
    return "(" + base_.vertices()[base_vertex(p)].id + "," + dfa_.states()[state(p)] + ")";
}

ProductArena build_product(const Arena& a, const Dfa& d) {
    if (auto r = validate_arena(a); !r.ok()) {
        throw InputError("invalid arena:\n" + r.to_string());
    }
    if (auto r = validate_dfa(d, a.colors()); !r.ok()) {
        throw InputError("invalid DFA:\n" + r.to_string());
    }
    // Every finite rank any solver produces is at most (|V|*|Q| + 1) * W.
    Weight w_max = 0;
    for (const auto& e : a.edges()) {
        w_max = std::max(w_max, static_cast<Weight>(e.weight));
    }
    // Headroom for one more edge on top of a bounded rank inside the operators.
    const auto size = checked_mul(a.num_vertices(), d.num_states());
    const auto bound = size ? checked_mul(*size + 1, w_max) : std::nullopt;
    const auto with_edge = bound ? checked_add(*bound, w_max) : std::nullopt;
    if (!with_edge || *with_edge > Rank::kMaxFinite) {
        throw InputError("weights too large: (|V|*|Q| + 1) * W exceeds the rank range");
    }
    return ProductArena(a, d);
}

std::vector<std::pair<VertexIndex, MemoryIndex>> extend_play(const GameGraph& g, const MemoryStructure& mem,
                                                             const std::vector<VertexIndex>& prefix) {
    std::vector<std::pair<VertexIndex, MemoryIndex>> out;
    out.reserve(prefix.size());
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const VertexIndex v = prefix[i];
        if (v >= g.num_vertices()) {
            throw InputError("play position " + std::to_string(i) + " is not a vertex");
        }
        if (i == 0) {
            out.emplace_back(v, mem.init[v]);
            continue;
        }
        if (!g.has_edge(prefix[i - 1], v)) {
            throw InputError("play step " + std::to_string(i - 1) + " -> " + std::to_string(i) + " is not an edge");
        }
        out.emplace_back(v, mem.update(out.back().second, v));
    }
    return out;
}

FiniteStateStrategy compose_strategy(const GameGraph& g, const MemoryStructure& mem,
                                     const FiniteStateStrategy& inner) {
    const std::size_t n = g.num_vertices();
    const std::size_t outer = mem.size;
    const std::size_t in = inner.memory.size;
    if (inner.memory.num_vertices() != n * outer) {
        throw InvariantError("compose_strategy: inner strategy is not over G x M");
    }
    auto pv = [&](VertexIndex v, MemoryIndex m) { return v * outer + m; };
    auto pair = [&](MemoryIndex m, MemoryIndex mi) { return m * in + mi; };

    MemoryStructure composed;
    composed.size = outer * in;
    composed.init.resize(n);
    composed.upd.resize(n * composed.size);
    for (VertexIndex v = 0; v < n; ++v) {
        const MemoryIndex m0 = mem.init[v];
        composed.init[v] = pair(m0, inner.memory.init[pv(v, m0)]);
    }
    for (MemoryIndex m = 0; m < outer; ++m) {
        for (MemoryIndex mi = 0; mi < in; ++mi) {
            for (VertexIndex v = 0; v < n; ++v) {
                const MemoryIndex m_next = mem.update(m, v);
                composed.upd[pair(m, mi) * n + v] = pair(m_next, inner.memory.update(mi, pv(v, m_next)));
            }
        }
    }
    auto out = FiniteStateStrategy::blank(inner.player, std::move(composed));
    for (VertexIndex v = 0; v < n; ++v) {
        if (g.owner(v) != inner.player) {
            continue;
        }
        for (MemoryIndex m = 0; m < outer; ++m) {
            for (MemoryIndex mi = 0; mi < in; ++mi) {
                const VertexIndex to = inner.next(pv(v, m), mi);
                out.set_next(v, pair(m, mi), to == FiniteStateStrategy::kNoMove ? to : to / outer);
            }
        }
    }
    return out;
}

Lasso lift_lasso(const ProductArena& p, const Lasso& base_lasso) {
    check_lasso(p.base().graph(), base_lasso);
    const auto& mem = p.memory();
    Lasso out;
    MemoryIndex m = 0;
    bool first = true;
    auto visit = [&](VertexIndex v) {
        m = first ? mem.init[v] : mem.update(m, v);
        first = false;
        return p.index(v, m);
    };
    for (VertexIndex v : base_lasso.stem) {
        out.stem.push_back(visit(v));
    }
    // Product positions at the start of each base cycle round; the DFA state
    // there determines everything that follows.
    std::map<MemoryIndex, std::size_t> round_start;
    std::vector<VertexIndex> unrolled;
    for (;;) {
        const VertexIndex p0 = visit(base_lasso.cycle.front());
        const MemoryIndex key = p.state(p0);
        if (auto it = round_start.find(key); it != round_start.end()) {
            out.stem.insert(out.stem.end(), unrolled.begin(), unrolled.begin() + static_cast<std::ptrdiff_t>(it->second));
            out.cycle.assign(unrolled.begin() + static_cast<std::ptrdiff_t>(it->second), unrolled.end());
            return out;
        }
        round_start.emplace(key, unrolled.size());
        unrolled.push_back(p0);
        for (std::size_t i = 1; i < base_lasso.cycle.size(); ++i) {
            unrolled.push_back(visit(base_lasso.cycle[i]));
        }
    }
}

} // namespace wlg

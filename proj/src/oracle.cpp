#include "wlg/oracle.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <tuple>

#include "wlg/errors.hpp"

namespace wlg {

// ------------------------------------------------------------------ lassos

Lasso normalize_lasso(Lasso l) {
    const std::size_t len = l.cycle.size();
    for (std::size_t period = 1; period < len; ++period) {
        if (len % period != 0) {
            continue;
        }
        bool repeats = true;
        for (std::size_t i = period; i < len && repeats; ++i) {
            repeats = l.cycle[i] == l.cycle[i - period];
        }
        if (repeats) {
            l.cycle.resize(period);
            break;
        }
    }
    while (!l.stem.empty() && l.stem.back() == l.cycle.back()) {
        std::rotate(l.cycle.rbegin(), l.cycle.rbegin() + 1, l.cycle.rend());
        l.stem.pop_back();
    }
    return l;
}

Lasso simulate_duel(const GameGraph& g, const FiniteStateStrategy& s0, const FiniteStateStrategy& s1,
                    VertexIndex start) {
    using Triple = std::tuple<VertexIndex, MemoryIndex, MemoryIndex>;
    std::map<Triple, std::size_t> seen;
    std::vector<VertexIndex> trace;
    VertexIndex v = start;
    MemoryIndex m0 = s0.memory.init[v];
    MemoryIndex m1 = s1.memory.init[v];
    const std::size_t limit = g.num_vertices() * s0.memory.size * s1.memory.size + 1;
    for (;;) {
        auto [it, fresh] = seen.emplace(Triple{v, m0, m1}, trace.size());
        if (!fresh) {
            Lasso l;
            l.stem.assign(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(it->second));
            l.cycle.assign(trace.begin() + static_cast<std::ptrdiff_t>(it->second), trace.end());
            return normalize_lasso(std::move(l));
        }
        if (trace.size() >= limit) {
            throw InvariantError("simulate_duel: no repetition within the triple-space bound");
        }
        trace.push_back(v);
        const VertexIndex to = g.owner(v) == Player::zero ? s0.next(v, m0) : s1.next(v, m1);
        if (to == FiniteStateStrategy::kNoMove || !g.has_edge(v, to)) {
            throw InvariantError("simulate_duel: strategy move is not an edge");
        }
        v = to;
        m0 = s0.memory.update(m0, v);
        m1 = s1.memory.update(m1, v);
    }
}

namespace {

// Prefix sums of edge weights along the first `len` positions of the lasso.
std::vector<Rank> prefix_weights(const GameGraph& g, const Lasso& l, std::size_t len) {
    std::vector<Rank> cum(len, Rank(0));
    for (std::size_t i = 1; i < len; ++i) {
        cum[i] = cum[i - 1] + *g.edge_weight(l.at(i - 1), l.at(i));
    }
    return cum;
}

} // namespace

Rank eval_limit_value(const GameGraph& g, const VertexSet& goal, const Lasso& l) {
    check_lasso(g, l);
    if (std::none_of(l.cycle.begin(), l.cycle.end(), [&](VertexIndex v) { return goal[v]; })) {
        return kInfinity;
    }
    // For j between consecutive accepted positions a_i <= j < a_{i+1}, the
    // nearest later accepted position is a_{i+1} and the infix weight is
    // largest at j = a_i (or j = 0 before the first one). Two periods past
    // the stem contain every distinct such gap.
    const std::size_t len = l.stem.size() + 2 * l.cycle.size() + 1;
    const auto cum = prefix_weights(g, l, len);
    std::size_t prev = 0;
    Rank best(0);
    for (std::size_t a = 1; a < len; ++a) {
        if (!goal[l.at(a)]) {
            continue;
        }
        const Rank gap(cum[a].value() - cum[prev].value());
        best = std::max(best, gap);
        prev = a;
    }
    return best;
}

Rank eval_reach_value(const GameGraph& g, const VertexSet& goal, const Lasso& l) {
    check_lasso(g, l);
    const std::size_t len = l.stem.size() + l.cycle.size();
    const auto cum = prefix_weights(g, l, len);
    for (std::size_t i = 0; i < len; ++i) {
        if (goal[l.at(i)]) {
            return cum[i];
        }
    }
    return kInfinity;
}

// ------------------------------------------------------- qualitative games

namespace {

class Predecessors {
public:
    explicit Predecessors(const GameGraph& g) : offsets_(g.num_vertices() + 1, 0) {
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            for (const auto& s : g.successors(v)) {
                ++offsets_[s.target + 1];
            }
        }
        std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
        preds_.resize(g.num_edges());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            for (const auto& s : g.successors(v)) {
                preds_[fill[s.target]++] = v;
            }
        }
    }

    std::span<const VertexIndex> of(VertexIndex v) const {
        return {preds_.data() + offsets_[v], preds_.data() + offsets_[v + 1]};
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<VertexIndex> preds_;
};

VertexSet attractor_with(const GameGraph& g, const Predecessors& preds, const VertexSet& arena_set,
                         const VertexSet& target, Player player) {
    const std::size_t n = g.num_vertices();
    VertexSet attr(n, false);
    std::vector<std::size_t> remaining(n, 0);
    std::vector<VertexIndex> queue;
    for (VertexIndex v = 0; v < n; ++v) {
        if (!arena_set[v]) {
            continue;
        }
        for (const auto& s : g.successors(v)) {
            remaining[v] += arena_set[s.target] ? 1 : 0;
        }
        if (target[v]) {
            attr[v] = true;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const VertexIndex u = queue.back();
        queue.pop_back();
        for (VertexIndex p : preds.of(u)) {
            if (!arena_set[p] || attr[p]) {
                continue;
            }
            if (g.owner(p) == player || --remaining[p] == 0) {
                attr[p] = true;
                queue.push_back(p);
            }
        }
    }
    return attr;
}

VertexSet buchi_with(const GameGraph& g, const Predecessors& preds, const VertexSet& target) {
    const std::size_t n = g.num_vertices();
    VertexSet current(n, true);
    for (;;) {
        VertexSet recur_target(n, false);
        for (VertexIndex v = 0; v < n; ++v) {
            recur_target[v] = current[v] && target[v];
        }
        const VertexSet reach = attractor_with(g, preds, current, recur_target, Player::zero);
        VertexSet trap(n, false);
        bool any = false;
        for (VertexIndex v = 0; v < n; ++v) {
            trap[v] = current[v] && !reach[v];
            any = any || trap[v];
        }
        if (!any) {
            return current;
        }
        const VertexSet lost = attractor_with(g, preds, current, trap, Player::one);
        for (VertexIndex v = 0; v < n; ++v) {
            if (lost[v]) {
                current[v] = false;
            }
        }
    }
}

// Gap-counter graph: state (u, c) = u * (k + 1) + c, plus a Player-0 sink.
struct CounterGame {
    GameGraph graph;
    VertexSet targets;
    std::size_t width;
};

CounterGame build_counter_game(const GameGraph& g, const VertexSet& goal, Weight k, bool reset_on_goal) {
    const std::size_t n = g.num_vertices();
    const std::size_t width = static_cast<std::size_t>(k) + 1;
    const std::size_t sink = n * width;
    std::vector<Player> owners(sink + 1, Player::zero);
    std::vector<std::tuple<VertexIndex, VertexIndex, Weight>> edges;
    edges.reserve(g.num_edges() * width + 1);
    VertexSet targets(sink + 1, false);
    for (VertexIndex u = 0; u < n; ++u) {
        for (std::size_t c = 0; c < width; ++c) {
            const VertexIndex from = u * width + c;
            owners[from] = g.owner(u);
            if (goal[u] && (!reset_on_goal || c == 0)) {
                targets[from] = true;
            }
            for (const auto& s : g.successors(u)) {
                if (s.weight > k - c) {
                    edges.emplace_back(from, sink, 0);
                } else if (reset_on_goal && goal[s.target]) {
                    edges.emplace_back(from, s.target * width, 0);
                } else {
                    edges.emplace_back(from, s.target * width + c + s.weight, 0);
                }
            }
        }
    }
    edges.emplace_back(sink, sink, 0);
    return {GameGraph(std::move(owners), edges), std::move(targets), width};
}

VertexSet project_start(const VertexSet& win, std::size_t n, std::size_t width) {
    VertexSet out(n, false);
    for (VertexIndex u = 0; u < n; ++u) {
        out[u] = win[u * width];
    }
    return out;
}

VertexSet threshold_reach_wins(const GameGraph& g, const VertexSet& goal, Weight k) {
    const CounterGame cg = build_counter_game(g, goal, k, false);
    const Predecessors preds(cg.graph);
    const VertexSet all(cg.graph.num_vertices(), true);
    return project_start(attractor_with(cg.graph, preds, all, cg.targets, Player::zero), g.num_vertices(), cg.width);
}

// Per-vertex least k in [0, hi] with v in wins(k), INFINITY if v is not in
// wins(hi). All vertices bisect in lockstep; the distinct thresholds probed
// in one round are independent and evaluated concurrently.
template <typename WinsFn>
Ranking bisect_all(std::size_t n, Weight hi, WinsFn wins, Exec exec) {
    Ranking out(n, kInfinity);
    const VertexSet top = wins(hi);
    std::vector<Weight> lo_v(n, 0), hi_v(n, hi);
    std::vector<bool> active(n, false);
    for (VertexIndex v = 0; v < n; ++v) {
        active[v] = top[v];
    }
    for (;;) {
        std::vector<Weight> probes;
        for (VertexIndex v = 0; v < n; ++v) {
            if (active[v] && lo_v[v] < hi_v[v]) {
                probes.push_back(lo_v[v] + (hi_v[v] - lo_v[v]) / 2);
            }
        }
        if (probes.empty()) {
            break;
        }
        std::sort(probes.begin(), probes.end());
        probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
        std::vector<VertexSet> results(probes.size());
        if (exec == Exec::serial) {
            for (std::size_t i = 0; i < probes.size(); ++i) {
                results[i] = wins(probes[i]);
            }
        } else {
            std::exception_ptr failure;
            const auto np = static_cast<std::ptrdiff_t>(probes.size());
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t i = 0; i < np; ++i) {
                try {
                    results[static_cast<std::size_t>(i)] = wins(probes[static_cast<std::size_t>(i)]);
                } catch (...) {
#pragma omp critical(wlg_bisect_failure)
                    failure = std::current_exception();
                }
            }
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
        for (VertexIndex v = 0; v < n; ++v) {
            if (!active[v] || lo_v[v] >= hi_v[v]) {
                continue;
            }
            const Weight mid = lo_v[v] + (hi_v[v] - lo_v[v]) / 2;
            const auto idx = static_cast<std::size_t>(std::lower_bound(probes.begin(), probes.end(), mid) - probes.begin());
            if (results[idx][v]) {
                hi_v[v] = mid;
            } else {
                lo_v[v] = mid + 1;
            }
        }
    }
    for (VertexIndex v = 0; v < n; ++v) {
        if (active[v]) {
            out[v] = Rank(lo_v[v]);
        }
    }
    return out;
}

Weight checked_bound(std::size_t factor, Weight w) {
    const auto b = checked_mul(factor, w);
    if (!b || *b > Rank::kMaxFinite) {
        throw InputError("oracle search bound exceeds the rank range");
    }
    return *b;
}

} // namespace

VertexSet attractor(const GameGraph& g, const VertexSet& arena_set, const VertexSet& target, Player player) {
    return attractor_with(g, Predecessors(g), arena_set, target, player);
}

VertexSet buchi_solve(const GameGraph& g, const VertexSet& target) {
    return buchi_with(g, Predecessors(g), target);
}

VertexSet threshold_buchi_wins(const GameGraph& g, const VertexSet& goal, Weight k) {
    const CounterGame cg = build_counter_game(g, goal, k, true);
    const Predecessors preds(cg.graph);
    return project_start(buchi_with(cg.graph, preds, cg.targets), g.num_vertices(), cg.width);
}

Ranking oracle_limit_value(const GameGraph& g, const VertexSet& goal, Exec exec) {
    const Weight hi = checked_bound(g.num_vertices() + 1, g.max_weight());
    return bisect_all(g.num_vertices(), hi, [&](Weight k) { return threshold_buchi_wins(g, goal, k); }, exec);
}

Ranking oracle_reach_value(const GameGraph& g, const VertexSet& goal, Exec exec) {
    const Weight hi = checked_bound(g.num_vertices(), g.max_weight());
    return bisect_all(g.num_vertices(), hi, [&](Weight k) { return threshold_reach_wins(g, goal, k); }, exec);
}

// -------------------------------------------------------------- generation

std::pair<Arena, Dfa> gen_random_instance(const GenParams& params) {
    if (params.max_vertices < 1 || params.max_dfa_states < 1 || params.max_out_degree < 1 ||
        params.max_weight < 1 || params.max_colors < 1 || !(params.accepting_fraction > 0.0) ||
        params.accepting_fraction > 1.0) {
        throw InputError("invalid generation parameters");
    }
    std::mt19937_64 rng(params.seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };

    const std::size_t n = uniform(1, params.max_vertices);
    const std::size_t ncolors = uniform(1, params.max_colors);
    std::vector<Color> alphabet;
    for (std::size_t c = 0; c < ncolors; ++c) {
        alphabet.push_back(Color{std::string(1, static_cast<char>('a' + c % 26)) +
                                 (c >= 26 ? std::to_string(c / 26) : std::string())});
    }
    std::vector<VertexRecord> vertices;
    for (std::size_t v = 0; v < n; ++v) {
        vertices.push_back({"v" + std::to_string(v), uniform(0, 1) == 0 ? Player::zero : Player::one,
                            alphabet[uniform(0, ncolors - 1)]});
    }
    std::vector<EdgeRecord> edges;
    std::vector<VertexIndex> targets(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t degree = uniform(1, std::min(params.max_out_degree, n));
        std::iota(targets.begin(), targets.end(), 0);
        std::shuffle(targets.begin(), targets.end(), rng);
        for (std::size_t i = 0; i < degree; ++i) {
            edges.push_back({v, targets[i], static_cast<std::int64_t>(uniform(0, params.max_weight))});
        }
    }

    const std::size_t s = uniform(1, params.max_dfa_states);
    std::vector<std::string> states;
    for (std::size_t q = 0; q < s; ++q) {
        states.push_back("q" + std::to_string(q));
    }
    std::bernoulli_distribution accept(params.accepting_fraction);
    std::vector<StateIndex> accepting;
    for (std::size_t q = 1; q < s; ++q) {
        if (accept(rng)) {
            accepting.push_back(q);
        }
    }
    Dfa d(std::move(states), alphabet, 0, std::move(accepting));
    for (std::size_t q = 0; q < s; ++q) {
        for (std::size_t c = 0; c < ncolors; ++c) {
            d.set_transition(q, c, uniform(0, s - 1));
        }
    }
    return {Arena(std::move(vertices), std::move(edges)), std::move(d)};
}

FiniteStateStrategy random_strategy(const GameGraph& g, Player player, std::size_t max_memory, std::mt19937_64& rng) {
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t n = g.num_vertices();
    MemoryStructure mem;
    mem.size = uniform(1, std::max<std::size_t>(max_memory, 1));
    mem.init.resize(n);
    mem.upd.resize(n * mem.size);
    for (auto& m : mem.init) {
        m = uniform(0, mem.size - 1);
    }
    for (auto& m : mem.upd) {
        m = uniform(0, mem.size - 1);
    }
    auto s = FiniteStateStrategy::blank(player, std::move(mem));
    for (VertexIndex v = 0; v < n; ++v) {
        if (g.owner(v) != player) {
            continue;
        }
        const auto succ = g.successors(v);
        for (MemoryIndex m = 0; m < s.memory.size; ++m) {
            s.set_next(v, m, succ[uniform(0, succ.size() - 1)].target);
        }
    }
    return s;
}

} // namespace wlg

#include "wlg/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wlg/errors.hpp"

namespace wlg {

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.where << ": " << v.what << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- GameGraph

GameGraph::GameGraph(std::vector<Player> owners,
                     const std::vector<std::tuple<VertexIndex, VertexIndex, Weight>>& edges)
    : owners_(std::move(owners)) {
    const std::size_t n = owners_.size();
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [src, dst, w] : edges) {
        if (src >= n || dst >= n) {
            throw InvariantError("GameGraph: edge endpoint out of range");
        }
        ++degree[src];
        max_weight_ = std::max(max_weight_, w);
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        offsets_[v + 1] = offsets_[v] + degree[v];
    }
    succ_.resize(edges.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [src, dst, w] : edges) {
        succ_[fill[src]++] = Successor{dst, w};
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(succ_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  succ_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                  [](const Successor& a, const Successor& b) { return a.target < b.target; });
    }
}

std::optional<Weight> GameGraph::edge_weight(VertexIndex src, VertexIndex dst) const {
    if (src >= num_vertices()) {
        return std::nullopt;
    }
    auto succ = successors(src);
    auto it = std::lower_bound(succ.begin(), succ.end(), dst,
                               [](const Successor& s, VertexIndex t) { return s.target < t; });
    if (it == succ.end() || it->target != dst) {
        return std::nullopt;
    }
    return it->weight;
}

// -------------------------------------------------------------------- Arena

Arena::Arena(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (VertexIndex i = 0; i < vertices_.size(); ++i) {
        by_id_.emplace(vertices_[i].id, i);  // first declaration wins; duplicates are reported by validation
    }
}

std::optional<VertexIndex> Arena::find(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
        return std::nullopt;
    }
    return it->second;
}

VertexIndex Arena::index_of(const std::string& id) const {
    if (auto i = find(id)) {
        return *i;
    }
    throw InputError("unknown vertex '" + id + "'");
}

std::vector<Color> Arena::colors() const {
    std::vector<Color> out;
    for (const auto& v : vertices_) {
        if (std::find(out.begin(), out.end(), v.color) == out.end()) {
            out.push_back(v.color);
        }
    }
    return out;
}

GameGraph Arena::graph() const {
    std::vector<Player> owners;
    owners.reserve(vertices_.size());
    for (const auto& v : vertices_) {
        owners.push_back(v.owner);
    }
    std::vector<std::tuple<VertexIndex, VertexIndex, Weight>> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) {
        if (e.weight < 0) {
            throw InvariantError("Arena::graph on an arena with negative weights");
        }
        edges.emplace_back(e.src, e.dst, static_cast<Weight>(e.weight));
    }
    return GameGraph(std::move(owners), edges);
}

ValidationReport validate_arena(const Arena& a) {
    ValidationReport report;
    const auto& vs = a.vertices();
    if (vs.empty()) {
        report.violations.push_back({"no vertices", "arena"});
    }
    std::set<std::string> seen;
    for (VertexIndex i = 0; i < vs.size(); ++i) {
        const std::string where = "vertex " + std::to_string(i) + " ('" + vs[i].id + "')";
        if (vs[i].id.empty()) {
            report.violations.push_back({"empty vertex id", where});
        }
        if (!seen.insert(vs[i].id).second) {
            report.violations.push_back({"duplicate vertex id", where});
        }
        if (vs[i].color.symbol.empty()) {
            report.violations.push_back({"empty color", where});
        }
        if (vs[i].owner != Player::zero && vs[i].owner != Player::one) {
            report.violations.push_back({"owner is neither player 0 nor player 1", where});
        }
    }
    std::vector<bool> has_out(vs.size(), false);
    std::set<std::pair<VertexIndex, VertexIndex>> pairs;
    for (std::size_t k = 0; k < a.edges().size(); ++k) {
        const auto& e = a.edges()[k];
        const std::string where = "edge " + std::to_string(k);
        bool in_range = true;
        if (e.src >= vs.size()) {
            report.violations.push_back({"source does not reference a vertex", where});
            in_range = false;
        }
        if (e.dst >= vs.size()) {
            report.violations.push_back({"target does not reference a vertex", where});
            in_range = false;
        }
        if (e.weight < 0) {
            report.violations.push_back({"negative weight", where});
        }
        if (in_range) {
            has_out[e.src] = true;
            if (!pairs.emplace(e.src, e.dst).second) {
                report.violations.push_back({"duplicate edge (" + vs[e.src].id + ", " + vs[e.dst].id + ")", where});
            }
        }
    }
    for (VertexIndex i = 0; i < vs.size(); ++i) {
        if (!has_out[i]) {
            report.violations.push_back({"no outgoing edge", "vertex " + std::to_string(i) + " ('" + vs[i].id + "')"});
        }
    }
    return report;
}

// ---------------------------------------------------------------------- Dfa

Dfa::Dfa(std::vector<std::string> states, std::vector<Color> alphabet, StateIndex initial,
         std::vector<StateIndex> accepting)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(states_.size(), false),
      table_(states_.size() * alphabet_.size()) {
    for (StateIndex q : accepting) {
        if (q >= states_.size()) {
            throw InputError("accepting state index out of range");
        }
        accepting_[q] = true;
    }
    if (!states_.empty() && initial_ >= states_.size()) {
        throw InputError("initial state index out of range");
    }
}

std::vector<StateIndex> Dfa::accepting_states() const {
    std::vector<StateIndex> out;
    for (StateIndex q = 0; q < states_.size(); ++q) {
        if (accepting_[q]) {
            out.push_back(q);
        }
    }
    return out;
}

std::size_t Dfa::num_accepting() const {
    return static_cast<std::size_t>(std::count(accepting_.begin(), accepting_.end(), true));
}

std::optional<std::size_t> Dfa::color_index(const Color& c) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), c);
    if (it == alphabet_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - alphabet_.begin());
}

std::optional<StateIndex> Dfa::state_index(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) {
        return std::nullopt;
    }
    return static_cast<StateIndex>(it - states_.begin());
}

void Dfa::set_transition(StateIndex from, std::size_t color, StateIndex to) {
    if (from >= states_.size() || to >= states_.size() || color >= alphabet_.size()) {
        throw InputError("transition out of range");
    }
    table_[from * alphabet_.size() + color] = to;
}

StateIndex Dfa::step(StateIndex q, const Color& c) const {
    auto ci = color_index(c);
    if (!ci) {
        throw InputError("color '" + c.symbol + "' is not in the DFA alphabet");
    }
    auto t = transition(q, *ci);
    if (!t) {
        throw InputError("no transition from '" + states_[q] + "' on '" + c.symbol + "'");
    }
    return *t;
}

ValidationReport validate_dfa(const Dfa& d, const std::vector<Color>& arena_colors) {
    ValidationReport report;
    if (d.num_states() == 0) {
        report.violations.push_back({"no states", "dfa"});
        return report;
    }
    if (d.alphabet().empty()) {
        report.violations.push_back({"empty alphabet", "dfa"});
    }
    if (d.is_accepting(d.initial())) {
        report.violations.push_back({"epsilon accepted (initial state is accepting)", "state '" + d.states()[d.initial()] + "'"});
    }
    for (StateIndex q = 0; q < d.num_states(); ++q) {
        for (std::size_t c = 0; c < d.alphabet().size(); ++c) {
            if (!d.transition(q, c)) {
                report.violations.push_back({"transition table not total",
                                             "(" + d.states()[q] + ", " + d.alphabet()[c].symbol + ")"});
            }
        }
    }
    for (const auto& c : arena_colors) {
        if (!d.color_index(c)) {
            report.violations.push_back({"arena color not in DFA alphabet", "color '" + c.symbol + "'"});
        }
    }
    return report;
}

StateIndex dfa_run_from(const Dfa& d, StateIndex from, std::span<const Color> word) {
    StateIndex q = from;
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto ci = d.color_index(word[i]);
        if (!ci) {
            throw InputError("unknown color '" + word[i].symbol + "' at position " + std::to_string(i));
        }
        auto t = d.transition(q, *ci);
        if (!t) {
            throw InputError("missing transition at position " + std::to_string(i));
        }
        q = *t;
    }
    return q;
}

StateIndex dfa_run(const Dfa& d, std::span<const Color> word) { return dfa_run_from(d, d.initial(), word); }

bool dfa_accepts(const Dfa& d, std::span<const Color> word) { return d.is_accepting(dfa_run(d, word)); }

// --------------------------------------------------------------- strategies

MemoryStructure MemoryStructure::trivial(std::size_t num_vertices) {
    MemoryStructure m;
    m.size = 1;
    m.init.assign(num_vertices, 0);
    m.upd.assign(num_vertices, 0);
    return m;
}

FiniteStateStrategy FiniteStateStrategy::blank(Player p, MemoryStructure mem) {
    FiniteStateStrategy s;
    s.player = p;
    s.nxt.assign(mem.num_vertices() * mem.size, kNoMove);
    s.memory = std::move(mem);
    return s;
}

ValidationReport validate_strategy(const GameGraph& g, const FiniteStateStrategy& s) {
    ValidationReport report;
    const auto& mem = s.memory;
    const std::size_t n = g.num_vertices();
    if (mem.size == 0) {
        report.violations.push_back({"empty memory", "strategy"});
        return report;
    }
    if (mem.init.size() != n || mem.upd.size() != n * mem.size || s.nxt.size() != n * mem.size) {
        report.violations.push_back({"table sizes do not match the host graph", "strategy"});
        return report;
    }
    for (VertexIndex v = 0; v < n; ++v) {
        if (mem.init[v] >= mem.size) {
            report.violations.push_back({"init out of range", "vertex " + std::to_string(v)});
        }
        for (MemoryIndex m = 0; m < mem.size; ++m) {
            const std::string where = "(" + std::to_string(v) + ", " + std::to_string(m) + ")";
            if (mem.update(m, v) >= mem.size) {
                report.violations.push_back({"upd out of range", where});
            }
            if (g.owner(v) != s.player) {
                continue;
            }
            const VertexIndex to = s.next(v, m);
            if (to == FiniteStateStrategy::kNoMove) {
                report.violations.push_back({"next move undefined", where});
            } else if (!g.has_edge(v, to)) {
                report.violations.push_back({"next move is not a successor", where});
            }
        }
    }
    return report;
}

void check_lasso(const GameGraph& g, const Lasso& l) {
    if (l.cycle.empty()) {
        throw InputError("lasso cycle is empty");
    }
    const std::size_t n = g.num_vertices();
    auto check_vertex = [&](VertexIndex v) {
        if (v >= n) {
            throw InputError("lasso vertex out of range");
        }
    };
    std::vector<VertexIndex> seq = l.stem;
    seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
    seq.push_back(l.cycle.front());
    for (VertexIndex v : seq) {
        check_vertex(v);
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!g.has_edge(seq[i], seq[i + 1])) {
            throw InputError("lasso step " + std::to_string(i) + " (" + std::to_string(seq[i]) + " -> " +
                             std::to_string(seq[i + 1]) + ") is not an edge");
        }
    }
}

} // namespace wlg

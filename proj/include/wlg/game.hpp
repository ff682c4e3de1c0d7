#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <string>
#include <unordered_map>
#include <vector>

#include "wlg/rank.hpp"

namespace wlg {

using VertexIndex = std::size_t;
using StateIndex = std::size_t;
using MemoryIndex = std::size_t;

/// Set of vertices as a membership bitmap over dense indices.
using VertexSet = std::vector<bool>;

enum class Player : std::uint8_t { zero = 0, one = 1 };

inline int to_int(Player p) { return static_cast<int>(p); }

/// A color symbol; nonempty token.
struct Color {
    std::string symbol;

    friend bool operator==(const Color&, const Color&) = default;
    friend auto operator<=>(const Color&, const Color&) = default;
};

struct VertexRecord {
    std::string id;
    Player owner = Player::zero;
    Color color;
};

/// Edge as read from input. The weight is signed so that negative weights
/// can be reported by validation rather than lost in parsing.
struct EdgeRecord {
    VertexIndex src = 0;
    VertexIndex dst = 0;
    std::int64_t weight = 0;
};

struct Violation {
    std::string what;
    std::string where;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Compressed adjacency of a finite weighted game graph. Successors of each
/// vertex are sorted by target index, which fixes all tie-breaking.
class GameGraph {
public:
    struct Successor {
        VertexIndex target;
        Weight weight;
    };

    GameGraph() = default;

    /// Builds the graph; `edges` are (src, dst, weight) with nonnegative weights.
    GameGraph(std::vector<Player> owners,
              const std::vector<std::tuple<VertexIndex, VertexIndex, Weight>>& edges);

    std::size_t num_vertices() const { return owners_.size(); }
    std::size_t num_edges() const { return succ_.size(); }
    Player owner(VertexIndex v) const { return owners_[v]; }
    const std::vector<Player>& owners() const { return owners_; }

    std::span<const Successor> successors(VertexIndex v) const {
        return {succ_.data() + offsets_[v], succ_.data() + offsets_[v + 1]};
    }

    std::optional<Weight> edge_weight(VertexIndex src, VertexIndex dst) const;
    bool has_edge(VertexIndex src, VertexIndex dst) const { return edge_weight(src, dst).has_value(); }

    Weight max_weight() const { return max_weight_; }

private:
    std::vector<Player> owners_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Successor> succ_;
    Weight max_weight_ = 0;
};

/// Weighted, colored two-player arena. Vertex indices follow declaration order.
class Arena {
public:
    Arena() = default;
    Arena(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges);

    const std::vector<VertexRecord>& vertices() const { return vertices_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }
    std::size_t num_vertices() const { return vertices_.size(); }

    std::optional<VertexIndex> find(const std::string& id) const;
    /// Index of `id`; throws InputError if undeclared.
    VertexIndex index_of(const std::string& id) const;

    const Color& color(VertexIndex v) const { return vertices_[v].color; }
    Player owner(VertexIndex v) const { return vertices_[v].owner; }

    /// Distinct colors in order of first use.
    std::vector<Color> colors() const;

    /// Graph view; requires validate_arena(*this).ok().
    GameGraph graph() const;

private:
    std::vector<VertexRecord> vertices_;
    std::vector<EdgeRecord> edges_;
    std::unordered_map<std::string, VertexIndex> by_id_;
};

ValidationReport validate_arena(const Arena& a);

/// Deterministic finite automaton over colors. The transition table may be
/// partial until validated.
class Dfa {
public:
    Dfa() = default;
    Dfa(std::vector<std::string> states, std::vector<Color> alphabet, StateIndex initial,
        std::vector<StateIndex> accepting);

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<Color>& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return states_.size(); }
    StateIndex initial() const { return initial_; }
    bool is_accepting(StateIndex q) const { return accepting_[q]; }
    std::vector<StateIndex> accepting_states() const;
    std::size_t num_accepting() const;

    std::optional<std::size_t> color_index(const Color& c) const;
    std::optional<StateIndex> state_index(const std::string& name) const;

    void set_transition(StateIndex from, std::size_t color, StateIndex to);
    std::optional<StateIndex> transition(StateIndex from, std::size_t color) const {
        return table_[from * alphabet_.size() + color];
    }
    /// delta(q, c); throws InputError on unknown color or missing transition.
    StateIndex step(StateIndex q, const Color& c) const;

private:
    std::vector<std::string> states_;
    std::vector<Color> alphabet_;
    StateIndex initial_ = 0;
    std::vector<bool> accepting_;
    std::vector<std::optional<StateIndex>> table_;
};

ValidationReport validate_dfa(const Dfa& d, const std::vector<Color>& arena_colors);

/// delta*(word); the empty word yields the initial state.
StateIndex dfa_run(const Dfa& d, std::span<const Color> word);
/// delta* restarted from `from`.
StateIndex dfa_run_from(const Dfa& d, StateIndex from, std::span<const Color> word);
bool dfa_accepts(const Dfa& d, std::span<const Color> word);

/// Memory structure (M, init, upd) over a host graph with `num_vertices` vertices.
struct MemoryStructure {
    std::size_t size = 1;
    std::vector<MemoryIndex> init;  // per vertex
    std::vector<MemoryIndex> upd;   // [m * num_vertices + v]

    std::size_t num_vertices() const { return init.size(); }
    MemoryIndex update(MemoryIndex m, VertexIndex v) const { return upd[m * num_vertices() + v]; }

    /// Single-state memory for positional strategies.
    static MemoryStructure trivial(std::size_t num_vertices);
};

/// Finite-state strategy: memory plus a next-move table defined on the
/// player's own vertices.
struct FiniteStateStrategy {
    static constexpr VertexIndex kNoMove = static_cast<VertexIndex>(-1);

    Player player = Player::zero;
    MemoryStructure memory;
    std::vector<VertexIndex> nxt;  // [v * memory.size + m], kNoMove off the player's vertices

    VertexIndex next(VertexIndex v, MemoryIndex m) const { return nxt[v * memory.size + m]; }
    void set_next(VertexIndex v, MemoryIndex m, VertexIndex to) { nxt[v * memory.size + m] = to; }

    /// Allocates a strategy with an empty next-move table.
    static FiniteStateStrategy blank(Player p, MemoryStructure mem);
};

/// Checks totality of init/upd/nxt and that every move follows an edge.
ValidationReport validate_strategy(const GameGraph& g, const FiniteStateStrategy& s);

/// Ultimately periodic play: stem followed by the cycle repeated forever.
struct Lasso {
    std::vector<VertexIndex> stem;
    std::vector<VertexIndex> cycle;

    std::size_t period_start() const { return stem.size(); }
    /// Vertex at position `i` of the infinite play.
    VertexIndex at(std::size_t i) const {
        return i < stem.size() ? stem[i] : cycle[(i - stem.size()) % cycle.size()];
    }

    friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Throws InputError when the lasso is empty or not a path in `g`.
void check_lasso(const GameGraph& g, const Lasso& l);

} // namespace wlg

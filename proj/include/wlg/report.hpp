#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wlg/limit.hpp"

namespace wlg {

/// Strategy over the base arena in tabular form.
struct StrategyTable {
    Player player = Player::zero;
    std::size_t memory_states = 1;
    std::vector<MemoryIndex> init;                                      // per vertex
    std::vector<std::tuple<MemoryIndex, VertexIndex, MemoryIndex>> upd; // (m, v, m')
    std::vector<std::tuple<VertexIndex, MemoryIndex, VertexIndex>> nxt; // (v, m, v')

    static StrategyTable from(const FiniteStateStrategy& s);
};

struct SolveReport {
    struct Row {
        std::string id;
        Rank value;
        bool in_w0 = false;
    };
    struct Diagnostics {
        std::size_t iterations = 0;
        std::size_t product_vertices = 0;
        std::size_t product_edges = 0;
        std::size_t goal_vertices = 0;
        std::size_t levels = 0;
        double wall_ms = 0.0;
    };

    std::string kind;  // "limit" or "reach"
    std::vector<Row> rows;
    std::optional<StrategyTable> player0;
    std::optional<StrategyTable> player1;
    Diagnostics diagnostics;

    nlohmann::json to_json(const Arena& a) const;
    std::string to_text(const Arena& a) const;
};

/// Report rows for the limit game; region W0 iff the value is finite.
SolveReport make_limit_report(const Arena& a, const LimitGameSolution& s, bool with_strategies);

SolveReport make_reach_report(const Arena& a, const ProductArena& p, const ReachSolution& sol,
                              const FiniteStateStrategy& p0, const FiniteStateStrategy& p1);

nlohmann::json rank_to_json(Rank r);

} // namespace wlg

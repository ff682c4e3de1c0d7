#include "wlg/report.hpp"

#include <iomanip>
#include <sstream>

namespace wlg {

StrategyTable StrategyTable::from(const FiniteStateStrategy& s) {
    StrategyTable t;
    t.player = s.player;
    t.memory_states = s.memory.size;
    t.init = s.memory.init;
    const std::size_t n = s.memory.num_vertices();
    for (MemoryIndex m = 0; m < s.memory.size; ++m) {
        for (VertexIndex v = 0; v < n; ++v) {
            t.upd.emplace_back(m, v, s.memory.update(m, v));
        }
    }
    for (VertexIndex v = 0; v < n; ++v) {
        for (MemoryIndex m = 0; m < s.memory.size; ++m) {
            if (s.next(v, m) != FiniteStateStrategy::kNoMove) {
                t.nxt.emplace_back(v, m, s.next(v, m));
            }
        }
    }
    return t;
}

nlohmann::json rank_to_json(Rank r) {
    if (r.is_infinite()) {
        return "INFINITY";
    }
    return r.value();
}

namespace {

nlohmann::json table_json(const StrategyTable& t, const Arena& a) {
    const auto id = [&](VertexIndex v) { return a.vertices()[v].id; };
    nlohmann::json init = nlohmann::json::object();
    for (VertexIndex v = 0; v < t.init.size(); ++v) {
        init[id(v)] = t.init[v];
    }
    nlohmann::json upd = nlohmann::json::array();
    for (const auto& [m, v, m2] : t.upd) {
        upd.push_back({m, id(v), m2});
    }
    nlohmann::json nxt = nlohmann::json::array();
    for (const auto& [v, m, to] : t.nxt) {
        nxt.push_back({id(v), m, id(to)});
    }
    return {{"player", to_int(t.player)}, {"memory_states", t.memory_states}, {"init", init}, {"upd", upd},
            {"nxt", nxt}};
}

} // namespace

nlohmann::json SolveReport::to_json(const Arena& a) const {
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json w0 = nlohmann::json::array(), w1 = nlohmann::json::array();
    for (const auto& row : rows) {
        values[row.id] = rank_to_json(row.value);
        (row.in_w0 ? w0 : w1).push_back(row.id);
    }
    nlohmann::json strategies = nullptr;
    if (player0 || player1) {
        strategies = nlohmann::json::object();
        if (player0) {
            strategies["player0"] = table_json(*player0, a);
        }
        if (player1) {
            strategies["player1"] = table_json(*player1, a);
        }
    }
    return {{"kind", kind},
            {"values", values},
            {"regions", {{"W0", w0}, {"W1", w1}}},
            {"strategies", strategies},
            {"diagnostics",
             {{"iterations", diagnostics.iterations},
              {"product_vertices", diagnostics.product_vertices},
              {"product_edges", diagnostics.product_edges},
              {"goal_vertices", diagnostics.goal_vertices},
              {"levels", diagnostics.levels},
              {"wall_ms", diagnostics.wall_ms}}}};
}

std::string SolveReport::to_text(const Arena& a) const {
    std::ostringstream os;
    std::size_t width = 6;
    for (const auto& row : rows) {
        width = std::max(width, row.id.size());
    }
    os << std::left << std::setw(static_cast<int>(width)) << "vertex" << "  " << std::setw(10) << "value"
       << "region\n";
    for (const auto& row : rows) {
        os << std::setw(static_cast<int>(width)) << row.id << "  " << std::setw(10) << row.value.to_string()
           << (row.in_w0 ? "W0" : "W1") << '\n';
    }
    for (const auto* t : {&player0, &player1}) {
        if (!*t) {
            continue;
        }
        const StrategyTable& s = **t;
        os << "\nstrategy for player " << to_int(s.player) << " (" << s.memory_states << " memory states)\n";
        for (VertexIndex v = 0; v < s.init.size(); ++v) {
            os << "  init " << a.vertices()[v].id << " -> " << s.init[v] << '\n';
        }
        for (const auto& [m, v, m2] : s.upd) {
            os << "  upd " << m << ' ' << a.vertices()[v].id << " -> " << m2 << '\n';
        }
        for (const auto& [v, m, to] : s.nxt) {
            os << "  nxt " << a.vertices()[v].id << ' ' << m << " -> " << a.vertices()[to].id << '\n';
        }
    }
    os << "\niterations " << diagnostics.iterations << ", product " << diagnostics.product_vertices
       << " vertices / " << diagnostics.product_edges << " edges, " << diagnostics.goal_vertices
       << " goal vertices, " << std::fixed << std::setprecision(2) << diagnostics.wall_ms << " ms\n";
    return os.str();
}

SolveReport make_limit_report(const Arena& a, const LimitGameSolution& s, bool with_strategies) {
    SolveReport r;
    r.kind = "limit";
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        const Rank val = s.value(v);
        r.rows.push_back({a.vertices()[v].id, val, val.is_finite()});
    }
    if (with_strategies) {
        r.player0 = StrategyTable::from(s.sigma);
        r.player1 = StrategyTable::from(s.tau);
    }
    r.diagnostics.iterations = s.solution.iterations;
    r.diagnostics.product_vertices = s.product.num_vertices();
    r.diagnostics.product_edges = s.product.graph().num_edges();
    r.diagnostics.goal_vertices = s.product.num_goal();
    r.diagnostics.levels = s.solution.final_hierarchy().size();
    return r;
}

SolveReport make_reach_report(const Arena& a, const ProductArena& p, const ReachSolution& sol,
                              const FiniteStateStrategy& p0, const FiniteStateStrategy& p1) {
    SolveReport r;
    r.kind = "reach";
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        const Rank val = sol.ranks[p.entry(v)];
        r.rows.push_back({a.vertices()[v].id, val, val.is_finite()});
    }
    const GameGraph base = a.graph();
    r.player0 = StrategyTable::from(compose_strategy(base, p.memory(), p0));
    r.player1 = StrategyTable::from(compose_strategy(base, p.memory(), p1));
    r.diagnostics.iterations = sol.iterations;
    r.diagnostics.product_vertices = p.num_vertices();
    r.diagnostics.product_edges = p.graph().num_edges();
    r.diagnostics.goal_vertices = p.num_goal();
    return r;
}

} // namespace wlg

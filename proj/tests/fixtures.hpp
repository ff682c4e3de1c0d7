#pragma once

#include <string>
#include <utility>

#include "wlg/game.hpp"
#include "wlg/io.hpp"
#include "wlg/product.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(WLG_DATA_DIR) + "/" + name; }

inline wlg::Arena arena(const std::string& name) { return wlg::parse_arena(wlg::read_file(data_path(name))); }
inline wlg::Dfa dfa(const std::string& name) { return wlg::parse_dfa(wlg::read_file(data_path(name))); }

inline wlg::Arena g1() { return arena("g1.arena"); }
inline wlg::Arena g2() { return arena("g2.arena"); }
inline wlg::Arena ginf() { return arena("ginf.arena"); }
inline wlg::Dfa db() { return dfa("db.dfa"); }

inline wlg::ProductArena product(const wlg::Arena& a) { return wlg::build_product(a, db()); }

// Product index of (base id, DFA state name).
inline wlg::VertexIndex at(const wlg::ProductArena& p, const std::string& v, const std::string& q) {
    return p.index(p.base().index_of(v), *p.dfa().state_index(q));
}

inline wlg::VertexSet only(std::size_t n, std::initializer_list<wlg::VertexIndex> members) {
    wlg::VertexSet s(n, false);
    for (auto v : members) {
        s[v] = true;
    }
    return s;
}

inline wlg::Rank R(std::uint64_t v) { return wlg::Rank(v); }

} // namespace fixtures

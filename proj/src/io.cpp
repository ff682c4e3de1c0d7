#include "wlg/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "wlg/errors.hpp"

namespace wlg {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        Line line{number, {}};
        for (std::string tok; ls >> tok;) {
            line.tokens.push_back(tok);
        }
        if (!line.tokens.empty()) {
            out.push_back(std::move(line));
        }
    }
    return out;
}

template <typename Int>
std::optional<Int> to_int(const std::string& s) {
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::string at_line(std::size_t n) { return "line " + std::to_string(n) + ": "; }

[[noreturn]] void fail(const std::string& what, const std::vector<std::string>& problems) {
    std::string msg = what;
    for (const auto& p : problems) {
        msg += "\n  " + p;
    }
    throw InputError(msg);
}

} // namespace

Arena parse_arena(const std::string& text) {
    const auto lines = tokenize(text);
    std::vector<std::string> problems;
    std::vector<VertexRecord> vertices;
    std::map<std::string, VertexIndex> ids;
    std::vector<const Line*> edge_lines;

    for (const auto& line : lines) {
        const auto& t = line.tokens;
        if (t[0] == "vertex") {
            if (t.size() != 4) {
                problems.push_back(at_line(line.number) + "expected 'vertex <id> <0|1> <color>'");
                continue;
            }
            if (t[2] != "0" && t[2] != "1") {
                problems.push_back(at_line(line.number) + "owner must be 0 or 1, got '" + t[2] + "'");
                continue;
            }
            if (!ids.emplace(t[1], vertices.size()).second) {
                problems.push_back(at_line(line.number) + "duplicate vertex id '" + t[1] + "'");
                continue;
            }
            vertices.push_back({t[1], t[2] == "0" ? Player::zero : Player::one, Color{t[3]}});
        } else if (t[0] == "edge") {
            edge_lines.push_back(&line);
        } else {
            problems.push_back(at_line(line.number) + "unknown directive '" + t[0] + "'");
        }
    }
    if (vertices.empty()) {
        problems.push_back("no vertices");
    }

    std::vector<EdgeRecord> edges;
    std::map<std::pair<VertexIndex, VertexIndex>, std::size_t> seen_edges;
    std::vector<bool> has_out(vertices.size(), false);
    for (const Line* line : edge_lines) {
        const auto& t = line->tokens;
        if (t.size() != 4) {
            problems.push_back(at_line(line->number) + "expected 'edge <src> <dst> <weight>'");
            continue;
        }
        bool ok = true;
        for (int i : {1, 2}) {
            if (!ids.count(t[i])) {
                problems.push_back(at_line(line->number) + "undeclared vertex '" + t[i] + "'");
                ok = false;
            }
        }
        const auto w = to_int<std::int64_t>(t[3]);
        if (!w) {
            problems.push_back(at_line(line->number) + "weight '" + t[3] + "' is not an integer");
            ok = false;
        } else if (*w < 0) {
            problems.push_back(at_line(line->number) + "negative weight " + t[3]);
            ok = false;
        }
        if (!ok) {
            continue;
        }
        const VertexIndex src = ids[t[1]], dst = ids[t[2]];
        if (auto [it, fresh] = seen_edges.emplace(std::pair{src, dst}, line->number); !fresh) {
            problems.push_back(at_line(line->number) + "duplicate edge " + t[1] + " -> " + t[2] +
                               " (first on line " + std::to_string(it->second) + ")");
            continue;
        }
        has_out[src] = true;
        edges.push_back({src, dst, *w});
    }
    if (problems.empty()) {
        for (VertexIndex v = 0; v < vertices.size(); ++v) {
            if (!has_out[v]) {
                problems.push_back("vertex '" + vertices[v].id + "' has no outgoing edge");
            }
        }
    }
    if (!problems.empty()) {
        fail("invalid arena", problems);
    }
    Arena a(std::move(vertices), std::move(edges));
    if (auto r = validate_arena(a); !r.ok()) {
        fail("invalid arena", {r.to_string()});
    }
    return a;
}

Dfa parse_dfa(const std::string& text) {
    const auto lines = tokenize(text);
    std::vector<std::string> problems;
    std::vector<std::string> states;
    auto state_of = [&](const std::string& name) {
        for (StateIndex q = 0; q < states.size(); ++q) {
            if (states[q] == name) {
                return q;
            }
        }
        states.push_back(name);
        return states.size() - 1;
    };

    std::vector<Color> alphabet;
    std::optional<StateIndex> initial;
    std::vector<StateIndex> accepting;
    struct Trans {
        std::size_t line;
        StateIndex src;
        std::string color;
        StateIndex dst;
    };
    std::vector<Trans> trans;
    bool have_alphabet = false;

    for (const auto& line : lines) {
        const auto& t = line.tokens;
        if (t[0] == "alphabet") {
            if (have_alphabet) {
                problems.push_back(at_line(line.number) + "duplicate alphabet line");
                continue;
            }
            have_alphabet = true;
            for (std::size_t i = 1; i < t.size(); ++i) {
                Color c{t[i]};
                if (std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end()) {
                    problems.push_back(at_line(line.number) + "duplicate color '" + t[i] + "'");
                } else {
                    alphabet.push_back(c);
                }
            }
        } else if (t[0] == "states") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                state_of(t[i]);
            }
        } else if (t[0] == "initial") {
            if (t.size() != 2) {
                problems.push_back(at_line(line.number) + "expected 'initial <state>'");
            } else if (initial) {
                problems.push_back(at_line(line.number) + "duplicate initial line");
            } else {
                initial = state_of(t[1]);
            }
        } else if (t[0] == "accepting") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                accepting.push_back(state_of(t[i]));
            }
        } else if (t[0] == "trans") {
            if (t.size() != 4) {
                problems.push_back(at_line(line.number) + "expected 'trans <src> <color> <dst>'");
                continue;
            }
            const StateIndex src = state_of(t[1]);
            const StateIndex dst = state_of(t[3]);
            trans.push_back({line.number, src, t[2], dst});
        } else {
            problems.push_back(at_line(line.number) + "unknown directive '" + t[0] + "'");
        }
    }
    if (!initial) {
        problems.push_back("missing 'initial' line");
    }
    if (!have_alphabet) {
        problems.push_back("missing 'alphabet' line");
    }
    if (!problems.empty()) {
        fail("invalid DFA", problems);
    }

    Dfa d(states, alphabet, *initial, accepting);
    std::map<std::pair<StateIndex, std::size_t>, std::size_t> defined_at;
    for (const auto& tr : trans) {
        const auto ci = d.color_index(Color{tr.color});
        if (!ci) {
            problems.push_back(at_line(tr.line) + "color '" + tr.color + "' is not in the alphabet");
            continue;
        }
        if (auto existing = d.transition(tr.src, *ci)) {
            if (*existing != tr.dst) {
                problems.push_back(at_line(tr.line) + "nondeterministic: (" + states[tr.src] + ", " + tr.color +
                                   ") already leads to '" + states[*existing] + "' (line " +
                                   std::to_string(defined_at[{tr.src, *ci}]) + ")");
            }
            continue;
        }
        defined_at[{tr.src, *ci}] = tr.line;
        d.set_transition(tr.src, *ci, tr.dst);
    }
    if (!problems.empty()) {
        fail("invalid DFA", problems);
    }
    return d;
}

std::string serialize_arena(const Arena& a) {
    std::ostringstream os;
    for (const auto& v : a.vertices()) {
        os << "vertex " << v.id << ' ' << to_int(v.owner) << ' ' << v.color.symbol << '\n';
    }
    for (const auto& e : a.edges()) {
        os << "edge " << a.vertices()[e.src].id << ' ' << a.vertices()[e.dst].id << ' ' << e.weight << '\n';
    }
    return os.str();
}

std::string serialize_dfa(const Dfa& d) {
    std::ostringstream os;
    os << "alphabet";
    for (const auto& c : d.alphabet()) {
        os << ' ' << c.symbol;
    }
    os << "\nstates";
    for (const auto& q : d.states()) {
        os << ' ' << q;
    }
    os << "\ninitial " << d.states()[d.initial()] << "\naccepting";
    for (StateIndex q : d.accepting_states()) {
        os << ' ' << d.states()[q];
    }
    os << '\n';
    for (StateIndex q = 0; q < d.num_states(); ++q) {
        for (std::size_t c = 0; c < d.alphabet().size(); ++c) {
            if (auto t = d.transition(q, c)) {
                os << "trans " << d.states()[q] << ' ' << d.alphabet()[c].symbol << ' ' << d.states()[*t] << '\n';
            }
        }
    }
    return os.str();
}

std::string serialize_strategy(const FiniteStateStrategy& s) {
    std::ostringstream os;
    const auto& mem = s.memory;
    const std::size_t n = mem.num_vertices();
    os << "strategy " << to_int(s.player) << ' ' << n << ' ' << mem.size << '\n';
    for (VertexIndex v = 0; v < n; ++v) {
        os << "init " << v << ' ' << mem.init[v] << '\n';
    }
    for (MemoryIndex m = 0; m < mem.size; ++m) {
        for (VertexIndex v = 0; v < n; ++v) {
            os << "upd " << m << ' ' << v << ' ' << mem.update(m, v) << '\n';
        }
    }
    for (VertexIndex v = 0; v < n; ++v) {
        for (MemoryIndex m = 0; m < mem.size; ++m) {
            if (s.next(v, m) != FiniteStateStrategy::kNoMove) {
                os << "nxt " << v << ' ' << m << ' ' << s.next(v, m) << '\n';
            }
        }
    }
    return os.str();
}

FiniteStateStrategy parse_strategy(const std::string& text) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "strategy" || lines[0].tokens.size() != 4) {
        throw InputError("strategy: expected header 'strategy <player> <vertices> <memory>'");
    }
    auto num = [](const Line& l, std::size_t i) {
        auto v = to_int<std::size_t>(l.tokens[i]);
        if (!v) {
            throw InputError(at_line(l.number) + "expected a nonnegative integer, got '" + l.tokens[i] + "'");
        }
        return *v;
    };
    const std::size_t player = num(lines[0], 1), n = num(lines[0], 2), msize = num(lines[0], 3);
    if (player > 1 || msize == 0) {
        throw InputError(at_line(lines[0].number) + "bad strategy header");
    }
    MemoryStructure mem;
    mem.size = msize;
    mem.init.assign(n, 0);
    mem.upd.assign(n * msize, 0);
    auto s = FiniteStateStrategy::blank(player == 0 ? Player::zero : Player::one, std::move(mem));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto& t = l.tokens;
        auto check = [&](bool ok) {
            if (!ok) {
                throw InputError(at_line(l.number) + "malformed or out-of-range '" + t[0] + "' line");
            }
        };
        if (t[0] == "init") {
            check(t.size() == 3);
            const auto v = num(l, 1), m = num(l, 2);
            check(v < n && m < msize);
            s.memory.init[v] = m;
        } else if (t[0] == "upd") {
            check(t.size() == 4);
            const auto m = num(l, 1), v = num(l, 2), m2 = num(l, 3);
            check(v < n && m < msize && m2 < msize);
            s.memory.upd[m * n + v] = m2;
        } else if (t[0] == "nxt") {
            check(t.size() == 4);
            const auto v = num(l, 1), m = num(l, 2), to = num(l, 3);
            check(v < n && m < msize && to < n);
            s.set_next(v, m, to);
        } else {
            throw InputError(at_line(l.number) + "unknown directive '" + t[0] + "'");
        }
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << contents)) {
        throw InputError("cannot write '" + path + "'");
    }
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

const char* shape_of(Player p) { return p == Player::zero ? "ellipse" : "box"; }

} // namespace

std::string export_dot(const Arena& a) {
    std::ostringstream os;
    os << "digraph arena {\n";
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        const auto& r = a.vertices()[v];
        os << "  n" << v << " [label=" << quoted(r.id + " : " + r.color.symbol) << ", shape=" << shape_of(r.owner)
           << "];\n";
    }
    for (const auto& e : a.edges()) {
        os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << e.weight << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const ProductArena& p, const FiniteStateStrategy* overlay) {
    const auto& g = p.graph();
    std::ostringstream os;
    os << "digraph product {\n";
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        os << "  n" << v << " [label=" << quoted(p.label(v)) << ", shape=" << shape_of(g.owner(v));
        if (p.is_goal(v)) {
            os << ", peripheries=2";
        }
        os << "];\n";
    }
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        for (const auto& s : g.successors(v)) {
            os << "  n" << v << " -> n" << s.target << " [label=\"" << s.weight << "\"];\n";
        }
    }
    if (overlay != nullptr) {
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            if (g.owner(v) != overlay->player) {
                continue;
            }
            for (MemoryIndex m = 0; m < overlay->memory.size; ++m) {
                const VertexIndex to = overlay->next(v, m);
                os << "  n" << v << " -> n" << to << " [color=red, penwidth=2, style=bold, label=\"m" << m
                   << "\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace wlg

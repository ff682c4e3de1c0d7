#pragma once

#include <optional>
#include <string>

#include "wlg/game.hpp"
#include "wlg/product.hpp"

namespace wlg {

/// Parses the line format
///   vertex <id> <0|1> <color>
///   edge <src> <dst> <weight>
/// with '#' comments. Vertex indices follow declaration order. Throws
/// InputError listing every problem with its line number.
Arena parse_arena(const std::string& text);

/// Parses the line format
///   alphabet <color>...
///   states <state>...          (optional)
///   initial <state>
///   accepting [<state>...]
///   trans <src> <color> <dst>
/// States are declared by first mention; an optional `states` line fixes
/// their order up front. The result is structurally checked
/// (initial present, deterministic); validate_dfa covers the rest.
Dfa parse_dfa(const std::string& text);

std::string serialize_arena(const Arena& a);
std::string serialize_dfa(const Dfa& d);

/// Index-based strategy format:
///   strategy <player> <vertices> <memory>
///   init <v> <m>
///   upd <m> <v> <m'>
///   nxt <v> <m> <v'>
std::string serialize_strategy(const FiniteStateStrategy& s);
FiniteStateStrategy parse_strategy(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Player-0 vertices as ellipses, Player-1 vertices as boxes, edge labels
/// are weights.
std::string export_dot(const Arena& a);

/// As above for the product; goal vertices are double-bordered. With a
/// strategy over the product, each (vertex, memory) move is drawn as an
/// extra highlighted edge labeled with the memory state.
std::string export_dot(const ProductArena& p, const FiniteStateStrategy* overlay = nullptr);

} // namespace wlg

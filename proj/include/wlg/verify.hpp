#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlg/game.hpp"
#include "wlg/reach.hpp"

namespace wlg {

struct VerifyOptions {
    /// Random adversary strategies simulated per vertex and player.
    std::size_t behaviors = 50;
    std::size_t adversary_memory = 3;
    std::uint64_t seed = 0;
    Exec exec = Exec::parallel;
};

struct InstanceCheck {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Cross-checks both solvers against the oracles on one instance, and
/// asserts the fixed-point, bound, monotonicity and optimality properties.
InstanceCheck check_instance(const Arena& a, const Dfa& d, const VerifyOptions& opts);

/// Checks the local optimality and settling-time conditions of a
/// reachability fixed point; returns violations.
std::vector<std::string> audit_reach_solution(const GameGraph& g, const ReachSolution& sol);

} // namespace wlg

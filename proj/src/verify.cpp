#include "wlg/verify.hpp"

#include <random>

#include "wlg/limit.hpp"
#include "wlg/oracle.hpp"
#include "wlg/product.hpp"

namespace wlg {

std::vector<std::string> audit_reach_solution(const GameGraph& g, const ReachSolution& sol) {
    std::vector<std::string> out;
    auto report = [&](VertexIndex v, const std::string& what) {
        out.push_back("vertex " + std::to_string(v) + ": " + what);
    };
    const auto& r = sol.ranks;
    const auto& ts = sol.settling;
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        if (r[v].is_infinite() != (ts[v] == 0)) {
            report(v, "rank is INFINITY but settling time is not 0, or vice versa");
        }
        if (sol.goal[v]) {
            if (r[v] != Rank(0) || ts[v] != 1) {
                report(v, "goal vertex without rank 0 and settling time 1");
            }
            continue;
        }
        bool witness = false;
        bool settled_witness = false;
        for (const auto& s : g.successors(v)) {
            const Rank via = r[s.target] + s.weight;
            if (g.owner(v) == Player::zero && r[v] > via) {
                report(v, "Player-0 rank exceeds w + r of a successor");
            }
            if (g.owner(v) == Player::one && r[v] < via) {
                report(v, "Player-1 rank below w + r of a successor");
            }
            if (via == r[v]) {
                witness = true;
                settled_witness = settled_witness || ts[v] == ts[s.target] + 1;
                if (g.owner(v) == Player::one && r[v].is_finite() && r[v] == r[s.target] && ts[v] <= ts[s.target]) {
                    report(v, "Player-1 zero-weight optimal edge without settling-time decrease");
                }
            }
        }
        if (!witness) {
            report(v, "no successor realizes the rank");
        }
        if (g.owner(v) == Player::zero && r[v].is_finite() && !settled_witness) {
            report(v, "no optimal successor with settling time one less");
        }
    }
    return out;
}

InstanceCheck check_instance(const Arena& a, const Dfa& d, const VerifyOptions& opts) {
    InstanceCheck check;
    auto fail = [&](const std::string& what) { check.failures.push_back(what); };

    const ProductArena p = build_product(a, d);
    const GameGraph& g = p.graph();
    const VertexSet& goal = p.goal();
    const std::size_t n = g.num_vertices();
    const Weight w_max = g.max_weight();
    const std::uint64_t value_bound = checked_mul(n + 1, w_max).value_or(Rank::kMaxFinite);
    const std::uint64_t reach_bound = checked_mul(n, w_max).value_or(Rank::kMaxFinite);

    // Reachability: oracle, fixed-point audit, iteration and value bounds.
    const ReachSolution reach = reach_fixpoint(g, goal, opts.exec);
    if (reach.ranks != oracle_reach_value(g, goal, opts.exec)) {
        fail("reach fixed point differs from the reach oracle");
    }
    for (const auto& v : audit_reach_solution(g, reach)) {
        fail("reach audit: " + v);
    }
    {
        Ranking cur(n, kInfinity);
        for (std::size_t j = 0; j <= reach.iterations; ++j) {
            Ranking next = reach_step(g, goal, cur, opts.exec);
            for (VertexIndex v = 0; v < n; ++v) {
                if (next[v] > cur[v]) {
                    fail("reach sequence increased at iteration " + std::to_string(j + 1));
                }
            }
            cur = std::move(next);
        }
        if (cur != reach.ranks) {
            fail("replayed reach sequence does not end at the fixed point");
        }
    }
    if (reach.iterations > n + 1) {
        fail("reach iterations exceed |V|*|Q| + 1");
    }
    for (Rank r : reach.ranks) {
        if (r.is_finite() && r.value() > reach_bound) {
            fail("reach value exceeds |V|*|Q|*W");
        }
    }

    // Limit game.
    const LimitSolution lim = limit_fixpoint(g, goal, opts.exec);
    if (lim.ranks != oracle_limit_value(g, goal, opts.exec)) {
        fail("limit fixed point differs from the threshold oracle");
    }
    if (lim.iterations > p.num_goal() + 1) {
        fail("limit iterations exceed |F| + 1");
    }
    for (std::size_t j = 0; j < lim.history.size(); ++j) {
        for (VertexIndex v = 0; v < n; ++v) {
            const Rank r = lim.history[j].ranks[v];
            if (r.is_finite() && r.value() > value_bound) {
                fail("limit rank above (|V|*|Q| + 1) * W at iteration " + std::to_string(j));
            }
            if (j > 0 && r < lim.history[j - 1].ranks[v]) {
                fail("limit sequence decreased at iteration " + std::to_string(j));
            }
        }
        const auto& h = lim.history[j].hierarchy;
        for (std::size_t lvl = 0; lvl + 1 < h.size(); ++lvl) {
            for (VertexIndex v = 0; v < n; ++v) {
                if (h.inner[lvl].ranks[v] < h.inner[lvl + 1].ranks[v]) {
                    fail("goal-set monotonicity violated between levels");
                }
            }
        }
        for (std::size_t lvl = 0; lvl < h.size(); ++lvl) {
            for (const auto& v : audit_reach_solution(g, h.inner[lvl])) {
                fail("inner reach audit: " + v);
            }
        }
    }
    if (limit_step(g, goal, lim.ranks, opts.exec).first != lim.ranks) {
        fail("limit fixed point is not stable");
    }

    // Regions.
    const VertexSet buchi = buchi_solve(g, goal);
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        if (lim.ranks[p.entry(v)].is_finite() != buchi[p.entry(v)]) {
            fail("winning region differs from the Buchi solver at " + a.vertices()[v].id);
        }
    }

    // Strategies.
    const auto sigma = extract_limit_strategy_p0(g, goal, lim);
    const auto tau = extract_limit_strategy_p1(g, goal, lim);
    const auto [sigma_r, tau_r] = extract_reach_strategies(g, reach);
    const auto flat = compose_strategy(a.graph(), p.memory(), sigma);
    const std::size_t f = d.num_accepting();
    if (f > 0 && flat.memory.size > a.num_vertices() * d.num_states() * f) {
        fail("flattened Player-0 memory exceeds |V|*s*f");
    }

    std::mt19937_64 rng(opts.seed);
    for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
        const VertexIndex e = p.entry(v);
        const std::string id = a.vertices()[v].id;
        if (eval_limit_value(g, goal, simulate_duel(g, sigma, tau, e)) != lim.ranks[e]) {
            fail("limit duel value differs from r* at " + id);
        }
        if (eval_reach_value(g, goal, simulate_duel(g, sigma_r, tau_r, e)) != reach.ranks[e]) {
            fail("reach duel value differs from r* at " + id);
        }
        for (std::size_t b = 0; b < opts.behaviors; ++b) {
            const auto adv1 = random_strategy(g, Player::one, opts.adversary_memory, rng);
            const auto adv0 = random_strategy(g, Player::zero, opts.adversary_memory, rng);
            if (eval_limit_value(g, goal, simulate_duel(g, sigma, adv1, e)) > lim.ranks[e]) {
                fail("sigma exceeds r* against a random opponent at " + id);
            }
            if (eval_limit_value(g, goal, simulate_duel(g, adv0, tau, e)) < lim.ranks[e]) {
                fail("tau falls below r* against a random opponent at " + id);
            }
            if (eval_reach_value(g, goal, simulate_duel(g, sigma_r, adv1, e)) > reach.ranks[e]) {
                fail("reach sigma exceeds r* against a random opponent at " + id);
            }
            if (eval_reach_value(g, goal, simulate_duel(g, adv0, tau_r, e)) < reach.ranks[e]) {
                fail("reach tau falls below r* against a random opponent at " + id);
            }
        }
    }
    return check;
}

} // namespace wlg

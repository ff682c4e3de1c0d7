// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "wlg/cli.hpp"
#include "wlg/io.hpp"
#include "wlg/limit.hpp"
#include "wlg/oracle.hpp"
#include "wlg/verify.hpp"

using namespace wlg;

namespace {

constexpr std::size_t kInstances = 250;
constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kBehaviors = 50;

struct Criterion {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
    std::string note;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            if (failures == 0) {
                first_failure = what;
            }
            ++failures;
        }
    }
};

std::string data(const std::string& name) { return std::string(WLG_DATA_DIR) + "/" + name; }

bool within(Rank r, std::uint64_t bound) { return r.is_infinite() || r.value() <= bound; }

} // namespace

int main() {
    std::vector<Criterion> c{
        {"oracle equivalence, limit values"},
        {"oracle equivalence, reachability values"},
        {"optimality sandwich"},
        {"iteration bounds"},
        {"value bound (|V|*|Q| + 1) * W"},
        {"memory bound |V|*s*f"},
        {"region refinement"},
        {"monotonicity suites"},
        {"worked-example regression"},
        {"post-fixpoint audit of the reachability fixed point"},
    };
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(kSeed);
    std::size_t empty_f = 0;
    std::size_t empty_f_memory_violations = 0;

    for (std::size_t i = 0; i < kInstances; ++i) {
        GenParams params;
        params.max_vertices = 6;
        params.max_dfa_states = 4;
        params.max_out_degree = 3;
        params.max_weight = 5;
        params.seed = kSeed + i;
        const auto [a, d] = gen_random_instance(params);
        const ProductArena p = build_product(a, d);
        const GameGraph& g = p.graph();
        const VertexSet& goal = p.goal();
        const std::size_t n = g.num_vertices();
        const std::uint64_t value_bound = (n + 1) * g.max_weight();
        const std::string tag = "instance seed " + std::to_string(params.seed);

        const ReachSolution reach = reach_fixpoint(g, goal, Exec::serial);
        const LimitSolution lim = limit_fixpoint(g, goal, Exec::serial);

        // 1
        const Ranking limit_oracle = oracle_limit_value(g, goal);
        for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
            c[0].check(lim.ranks[p.entry(v)] == limit_oracle[p.entry(v)], tag + ", vertex " + a.vertices()[v].id);
        }

        // 2
        const Ranking reach_oracle = oracle_reach_value(g, goal);
        for (VertexIndex v = 0; v < n; ++v) {
            c[1].check(reach.ranks[v] == reach_oracle[v], tag + ", product vertex " + p.label(v));
        }

        // 3
        const auto sigma = extract_limit_strategy_p0(g, goal, lim);
        const auto tau = extract_limit_strategy_p1(g, goal, lim);
        for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
            const VertexIndex e = p.entry(v);
            const std::string where = tag + ", vertex " + a.vertices()[v].id;
            c[2].check(eval_limit_value(p, simulate_duel(g, sigma, tau, e)) == lim.ranks[e], where + ": duel");
            for (std::size_t b = 0; b < kBehaviors; ++b) {
                const auto adv1 = random_strategy(g, Player::one, 3, rng);
                const auto adv0 = random_strategy(g, Player::zero, 3, rng);
                c[2].check(eval_limit_value(p, simulate_duel(g, sigma, adv1, e)) <= lim.ranks[e],
                           where + ": sigma above r*");
                c[2].check(eval_limit_value(p, simulate_duel(g, adv0, tau, e)) >= lim.ranks[e],
                           where + ": tau below r*");
            }
        }

        // 4: r* is reached by r_{|V||Q|+1} and r_{|F|+1}.
        c[3].check(reach.iterations <= n + 1, tag + ": reach iterations");
        c[3].check(lim.iterations <= p.num_goal() + 1, tag + ": limit iterations");
        {
            Ranking r(n, kInfinity);
            for (std::size_t j = 0; j < n + 1; ++j) {
                r = reach_step(g, goal, r, Exec::serial);
            }
            c[3].check(r == reach.ranks, tag + ": r_{|V||Q|+1} differs from the reach fixed point");
            Ranking l(n, Rank(0));
            for (std::size_t j = 0; j < p.num_goal() + 1; ++j) {
                l = limit_step(g, goal, l, Exec::serial).first;
            }
            c[3].check(l == lim.ranks, tag + ": r_{|F|+1} differs from the limit fixed point");
        }

        // 5
        for (const Rank r : reach.ranks) {
            c[4].check(within(r, value_bound), tag + ": reach value");
        }
        for (const auto& it : lim.history) {
            for (VertexIndex v = 0; v < n; ++v) {
                c[4].check(within(it.ranks[v], value_bound), tag + ": limit iterate");
            }
            for (std::size_t h = 0; h < it.hierarchy.size(); ++h) {
                for (VertexIndex v = 0; v < n; ++v) {
                    c[4].check(within(it.hierarchy.inner[h].ranks[v], value_bound), tag + ": inner ranking");
                    c[4].check(within(it.hierarchy.completed[h][v], value_bound), tag + ": completed ranking");
                }
            }
        }

        // 6
        const auto flat = compose_strategy(a.graph(), p.memory(), sigma);
        const std::size_t f = d.num_accepting();
        const bool memory_ok = flat.memory.size <= a.num_vertices() * d.num_states() * f;
        c[5].check(memory_ok, tag + ": memory " + std::to_string(flat.memory.size) + " with f = " +
                                  std::to_string(f));
        if (f == 0) {
            ++empty_f;
            empty_f_memory_violations += memory_ok ? 0 : 1;
        }

        // 7
        const WinningRegions regions = winning_regions(p, lim);
        const VertexSet buchi = buchi_solve(g, goal);
        std::vector<VertexIndex> buchi_w0, buchi_w1;
        for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
            (buchi[p.entry(v)] ? buchi_w0 : buchi_w1).push_back(v);
        }
        c[6].check(regions.w0 == buchi_w0 && regions.w1 == buchi_w1, tag);

        // 8
        {
            Ranking cur(n, kInfinity);
            for (std::size_t j = 0; j <= reach.iterations; ++j) {
                const Ranking next = reach_step(g, goal, cur, Exec::serial);
                for (VertexIndex v = 0; v < n; ++v) {
                    c[7].check(next[v] <= cur[v], tag + ": reach sequence increased");
                }
                cur = next;
            }
        }
        for (std::size_t j = 1; j < lim.history.size(); ++j) {
            for (VertexIndex v = 0; v < n; ++v) {
                c[7].check(lim.history[j].ranks[v] >= lim.history[j - 1].ranks[v], tag + ": limit sequence decreased");
            }
        }
        for (const auto& it : lim.history) {
            const auto& h = it.hierarchy;
            for (std::size_t lvl = 0; lvl + 1 < h.size(); ++lvl) {
                for (VertexIndex v = 0; v < n; ++v) {
                    c[7].check(h.inner[lvl].ranks[v] >= h.inner[lvl + 1].ranks[v], tag + ": goal-set monotonicity");
                }
            }
        }

        // 10
        for (const auto& msg : audit_reach_solution(g, reach)) {
            c[9].check(false, tag + ": " + msg);
        }
        c[9].check(true, tag);
        for (const auto& it : lim.history) {
            for (const auto& inner : it.hierarchy.inner) {
                for (const auto& msg : audit_reach_solution(g, inner)) {
                    c[9].check(false, tag + ", inner level: " + msg);
                }
            }
        }
    }

    // 9
    {
        const Dfa db = parse_dfa(read_file(data("db.dfa")));
        struct Expect {
            const char* file;
            Rank value;
            std::size_t limit_iterations;
        };
        for (const Expect& e : {Expect{"g1.arena", Rank(5), 2}, Expect{"g2.arena", Rank(4), 1},
                                Expect{"ginf.arena", kInfinity, 1}}) {
            const Arena a = parse_arena(read_file(data(e.file)));
            const LimitGameSolution s = solve_limit_game(a, db);
            for (VertexIndex v = 0; v < a.num_vertices(); ++v) {
                c[8].check(s.value(v) == e.value, std::string(e.file) + ": value at " + a.vertices()[v].id + " is " +
                                                      s.value(v).to_string());
            }
            c[8].check(s.solution.iterations == e.limit_iterations, std::string(e.file) + ": limit iterations");
        }
        const ProductArena p1 = build_product(parse_arena(read_file(data("g1.arena"))), db);
        c[8].check(reach_fixpoint(p1, p1.goal()).iterations == 3, "g1.arena: reach iterations");
        const VertexSet single = [&] {
            VertexSet s(p1.num_vertices(), false);
            s[p1.index(1, *db.state_index("qb"))] = true;
            return s;
        }();
        const ReachSolution rs = reach_fixpoint(p1, single);
        c[8].check(rs.ranks == Ranking{Rank(2), Rank(2), Rank(5), Rank(0)} &&
                       rs.settling == std::vector<std::size_t>{2, 2, 3, 1},
                   "g1.arena: reach ranks and settling times for goal (v1,qb)");

        const LimitSolution sol = limit_fixpoint(p1);
        const Lasso duel = simulate_duel(p1.graph(), extract_limit_strategy_p0(p1.graph(), p1.goal(), sol),
                                         extract_limit_strategy_p1(p1.graph(), p1.goal(), sol), p1.entry(0));
        c[8].check(eval_limit_value(p1, duel) == Rank(5), "g1.arena: duel lasso value");
        std::ostringstream out, err;
        const int status = run_command({"eval", "--arena", data("g1.arena"), "--dfa", data("db.dfa"), "--cycle",
                                        "v0,v1"},
                                       out, err);
        c[8].check(status == 0 && out.str() == "limit value 5\n", "eval command: " + out.str() + err.str());
    }

    if (empty_f > 0) {
        c[5].note = std::to_string(empty_f) + " instances have no accepting DFA state (f = 0), where the bound is 0 "
                    "but every memory structure has at least one state; " +
                    std::to_string(empty_f_memory_violations) + " of the " + std::to_string(c[5].failures) +
                    " violations are such instances";
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool all = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const bool ok = c[k].failures == 0;
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << (k + 1) << ": " << c[k].name << " ("
                  << c[k].checks << " checks, " << c[k].failures << " failures)";
        if (!ok) {
            std::cout << "; first: " << c[k].first_failure;
        }
        std::cout << '\n';
        if (!c[k].note.empty()) {
            std::cout << "      note: " << c[k].note << '\n';
        }
    }
    std::printf("%zu instances, %zu behaviors per side and vertex, seed %llu, %.1f s\n", kInstances, kBehaviors,
                static_cast<unsigned long long>(kSeed), seconds);
    return all ? 0 : 1;
}

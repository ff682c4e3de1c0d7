#include "wlg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "wlg/errors.hpp"
#include "wlg/io.hpp"
#include "wlg/limit.hpp"
#include "wlg/oracle.hpp"
#include "wlg/report.hpp"
#include "wlg/verify.hpp"

namespace wlg {

namespace {

std::vector<std::string> split_ids(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) {
            throw InputError("empty vertex id in list '" + list + "'");
        }
        out.push_back(item);
    }
    return out;
}

struct Inputs {
    Arena arena;
    Dfa dfa;
};

Inputs load(const std::string& arena_path, const std::string& dfa_path) {
    Inputs in;
    try {
        in.arena = parse_arena(read_file(arena_path));
    } catch (const InputError& e) {
        throw InputError(arena_path + ": " + e.what());
    }
    try {
        in.dfa = parse_dfa(read_file(dfa_path));
    } catch (const InputError& e) {
        throw InputError(dfa_path + ": " + e.what());
    }
    if (auto r = validate_dfa(in.dfa, in.arena.colors()); !r.ok()) {
        throw InputError(dfa_path + ": invalid DFA:\n" + r.to_string());
    }
    return in;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver for weighted limit games over DFA specifications", "wlg"};
    app.require_subcommand(1);

    std::string arena_path, dfa_path, vertex, dot_path, stem, cycle, out_arena, out_dfa;
    bool json = false, strategies = false, serial = false, reach_mode = false;
    std::size_t trials = 50, behaviors = 50;
    std::uint64_t seed = 0;
    GenParams gen;

    auto* solve = app.add_subcommand("solve", "Optimal values, winning regions and strategies of the limit game");
    solve->add_option("--arena", arena_path, "Arena file")->required();
    solve->add_option("--dfa", dfa_path, "DFA file")->required();
    solve->add_option("--vertex", vertex, "Report only this vertex");
    solve->add_flag("--strategies", strategies, "Include strategy tables");
    solve->add_flag("--json", json, "JSON output");
    solve->add_option("--dot", dot_path, "Write the product arena with the Player-0 strategy as DOT");
    solve->add_flag("--serial", serial, "Use the serial reference kernels");

    auto* solve_reach = app.add_subcommand("solve-reach", "Values and positional strategies of the reachability game");
    solve_reach->add_option("--arena", arena_path, "Arena file")->required();
    solve_reach->add_option("--dfa", dfa_path, "DFA file")->required();
    solve_reach->add_flag("--json", json, "JSON output");

    auto* eval = app.add_subcommand("eval", "Value of an ultimately periodic play");
    eval->add_option("--arena", arena_path, "Arena file")->required();
    eval->add_option("--dfa", dfa_path, "DFA file")->required();
    eval->add_option("--stem", stem, "Comma-separated vertex ids");
    eval->add_option("--cycle", cycle, "Comma-separated vertex ids")->required();
    eval->add_flag("--reach", reach_mode, "Reachability value instead of the limit value");

    auto* verify = app.add_subcommand("verify", "Cross-check solvers against the oracles on random instances");
    verify->add_option("--trials", trials, "Number of instances")->required();
    verify->add_option("--seed", seed, "Random seed")->required();
    verify->add_option("--max-vertices", gen.max_vertices, "Largest arena")->check(CLI::PositiveNumber);
    verify->add_option("--max-states", gen.max_dfa_states, "Largest DFA")->check(CLI::PositiveNumber);
    verify->add_option("--max-weight", gen.max_weight, "Largest edge weight")->check(CLI::PositiveNumber);
    verify->add_option("--max-degree", gen.max_out_degree, "Largest out-degree")->check(CLI::PositiveNumber);
    verify->add_option("--behaviors", behaviors, "Random adversaries per vertex");

    auto* gencmd = app.add_subcommand("gen", "Generate a random instance");
    gencmd->add_option("--seed", seed, "Random seed")->required();
    gencmd->add_option("--max-vertices", gen.max_vertices, "Largest arena")->check(CLI::PositiveNumber);
    gencmd->add_option("--max-states", gen.max_dfa_states, "Largest DFA")->check(CLI::PositiveNumber);
    gencmd->add_option("--max-weight", gen.max_weight, "Largest edge weight")->check(CLI::PositiveNumber);
    gencmd->add_option("--max-degree", gen.max_out_degree, "Largest out-degree")->check(CLI::PositiveNumber);
    gencmd->add_option("--accepting-fraction", gen.accepting_fraction, "Probability a non-initial state accepts");
    gencmd->add_option("--out-arena", out_arena, "Arena output path")->required();
    gencmd->add_option("--out-dfa", out_dfa, "DFA output path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "wlg: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    const Exec exec = serial ? Exec::serial : Exec::parallel;
    try {
        if (solve->parsed()) {
            const auto in = load(arena_path, dfa_path);
            const auto t0 = std::chrono::steady_clock::now();
            const auto sol = solve_limit_game(in.arena, in.dfa, exec, strategies || !dot_path.empty());
            SolveReport report = make_limit_report(in.arena, sol, strategies);
            report.diagnostics.wall_ms = elapsed_ms(t0);
            if (!vertex.empty()) {
                in.arena.index_of(vertex);
                std::erase_if(report.rows, [&](const SolveReport::Row& r) { return r.id != vertex; });
            }
            if (!dot_path.empty()) {
                write_file(dot_path, export_dot(sol.product, &sol.sigma_product));
            }
            out << (json ? report.to_json(in.arena).dump(2) + "\n" : report.to_text(in.arena));
        } else if (solve_reach->parsed()) {
            const auto in = load(arena_path, dfa_path);
            const auto t0 = std::chrono::steady_clock::now();
            const ProductArena p = build_product(in.arena, in.dfa);
            const ReachSolution sol = reach_fixpoint(p, p.goal(), exec);
            const auto [s0, s1] = extract_reach_strategies(p.graph(), sol);
            SolveReport report = make_reach_report(in.arena, p, sol, s0, s1);
            report.diagnostics.wall_ms = elapsed_ms(t0);
            out << (json ? report.to_json(in.arena).dump(2) + "\n" : report.to_text(in.arena));
        } else if (eval->parsed()) {
            const auto in = load(arena_path, dfa_path);
            const ProductArena p = build_product(in.arena, in.dfa);
            Lasso base;
            if (!stem.empty()) {
                for (const auto& id : split_ids(stem)) {
                    base.stem.push_back(in.arena.index_of(id));
                }
            }
            for (const auto& id : split_ids(cycle)) {
                base.cycle.push_back(in.arena.index_of(id));
            }
            const Lasso lifted = lift_lasso(p, base);
            const Rank value = reach_mode ? eval_reach_value(p, lifted) : eval_limit_value(p, lifted);
            out << (reach_mode ? "reach value " : "limit value ") << value << '\n';
        } else if (verify->parsed()) {
            std::mt19937_64 master(seed);
            std::size_t matches = 0;
            for (std::size_t i = 0; i < trials; ++i) {
                GenParams params = gen;
                params.seed = master();
                const auto [a, d] = gen_random_instance(params);
                VerifyOptions opts;
                opts.behaviors = behaviors;
                opts.seed = master();
                opts.exec = exec;
                const InstanceCheck check = check_instance(a, d, opts);
                if (check.ok()) {
                    ++matches;
                    continue;
                }
                err << "trial " << i << " (instance seed " << params.seed << "):\n";
                for (const auto& f : check.failures) {
                    err << "  " << f << '\n';
                }
            }
            out << matches << '/' << trials << " oracle matches\n";
            return matches == trials ? 0 : 1;
        } else if (gencmd->parsed()) {
            gen.seed = seed;
            const auto [a, d] = gen_random_instance(gen);
            write_file(out_arena, serialize_arena(a));
            write_file(out_dfa, serialize_dfa(d));
            out << "wrote " << out_arena << " (" << a.num_vertices() << " vertices) and " << out_dfa << " ("
                << d.num_states() << " states)\n";
        }
    } catch (const InputError& e) {
        err << "wlg: " << e.what() << '\n';
        return 1;
    } catch (const InvariantError& e) {
        err << "wlg: internal error: " << e.what() << '\n';
        return 2;
    } catch (const std::overflow_error& e) {
        err << "wlg: internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace wlg

#include <doctest.h>

#include <random>
#include <regex>

#include "fixtures.hpp"
#include "wlg/errors.hpp"
#include "wlg/oracle.hpp"

using namespace wlg;
using fixtures::R;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& what) {
    for (const auto& v : rep.violations) {
        if (v.what.find(what) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::vector<Color> word(std::initializer_list<const char*> symbols) {
    std::vector<Color> w;
    for (const char* s : symbols) {
        w.push_back(Color{s});
    }
    return w;
}

} // namespace

TEST_CASE("rank_add") {
    CHECK(rank_add(R(3), 4) == R(7));
    CHECK(rank_add(kInfinity, 5) == kInfinity);
    CHECK(rank_add(R(0), 0) == R(0));
    CHECK(R(Rank::kMaxFinite) < kInfinity);
    CHECK_THROWS_AS(rank_add(R(Rank::kMaxFinite), 1), std::overflow_error);
    CHECK_THROWS_AS(kInfinity.value(), InvariantError);
    CHECK(kInfinity.to_string() == "INFINITY");
    CHECK(parse_rank("inf") == kInfinity);
    CHECK(parse_rank("12") == R(12));
    CHECK_THROWS_AS(parse_rank("x"), InputError);
}

TEST_CASE("rank_add is monotone in both arguments") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> small(0, 50);
    for (int i = 0; i < 2000; ++i) {
        const Rank r1 = small(rng) == 0 ? kInfinity : R(small(rng));
        const Rank r2 = small(rng) == 0 ? kInfinity : R(small(rng));
        const Weight w1 = small(rng);
        const Weight w2 = small(rng);
        const auto [lo_r, hi_r] = std::minmax(r1, r2);
        const auto [lo_w, hi_w] = std::minmax(w1, w2);
        CHECK(rank_add(lo_r, lo_w) <= rank_add(hi_r, hi_w));
    }
}

TEST_CASE("validate_arena") {
    CHECK(validate_arena(fixtures::g1()).ok());

    Arena lonely({{"v0", Player::zero, Color{"a"}}}, {});
    CHECK(has_violation(validate_arena(lonely), "no outgoing edge"));

    Arena negative({{"v0", Player::zero, Color{"a"}}}, {{0, 0, -1}});
    CHECK(has_violation(validate_arena(negative), "negative weight"));

    Arena empty({}, {});
    CHECK(has_violation(validate_arena(empty), "no vertices"));

    Arena dangling({{"v0", Player::zero, Color{"a"}}}, {{0, 0, 1}, {0, 3, 1}});
    CHECK(has_violation(validate_arena(dangling), "target does not reference a vertex"));

    Arena twice({{"v0", Player::zero, Color{"a"}}}, {{0, 0, 1}, {0, 0, 2}});
    CHECK(has_violation(validate_arena(twice), "duplicate edge"));
}

TEST_CASE("validate_dfa") {
    const Dfa db = fixtures::db();
    CHECK(validate_dfa(db, {Color{"a"}, Color{"b"}}).ok());

    Dfa eps({"q0"}, {Color{"a"}}, 0, {0});
    eps.set_transition(0, 0, 0);
    CHECK(has_violation(validate_dfa(eps, {Color{"a"}}), "epsilon accepted"));

    Dfa partial({"q0", "qb"}, {Color{"a"}, Color{"b"}}, 0, {1});
    partial.set_transition(0, 0, 0);
    partial.set_transition(1, 0, 0);
    partial.set_transition(1, 1, 1);
    CHECK(has_violation(validate_dfa(partial, {Color{"a"}, Color{"b"}}), "transition table not total"));

    CHECK(has_violation(validate_dfa(db, {Color{"c"}}), "arena color not in DFA alphabet"));
}

TEST_CASE("dfa_run") {
    const Dfa db = fixtures::db();
    const StateIndex q0 = *db.state_index("q0");
    const StateIndex qb = *db.state_index("qb");
    CHECK(dfa_run(db, {}) == q0);
    CHECK(dfa_run(db, word({"a", "b"})) == qb);
    CHECK(dfa_run(db, word({"b", "a"})) == q0);
    CHECK_THROWS_AS(dfa_run(db, word({"a", "z"})), InputError);
}

TEST_CASE("dfa_run composes over concatenation") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenParams params;
        params.seed = seed;
        const auto [a, d] = gen_random_instance(params);
        std::uniform_int_distribution<std::size_t> len(0, 8);
        std::uniform_int_distribution<std::size_t> sym(0, d.alphabet().size() - 1);
        std::vector<Color> u, v;
        for (std::size_t i = len(rng); i > 0; --i) {
            u.push_back(d.alphabet()[sym(rng)]);
        }
        for (std::size_t i = len(rng); i > 0; --i) {
            v.push_back(d.alphabet()[sym(rng)]);
        }
        std::vector<Color> uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        CHECK(dfa_run(d, uv) == dfa_run_from(d, dfa_run(d, u), v));
    }
}

TEST_CASE("membership agrees with a regular expression for words ending in b") {
    const Dfa db = fixtures::db();
    const std::regex ends_in_b("[ab]*b");
    for (unsigned bits = 0; bits < (1u << 9); ++bits) {
        for (std::size_t len = 0; len <= 8; ++len) {
            std::vector<Color> w;
            std::string text;
            for (std::size_t i = 0; i < len; ++i) {
                const char* s = (bits >> i) & 1u ? "b" : "a";
                w.push_back(Color{s});
                text += s;
            }
            CHECK(dfa_accepts(db, w) == std::regex_match(text, ends_in_b));
        }
    }
}

TEST_CASE("check_lasso") {
    const GameGraph g = fixtures::g1().graph();
    CHECK_NOTHROW(check_lasso(g, Lasso{{}, {0, 1}}));
    CHECK_THROWS_AS(check_lasso(g, Lasso{{}, {}}), InputError);
    CHECK_THROWS_AS(check_lasso(g, Lasso{{}, {0}}), InputError);
    CHECK_THROWS_AS(check_lasso(g, Lasso{{0, 0}, {1, 0}}), InputError);
}

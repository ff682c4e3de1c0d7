#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "wlg/cli.hpp"

using fixtures::data_path;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = wlg::run_command(args, out, err);
    return {status, out.str(), err.str()};
}

} // namespace

TEST_CASE("solve on G1") {
    const Run r = run({"solve", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa")});
    CHECK(r.status == 0);
    CHECK(r.out.find("v0      5         W0") != std::string::npos);
    CHECK(r.out.find("v1      5         W0") != std::string::npos);
    CHECK(r.out.find("iterations 2") != std::string::npos);
}

TEST_CASE("solve with a single vertex, strategies and JSON") {
    const Run r = run({"solve", "--arena", data_path("g2.arena"), "--dfa", data_path("db.dfa"), "--vertex", "v0",
                       "--strategies", "--json"});
    CHECK(r.status == 0);
    CHECK(r.out.find("\"player0\"") != std::string::npos);
    CHECK(r.out.find("\"v1\": 4") == std::string::npos);
    CHECK(r.out.find("\"v0\": 4") != std::string::npos);
}

TEST_CASE("solve on the losing arena") {
    const Run r = run({"solve", "--arena", data_path("ginf.arena"), "--dfa", data_path("db.dfa")});
    CHECK(r.status == 0);
    CHECK(r.out.find("INFINITY  W1") != std::string::npos);
}

TEST_CASE("solve-reach and eval") {
    const Run reach = run({"solve-reach", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa")});
    CHECK(reach.status == 0);
    CHECK(reach.out.find("v0      2") != std::string::npos);
    CHECK(reach.out.find("v1      0") != std::string::npos);

    const Run lim = run({"eval", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa"), "--cycle", "v0,v1"});
    CHECK(lim.status == 0);
    CHECK(lim.out == "limit value 5\n");

    const Run rv = run({"eval", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa"), "--cycle", "v0,v1",
                        "--reach"});
    CHECK(rv.out == "reach value 2\n");

    const Run bad = run({"eval", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa"), "--cycle", "v0"});
    CHECK(bad.status == 1);
}

TEST_CASE("verify") {
    const Run r = run({"verify", "--seed", "7", "--trials", "50"});
    CHECK(r.status == 0);
    CHECK(r.out == "50/50 oracle matches\n");
}

TEST_CASE("gen writes a solvable instance") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string arena = (dir / "wlg_gen_test.arena").string();
    const std::string dfa = (dir / "wlg_gen_test.dfa").string();
    const Run g = run({"gen", "--seed", "3", "--out-arena", arena, "--out-dfa", dfa});
    CHECK(g.status == 0);
    CHECK(run({"solve", "--arena", arena, "--dfa", dfa}).status == 0);
    std::filesystem::remove(arena);
    std::filesystem::remove(dfa);
}

TEST_CASE("input errors exit with status 1") {
    const Run missing = run({"solve", "--arena", "missing.arena", "--dfa", data_path("db.dfa")});
    CHECK(missing.status == 1);
    CHECK(missing.err.find("missing.arena") != std::string::npos);

    const Run unknown = run({"frobnicate"});
    CHECK(unknown.status == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);

    const Run flag = run({"solve", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa"), "--bogus"});
    CHECK(flag.status == 1);

    const Run vertex = run({"solve", "--arena", data_path("g1.arena"), "--dfa", data_path("db.dfa"), "--vertex", "v9"});
    CHECK(vertex.status == 1);
}

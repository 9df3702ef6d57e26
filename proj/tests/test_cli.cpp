#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctt/cli.hpp"
#include "ctt/combinatorics.hpp"
#include "ctt/serialize.hpp"

using nlohmann::json;

namespace {

struct RunOutcome {
    int exit_code = 0;
    std::string out;
    std::string err;

    [[nodiscard]] json report() const { return json::parse(out); }
};

RunOutcome run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"ctt"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    RunOutcome r;
    r.exit_code = ctt::cli::run(int(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content)
        : path("/tmp/ctt_cli_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("queens subcommand reports count, ranks, and placements") {
    const RunOutcome r = run_cli({"queens", "--n", "6", "--find"});
    REQUIRE(r.exit_code == 0);
    const json rep = r.report();
    CHECK(rep.at("problem") == "queens");
    CHECK(rep.at("count") == 4);
    CHECK(rep.at("ranks").size() == 7);
    CHECK(rep.at("placement").is_array());
    CHECK(rep.at("wall_ms").is_null());
    CHECK(rep.at("seed").is_null());
    CHECK(r.err.find("count 4") != std::string::npos);

    const RunOutcome rounded = run_cli({"queens", "--n", "6", "--eps", "0"});
    const json rrep = rounded.report();
    CHECK(rrep.contains("ranks_rounded"));
    CHECK(std::abs(rrep.at("count_rounded").get<double>() - 4.0) < 1e-9);
}

TEST_CASE("timing flag switches wall_ms from null to a number") {
    const RunOutcome r = run_cli({"--timing", "queens", "--n", "4"});
    CHECK(r.report().at("wall_ms").is_number());
}

TEST_CASE("identical seeds give byte-identical reports") {
    const RunOutcome a = run_cli({"game", "majority", "--players", "7", "--seed", "123"});
    const RunOutcome b = run_cli({"game", "majority", "--players", "7", "--seed", "123"});
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const RunOutcome c = run_cli({"game", "majority", "--players", "7", "--seed", "124"});
    CHECK(a.out != c.out);
    CHECK(a.report().at("seed") == 123);
}

TEST_CASE("permanent subcommand reads CSV and compares to the oracle") {
    const TempFile m("perm.csv", "1,0.5\n0.25,1\n");
    const RunOutcome r = run_cli({"permanent", "--matrix", m.path, "--oracle"});
    REQUIRE(r.exit_code == 0);
    const json rep = r.report();
    CHECK(rep.at("value").get<double>() == doctest::Approx(1.125));
    CHECK(rep.at("oracle_value").get<double>() == doctest::Approx(1.125));
    CHECK(rep.at("rel_err").get<double>() <= 1e-12);
    CHECK(rep.at("ranks") == json::array({1, 2, 1}));
    CHECK(rep.at("op_count").at("total").get<std::int64_t>() > 0);

    const TempFile ragged("ragged.csv", "1,2\n3\n");
    CHECK(run_cli({"permanent", "--matrix", ragged.path}).exit_code == 1);
}

TEST_CASE("game subcommand accepts config files and flags consistency") {
    const TempFile cfg("game.json",
                       R"({"kind":"bankruptcy","players":3,)"
                       R"("params":{"claims":[2,4,6],"estate":6},"weights":"shapley"})");
    const RunOutcome r = run_cli({"game", "bankruptcy", "--config", cfg.path, "--oracle"});
    REQUIRE(r.exit_code == 0);
    const json rep = r.report();
    CHECK(rep.at("payoffs") == json::array({1.0, 2.0, 3.0}));
    CHECK(rep.at("oracle").at("max_rel_err").get<double>() <= 1e-12);
    CHECK(rep.at("seed").is_null()); // explicit instances report no seed

    // Kind on the command line must match the config.
    const RunOutcome clash = run_cli({"game", "shoes", "--config", cfg.path});
    CHECK(clash.exit_code == 1);
    CHECK(clash.report().at("error").at("type") == "invalid_argument");

    // No players and no config is a usage-level failure.
    CHECK(run_cli({"game", "majority"}).exit_code == 1);
}

TEST_CASE("sat subcommand counts and extracts models from DIMACS input") {
    const TempFile cnf("f.cnf", "c two clauses\np cnf 3 2\n1 -2 0\n2 3 0\n");
    const RunOutcome r = run_cli({"sat", "--cnf", cnf.path, "--count", "--model"});
    REQUIRE(r.exit_code == 0);
    const json rep = r.report();
    CHECK(rep.at("count") == 4);
    CHECK(rep.at("satisfiable") == true);
    CHECK(rep.at("assignment").size() == 3);

    const TempFile unsat("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    const json urep = run_cli({"sat", "--cnf", unsat.path, "--model"}).report();
    CHECK(urep.at("satisfiable") == false);
    CHECK(urep.at("assignment").is_null());

    const TempFile noheader("nh.cnf", "1 -2 0\n");
    CHECK(run_cli({"sat", "--cnf", noheader.path}).exit_code == 1);
}

TEST_CASE("knapsack and partition subcommands solve from config files") {
    const TempFile cfg("kn.json",
                       R"({"values":[60,100,120],"weights":[10,20,30],"capacities":50})");
    const json rep = run_cli({"knapsack", "--config", cfg.path}).report();
    CHECK(rep.at("feasible") == true);
    CHECK(rep.at("value").get<double>() == doctest::Approx(220.0));
    CHECK(rep.at("assignment") == json::array({0, 1, 1}));

    const TempFile set("set.json", "[1,5,11,5]");
    const json prep = run_cli({"partition", "--set", set.path, "--parts", "2"}).report();
    CHECK(prep.at("part_sums") == json::array({11, 11}));

    // The set may also be passed inline instead of through a file.
    const json irep = run_cli({"partition", "--set", "[1,5,11,5]", "--parts", "2"}).report();
    CHECK(irep.at("part_sums") == json::array({11, 11}));

    const TempFile odd("odd.json", "[1,2]");
    const json norep = run_cli({"partition", "--set", odd.path, "--parts", "2"}).report();
    CHECK(norep.at("assignment").is_null());
}

TEST_CASE("subsets and qtt-step subcommands verify themselves") {
    const json srep = run_cli({"subsets", "--n", "10", "--mod", "5"}).report();
    CHECK(srep.at("count") == 208);
    CHECK(srep.at("analytic") == 208);
    const json big = run_cli({"subsets", "--n", "2000", "--mod", "5"}).report();
    CHECK(big.at("count").is_string()); // beyond 2^53, shipped as a string
    CHECK(big.at("count").get<std::string>().size() == 602);

    const json qrep = run_cli({"qtt-step", "--d", "10", "--t", "341"}).report();
    CHECK(qrep.at("verified") == true);
    CHECK(qrep.at("ones") == 1024 - 1 - 341);
}

TEST_CASE("tt subcommands round, inspect, and evaluate saved tensors") {
    const std::string path = "/tmp/ctt_cli_saved.json";
    ctt::save_tensor(path, ctt::queens_tensor(5).tensor);
    const json info = run_cli({"tt", "info", "--in", path}).report();
    CHECK(info.at("d") == 5);
    CHECK(info.at("mode_sizes") == json::array({5, 5, 5, 5, 5}));
    CHECK(info.at("middle_index") == 5);
    // (0,2,4,1,3) places five mutually non-attacking queens.
    const json eval =
            run_cli({"tt", "eval", "--in", path, "--idx", "0,2,4,1,3"}).report();
    CHECK(eval.at("value").get<double>() == doctest::Approx(1.0));
    const json bad = run_cli({"tt", "eval", "--in", path, "--idx", "0,1,4,1,3"}).report();
    CHECK(bad.at("value").get<double>() == doctest::Approx(0.0));

    const std::string rounded_path = "/tmp/ctt_cli_saved_rounded.json";
    const json round =
            run_cli({"tt", "round", "--in", path, "--eps", "0", "--out", rounded_path})
                    .report();
    CHECK(round.at("ranks") == json(ctt::queens_tensor(5).tensor.ranks()));
    CHECK(round.at("ranks_rounded").size() == 6);
    const json eval2 =
            run_cli({"tt", "eval", "--in", rounded_path, "--idx", "0,2,4,1,3"}).report();
    CHECK(eval2.at("value").get<double>() == doctest::Approx(1.0));
    std::remove(path.c_str());
    std::remove(rounded_path.c_str());
}

TEST_CASE("bench emits CSV rows and a growth summary") {
    const RunOutcome r = run_cli({"bench", "permanent", "--n", "3..6", "--seed", "5"});
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line.find("n,value,") == 0);
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
    CHECK(r.err.find("total_ops ~ 2^(") != std::string::npos);

    const RunOutcome g = run_cli({"bench", "game", "majority", "--players", "3..5"});
    REQUIRE(g.exit_code == 0);
    CHECK(g.out.find("players,total_ops") == 0);
}

TEST_CASE("failures produce structured error objects and nonzero exits") {
    const RunOutcome usage = run_cli({"frobnicate"});
    CHECK(usage.exit_code == 2);
    CHECK(usage.report().at("error").at("type") == "usage");

    const RunOutcome toobig = run_cli({"queens", "--n", "30"});
    CHECK(toobig.exit_code == 1);
    CHECK(toobig.report().at("error").at("type") == "invalid_argument");

    const RunOutcome nofile = run_cli({"sat", "--cnf", "/does/not/exist.cnf"});
    CHECK(nofile.exit_code == 1);
    CHECK(nofile.report().at("error").at("type") == "runtime");

    const RunOutcome help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.err.find("Usage") != std::string::npos);
}

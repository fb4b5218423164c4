// End-to-end tests driving the installed CLI binary. The binary path
// arrives as argv[1] from CMake.

#define DOCTEST_CONFIG_IMPLEMENT

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

std::string g_cli;
int g_run_counter = 0;

struct CmdResult {
    int rc = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    const std::string out_path = "cli_out_" + std::to_string(g_run_counter) + ".txt";
    const std::string err_path = "cli_err_" + std::to_string(g_run_counter) + ".txt";
    ++g_run_counter;
    const std::string cmd = "'" + g_cli + "' " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CmdResult res;
    res.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

json results_of(const CmdResult& r) {
    const json doc = json::parse(r.out);
    REQUIRE(doc.at("schema_version").get<int>() == 1);
    REQUIRE(doc.contains("version"));
    REQUIRE(doc.contains("params"));
    REQUIRE(doc.contains("timings_ms"));
    return doc.at("results");
}

}  // namespace

TEST_CASE("help exits zero") {
    CHECK(run_cli("--help").rc == 0);
    CHECK(run_cli("tau --help").rc == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").rc == 2);                       // missing subcommand
    CHECK(run_cli("frobnicate").rc == 2);             // unknown subcommand
    CHECK(run_cli("er").rc == 2);                     // missing --q
    CHECK(run_cli("er --q 2 --bogus-flag").rc == 2);  // unknown flag
    CHECK(run_cli("er --q 6").rc == 2);               // not a prime power
    CHECK(run_cli("er --q 37").rc == 2);              // over the default cap
    CHECK(run_cli("er --q 2 --format dot").rc == 2);  // bad enum value
    CHECK(run_cli("tau").rc == 2);                    // neither --input nor --er
    CHECK(run_cli("tau --input a.g6 --er 3").rc == 2);  // mutually exclusive
    CHECK(run_cli("tau --input no_such_file.g6").rc == 2);
    CHECK(run_cli("search --n 9 --forbid c4").rc == 2);
    CHECK(run_cli("search --n 6").rc == 2);           // missing --forbid
    CHECK(run_cli("search --n 6 --forbid c5").rc == 2);
    CHECK(run_cli("bounds --q 13").rc == 2);          // hypothesis violated
    CHECK(run_cli("envelope --n 7").rc == 2);         // no preset chosen
    CHECK(run_cli("envelope --n 7 --edges 9 --k2t 2").rc == 2);  // two presets
    CHECK(run_cli("envelope --n 9 --c2k 2").rc == 2);            // --ck required
    CHECK(run_cli("envelope --n 9 --c2k 2 --ck x/y").rc == 2);   // bad rational
}

TEST_CASE("er reports the polarity graph profile") {
    const CmdResult r = run_cli("er --q 2 --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("n") == 7);
    CHECK(res.at("m") == 9);
    CHECK(res.at("absolute_points") == 3);
    CHECK(res.at("connected") == true);
    CHECK(res.at("degree_histogram") == json({{"2", 3}, {"3", 4}}));
}

TEST_CASE("er writes files that tau can read back") {
    const CmdResult w = run_cli("er --q 2 --out er2.edges --format edgelist --json");
    REQUIRE(w.rc == 0);
    const std::string contents = slurp("er2.edges");
    CHECK(contents.substr(0, 4) == "7 9\n");
    const CmdResult t = run_cli("tau --input er2.edges --json");
    REQUIRE(t.rc == 0);
    const json res = results_of(t);
    CHECK(res.at("tau") == "49");
    CHECK(res.at("engine_used") == "bareiss");
    std::remove("er2.edges");

    const CmdResult w6 = run_cli("er --q 3 --out er3.g6 --format graph6");
    REQUIRE(w6.rc == 0);
    CHECK(slurp("er3.g6") == "LGH?x`OwCIPDcc\n");
    const CmdResult t6 = run_cli("tau --input er3.g6 --json");
    REQUIRE(t6.rc == 0);
    CHECK(results_of(t6).at("tau") == "371293");
    std::remove("er3.g6");
}

TEST_CASE("tau --er cross-checks the closed form") {
    const CmdResult r = run_cli("tau --er 3 --engine crt --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("tau") == "371293");
    CHECK(res.at("closed_form") == "371293");
    CHECK(res.at("verdict") == "EQUAL");
    CHECK(res.at("engine_used") == "crt");
    CHECK(res.at("n") == 13);
    // plain text mode carries the same verdict
    const CmdResult plain = run_cli("tau --er 2");
    REQUIRE(plain.rc == 0);
    CHECK(plain.out.find("tau = 49") != std::string::npos);
    CHECK(plain.out.find("verdict = EQUAL") != std::string::npos);
}

TEST_CASE("verify runs the full identity suite") {
    const CmdResult r = run_cli("verify --q 5 --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("all_pass") == true);
    CHECK(res.at("multiplicity_each") == 15);
    bool saw_spectral = false;
    for (const auto& c : res.at("checks")) {
        CHECK(c.at("pass") == true);
        if (c.at("check") == "spectral_identity") saw_spectral = true;
    }
    CHECK(saw_spectral);
    CHECK(res.at("checks").size() == 8);
    CHECK(run_cli("verify --q 4 --json").rc == 0);
}

TEST_CASE("bounds at q = 17 with a deficit") {
    const CmdResult r = run_cli("bounds --q 17 --t 10 --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("hypothesis_satisfied") == true);
    CHECK(res.at("furedi_edges") == "2754");
    CHECK(res.at("furedi_valid") == true);
    CHECK(res.at("n") == 307);
    CHECK(res.at("deficit_bound").at("t") == 10);
    CHECK(res.at("deficit_bound").at("deficit_exponent") ==
          json({{"num", "-20"}, {"den", "19"}}));
    CHECK(res.at("deficit_bound").at("precision_bits") == 128);
    CHECK(res.at("leading_term").at("ordering_exact") == true);
    const double rl = res.at("leading_term").at("residual_lower").get<double>();
    const double ru = res.at("leading_term").at("residual_upper").get<double>();
    CHECK(rl < ru);
    CHECK(std::abs(rl) < 3.0);
    CHECK(std::abs(ru) < 3.0);
    // log_value string begins with the known leading digits of 152 ln 307
    const std::string lower = res.at("leading_term").at("log_lower").get<std::string>();
    CHECK(lower.substr(0, 7) == "870.480");
}

TEST_CASE("bounds below the hypothesis need --unchecked") {
    const CmdResult r = run_cli("bounds --q 2 --unchecked --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("hypothesis_satisfied") == false);
    CHECK(res.contains("warning"));
    CHECK(res.at("upper_bound") == json({{"num", "6912"}, {"den", "49"}}));
    CHECK_FALSE(res.contains("leading_term"));
}

TEST_CASE("envelope with an explicit edge budget") {
    const CmdResult r = run_cli("envelope --n 7 --edges 9 --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("edge_budget") == "9");
    CHECK(res.at("degree_sum") == "18");
    CHECK(res.at("envelope_P") == "6912");
    CHECK(res.at("tau_upper_bound") == json({{"num", "6912"}, {"den", "49"}}));
    CHECK(res.at("tau_upper_bound_text") == "6912/49");
}

TEST_CASE("envelope presets") {
    const CmdResult k = run_cli("envelope --n 16 --k2t 2 --json");
    REQUIRE(k.rc == 0);
    CHECK(results_of(k).at("edge_budget") == "32");
    const CmdResult c = run_cli("envelope --n 16 --c2k 2 --ck 1 --json");
    REQUIRE(c.rc == 0);
    CHECK(results_of(c).at("edge_budget") == "64");
    const CmdResult s = run_cli("envelope --n 9 --k2t 2 --slack 1/3 --json");
    REQUIRE(s.rc == 0);
    CHECK(results_of(s).at("edge_budget") == "17");
}

TEST_CASE("search over quadrilateral-free graphs") {
    const CmdResult r = run_cli("search --n 6 --forbid c4 --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("max_tau") == "14");
    CHECK(res.at("graphs_examined") == 4776);
    const CmdResult r7 = run_cli("search --n 7 --forbid c4 --workers 2 --json");
    REQUIRE(r7.rc == 0);
    const json res7 = results_of(r7);
    CHECK(res7.at("max_tau") == "49");
    CHECK(res7.at("polarity_q") == 2);
    CHECK(res7.at("polarity_tau") == "49");
    CHECK(res7.at("polarity_attains_max") == true);
    CHECK(res7.at("witness").size() == 9);
}

TEST_CASE("search warmup compares against the bipartite closed form") {
    const CmdResult r = run_cli("search --n 6 --forbid c3 --warmup --json");
    REQUIRE(r.rc == 0);
    const json res = results_of(r);
    CHECK(res.at("max_tau") == "81");
    CHECK(res.at("bipartite_tau") == "81");
    CHECK(res.at("guess_holds") == true);
    // maximal-only scoring reaches the same optimum
    const CmdResult m = run_cli("search --n 6 --forbid c3 --maximal-only --json");
    REQUIRE(m.rc == 0);
    CHECK(results_of(m).at("max_tau") == "81");
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli> [doctest args]\n", argv[0]);
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx(argc - 1, argv + 1);
    return ctx.run();
}

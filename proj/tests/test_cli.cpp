// exercises the installed binary end to end; expects the binary path and the
// configs directory as the two trailing argv entries (wired up in ctest)
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace {

std::string g_cli, g_configs;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code = -1;
    std::string out, err;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path();
    auto tag = std::to_string(getpid()) + "_" + std::to_string(++counter);
    auto of = dir / ("rlz_out_" + tag);
    auto ef = dir / ("rlz_err_" + tag);
    std::string cmd = "\"" + g_cli + "\" " + args + " > " + of.string() + " 2> " +
                      ef.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(of);
    r.err = slurp(ef);
    std::filesystem::remove(of);
    std::filesystem::remove(ef);
    return r;
}

std::string tmp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() /
             (name + "_" + std::to_string(getpid()));
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
}

}  // namespace

TEST_CASE("help and argument errors") {
    auto help = run_cli("--help");
    CHECK(help.code == 0);
    for (const char* sub :
         {"solve", "propcheck", "identify", "tariff", "project", "sticky",
          "elicit", "golden"})
        CHECK(help.out.find(sub) != std::string::npos);

    CHECK(run_cli("").code == 2);           // a subcommand is required
    CHECK(run_cli("frobnicate").code == 2);  // unknown subcommand
    CHECK(run_cli("solve").code == 2);       // missing --config
}

TEST_CASE("solve: header, schema, golden row, determinism") {
    std::string cfg = g_configs + "/example1.json";
    auto r = run_cli("solve --config " + cfg + " --seed 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# rationalize solve seed=3 config=", 0) == 0);
    CHECK(r.out.find("scenario_id,state,a1,a2_set,witness_theta_min,"
                     "witness_theta_max,total_utility,material_utility,regret\n") !=
          std::string::npos);
    CHECK(r.out.find("ticket-upfront,snow,100,0,300,400,-96,-120,0") !=
          std::string::npos);

    auto again = run_cli("solve --config " + cfg + " --seed 3");
    CHECK(again.out == r.out);  // byte-identical rerun

    // gamma override flips the snow choice below the threshold
    auto low = run_cli("solve --config " + cfg + " --gamma 0.1");
    REQUIRE(low.code == 0);
    CHECK(low.out.find("ticket-upfront,snow,100,stay,") != std::string::npos);

    CHECK(run_cli("solve --config " + cfg + " --gamma 1.5").code == 2);
    CHECK(run_cli("solve --config /nonexistent.json").code == 2);
    std::string bad = tmp_file("bad_cfg.json", "{this is not json");
    CHECK(run_cli("solve --config " + bad).code == 2);
    std::string unk = tmp_file("unk_cfg.json", R"({"scenario_id":"x","oops":1})");
    CHECK(run_cli("solve --config " + unk).code == 2);
}

TEST_CASE("golden suite passes") {
    auto r = run_cli("golden --configs " + g_configs);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("example1 threshold scan brackets 1/6,yes,yes,pass") !=
          std::string::npos);
}

TEST_CASE("propcheck: clean sweep and corrupt self-test") {
    auto r = run_cli("propcheck --seeds 5 --seed 11 --sizes 3,4,4,2");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("seed,sizes,state,a1_star,a1_bar,verdict,witness\n") !=
          std::string::npos);
    CHECK(r.out.find("3x4x4x2") != std::string::npos);
    CHECK(r.out.find("violated") == std::string::npos);

    auto sep = run_cli("propcheck --seeds 3 --construction separable --grid");
    CHECK(sep.code == 0);

    auto bad = run_cli("propcheck --seeds 2 --corrupt");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("violation") != std::string::npos);

    CHECK(run_cli("propcheck --sizes 1,2").code == 2);
    CHECK(run_cli("propcheck --construction cubic").code == 2);
}

TEST_CASE("tariff: solution json, curve, determinism") {
    auto r = run_cli("tariff --c 1 --gamma 0.5 --dist uniform01 --consumer naif");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["header"]["subcommand"] == "tariff");
    CHECK(std::fabs(j["p_star"].get<double>() - 1.0673110285892724) < 1e-12);
    CHECK(std::fabs(j["lambda"].get<double>() - 0.04811252243246872) < 1e-12);

    auto r0 = run_cli("tariff --c 2 --gamma 0 --consumer classical");
    REQUIRE(r0.code == 0);
    auto j0 = nlohmann::json::parse(r0.out);
    CHECK(std::fabs(j0["p_star"].get<double>() - 2.0) < 1e-9);

    auto curve_path = std::filesystem::temp_directory_path() /
                      ("rlz_curve_" + std::to_string(getpid()));
    auto rc = run_cli("tariff --c 1 --gamma 0.5 --consumer soph --curve " +
                      curve_path.string() + " --curve-points 11");
    REQUIRE(rc.code == 0);
    std::string curve = slurp(curve_path);
    CHECK(curve.find("s,q_classical,q_rationalizing,theta_adopted\n") !=
          std::string::npos);
    CHECK(std::count(curve.begin(), curve.end(), '\n') == 13);  // hdr+schema+11
    std::filesystem::remove(curve_path);

    CHECK(run_cli("tariff --gamma 1.0").code == 2);
    CHECK(run_cli("tariff --dist cauchy").code == 2);
    CHECK(run_cli("tariff --c -1").code == 2);

    auto again = run_cli("tariff --c 1 --gamma 0.5 --dist uniform01 --consumer naif");
    CHECK(again.out == r.out);
}

TEST_CASE("project and sticky reports") {
    auto p = run_cli("project --gamma 0.5");
    REQUIRE(p.code == 0);
    CHECK(p.out.find("state,a1,a2_classical,a2_rationalizing,theta_bar\n") !=
          std::string::npos);
    // high shock: classical 0.6, rationalized up to 0.8 under theta-bar 1
    CHECK(p.out.find("1,1,0.6,0.8,1") != std::string::npos);

    auto p0 = run_cli("project --gamma 0");
    REQUIRE(p0.code == 0);
    // gamma=0: classical continuation; all rationales tie so the witness
    // bound is the top of the family
    CHECK(p0.out.find("1,1,0.6,0.6,2") != std::string::npos);

    auto s = run_cli("sticky --gamma 0.5 --a1 0.8");
    REQUIRE(s.code == 0);
    CHECK(s.out.find("state,a1,a2_classical,a2_rationalizing,theta_bar\n") !=
          std::string::npos);
    CHECK(run_cli("sticky --a1 7").code == 2);
}

TEST_CASE("elicit: sandwich sweep and determinism") {
    auto r = run_cli("elicit --gamma 0.4 --runs 50 --seed 7");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("run,a1,signal,posterior_mean,a2,theta_bar,"
                     "a1_rationalizable\n") != std::string::npos);
    auto again = run_cli("elicit --gamma 0.4 --runs 50 --seed 7");
    CHECK(again.out == r.out);
    CHECK(run_cli("elicit --family exotic").code == 2);
}

TEST_CASE("identify: recovery on the small representation") {
    auto r = run_cli("identify --rep " + g_configs +
                     "/id_small_1.json --samples 40 --seed 1");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["unsound"].get<int>() == 0);
    CHECK(j["agreement_rate"].get<double>() >= 0.99);
    CHECK(std::fabs(j["gamma"].get<double>() - 0.5) < 1e-2);
    CHECK(j["normals"].size() == 2);

    std::string bad = tmp_file("bad_rep.json", R"({"z1": ["x0"]})");
    CHECK(run_cli("identify --rep " + bad).code == 2);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli [doctest args] <cli> <configs>\n");
        return 2;
    }
    g_cli = argv[argc - 2];
    g_configs = argv[argc - 1];
    doctest::Context ctx(argc - 2, argv);
    return ctx.run();
}

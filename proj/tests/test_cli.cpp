// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(GROWTHOPT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << content;
}

}  // namespace

TEST_CASE("cli merton table and json") {
    const CmdResult table = run_cli("merton --mu 0.08 --sigma 0.40");
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("growth_rate         0.02\n") != std::string::npos);
    CHECK(table.out.find("merton_ratio        0.5\n") != std::string::npos);

    const CmdResult js =
        run_cli("merton --mu 0.096 --sigma 0.40 --gamma 0.003 --format json");
    CHECK(js.exit_code == 0);
    const auto parsed = nlohmann::json::parse(js.out);
    CHECK(parsed.at("growth_rate_with_costs").get<double>() ==
          doctest::Approx(0.0284795).epsilon(1e-4));
    CHECK(parsed.at("b").get<double>() == doctest::Approx(0.66330).epsilon(1e-4));
}

TEST_CASE("cli merton rejects invalid parameters with exit 2") {
    CHECK(run_cli("merton --mu 0.08 --sigma 0").exit_code == 2);
    CHECK(run_cli("merton --mu 0.08").exit_code == 2);          // missing required flag
    CHECK(run_cli("merton --mu 0.08 --sigma 0.4 --gamma 1.5").exit_code == 2);
}

TEST_CASE("cli solve emits the full JSON contract") {
    const CmdResult r = run_cli("solve --mu 0.08 --sigma 0.40 --gamma 0 --h 1");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    for (const char* key : {"mu", "sigma", "gamma", "h", "a", "alpha", "beta", "b",
                            "growth_rate", "expected_cycle_time", "trade_frequency",
                            "converged"})
        CHECK(parsed.contains(key));
    CHECK(parsed.at("converged").get<bool>());
    CHECK(parsed.at("growth_rate").get<double>() == doctest::Approx(0.0198681).epsilon(1e-4));
    CHECK(parsed.at("a").get<double>() == doctest::Approx(0.40131).epsilon(1e-3));
    CHECK(parsed.at("b").get<double>() == doctest::Approx(0.59869).epsilon(1e-3));
}

TEST_CASE("cli solve exit codes") {
    CHECK(run_cli("solve --mu 0.08 --sigma 0.40 --gamma 0 --h 0").exit_code == 2);
    CHECK(run_cli("solve --mu 0.096 --sigma 0.40 --gamma 0.003 --h 1e9").exit_code == 3);
}

TEST_CASE("cli curve produces CSV and a single-point grid works") {
    const CmdResult one =
        run_cli("curve --mu 0.08 --sigma 0.40 --h-min 1 --h-max 1 --points 1");
    CHECK(one.exit_code == 0);
    CHECK(one.out.rfind("h,V_o,V_h,V_lambda,E_o,E_h,E_lambda\n", 0) == 0);
    CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 2);

    CHECK(run_cli("curve --mu 0.08 --sigma 0.40 --points 0").exit_code == 2);
    CHECK(run_cli("curve --mu 0.08 --sigma 0.40 --h-min 0 --h-max 1").exit_code == 2);
}

TEST_CASE("cli curve with costs writes boundary columns and svg") {
    const std::string csv_path = "/tmp/growthopt_test_curve.csv";
    const std::string svg_path = "/tmp/growthopt_test_curve.svg";
    const CmdResult r = run_cli(
        "curve --mu 0.096 --sigma 0.40 --gamma 0.003 --h-min 0.2 --h-max 0.4 --points 2 "
        "--out " + csv_path + " --svg " + svg_path);
    CHECK(r.exit_code == 0);
    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "h,V_o,E_o_c,a,alpha,beta,b");
    std::ifstream svg(svg_path);
    std::string first;
    std::getline(svg, first);
    CHECK(first.rfind("<svg", 0) == 0);
    std::remove(csv_path.c_str());
    std::remove(svg_path.c_str());
}

TEST_CASE("cli simulate is byte-deterministic under a fixed seed") {
    const std::string args =
        "simulate --mu 0.08 --sigma 0.40 --policy 0.40131234 0.5 0.5 0.59868766 "
        "--paths 50 --horizon 20 --dt 1e-3 --seed 12345";
    const CmdResult a = run_cli(args);
    const CmdResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const CmdResult c = run_cli(args + "6");  // different seed
    CHECK(c.out != a.out);
}

TEST_CASE("cli simulate validates configuration") {
    CHECK(run_cli("simulate --mu 0.08 --sigma 0.40 --policy 0.4 0.5 0.5 0.6 --paths 0")
              .exit_code == 2);
    CHECK(run_cli("simulate --mu 0.08 --sigma 0.40 --paths 10").exit_code == 2);  // no policy
    CHECK(run_cli("simulate --mu 0.08 --sigma 0.40 --policy 0.5 0.4 0.5 0.6 --paths 10")
              .exit_code == 2);  // a > alpha
}

TEST_CASE("cli solve output feeds simulate (JSON round trip)") {
    const CmdResult solved = run_cli("solve --mu 0.08 --sigma 0.40 --gamma 0.003 --h 1");
    CHECK(solved.exit_code == 0);
    const std::string path = "/tmp/growthopt_test_policy.json";
    write_file(path, solved.out);

    const CmdResult sim = run_cli("simulate --policy-file " + path +
                                  " --paths 40 --horizon 20 --dt 1e-2 --seed 3 --format json");
    CHECK(sim.exit_code == 0);
    const auto spol = nlohmann::json::parse(solved.out);
    const auto ppol = nlohmann::json::parse(sim.out).at("policy");
    CHECK(ppol.at("a").get<double>() == spol.at("a").get<double>());
    CHECK(ppol.at("b").get<double>() == spol.at("b").get<double>());
    std::remove(path.c_str());
}

TEST_CASE("cli baselines") {
    const CmdResult r = run_cli("baselines --mu 0.08 --sigma 0.4 --h 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lambda_investor       0.0192") != std::string::npos);
    CHECK(r.out.find("h_investor_growth     0.01961970") != std::string::npos);
    CHECK(run_cli("baselines --mu 0.08 --sigma 0.4 --h -1").exit_code == 2);
}

TEST_CASE("cli config file provides defaults, flags override") {
    const std::string path = "/tmp/growthopt_test_config.ini";
    write_file(path, "mu=0.07\nsigma=0.40\n");
    const CmdResult from_config = run_cli("merton --config " + path);
    CHECK(from_config.exit_code == 0);
    CHECK(from_config.out.find("merton_ratio        0.4375\n") != std::string::npos);

    const CmdResult overridden = run_cli("merton --config " + path + " --mu 0.08");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out.find("merton_ratio        0.5\n") != std::string::npos);
    std::remove(path.c_str());
}

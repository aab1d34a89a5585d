// End-to-end checks of the zakframe binary (path via ZAKFRAME_BIN).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string bin() {
    const char* p = std::getenv("ZAKFRAME_BIN");
    REQUIRE_MESSAGE(p != nullptr, "ZAKFRAME_BIN must point at the zakframe binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string out_file = "/tmp/zakframe_cli_out.txt";
    std::string cmd = env + " " + bin() + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("eval") {
    RunResult r = run("eval --window 1 --x 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n");

    r = run("eval --window 0 --x 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 12) == "1.1892071150");

    r = run("eval --window 2:1.0 --x 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 13) == "-0.8408964152");

    r = run("eval --window 2 --x 0.5 --precision 106");
    CHECK(r.exit_code == 0);

    // usage errors exit with 2
    CHECK(run("eval --window 2:abc --x 0").exit_code == 2);
    CHECK(run("eval --window 2 --x nope").exit_code == 2);
    CHECK(run("eval").exit_code == 2);
    CHECK(run("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("verify") {
    RunResult r = run("verify I1 --precision 212 --tol 1e-30");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["verdict"] == "PASS");
        CHECK(j["id"] == "I1");
        ++n;
    }
    CHECK(n == 6);

    r = run("verify I5 I6 --precision 212");
    CHECK(r.exit_code == 0);
    std::istringstream lines2(r.out);
    while (std::getline(lines2, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["basis"] == "verified-numerically");
        CHECK(j["verdict"] == "PASS");
    }

    CHECK(run("verify I3 --precision 53 --tol 1e-40").exit_code == 2);
    CHECK(run("verify I9").exit_code == 2);
}

TEST_CASE("obstructions") {
    RunResult r = run("obstructions --window 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("point 0: ") != std::string::npos);
    CHECK(r.out.find("point 2:") != std::string::npos);
    CHECK(r.out.find("SKIP") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    r = run("obstructions --window 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("symmetry zeros") != std::string::npos);

    r = run("obstructions --window 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("no obstruction points exist") != std::string::npos);

    // mixed window: usage error
    CHECK(run("obstructions --window 0:1.0,2:1.0").exit_code == 2);
}

TEST_CASE("scan outputs and determinism") {
    std::string csv = "/tmp/zakframe_cli_scan.csv";
    std::string gp = "/tmp/zakframe_cli_scan.gp";
    RunResult r = run("scan --window 2 --density 1/2 --b-min 0.5 --b-max 1.0 --samples 5 --grid 15 "
                      "--probe-b 0.70710678118654752 --out " + csv + " --gnuplot " + gp);
    CHECK(r.exit_code == 0);
    std::string data = slurp(csv);
    CHECK(data.substr(0, 47) == "b,a,sqrtA,sqrtB,argmin_x,argmin_gamma,max_trunc");
    // probe row: sqrtA at b = 1/sqrt(2) collapses
    bool found_probe = false;
    std::istringstream lines(data);
    std::string line;
    std::getline(lines, line);  // header
    double prev_b = 0.0;
    while (std::getline(lines, line)) {
        double b, a, sA, sB;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &b, &a, &sA, &sB) == 4);
        CHECK(b > prev_b);  // sorted ascending
        prev_b = b;
        CHECK(sA <= sB);
        if (std::fabs(b - 0.70710678118654752) < 1e-16) {
            found_probe = true;
            CHECK(sA <= 1e-12);
        }
    }
    CHECK(found_probe);

    std::string gp_text = slurp(gp);
    CHECK(gp_text.find("set logscale x") != std::string::npos);
    CHECK(gp_text.find("1:3") != std::string::npos);
    CHECK(gp_text.find("1:4") != std::string::npos);
    CHECK(gp_text.find("sqrt(A)") != std::string::npos);

    // byte-determinism across thread counts
    std::string csv1 = "/tmp/zakframe_cli_scan_t1.csv";
    std::string csv4 = "/tmp/zakframe_cli_scan_t4.csv";
    CHECK(run("scan --window 2 --density 1/2 --b-min 0.5 --b-max 1.0 --samples 4 --grid 15 --out " + csv1,
              "ZAKFRAME_THREADS=1").exit_code == 0);
    CHECK(run("scan --window 2 --density 1/2 --b-min 0.5 --b-max 1.0 --samples 4 --grid 15 --out " + csv4,
              "ZAKFRAME_THREADS=4").exit_code == 0);
    CHECK(slurp(csv1) == slurp(csv4));

    // unwritable output path exits 3
    CHECK(run("scan --window 2 --density 1/2 --b-min 0.5 --b-max 1.0 --samples 3 --grid 11 "
              "--out /nonexistent-dir/x.csv").exit_code == 3);
}

TEST_CASE("config file") {
    std::string cfg = "/tmp/zakframe_cli.cfg";
    {
        std::ofstream out(cfg);
        out << "[eval]\n" << "window = 0\n" << "x = 0\n";
    }
    RunResult r = run("eval --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 12) == "1.1892071150");
    // command-line flags override the file
    r = run("eval --config " + cfg + " --window 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n");
}

TEST_CASE("scan grid doubling moves bounds outward only") {
    std::string c1 = "/tmp/zakframe_cli_g1.csv", c2 = "/tmp/zakframe_cli_g2.csv";
    std::string args = "scan --window 2 --density 1/2 --b-min 0.6 --b-max 0.9 --samples 3 ";
    CHECK(run(args + "--grid 27 --out " + c1).exit_code == 0);
    CHECK(run(args + "--grid 54 --out " + c2).exit_code == 0);
    std::istringstream l1(slurp(c1)), l2(slurp(c2));
    std::string a, b;
    std::getline(l1, a);
    std::getline(l2, b);
    while (std::getline(l1, a) && std::getline(l2, b)) {
        double b1, a1, sA1, sB1, b2, a2, sA2, sB2, t1, t2, dum;
        REQUIRE(std::sscanf(a.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &b1, &a1, &sA1, &sB1, &dum, &dum,
                            &t1) == 7);
        REQUIRE(std::sscanf(b.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &b2, &a2, &sA2, &sB2, &dum, &dum,
                            &t2) == 7);
        CHECK(b1 == b2);
        CHECK(sA2 <= sA1 + 1e-9 + t1 + t2);
        CHECK(sB2 >= sB1 - 1e-9 - t1 - t2);
    }
}

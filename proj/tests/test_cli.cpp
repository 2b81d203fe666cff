#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "gcdsum/report.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
    fs::path out = fs::temp_directory_path() / "gcdsum_cli_out.txt";
    std::string cmd = env + " \"" + g_cli + "\" " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream is(out);
    std::stringstream ss;
    ss << is.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

gcdsum::ParsedCsv parse(const std::string& text) {
    std::istringstream is(text);
    return gcdsum::read_csv(is);
}

}  // namespace

TEST_CASE("sieve dump") {
    auto r = run("sieve --function mobius --N 6");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "n,value\n1,1\n2,-1\n3,-1\n4,0\n5,-1\n6,1\n");

    CHECK(run("sieve --function nope --N 4").exit_code == 2);
    CHECK(run("sieve --function phi --expo 0 --N 4").exit_code == 2);
}

TEST_CASE("verify-identity: full H sweep exits 0 with one row per x") {
    auto r = run("verify-identity --which H --m 1 --s 2 --family phi_s --x-max 300");
    CHECK(r.exit_code == 0);
    auto csv = parse(r.output);
    CHECK(csv.rows.size() == 300);
    CHECK(csv.count_true("pass") == 300);
    CHECK(csv.metadata.at("which") == "H");
}

TEST_CASE("verify-identity: direct mode at small x, resource cap at large x") {
    auto r = run("verify-identity --which A --mode direct --s 2 --x-max 12");
    CHECK(r.exit_code == 0);
    CHECK(parse(r.output).metadata.at("mode") == "direct");

    auto capped = run("verify-identity --which A --mode direct --s 3 --x-min 3000 --x-max 3000");
    CHECK(capped.exit_code == 4);
}

TEST_CASE("flag validation exits 2") {
    CHECK(run("verify-identity --a -1.5").exit_code == 2);
    CHECK(run("verify-identity --a 0.3").exit_code == 2);
    CHECK(run("verify-asymptotic --theorem A-phi --s 1").exit_code == 2);
    CHECK(run("verify-dirichlet --w 1.2").exit_code == 2);
    CHECK(run("verify-identity --which Q").exit_code == 2);
    CHECK(run("--digits 5 verify-identity").exit_code == 2);
}

TEST_CASE("config file: flags win, unknown keys rejected") {
    fs::path cfg = fs::temp_directory_path() / "gcdsum_test.cfg";
    {
        std::ofstream os(cfg);
        os << "# comment line\ndigits = 60\n";
    }
    auto r = run("verify-identity --which H --x-max 5 --config " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(parse(r.output).metadata.at("digits") == "60");

    auto r2 = run("verify-identity --which H --x-max 5 --digits 40 --config " + cfg.string());
    CHECK(r2.exit_code == 0);
    CHECK(parse(r2.output).metadata.at("digits") == "40");

    {
        std::ofstream os(cfg);
        os << "no_such_key = 1\n";
    }
    CHECK(run("verify-identity --which H --x-max 5 --config " + cfg.string()).exit_code == 2);
}

TEST_CASE("environment default for digits, flag wins") {
    auto r = run("verify-identity --which H --x-max 5", "GCDSUM_DIGITS=50");
    CHECK(r.exit_code == 0);
    CHECK(parse(r.output).metadata.at("digits") == "50");
    auto r2 = run("verify-identity --which H --x-max 5 --digits 45", "GCDSUM_DIGITS=50");
    CHECK(parse(r2.output).metadata.at("digits") == "45");
}

TEST_CASE("verify-dirichlet and error-term") {
    auto r = run("verify-dirichlet --w 3 --N 500 --family phi_s --s 2");
    CHECK(r.exit_code == 0);
    auto csv = parse(r.output);
    CHECK(csv.rows.size() == 2);  // K row and L row
    CHECK(csv.count_true("pass") == 2);

    auto e = run("error-term --which delta --x-min 10 --x-max 1000 --grid-ratio 1.5");
    CHECK(e.exit_code == 0);
    auto ecsv = parse(e.output);
    CHECK(ecsv.metadata.at("series") == "delta");
    CHECK(ecsv.rows.size() >= 10);
}

TEST_CASE("report round trip through a file") {
    fs::path p = fs::temp_directory_path() / "gcdsum_roundtrip.csv";
    auto r = run("verify-identity --which M --r 2 --s 2 --family psi_s --x-max 40 --out " +
                 p.string());
    CHECK(r.exit_code == 0);
    std::ifstream is(p);
    auto csv = gcdsum::read_csv(is);
    CHECK(csv.rows.size() == 40);
    CHECK(csv.count_true("pass") == 40);
    CHECK(csv.column("tolerance") == 4);
}

TEST_CASE("identical flags give identical bodies") {
    auto a = run("verify-identity --which A --s 2 --family phi_sa --a -0.5 --x-max 25");
    auto b = run("verify-identity --which A --s 2 --family phi_sa --a -0.5 --x-max 25");
    CHECK(a.exit_code == 0);
    CHECK(gcdsum::csv_equal_modulo_timestamp(a.output, b.output));
}

int main(int argc, char** argv) {
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_cli = argv[argc - 1];
        --argc;
    }
    doctest::Context context;
    context.applyCommandLine(argc, argv);
    return context.run();
}

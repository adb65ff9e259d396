// End-to-end checks of the installed command-line surface: exit codes,
// output schemas, config-file precedence, and byte determinism.

#include "nhknot/io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(NHKNOT_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("winding subcommand emits the JSON schema") {
    const RunResult r = run_cli("winding --model model-i --gauge sigma-x --omega 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"nu\": 0") != std::string::npos);
    CHECK(r.output.find("\"nu_h\": 0") != std::string::npos);
    CHECK(r.output.find("\"knot\": \"unlink\"") != std::string::npos);
    CHECK(r.output.find("\"nu_residual\"") != std::string::npos);
}

TEST_CASE("winding reports nu_h null for a gapless custom model") {
    // parabolic near-closing: min gap 8e-9 < 1e-8, but the eigenbasis never
    // flips, so the NH winding itself converges
    const fs::path cfg = tmp("nhknot_gapless.conf");
    {
        std::ofstream out(cfg);
        out << "t1 = 1.0\nt2 = 0.499999998\nt3 = 0.499999998\nt4 = 0.0\nmu = 2.0\n";
    }
    const RunResult r = run_cli("winding --model custom --config " + cfg.string() +
                                " --gauge sigma-x");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"nu_h\": null") != std::string::npos);
    CHECK(r.output.find("\"nu_h_reason\"") != std::string::npos);
    fs::remove(cfg);
}

TEST_CASE("exit codes") {
    SUBCASE("argument errors exit 2") {
        CHECK(run_cli("winding --model model-i --omega -1").exit_code == 2);
        CHECK(run_cli("winding --model model-i").exit_code == 2);  // omega missing
        CHECK(run_cli("effective --length 1").exit_code == 2);
        CHECK(run_cli("scan --model model-i --omega-range bogus").exit_code == 2);
        CHECK(run_cli("braid --model model-i --omega 1.0 --gauge sigma-q").exit_code == 2);
        CHECK(run_cli("spectrum --model model-i --omega 1.0 --out /no-such-dir-xyz/a.csv")
                  .exit_code == 2);
        CHECK(run_cli("bogus-subcommand").exit_code == 2);
    }
    SUBCASE("numerical failures exit 3") {
        CHECK(run_cli("winding --model model-i --gauge sigma-x --omega 1.0").exit_code == 3);
    }
    SUBCASE("help exits 0") {
        CHECK(run_cli("--help").exit_code == 0);
        CHECK(run_cli("spectrum --help").exit_code == 0);
    }
}

TEST_CASE("spectrum output is byte-deterministic") {
    const fs::path a = tmp("nhknot_spec_a.csv");
    const fs::path b = tmp("nhknot_spec_b.csv");
    const std::string base = "spectrum --model model-i --omega 1.0 --nk 512 --out ";
    CHECK(run_cli(base + a.string()).exit_code == 0);
    CHECK(run_cli(base + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    // near-closing dip: smallest s_minus on the grid must be tiny
    CHECK(slurp(a).rfind("k,s_minus,s_plus\n", 0) == 0);
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("braid CSV carries the permutation and winding metadata") {
    const fs::path p = tmp("nhknot_braid.csv");
    CHECK(run_cli("braid --model model-i --gauge sigma-x --omega 1.5 --nk 512 --out " +
                  p.string()).exit_code == 0);
    const std::string csv = slurp(p);
    CHECK(csv.rfind("k,re_1,im_1,re_2,im_2\n", 0) == 0);
    CHECK(csv.find("# permutation=swap nu=-1") != std::string::npos);

    // render the CSV back into the fixed-size SVG
    const fs::path svg = tmp("nhknot_braid.svg");
    CHECK(run_cli("render --in " + p.string() + " --out " + svg.string()).exit_code == 0);
    CHECK(slurp(svg).rfind("<svg", 0) == 0);
    fs::remove(p);
    fs::remove(svg);
}

TEST_CASE("scan subcommand writes omega,nu,knot rows") {
    const fs::path p = tmp("nhknot_scan.csv");
    CHECK(run_cli("scan --model model-ii --gauge sigma-x --omega-range 0.5:1.5 --steps 2 "
                  "--nk 512 --out " + p.string()).exit_code == 0);
    const std::string csv = slurp(p);
    CHECK(csv.rfind("omega,nu,knot\n", 0) == 0);
    CHECK(csv.find("0.5,1,unknot\n") != std::string::npos);
    CHECK(csv.find("1.5,-2,hopf-link\n") != std::string::npos);
    fs::remove(p);
}

TEST_CASE("config file values are overridden by flags") {
    const fs::path cfg = tmp("nhknot_override.conf");
    {
        std::ofstream out(cfg);
        out << "model = model-i\ngauge = sigma-x\nomega = 0.5\n";
    }
    // config alone: nu = 0; flag overrides omega to 1.5: nu = -1
    const RunResult base = run_cli("winding --config " + cfg.string());
    CHECK(base.output.find("\"nu\": 0") != std::string::npos);
    const RunResult over = run_cli("winding --config " + cfg.string() + " --omega 1.5");
    CHECK(over.output.find("\"nu\": -1") != std::string::npos);
    fs::remove(cfg);
}

TEST_CASE("ep-find and classify emit the documented JSON") {
    const RunResult eps = run_cli("ep-find --model model-ii --gauge sigma-x --omega-range 60:75");
    CHECK(eps.exit_code == 0);
    CHECK(eps.output.find("\"omega\": 66.941125") != std::string::npos);
    CHECK(eps.output.find("\"defectiveness\"") != std::string::npos);

    const RunResult empty = run_cli("ep-find --model model-i --gauge sigma-x --omega-range 0.2:0.9");
    CHECK(empty.exit_code == 0);
    CHECK(empty.output.find("[]") != std::string::npos);

    const RunResult cls = run_cli("classify --model model-i --gauge sigma-x --omega-range 0.9:1.1");
    CHECK(cls.exit_code == 0);
    CHECK(cls.output.find("\"kind\": \"first_order\"") != std::string::npos);
    CHECK(cls.output.find("\"herm_coincident\": true") != std::string::npos);
    CHECK(cls.output.find("\"ep_points\": []") != std::string::npos);
}

TEST_CASE("effective subcommand: chain csv plus the ladder table") {
    const fs::path p = tmp("nhknot_chain.csv");
    const RunResult r = run_cli("effective --side plus --length 8 --boundary periodic --out " +
                                p.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("dk,k,error,ratio\n", 0) == 0);
    CHECK(r.output.find(",4.0000") != std::string::npos);  // quadratic halving ratio
    CHECK(slurp(p).rfind("index,re,im,boundary,length\n", 0) == 0);
    fs::remove(p);
}

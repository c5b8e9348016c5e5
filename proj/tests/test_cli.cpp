#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>

#include "wfield/io.hpp"

using namespace wfield;

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
    const std::string path = "cli_" + name + ".json";
    std::ofstream out(path);
    out << content;
    return path;
}

int run(const std::string& args) {
    const std::string cmd = std::string(WFIELD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("cli exit codes follow the verdicts") {
    const std::string a =
        write_tmp("a", matrix_to_json(CMatrix::diagonal(CVector{cplx(1.0), cplx(-1.0)})));
    const std::string b =
        write_tmp("b", matrix_to_json(CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}})));
    const std::string psd =
        write_tmp("psd", matrix_to_json(CMatrix::diagonal(CVector{cplx(1.0), cplx(2.0)})));

    CHECK(run("check " + a + " " + b) == 1);   // violated
    CHECK(run("check " + psd + " " + b) == 0); // contained

    // near-boundary pair: the nonzero eigenvalue of AB sits just outside the
    // exact product disk, closer than the coarse enclosures can resolve
    const CMatrix nil = CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    const double t = 2.0 * std::atan(0.25 * (1.0 + 1e-3));
    const CVector x{cplx(std::cos(t)), cplx(std::sin(t))};
    const CVector y{cplx(1.0), cplx(0.0)};
    const std::string na = write_tmp("near_a", matrix_to_json(nil));
    const std::string nb = write_tmp("near_b", matrix_to_json(rank_one(x, y)));
    CHECK(run("check " + na + " " + nb + " --angles 8") == 2); // inconclusive
    CHECK(run("classify " + psd) == 0);
    CHECK(run("classify " + a) == 1);
    CHECK(run("witness " + psd) == 1); // PSD multiple: no witness exists
    CHECK(run("witness " + a) == 0);
    CHECK(run("range " + a) == 0);
    CHECK(run("repro additive") == 0);
}

TEST_CASE("cli input errors exit 64") {
    const std::string bad = write_tmp("bad", "{\"n\": 2, \"entries\": [[0,0]]}");
    CHECK(run("check " + bad + " " + bad) == 64);
    CHECK(run("range missing-file.json") == 64);
    CHECK(run("repro no-such-example") == 64);
    CHECK(run("range") == 64); // missing argument
}

TEST_CASE("cli writes files atomically and supports svg") {
    const std::string a =
        write_tmp("svg", matrix_to_json(CMatrix::diagonal(CVector{cplx(1.0), cplx(0.0, 1.0)})));
    CHECK(run("range " + a + " --format svg --out cli_range.svg") == 0);
    std::ifstream in("cli_range.svg");
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("<svg", 0) == 0);
}

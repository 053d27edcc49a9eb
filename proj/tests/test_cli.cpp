#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

// End-to-end checks against the real binary; COMPMAT_CLI_PATH comes from the
// build system.

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + COMPMAT_CLI_PATH + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (fgets(buf, sizeof(buf), pipe)) out += buf;
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

}  // namespace

TEST_CASE("classify verdict drives the exit code") {
    write_file("cli_zero_row.csv", "1,0,0,0\n0,1,0,0\n0,0,0,0\n");
    const CliResult bad = run_cli("classify --input cli_zero_row.csv");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("zero-row") != std::string::npos);

    write_file("cli_identity.csv", "1,0\n0,1\n");
    CHECK(run_cli("classify --input cli_identity.csv").exit_code == 0);

    CHECK(run_cli("classify --input does_not_exist.csv").exit_code == 2);
}

TEST_CASE("classify --json emits the stable schema") {
    write_file("cli_zero_row.csv", "1,0,0,0\n0,1,0,0\n0,0,0,0\n");
    const CliResult r = run_cli("classify --input cli_zero_row.csv --json");
    CHECK(r.exit_code == 1);
    const nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["shape"] == nlohmann::json({3, 4}));
    CHECK(j["is_composition_matrix"] == false);
    CHECK(j["witnesses"][0]["clause"] == "zero-row");
}

TEST_CASE("tolerance can come from the flag or COMPMAT_TOL") {
    write_file("cli_near.csv", "0.99,0.01\n0.01,0.99\n");
    CHECK(run_cli("classify --input cli_near.csv").exit_code == 1);
    CHECK(run_cli("classify --input cli_near.csv --tol 0.05").exit_code == 0);
    CHECK(run_cli("classify --input cli_near.csv", "COMPMAT_TOL=0.05").exit_code == 0);
    CHECK(run_cli("classify --input cli_near.csv --tol 1e-9", "COMPMAT_TOL=0.05").exit_code == 1);
}

TEST_CASE("convert round trip is the identity at file level") {
    write_file("cli_pi.txt", "2 4\n3 1\n");
    CHECK(run_cli("convert --injection cli_pi.txt --out cli_p.mtx").exit_code == 0);
    CHECK(run_cli("convert --matrix cli_p.mtx --out cli_pi_back.txt").exit_code == 0);
    CHECK(read_file("cli_pi_back.txt") == "2 4\n3 1\n");

    CHECK(run_cli("convert --injection cli_pi.txt --out cli_p.csv").exit_code == 0);
    CHECK(run_cli("convert --matrix cli_p.csv --out cli_pi_back2.txt").exit_code == 0);
    CHECK(read_file("cli_pi_back2.txt") == "2 4\n3 1\n");
}

TEST_CASE("convert rejects matrices that are not composition matrices") {
    write_file("cli_zero_row.csv", "1,0,0,0\n0,1,0,0\n0,0,0,0\n");
    const CliResult r = run_cli("convert --matrix cli_zero_row.csv --out cli_nope.txt");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("zero-row") != std::string::npos);
}

TEST_CASE("apply echoes through the identity and transposes on request") {
    write_file("cli_id3.csv", "1,0,0\n0,1,0\n0,0,1\n");
    write_file("cli_vec3.csv", "7,8,9\n");
    const CliResult echo = run_cli("apply --matrix cli_id3.csv --vector cli_vec3.csv");
    CHECK(echo.exit_code == 0);
    CHECK(echo.output == "7,8,9\n");

    write_file("cli_swap.csv", "0,1,0\n1,0,0\n");
    const CliResult pull = run_cli("apply --matrix cli_swap.csv --vector cli_vec3.csv");
    CHECK(pull.exit_code == 0);
    CHECK(pull.output == "8,7\n");

    write_file("cli_vec2.csv", "7,8\n");
    const CliResult push =
        run_cli("apply --matrix cli_swap.csv --vector cli_vec2.csv --transpose");
    CHECK(push.exit_code == 0);
    CHECK(push.output == "8,7,0\n");

    CHECK(run_cli("apply --matrix cli_swap.csv --vector cli_vec2.csv").exit_code == 2);
}

TEST_CASE("count prints the class tally as json") {
    const CliResult r = run_cli("count --m 2 --n 3");
    CHECK(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["n_composition"] == 6);
    CHECK(j["n_row_permutation_like"] == 16);
    CHECK(j["n_column_permutation_like"] == 27);
}

TEST_CASE("certify passes on small shapes") {
    const CliResult r = run_cli("certify --max-m 2 --max-n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("certify: PASS") != std::string::npos);

    const CliResult binary = run_cli("certify --max-m 2 --max-n 3 --grid 0,1");
    CHECK(binary.exit_code == 0);
}

TEST_CASE("recover reports conflicts and writes injections") {
    write_file("cli_conflict.csv", "1,0\n1,0\n");
    const CliResult conflict = run_cli("recover --input cli_conflict.csv --mode rowwise");
    CHECK(conflict.exit_code == 1);
    CHECK(conflict.output.find("column-conflict") != std::string::npos);

    const CliResult injective = run_cli("recover --input cli_conflict.csv --mode injective");
    CHECK(injective.exit_code == 0);
    CHECK(injective.output.find("1 2\n") != std::string::npos);

    write_file("cli_noisy.csv", "0.9,0.1,0.2\n0.3,0.8,0.1\n");
    CHECK(run_cli("recover --input cli_noisy.csv --mode rowwise --out cli_rec.txt").exit_code ==
          0);
    CHECK(read_file("cli_rec.txt") == "2 3\n1 2\n");
    CHECK(run_cli("recover --input cli_noisy.csv --mode injective --out cli_rec.mtx").exit_code ==
          0);
    CHECK(read_file("cli_rec.mtx").find("%%MatrixMarket") == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("recover --input x.csv --mode bogus").exit_code == 2);
    CHECK(run_cli("classify").exit_code == 2);
}

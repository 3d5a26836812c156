// End-to-end checks of the command-line surface: exit codes, file formats,
// and seed determinism. The binary path comes from TICKNOISE_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

std::string binary_path() {
    const char* env = std::getenv("TICKNOISE_BIN");
    REQUIRE_MESSAGE(env != nullptr, "TICKNOISE_BIN must point at the CLI binary");
    return env;
}

RunResult run(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("fidelity").exit_code == 2);                        // missing --gate
    CHECK(run("fidelity --gate single --mc 100").exit_code == 2); // --mc without --seed
    CHECK(run("circuit-sim missing.json --accuracy 10").exit_code == 2);  // missing --seed
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("channel subcommand") {
    SUBCASE("dirac cnot filter is all ones") {
        const auto result = run("channel --builtin cnot --dist dirac --tau 3.141592653589793");
        REQUIRE(result.exit_code == 0);
        const auto j = nlohmann::json::parse(result.output);
        CHECK(j["dim"] == 4);
        for (const auto& pair : j["filter"]) {
            CHECK(pair[0].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(pair[1].get<double>() == doctest::Approx(0.0).epsilon(1e-15));
        }
    }
    SUBCASE("gaussian qubit off-diagonal filter is e^{-1/2}") {
        const auto result =
            run("channel --builtin qubit --omega 1 --dist gaussian --tau 3.14 --sigma 1");
        REQUIRE(result.exit_code == 0);
        const auto j = nlohmann::json::parse(result.output);
        REQUIRE(j["dim"] == 2);
        // row-major entry (0,1)
        CHECK(j["filter"][1][0].get<double>() ==
              doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    }
    SUBCASE("swap generator with a comb at revival keeps unit magnitudes") {
        // revival of the unit gap: rate = 1/(2 pi n) with n = 3
        const auto result =
            run("channel --builtin swap --dist comb --comb-n 3 --comb-rate 0.05305164769729845");
        REQUIRE(result.exit_code == 0);
        const auto j = nlohmann::json::parse(result.output);
        for (const auto& pair : j["filter"]) {
            const double re = pair[0].get<double>(), im = pair[1].get<double>();
            CHECK(std::sqrt(re * re + im * im) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("empirical atoms from CSV") {
        write_file("cli_ticks.csv", "time_seconds,weight\n0.0,0.5\n3.14159,0.5\n");
        const auto result =
            run("channel --builtin qubit --dist empirical --ticks-csv cli_ticks.csv");
        REQUIRE(result.exit_code == 0);
        const auto j = nlohmann::json::parse(result.output);
        CHECK(j["tau"].get<double>() == doctest::Approx(0.5 * 3.14159).epsilon(1e-12));
        std::remove("cli_ticks.csv");
    }
    SUBCASE("dump reloads through a file") {
        const auto result = run("channel --builtin cnot --dist gaussian --sigma 0.5 "
                                "--out cli_channel.json");
        REQUIRE(result.exit_code == 0);
        const auto j = nlohmann::json::parse(slurp("cli_channel.json"));
        CHECK(j["energies"].size() == 4);
        std::remove("cli_channel.json");
    }
}

TEST_CASE("fidelity subcommand") {
    SUBCASE("perfect clock gives 1") {
        const auto result = run("fidelity --gate single --theta 3.14159 --accuracy inf");
        REQUIRE(result.exit_code == 0);
        CHECK(result.output.find("fidelity 1") != std::string::npos);
    }
    SUBCASE("cnot-full with gamma 0 gives 1") {
        const auto result = run("fidelity --gate cnot-full --gamma 0");
        REQUIRE(result.exit_code == 0);
        CHECK(result.output.find("fidelity 1") != std::string::npos);
    }
    SUBCASE("json output with a Monte Carlo cross-check at 3 sigma") {
        const auto result = run("fidelity --gate single --theta 3.141592653589793 "
                                "--accuracy 4.934802200544679 --mc 20000 --seed 11 "
                                "--format json");
        REQUIRE(result.exit_code == 0);
        const auto j = nlohmann::json::parse(result.output);
        const double closed = j["fidelity"].get<double>();
        CHECK(closed == doctest::Approx((2.0 + std::exp(-1.0)) / 3.0).epsilon(1e-12));
        const double mc = j["mc_estimate"].get<double>();
        const double se = j["mc_standard_error"].get<double>();
        CHECK(std::abs(mc - closed) <= 3.0 * se);
    }
}

TEST_CASE("bound and budget tables") {
    SUBCASE("bound CSV starts at L = 0 with bound 1") {
        const auto result = run("bound --qubits 20 --accuracy 36000 --l-max 10 --lt 1");
        REQUIRE(result.exit_code == 0);
        std::istringstream lines(result.output);
        std::string header, first;
        std::getline(lines, header);
        std::getline(lines, first);
        CHECK(header == "L,N,bound");
        CHECK(first == "0,36000,1");
    }
    SUBCASE("budget reproduces the m = 1e4 accuracy quote") {
        const auto result =
            run("budget --qubits 20 --lt 1 --m-max 10000 --threshold 0.5 --points 2");
        REQUIRE(result.exit_code == 0);
        std::istringstream lines(result.output);
        std::string header, row;
        std::getline(lines, header);
        CHECK(header == "m,l_t,required_N");
        double required = 0.0;
        while (std::getline(lines, row)) {
            if (row.rfind("10000,1,", 0) == 0) required = std::stod(row.substr(8));
        }
        CHECK(required > 3.4e4);
        CHECK(required < 3.7e4);
    }
}

TEST_CASE("circuit-sim subcommand") {
    SUBCASE("empty circuit scores 1 and passes the bound comparison") {
        write_file("cli_empty.json", R"({"n": 2, "layers": []})");
        const auto result = run("circuit-sim cli_empty.json --accuracy 10 --samples 500 "
                                "--seed 3");
        CHECK(result.exit_code == 0);
        CHECK(result.output.find("PASS") != std::string::npos);
        std::remove("cli_empty.json");
    }
    SUBCASE("single CNOT honestly reports the bound violation") {
        // The exact fidelity 0.8831 exceeds the closed-form bound 0.8628,
        // so the comparison verdict is FAIL with exit code 1.
        write_file("cli_cnot.json", R"({"n": 2, "layers": [[[0, 1]]]})");
        const auto result = run("circuit-sim cli_cnot.json --accuracy 10 --samples 10000 "
                                "--seed 5 --format json");
        CHECK(result.exit_code == 1);
        const auto j = nlohmann::json::parse(result.output);
        CHECK(j["estimate"].get<double>() == doctest::Approx(0.8831).epsilon(0.002));
        CHECK(j["bound"].get<double>() == doctest::Approx(0.862772).epsilon(1e-5));
        CHECK(j["within_bound"] == false);
        std::remove("cli_cnot.json");
    }
    SUBCASE("intra-layer overlap is a usage error") {
        write_file("cli_bad.json", R"({"n": 3, "layers": [[[0, 1], [1, 2]]]})");
        CHECK(run("circuit-sim cli_bad.json --accuracy 10 --seed 1").exit_code == 2);
        std::remove("cli_bad.json");
    }
    SUBCASE("same seed, same output") {
        write_file("cli_det.json", R"({"n": 2, "layers": [[[0, 1]], [[1, 0]]]})");
        const auto a = run("circuit-sim cli_det.json --accuracy 25 --samples 2000 --seed 9");
        const auto b = run("circuit-sim cli_det.json --accuracy 25 --samples 2000 --seed 9");
        CHECK(a.output == b.output);
        std::remove("cli_det.json");
    }
}

TEST_CASE("cooling subcommand") {
    write_file("cli_cooling.json", R"({"r_s": 0.5, "r_v": 0.999, "P_v": 0.1, "sigma": 1.0})");
    SUBCASE("n-max 0 emits the single starting row") {
        const auto result = run("cooling cli_cooling.json --n-max 0");
        REQUIRE(result.exit_code == 0);
        std::istringstream lines(result.output);
        std::string header, row;
        std::getline(lines, header);
        std::getline(lines, row);
        CHECK(header == "n,r,rate");
        CHECK(row.rfind("0,0.5,", 0) == 0);
    }
    SUBCASE("sigma sweep emits the figure-style format") {
        const auto result = run("cooling cli_cooling.json --n-max 3 --sigmas 0 1 3");
        REQUIRE(result.exit_code == 0);
        std::istringstream lines(result.output);
        std::string header;
        std::getline(lines, header);
        CHECK(header == "sigma,n,rate");
        int rows = 0;
        std::string row;
        while (std::getline(lines, row)) rows += row.empty() ? 0 : 1;
        CHECK(rows == 3 * 4);
    }
    std::remove("cli_cooling.json");
}

TEST_CASE("validate subcommand determinism and exit code") {
    // The cooling and unitarity suites are fast; determinism of the full
    // battery is covered by the acceptance suite.
    const auto a = run("validate --suite cooling --seed 42 --out cli_validate_a.json");
    const auto b = run("validate --suite cooling --seed 42 --out cli_validate_b.json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(slurp("cli_validate_a.json") == slurp("cli_validate_b.json"));
    const auto j = nlohmann::json::parse(slurp("cli_validate_a.json"));
    CHECK(j["failed"] == 0);
    std::remove("cli_validate_a.json");
    std::remove("cli_validate_b.json");

    const auto unitarity = run("validate --suite unitarity --seed 7");
    CHECK(unitarity.exit_code == 0);
    CHECK(unitarity.output.find("[PASS]") != std::string::npos);
    CHECK(unitarity.output.find("[FAIL]") == std::string::npos);

    CHECK(run("validate --suite nonsense --seed 1").exit_code == 2);
}

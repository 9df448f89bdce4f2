// End-to-end checks driving the installed CLI binary. The binary path and the
// data directory come from compile definitions set by CMake.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(QLABEL_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) output += buffer.data();
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), output};
}

std::string data(const std::string& name) {
    return std::string(QLABEL_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("perfect on the intro example prints probe and rule, exits 0") {
    const RunResult r = run_cli("perfect " + data("intro.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("feasible") != std::string::npos);
    CHECK(r.output.find("probe") != std::string::npos);
    CHECK(r.output.find("effect 2") != std::string::npos);
}

TEST_CASE("min-error on the coin emits p_error 0.25 in JSON") {
    const RunResult r = run_cli("min-error " + data("coin075.json") + " --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["report"]["p_error"].get<double>() == 0.25);
    CHECK(doc["tool"] == "qlabel");
    CHECK(doc["report"]["decision_rule"][0] == 1);
}

TEST_CASE("JSON output is byte-stable across runs") {
    const std::string args = "min-error " + data("coin075.json") + " --format json --seed 5";
    CHECK(run_cli(args).output == run_cli(args).output);
}

TEST_CASE("validate rejects a non-normalized POVM with exit 1") {
    const RunResult r = run_cli("validate " + data("broken.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("NotNormalized") != std::string::npos);
}

TEST_CASE("validate accepts a good file") {
    const RunResult r = run_cli("validate " + data("intro.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("valid") != std::string::npos);
}

TEST_CASE("malformed JSON exits 1 with a position diagnostic") {
    const RunResult r = run_cli("validate " + data("malformed.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("line") != std::string::npos);
}

TEST_CASE("schema violations name the field") {
    const RunResult r = run_cli("validate " + data("missing_dimension.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("dimension") != std::string::npos);

    const RunResult bare = run_cli("validate " + data("bare_number.json"));
    CHECK(bare.exit_code == 1);
    CHECK(bare.output.find("effects[1]") != std::string::npos);
}

TEST_CASE("missing input file exits 1") {
    const RunResult r = run_cli("perfect /nonexistent/povm.json");
    CHECK(r.exit_code == 1);
}

TEST_CASE("perfect requires binary input") {
    const RunResult r = run_cli("perfect " + data("trine.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("binary") != std::string::npos);
}

TEST_CASE("min-error handles non-binary input via the recorded outcome") {
    const RunResult r = run_cli("min-error " + data("trine.json") + " --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["report"]["p_error"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(doc["report"]["note"].get<std::string>().find("not computed") != std::string::npos);
}

TEST_CASE("antilabel requires --effect and reports exclusions") {
    CHECK(run_cli("antilabel " + data("trine.json")).exit_code == 1);
    const RunResult r = run_cli("antilabel " + data("trine.json") + " --effect 2 --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["report"]["excluded_effects"] == json::array({2}));
    CHECK(run_cli("antilabel " + data("trine.json") + " --effect 9").exit_code == 1);
}

TEST_CASE("plan covers the projector family in one use") {
    const RunResult r = run_cli("plan " + data("projector3.json") + " --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["report"]["fully_labelable"] == true);
    CHECK(doc["report"]["min_uses_bound"] == 1);
    CHECK(doc["report"]["plan"].size() == 1);
}

TEST_CASE("partial lists both classes of the projector family") {
    const RunResult r = run_cli("partial " + data("projector3.json") + " --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    REQUIRE(doc["classes"].size() == 2);
    CHECK(doc["classes"][0]["feasible"] == true);
    CHECK(doc["classes"][1]["feasible"] == true);
    CHECK(doc["classes"][1]["outcomes"] == json::array({2, 3}));
}

TEST_CASE("oracle agrees with the analytic value") {
    const RunResult r =
        run_cli("oracle " + data("coin075.json") + " --samples 50 --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["analytic_p_error"].get<double>() == 0.25);
    CHECK(std::abs(doc["gap"].get<double>()) <= 1e-12);
}

TEST_CASE("simulate requires an explicit permutation, verify does not") {
    CHECK(run_cli("simulate " + data("coin075.json") + " --trials 1000").exit_code == 1);

    const RunResult sim = run_cli("simulate " + data("intro.json") +
                                  " --permutation 2,1 --trials 5000 --format json");
    CHECK(sim.exit_code == 0);
    const json sim_doc = json::parse(sim.output);
    CHECK(sim_doc["simulation"]["empirical_error_rate"].get<double>() == 0.0);

    const RunResult ver =
        run_cli("verify " + data("coin075.json") + " --trials 20000 --format json");
    CHECK(ver.exit_code == 0);
    const json ver_doc = json::parse(ver.output);
    CHECK(ver_doc["verification"]["passed"] == true);
}

TEST_CASE("unknown subcommand fails fast") {
    CHECK(run_cli("frobnicate " + data("intro.json")).exit_code != 0);
}

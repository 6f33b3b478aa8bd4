#include "feynmandd/families.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(FEYNMANDD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("simulate --json reports the HTH amplitude with a stable schema") {
    auto file = write_temp("fdd_cli_hth.fdd", "gateset T\nqubits 1\nh 0\nt 0\nh 0\n");
    CmdResult res = run_cli("simulate " + file.string() + " --json");
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["amplitude"]["re"].get<double>() == doctest::Approx(0.8535533905932737));
    CHECK(j["amplitude"]["im"].get<double>() == doctest::Approx(0.35355339059327373));
    CHECK(j["modulus"] == 8);
    CHECK(j["e"] == 2);
    CHECK(j["counts"].size() == 8);
    CHECK(j["counts"][0].get<std::string>() == "1");
    CHECK(j["counts"][1].get<std::string>() == "1");
    CHECK(j["ordering"]["method"] == "natural");
    CHECK(j.contains("timing"));
    // counts sum to 2^n_internal
    long sum = 0;
    for (const auto& c : j["counts"]) sum += std::stol(c.get<std::string>());
    CHECK(sum == (1l << j["n_internal"].get<int>()));
}

TEST_CASE("simulate JSON is byte-identical across runs and thread counts") {
    auto inst = fdd::gen_lrw_family(12, 3, 31);
    auto file = write_temp("fdd_cli_det.fdd", inst.to_file_string());
    auto strip_timing = [](const std::string& text) {
        auto j = nlohmann::json::parse(text);
        j.erase("timing");
        return j.dump();
    };
    CmdResult a = run_cli("simulate " + file.string() + " --json");
    CmdResult b = run_cli("simulate " + file.string() + " --json");
    CmdResult c = run_cli("simulate " + file.string() + " --json --threads 8");
    REQUIRE(a.exit_code == 0);
    CHECK(strip_timing(a.out) == strip_timing(b.out));
    CHECK(strip_timing(a.out) == strip_timing(c.out));
}

TEST_CASE("gen output is reproducible and verifies against the oracle") {
    CmdResult g1 = run_cli("gen lrw --n 8 --k 2 --seed 5");
    CmdResult g2 = run_cli("gen lrw --n 8 --k 2 --seed 5");
    REQUIRE(g1.exit_code == 0);
    CHECK(g1.out == g2.out);
    auto file = write_temp("fdd_cli_gen.fdd", g1.out);
    CmdResult v = run_cli("verify " + file.string());
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("verify: ok") != std::string::npos);
}

TEST_CASE("order --method exhaustive finds width 1 on a complete graph") {
    // IQP circuit whose zero-to-zero variable graph is K6
    std::string text = "gateset T\nqubits 6\n";
    for (int q = 0; q < 6; ++q) text += "h " + std::to_string(q) + "\n";
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            text += "cz " + std::to_string(i) + " " + std::to_string(j) + "\n";
    for (int q = 0; q < 6; ++q) text += "h " + std::to_string(q) + "\n";
    auto file = write_temp("fdd_cli_k6.fdd", text);
    CmdResult res = run_cli("order " + file.string() + " --method exhaustive");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("width 1\n") != std::string::npos);
}

TEST_CASE("stats prints per-level bounds that hold") {
    auto inst = fdd::gen_lrw_family(14, 3, 12);
    auto file = write_temp("fdd_cli_stats.fdd", inst.to_file_string());
    CmdResult res = run_cli("stats " + file.string());
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("VIOLATED") == std::string::npos);
    CHECK(res.out.find(": ok") != std::string::npos);
}

TEST_CASE("order --write emits a file usable as an explicit ordering") {
    auto inst = fdd::gen_lrw_family(10, 2, 33);
    auto file = write_temp("fdd_cli_ow.fdd", inst.to_file_string());
    auto perm = std::filesystem::temp_directory_path() / "fdd_cli_ow.perm";
    CmdResult res = run_cli("order " + file.string() + " --method greedy --write " + perm.string());
    REQUIRE(res.exit_code == 0);
    CmdResult sim = run_cli("simulate " + file.string() + " --json --order explicit:" +
                            perm.string());
    REQUIRE(sim.exit_code == 0);
    auto j = nlohmann::json::parse(sim.out);
    CmdResult nat = run_cli("simulate " + file.string() + " --json");
    auto jn = nlohmann::json::parse(nat.out);
    CHECK(j["counts"] == jn["counts"]);
}

TEST_CASE("exit codes") {
    SUBCASE("parse error is 1") {
        auto file = write_temp("fdd_cli_bad.fdd", "gateset T\nqubits 2\ncz 0 0\n");
        CHECK(run_cli("simulate " + file.string()).exit_code == 1);
    }
    SUBCASE("capability error is 2") {
        auto inst = fdd::gen_lrw_family(14, 3, 1);
        auto file = write_temp("fdd_cli_big.fdd", inst.to_file_string());
        CHECK(run_cli("simulate " + file.string() + " --order exhaustive").exit_code == 2);
    }
    SUBCASE("node cap from the environment is a capability error") {
        auto inst = fdd::gen_lrw_family(12, 3, 8);
        auto file = write_temp("fdd_cli_cap.fdd", inst.to_file_string());
        std::string cmd = "FEYNMANDD_MAX_NODES=4 " + std::string(FEYNMANDD_CLI_PATH) +
                          " simulate " + file.string() + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 512> buf;
        while (fread(buf.data(), 1, buf.size(), pipe) > 0) {}
        int status = pclose(pipe);
        CHECK(WEXITSTATUS(status) == 2);
    }
}

TEST_CASE("explicit ordering files round through the CLI") {
    auto inst = fdd::gen_lrw_family(10, 2, 21);
    auto file = write_temp("fdd_cli_expl.fdd", inst.to_file_string());
    auto perm = write_temp("fdd_cli_expl.perm", "9 8 7 6 5 4 3 2 1 0\n");
    CmdResult res = run_cli("simulate " + file.string() + " --json --order explicit:" +
                            perm.string());
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["ordering"]["method"] == "explicit");
    CHECK(j["ordering"]["perm"][0] == 9);
    // same amplitude as the natural order
    CmdResult nat = run_cli("simulate " + file.string() + " --json");
    auto jn = nlohmann::json::parse(nat.out);
    CHECK(j["amplitude"]["re"].get<double>() ==
          doctest::Approx(jn["amplitude"]["re"].get<double>()).epsilon(1e-12));
    CHECK(j["counts"] == jn["counts"]);
}

TEST_SUITE_END();

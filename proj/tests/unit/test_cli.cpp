// Drives the installed CLI binary: exit codes, file artifacts, and the
// byte-stability of save/load/save.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef RBALL_CLI_PATH
#define RBALL_CLI_PATH "rball"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(RBALL_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe))
        out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "rball_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("body/hull/dual/volumes round trip through files") {
    const fs::path dir = temp_dir();
    write(dir / "lens.json", R"({"dim":2,"r":1.0,"points":[[-0.5,0.0],[0.5,0.0]]})");

    auto res = run("body --input " + (dir / "lens.json").string() + " --output " +
                   (dir / "body.json").string());
    CHECK(res.exit_code == 0);
    const json body = json::parse(slurp(dir / "body.json"));
    CHECK(body.at("arcs").size() == 2);
    CHECK(body.at("full_disk").get<bool>() == false);

    res = run("volumes --input " + (dir / "body.json").string() + " --output " +
              (dir / "vols.json").string());
    CHECK(res.exit_code == 0);
    const json vols = json::parse(slurp(dir / "vols.json"));
    CHECK(std::fabs(vols.at("v2").get<double>() - 1.2283696986087567) < 1e-12);

    res = run("dual --input " + (dir / "body.json").string() + " --output " +
              (dir / "dual.json").string());
    CHECK(res.exit_code == 0);

    // save(load(save(x))) is byte-identical
    res = run("body --input " + (dir / "lens.json").string() + " --output " +
              (dir / "body2.json").string());
    CHECK(res.exit_code == 0);
    CHECK(slurp(dir / "body.json") == slurp(dir / "body2.json"));

    // far-apart generators produce the empty marker
    write(dir / "far.json", R"({"dim":2,"r":1.0,"points":[[0,0],[2.5,0]]})");
    res = run("body --input " + (dir / "far.json").string() + " --output " +
              (dir / "far_out.json").string());
    CHECK(res.exit_code == 0);
    CHECK(json::parse(slurp(dir / "far_out.json")).at("result") == "empty");

    // singleton produces the full disk
    write(dir / "one.json", R"({"dim":2,"r":1.0,"points":[[0.25,0.5]]})");
    res = run("body --input " + (dir / "one.json").string() + " --output " +
              (dir / "one_out.json").string());
    CHECK(res.exit_code == 0);
    CHECK(json::parse(slurp(dir / "one_out.json")).at("full_disk").get<bool>());
}

TEST_CASE("malformed input exits 2 with a machine-readable record") {
    const fs::path dir = temp_dir();
    write(dir / "bad.json", "{\"dim\":2");
    const auto res = run("body --input " + (dir / "bad.json").string() + " --output " +
                         (dir / "x.json").string());
    CHECK(res.exit_code == 2);
    const json err = json::parse(res.out);
    CHECK(err.at("error") == "parse");
}

TEST_CASE("verify writes JSONL and CSV and exits 0 on a clean suite") {
    const fs::path dir = temp_dir() / "reports";
    const auto res = run("verify support --trials 20 --seed 1 --out-dir " + dir.string());
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(dir / "support_d2_seed1.jsonl"));
    CHECK(fs::exists(dir / "support_d2_seed1_summary.csv"));
    const std::string csv = slurp(dir / "support_d2_seed1_summary.csv");
    CHECK(csv.rfind("check,trials,violations,worst_margin,seed\n", 0) == 0);
    CHECK(csv.find("support,21,0,") != std::string::npos);
}

TEST_CASE("search emits a result file and an SVG; bad volume exits 2") {
    const fs::path dir = temp_dir();
    auto res = run("search --dim 2 --k 2 --r 1 --v 1.228369698608757 --n 2 "
                   "--restarts 2 --max-evals 2000 --seed 0 --output " +
                   (dir / "sr.json").string() + " --svg " + (dir / "sr.svg").string());
    CHECK(res.exit_code == 0);
    const json sr = json::parse(slurp(dir / "sr.json"));
    CHECK(sr.at("feasible").get<bool>());
    CHECK(std::fabs(sr.at("best_objective").get<double>() -
                    (3.141592653589793 / 3.0 - 0.8660254037844386)) < 1e-5);
    const std::string svg = slurp(dir / "sr.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("path") != std::string::npos);

    res = run("search --dim 2 --v 4.0");
    CHECK(res.exit_code == 2);
    CHECK(json::parse(res.out).at("error") == "usage");
}

TEST_CASE("3D search is labeled exploratory and claims no optimality") {
    const fs::path dir = temp_dir();
    const auto res = run("search --dim 3 --k 3 --r 1 --v 1.0 --n 3 --seed 0 "
                         "--restarts 2 --max-evals 120 --mc-samples 8000 --output " +
                         (dir / "sr3.json").string());
    CHECK(res.exit_code == 0);
    const json sr = json::parse(slurp(dir / "sr3.json"));
    CHECK(sr.at("exploratory").get<bool>());
    CHECK(sr.at("baseline").get<double>() > 0.0);
    CHECK(sr.find("optimal") == sr.end());
    if (sr.at("feasible").get<bool>())
        CHECK(sr.at("constraint_residual").get<double>() <= 1e-6 * 1.0);
}

TEST_CASE("nd point sets report estimates with recorded seeds") {
    const fs::path dir = temp_dir();
    write(dir / "nd.json", R"({"dim":3,"r":1.0,"points":[[0,0,0]]})");
    const auto res = run("body --input " + (dir / "nd.json").string() + " --output " +
                         (dir / "nd_out.json").string() + " --samples 50000 --seed 9");
    CHECK(res.exit_code == 0);
    const json out = json::parse(slurp(dir / "nd_out.json"));
    CHECK(out.at("vd").at("seed").get<uint64_t>() == 9);
    const double vd = out.at("vd").at("value").get<double>();
    const double se = out.at("vd").at("std_error").get<double>();
    CHECK(std::fabs(vd - 4.18879020478639) <= 3.0 * se);
    CHECK(std::fabs(out.at("v1").at("value").get<double>() - 4.0) <= 0.04);
}

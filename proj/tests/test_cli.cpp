#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qcd/cli.hpp"

using qcd::cli::dispatch;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qcdsim_test_cli";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            lines.push_back(line);
        }
    }
    return lines;
}

// Runs the installed binary with QCDSIM_THREADS set; returns stdout.
std::string run_binary(const std::string& args, int threads) {
    const std::string cmd = "QCDSIM_THREADS=" + std::to_string(threads) + " " QCDSIM_BINARY " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        text.append(buf, n);
    }
    CHECK(pclose(pipe) == 0);
    return text;
}

}  // namespace

TEST_CASE("heat-check smoke") {
    const Run r = run({"heat-check"});
    CHECK(r.code == 0);
    const auto rows = data_lines(r.out);
    CHECK(rows.front() == "n,t,x,heat_eq_residual,hermite_residual");
    CHECK(rows.size() == 1 + 5 * 3 * 5);
    CHECK(r.out.rfind("# qcdsim heat-check\n# max-order = 4\n", 0) == 0);
}

TEST_CASE("clark-ocone JSON records the seed") {
    const Run r = run({"clark-ocone", "--payoff", "indicator:0.5", "--paths", "200", "--steps", "256", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["seed"] == 7);
    CHECK(doc["config"]["seed"] == "7");
    CHECK(doc["config"]["payoff"] == "indicator:0.5");
    CHECK(doc["e_F_closed_form"].get<double>() == doctest::Approx(0.3085375387).epsilon(1e-10));
    CHECK(doc["N"] == 256);
    CHECK(doc["M"] == 200);
}

TEST_CASE("chaos table has a zero second coefficient") {
    const Run r = run({"chaos", "--strike", "0", "--start", "0", "--horizon", "1", "--truncate", "15"});
    REQUIRE(r.code == 0);
    const auto rows = data_lines(r.out);
    CHECK(rows.size() == 17);
    CHECK(rows[0] == "n,g_n,partial_norm,target_norm");
    CHECK(rows[3].rfind("2,0,", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({"paths", "--bogus"}).code == qcd::cli::kExitValidation);
    CHECK(run({"nonsense"}).code == qcd::cli::kExitValidation);
    CHECK(run({}).code == qcd::cli::kExitValidation);
    CHECK(run({"chaos", "--strike", "abc"}).code == qcd::cli::kExitValidation);
    CHECK(run({"paths", "--steps", "1"}).code == qcd::cli::kExitValidation);
    CHECK(run({"clark-ocone", "--payoff", "exp:1"}).code == qcd::cli::kExitValidation);
    CHECK(run({"hedge", "--freqs", "3", "--steps", "64", "--paths", "4"}).code == qcd::cli::kExitValidation);
    CHECK(run({"paths", "--config", scratch("missing.cfg")}).code == qcd::cli::kExitValidation);
    CHECK(run({"paths", "--output", "/nonexistent/dir/out.csv"}).code == qcd::cli::kExitRuntime);
    const Run bad = run({"paths", "--bogus"});
    CHECK(bad.err.find("Usage") != std::string::npos);
}

TEST_CASE("numbers carry 17 significant digits") {
    const Run r = run({"chaos", "--truncate", "1"});
    CHECK(r.out.find("0.3989422804014327") != std::string::npos);
    const Run j = run({"girsanov", "--paths", "100", "--steps", "16"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    for (const char* key : {"mean_Z_T", "tilde_mean_F", "tilde_closed_form"}) {
        const double v = doc[key].get<double>();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        CHECK(j.out.find(buf) != std::string::npos);
    }
}

TEST_CASE("CSV config echo round-trips through --config") {
    const std::vector<std::string> base{"hedge", "--paths", "20", "--steps", "256", "--freqs", "16,64,256",
                                        "--seed", "5", "--b", "linear:0.02,0.01", "--strike", "0.3"};
    const Run first = run(base);
    REQUIRE(first.code == 0);
    write_file(scratch("hedge.csv"), first.out);
    const Run again = run({"hedge", "--config", scratch("hedge.csv")});
    CHECK(again.code == 0);
    CHECK(again.out == first.out);

    // command-line flags win over the file
    const Run changed = run({"hedge", "--config", scratch("hedge.csv"), "--seed", "6"});
    CHECK(changed.out != first.out);
    CHECK(changed.out.find("# seed = 6\n") != std::string::npos);
    CHECK(changed.out.find("# strike = 0.29999999999999999\n") != std::string::npos);
}

TEST_CASE("JSON config echo round-trips through --config") {
    const Run first = run({"clark-ocone", "--payoff", "sin", "--paths", "50", "--steps", "128", "--lambda", "",
                           "--seed", "11"});
    REQUIRE(first.code == 0);
    write_file(scratch("co.json"), first.out);
    const Run again = run({"clark-ocone", "--config", scratch("co.json")});
    CHECK(again.code == 0);
    CHECK(again.out == first.out);
}

TEST_CASE("plain key-value config file") {
    write_file(scratch("paths.cfg"), "# a comment\nseed = 3\npaths = 2\nsteps = 4\n");
    const Run r = run({"paths", "--config", scratch("paths.cfg")});
    CHECK(r.code == 0);
    CHECK(data_lines(r.out).size() == 1 + 2 * 5);
    CHECK(r.out == run({"paths", "--seed", "3", "--paths", "2", "--steps", "4"}).out);
}

TEST_CASE("output file matches stdout") {
    const Run r = run({"verify-qcd", "--steps", "1024", "--output", scratch("vq.csv")});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(read_file(scratch("vq.csv")) == run({"verify-qcd", "--steps", "1024"}).out);
}

TEST_CASE("verify-qcd estimates stay near the target") {
    const Run r = run({"verify-qcd", "--steps", "16384", "--seed", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["config"]["window-k"] == "128");
    CHECK(!doc["rows"].empty());
}

TEST_CASE("binary output is byte-identical across thread counts") {
    const std::vector<std::string> runs{
        "paths --paths 8 --steps 32 --seed 4",
        "clark-ocone --paths 300 --steps 256 --seed 9 --lambda const:0.5",
        "chaos --truncate 9 --paths 200 --steps 256 --strike 0.5",
        "hedge --paths 200 --steps 256 --freqs 16,64,256",
        "girsanov --paths 500 --steps 64",
        "verify-qcd --steps 4096 --process drift:const:0.3",
    };
    for (const auto& args : runs) {
        CAPTURE(args);
        const std::string one = run_binary(args, 1);
        CHECK(!one.empty());
        CHECK(one == run_binary(args, 4));
        CHECK(one == run_binary(args + " --threads 3", 1));
    }
}

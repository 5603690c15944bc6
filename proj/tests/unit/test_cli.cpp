#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nec/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path data_dir = NEC_DATA_DIR;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(NECODE_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "nec_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string data(const std::string& name) { return (data_dir / name).string(); }

}  // namespace

TEST(Cli, NetInfo) {
    auto r = run("net-info " + data("relay_network.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("C_t1=3, C_t2=3"), std::string::npos) << r.out;
    const auto comb = scratch("c64.json");
    EXPECT_EQ(run("gen combination --n 6 --k 4 --out " + comb.string()).code, 0);
    r = run("net-info " + comb.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("|E|=66, C_t=4 for 15 sinks"), std::string::npos) << r.out;
    r = run("net-info " + data("cyclic.json"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("acyclic violated"), std::string::npos);
}

TEST(Cli, ParseFailures) {
    const auto broken = scratch("broken.json");
    std::ofstream(broken) << "{\"nodes\": [";
    auto r = run("net-info " + broken.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find(":byte"), std::string::npos);
    EXPECT_EQ(run("verify /nonexistent/file.json").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("prob " + data("relay_network.json") + " --field 31 --rate 2 --trials 0").code, 2);
    EXPECT_EQ(run("construct " + data("relay_network.json") + " --field 9 --rate 2").code, 2);
}

TEST(Cli, VerifyFixture) {
    auto r = run("verify " + data("relay_code_w2.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("MDS=true"), std::string::npos);
    const auto report = scratch("report.json");
    r = run("verify " + data("relay_code_w2.json") + " --format json --out " + report.string());
    EXPECT_EQ(r.code, 0);
    const auto doc = nec::io::read_json(report);
    EXPECT_EQ(doc["mds"], true);
    for (const auto& s : doc["sinks"]) EXPECT_EQ(s["d_min"], 2);
}

TEST(Cli, ReduceReproducesFixtureByteForByte) {
    const auto out = scratch("w1.json");
    EXPECT_EQ(run("reduce " + data("relay_code_w2.json") + " --k 1 --out " + out.string()).code, 0);
    EXPECT_EQ(slurp(out), slurp(data_dir / "relay_code_w1.json"));
    const auto auto_out = scratch("w1_auto.json");
    EXPECT_EQ(run("reduce " + data("relay_code_w2.json") + " --out " + auto_out.string()).code, 0);
    EXPECT_EQ(slurp(auto_out), slurp(data_dir / "relay_code_w1.json"));
    // k = 0 yields a regular but non-MDS code.
    EXPECT_EQ(run("reduce " + data("relay_code_w2.json") + " --k 0 --out " + scratch("w1_bad.json").string()).code, 4);
    EXPECT_EQ(run("verify " + scratch("w1_bad.json").string()).code, 4);
    EXPECT_EQ(run("reduce " + data("relay_code_w1.json") + " --k 1").code, 2);
}

TEST(Cli, ConstructIsDeterministicAndRoundTrips) {
    const auto a = scratch("a.json"), b = scratch("b.json");
    EXPECT_EQ(run("construct " + data("butterfly.json") + " --field 7 --rate 2 --seed 4 --out " + a.string()).code, 0);
    EXPECT_EQ(run("construct " + data("butterfly.json") + " --field 7 --rate 2 --seed 4 --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(nec::io::dump(nec::io::code_to_json(nec::io::load_code(a))), slurp(a));
    EXPECT_EQ(run("verify " + a.string()).code, 0);
    // No binary [4,2,3] code exists, so every attempt fails.
    const auto parallel = scratch("parallel4.json");
    std::ofstream(parallel) << R"({"nodes": ["s", "t"], "source": "s", "sinks": ["t"], "channels": [
        {"id": "e1", "tail": "s", "head": "t"}, {"id": "e2", "tail": "s", "head": "t"},
        {"id": "e3", "tail": "s", "head": "t"}, {"id": "e4", "tail": "s", "head": "t"}]})";
    EXPECT_EQ(run("construct " + parallel.string() + " --field 2 --rate 2 --attempts 8").code, 5);
}

TEST(Cli, Family) {
    const auto dir = scratch("fam");
    fs::remove_all(dir);
    EXPECT_EQ(run("family " + data("relay_code_w2.json") + " --out " + dir.string()).code, 0);
    EXPECT_EQ(slurp(dir / "code_w1.json"), slurp(data_dir / "relay_code_w1.json"));
    EXPECT_EQ(run("family " + data("relay_network.json") + " --field 3 --rate 4 --out " + dir.string()).code, 2);
    const auto dir2 = scratch("fam2");
    fs::remove_all(dir2);
    EXPECT_EQ(run("family " + data("relay_network.json") + " --field 31 --rate 3 --seed 2 --out " + dir2.string()).code, 0);
    EXPECT_TRUE(fs::exists(dir2 / "code_w3.json"));
    EXPECT_TRUE(fs::exists(dir2 / "code_w1.json"));
}

TEST(Cli, ProbReport) {
    const auto out = scratch("prob.json");
    const std::string args = "prob " + data("relay_network.json") + " --field 31 --rate 2 --trials 300 --seed 9 --target joint --format json --out ";
    EXPECT_EQ(run(args + out.string()).code, 0);
    const auto first = slurp(out);
    EXPECT_EQ(run(args + out.string()).code, 0);
    EXPECT_EQ(slurp(out), first);
    const auto doc = nec::io::read_json(out);
    EXPECT_EQ(doc["trials"], 300);
    EXPECT_GE(doc["wilson95"][1].get<double>(), doc["estimate"].get<double>());
}

TEST(Cli, Simulate) {
    auto r = run("simulate " + data("relay_code_w1.json") + " --message 2 --pattern e4 --values 1");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("t2: received=[2 2 2] decoded=[2]"), std::string::npos) << r.out;
    const auto scenario = scratch("scenario.json");
    std::ofstream(scenario) << R"({"message": [1], "pattern": ["e6"], "values": [2]})";
    EXPECT_EQ(run("simulate " + data("relay_code_w1.json") + " --scenario " + scenario.string()).code, 0);
    EXPECT_EQ(run("simulate " + data("relay_code_w1.json") + " --message 2 --pattern e4 --values 0").code, 2);
    EXPECT_EQ(run("simulate " + data("relay_code_w1.json") + " --message 2 --pattern e9 --values 1").code, 2);
    // Two errors exceed the radius of the rate-one code at t1.
    r = run("simulate " + data("relay_code_w1.json") + " --message 0 --pattern e1,e2 --values 1,1");
    EXPECT_EQ(r.code, 4) << r.out;
}

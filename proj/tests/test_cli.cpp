#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "tlearn/gadgets.hpp"

using namespace tlearn;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(TLEARN_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("tlearn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string &name, const nlohmann::json &j) {
        auto p = dir / name;
        std::ofstream(p) << j.dump(2) << "\n";
        return p.string();
    }

    fs::path dir;
};

} // namespace

TEST_F(CliTest, EvalOnWord) {
    auto w = write("w.json", model_to_json(make_word({"p"}, {{}}, {{"p"}})));
    auto r = run("eval -f 'F p' -m " + w);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "true\n");
    r = run("eval -f 'X p' -m " + w + " -m " + w);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, w + "  true\n" + w + "  true\n");
    r = run("eval -f 'G p' -m " + w);
    EXPECT_EQ(r.out, "false\n");
}

TEST_F(CliTest, GenMatchesFixture) {
    auto prefix = (dir / "out").string();
    auto r = run("gen --family ctl-x --l 5 --sets '1,3;1,2,4' --k 1 --out " + prefix);
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(slurp(prefix + ".json"), slurp(std::string(TLEARN_GOLDEN_DIR) + "/cli_ctl_x_5.json"));
    EXPECT_EQ(slurp(prefix + ".source.json"), slurp(std::string(TLEARN_GOLDEN_DIR) + "/cli_ctl_x_5.source.json"));
}

TEST_F(CliTest, GenIsByteDeterministic) {
    auto a = (dir / "a").string(), b = (dir / "b").string();
    for (auto &p : {a, b})
        ASSERT_EQ(run("gen --family atl3 --op G --l 3 --sets '1,2;3' --k 2 --out " + p).code, 0);
    EXPECT_EQ(slurp(a + ".json"), slurp(b + ".json"));
    EXPECT_FALSE(slurp(a + ".json").empty());
}

TEST_F(CliTest, LearnExample) {
    auto b = gen_ltl(Family::Or, HitInstance{4, {{1, 3}, {1, 2, 4}}, 1});
    auto inst = write("or.json", instance_to_json(b.instance));
    auto r = run("learn --instance " + inst + " --json");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("verdict"), "positive");
    EXPECT_EQ(j.at("witness"), "a1");
    EXPECT_FALSE(j.contains("elapsed_ms"));
    EXPECT_EQ(run("learn --instance " + inst + " --json").out, r.out);
}

TEST_F(CliTest, CheckExpectPositive) {
    auto b = gen_ltl(Family::Or, HitInstance{4, {{1, 3}, {1, 2, 4}}, 1});
    auto inst = write("or.json", instance_to_json(b.instance));
    EXPECT_EQ(run("check -f a1 --instance " + inst + " --expect-positive").code, 0);
    EXPECT_EQ(run("check -f a2 --instance " + inst + " --expect-positive").code, 1);
    EXPECT_EQ(run("check -f a2 --instance " + inst).code, 0);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("eval --bogus").code, 2);
    auto w = write("w.json", model_to_json(make_word({"p"}, {}, {{"p"}})));
    EXPECT_EQ(run("eval -f 'F (' -m " + w).code, 3);
    EXPECT_EQ(run("eval -f 'F p' -m " + (dir / "missing.json").string()).code, 3);
    EXPECT_EQ(run("eval -f 'F q' -m " + w).code, 3);
    EXPECT_EQ(run("eval -f 'F q' --lenient -m " + w).out, "false\n");
}

TEST_F(CliTest, SelftestQuickSubset) {
    auto r = run("selftest --only 6 --json");
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("tier"), "quick");
    auto &c = j.at("criteria");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].at("id"), 6);
    EXPECT_EQ(c[0].at("pass"), true);
}

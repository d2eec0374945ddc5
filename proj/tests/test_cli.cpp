#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path &p, const std::string &text) { std::ofstream(p, std::ios::binary) << text; }

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cutroute_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string at(const std::string &name) const { return (dir_ / name).string(); }

    Outcome cli(const std::string &args) const {
        const std::string cmd = std::string(CUTROUTE_CLI) + " " + args + " > " + at("stdout") + " 2> " + at("stderr");
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(at("stdout")), slurp(at("stderr"))};
    }

    Outcome gen_line(std::size_t n, const std::string &stem) const {
        return cli("gen --family line --n " + std::to_string(n) + " --labeling half_split --graph " + at(stem + ".g") +
                   " --labels " + at(stem + ".l"));
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, GenIsByteIdenticalAcrossInvocations) {
    const std::string args = "gen --family gnp --n 60 --p 0.1 --seed 5 --labeling k_blocks --k 6 --arity 3";
    ASSERT_EQ(cli(args + " --graph " + at("a.g") + " --labels " + at("a.l")).code, 0);
    ASSERT_EQ(cli(args + " --graph " + at("b.g") + " --labels " + at("b.l")).code, 0);
    EXPECT_EQ(slurp(at("a.g")), slurp(at("b.g")));
    EXPECT_EQ(slurp(at("a.l")), slurp(at("b.l")));
    // the echoed config is a comment, so the files load back
    const auto g = cutroute::load_graph_file(at("a.g"));
    EXPECT_EQ(cutroute::load_labels_file(at("a.l"), g.num_vertices()).arity(), 3u);
}

TEST_F(Cli, GenUnreachableConnectivityIsAnInputError) {
    const Outcome o = cli("gen --family gnp --n 200 --p 0.0005 --graph " + at("g") + " --labels " + at("l"));
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("connected"), std::string::npos) << o.err;
}

TEST_F(Cli, MalformedGraphIsAnInputError) {
    spit(at("bad.g"), "3 2\n0 1\n1 1\n");
    spit(at("bad.l"), "+1\n+1\n-1\n");
    const Outcome o = cli("run --graph " + at("bad.g") + " --labels " + at("bad.l") + " --out " + at("r.json"));
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
}

TEST_F(Cli, RunTwoQueryOrderThenVerify) {
    ASSERT_EQ(gen_line(8, "p8").code, 0);
    spit(at("order.txt"), "0 7\n");
    const Outcome run = cli("run --graph " + at("p8.g") + " --labels " + at("p8.l") + " --order file:" +
                            at("order.txt") + " --out " + at("r.json"));
    ASSERT_EQ(run.code, 0) << run.err;
    const json rep = json::parse(slurp(at("r.json")));
    EXPECT_EQ(rep.at("mistakes"), 1);
    EXPECT_EQ(rep.at("bound"), 1);
    EXPECT_EQ(rep.at("queries"), 2);
    EXPECT_EQ(rep.at("cut_size"), 1);
    EXPECT_TRUE(rep.at("bound_satisfied").get<bool>());
    EXPECT_TRUE(rep.contains("config"));

    const std::string vargs = "verify --graph " + at("p8.g") + " --labels " + at("p8.l") + " --transcript " +
                              at("r.json.transcript.jsonl") + " --paths " + at("r.json.paths.jsonl") +
                              " --report " + at("r.json");
    const Outcome ok = cli(vargs);
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);

    // flip the revealed label of the second query
    std::string t = slurp(at("r.json.transcript.jsonl"));
    const auto pos = t.rfind("\"revealed\":\"-1\"");
    ASSERT_NE(pos, std::string::npos);
    t.replace(pos, 15, "\"revealed\":\"+1\"");
    spit(at("r.json.transcript.jsonl"), t);
    const Outcome bad = cli(vargs);
    EXPECT_NE(bad.code, 0);
    EXPECT_NE(bad.out.find("FAIL revealed-label"), std::string::npos) << bad.out;
}

TEST_F(Cli, VerifyEmptyTranscriptIsVacuous) {
    ASSERT_EQ(gen_line(8, "p8").code, 0);
    spit(at("t.jsonl"), "");
    spit(at("p.jsonl"), "");
    const Outcome o = cli("verify --graph " + at("p8.g") + " --labels " + at("p8.l") + " --transcript " +
                          at("t.jsonl") + " --paths " + at("p.jsonl"));
    EXPECT_EQ(o.code, 0) << o.out;
}

TEST_F(Cli, SweepWithZeroSeedsPrintsOnlyTheHeader) {
    const Outcome o = cli("sweep --seeds 0");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, std::string(cutroute::kCsvHeader) + "\n");
}

TEST_F(Cli, SweepWritesCsvAndSummary) {
    const Outcome o = cli("sweep --families line random_tree --ns 32 64 --orders random odd-first --seeds 2 --jobs 3 "
                          "--out " +
                          at("s.csv"));
    ASSERT_EQ(o.code, 0) << o.err;
    std::istringstream csv(slurp(at("s.csv")));
    std::string line;
    std::size_t rows = 0;
    std::getline(csv, line);
    EXPECT_EQ(line, cutroute::kCsvHeader);
    while (std::getline(csv, line))
        ++rows;
    EXPECT_EQ(rows, 2u * 2 * 2 * 2);
    const json summary = json::parse(slurp(at("s.csv.summary.json")));
    EXPECT_EQ(summary.at("failed"), 0);
}

TEST_F(Cli, MidpointOnLongLine) {
    ASSERT_EQ(gen_line(1024, "l").code, 0);
    const Outcome o =
        cli("run --graph " + at("l.g") + " --labels " + at("l.l") + " --order midpoint --out " + at("r.json"));
    ASSERT_EQ(o.code, 0) << o.err;
    const auto mistakes = json::parse(slurp(at("r.json"))).at("mistakes").get<std::size_t>();
    EXPECT_GE(mistakes, 8u);
    EXPECT_LE(static_cast<double>(mistakes), cutroute::testing::stored_c_cal() * (1 + std::log2(1024.0)));
}

TEST_F(Cli, UnknownOrderIsAnInputError) {
    ASSERT_EQ(gen_line(8, "p8").code, 0);
    const Outcome o =
        cli("run --graph " + at("p8.g") + " --labels " + at("p8.l") + " --order sideways --out " + at("r.json"));
    EXPECT_EQ(o.code, 2);
}

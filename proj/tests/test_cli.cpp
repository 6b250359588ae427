#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "ffnn/backprop.hpp"
#include "ffnn/cli.hpp"
#include "ffnn/exercises.hpp"
#include "ffnn/io.hpp"

namespace ffnn::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ffnn");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ffnn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        io::write_file(path("ex41.csv"), "x1,x2,x3,d1,d2,d3\n1,0.25,-0.5,1,-1,0\n");
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(CliTest, Ex31Swap) {
    const auto r = invoke({"exercise", "ex31", "--variant", "swap", "--input", "0.3,0.7"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_EQ(r.out, "0.7,0.3\n");
}

TEST_F(CliTest, Ex31Variants) {
    EXPECT_EQ(invoke({"exercise", "ex31", "--variant", "all-ones", "--input", "-1,-1"}).out, "-2,-2\n");
    EXPECT_EQ(invoke({"exercise", "ex31", "--variant", "double", "--input", "1,0"}).out, "2,0\n");
    EXPECT_EQ(invoke({"exercise", "ex31", "--variant", "and-or", "--input", "1,0"}).out, "0,1\n");
    EXPECT_EQ(invoke({"exercise", "ex31", "--variant", "and-or", "--input", "1,1"}).out, "1,1\n");
}

TEST_F(CliTest, Ex41) {
    const auto r = invoke({"exercise", "ex41", "--seed", "42"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("converged=true"), std::string::npos);
    EXPECT_NE(r.out.find("epochs_run=5\n"), std::string::npos);
}

TEST_F(CliTest, TrainEvalGradcheck) {
    const auto t = invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ex41.csv"), "--seed", "7", "--out",
                           path("net.json"), "--trace", path("trace.csv")});
    ASSERT_EQ(t.code, kOk) << t.err;

    const std::string trace = io::read_file(path("trace.csv"));
    std::vector<std::string> rows;
    std::istringstream lines(trace);
    for (std::string line; std::getline(lines, line);) rows.push_back(line);
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows.front(), "epoch,error");
    const std::string epochs = t.out.substr(t.out.find("epochs_run=") + 11, t.out.find('\n') - 11);
    EXPECT_EQ(rows.size() - 1, std::stoul(epochs));
    const std::string last_err = rows.back().substr(rows.back().find(',') + 1);
    EXPECT_NE(t.out.find("final_error=" + last_err + "\n"), std::string::npos) << t.out;

    const auto e = invoke({"eval", "--net", path("net.json"), "--input", "1,0.25,-0.5"});
    EXPECT_EQ(e.code, kOk);
    const auto out = io::parse_vector(e.out);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_NEAR(out[0], 1.0, 0.05);
    EXPECT_NEAR(out[1], -1.0, 0.05);
    EXPECT_NEAR(out[2], 0.0, 0.05);

    const auto g = invoke({"gradcheck", "--net", path("net.json"), "--data", path("ex41.csv")});
    EXPECT_EQ(g.code, kOk) << g.out;
    EXPECT_NE(g.out.find("within_tolerance=true"), std::string::npos);
}

TEST_F(CliTest, GradcheckSeededUntrainedNet) {
    TrainConfig cfg;
    cfg.seed = 3;
    io::write_file(path("net.json"), io::save_network(init_random(exercises::ex41_shape(), cfg)));
    const auto g = invoke({"gradcheck", "--net", path("net.json"), "--data", path("ex41.csv"), "--epsilon", "1e-5"});
    EXPECT_EQ(g.code, kOk) << g.out;
}

TEST_F(CliTest, GradcheckToleranceFailure) {
    // A huge step makes the central difference visibly wrong on a sigmoid net.
    TrainConfig cfg;
    cfg.seed = 3;
    cfg.init_low = -3.0;
    cfg.init_high = 3.0;
    io::write_file(path("net.json"), io::save_network(init_random(exercises::ex41_shape(), cfg)));
    const auto g = invoke({"gradcheck", "--net", path("net.json"), "--data", path("ex41.csv"), "--epsilon", "1.5"});
    EXPECT_EQ(g.code, kGradcheckFailed) << g.out;
    EXPECT_NE(g.out.find("within_tolerance=false"), std::string::npos);
}

TEST_F(CliTest, TrainIsDeterministic) {
    for (const char* scheme : {"per_sample", "full_batch"}) {
        for (const char* suffix : {"a", "b"}) {
            const auto r = invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ex41.csv"), "--seed", "11",
                                   "--eta", "0.1", "--epochs", "50", "--target-error", "0", "--init-range",
                                   "-0.5,0.5", "--scheme", scheme, "--out", path(std::string("n_") + suffix),
                                   "--trace", path(std::string("t_") + suffix)});
            ASSERT_EQ(r.code, kOk) << r.err;
            EXPECT_NE(r.out.find("epochs_run=50\n"), std::string::npos);
        }
        EXPECT_EQ(io::read_file(path("n_a")), io::read_file(path("n_b")));
        EXPECT_EQ(io::read_file(path("t_a")), io::read_file(path("t_b")));
    }
}

TEST_F(CliTest, ExitCodes) {
    // usage
    EXPECT_EQ(invoke({}).code, kUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
    EXPECT_EQ(invoke({"eval", "--net", path("x.json")}).code, kUsage);
    EXPECT_EQ(invoke({"exercise", "ex31", "--variant", "triple", "--input", "1,2"}).code, kUsage);
    EXPECT_EQ(invoke({"exercise", "ex31", "--variant", "swap", "--input", "1,a"}).code, kUsage);
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2q", "--data", path("ex41.csv"), "--out", path("o")}).code, kUsage);
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ex41.csv"), "--out", path("o"), "--scheme",
                      "mini_batch"})
                  .code,
              kUsage);
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ex41.csv"), "--out", path("o"),
                      "--init-range", "1"})
                  .code,
              kUsage);

    // I/O and parse
    EXPECT_EQ(invoke({"eval", "--net", path("missing.json"), "--input", "1"}).code, kIoOrParse);
    io::write_file(path("bad.json"), "{oops");
    EXPECT_EQ(invoke({"eval", "--net", path("bad.json"), "--input", "1"}).code, kIoOrParse);
    io::write_file(path("v2.json"), R"({"format_version": 2, "input_dim": 1, "layers": []})");
    EXPECT_EQ(invoke({"eval", "--net", path("v2.json"), "--input", "1"}).code, kIoOrParse);
    io::write_file(path("ragged.csv"), "x1,x2,x3,d1,d2,d3\n1,2,3,4,5\n");
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ragged.csv"), "--out", path("o")}).code,
              kIoOrParse);
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ex41.csv"), "--out",
                      path("no/such/dir/o.json")})
                  .code,
              kIoOrParse);

    // validation / dimension
    io::write_file(path("swap.json"), io::save_network(exercises::build_ex31(exercises::ex31_swap())));
    EXPECT_EQ(invoke({"eval", "--net", path("swap.json"), "--input", "1,2,3"}).code, kValidation);
    EXPECT_EQ(invoke({"eval", "--net", path("swap.json"), "--input", "0.3,0.7"}).out, "0.7,0.3\n");
    EXPECT_EQ(invoke({"train", "--net-shape", "2-2s-1ib", "--data", path("ex41.csv"), "--out", path("o")}).code,
              kValidation);
    io::write_file(path("empty.csv"), "x1,x2,x3,d1,d2,d3\n");
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("empty.csv"), "--out", path("o")}).code,
              kValidation);
    EXPECT_EQ(invoke({"train", "--net-shape", "3-2s-3ib", "--data", path("ex41.csv"), "--out", path("o"), "--eta",
                      "-1"})
                  .code,
              kValidation);
    io::write_file(path("mismatch.json"), R"({"format_version": 1, "input_dim": 2, "layers": [
        {"activation": "identity", "has_bias": false, "weights": [[1, 2, 3]]}]})");
    EXPECT_EQ(invoke({"eval", "--net", path("mismatch.json"), "--input", "1,2"}).code, kValidation);
    io::write_file(path("and_or.json"), io::save_network(exercises::build_ex31(exercises::ex31_and_or())));
    io::write_file(path("two.csv"), "x1,x2,d1,d2\n1,0,0,1\n");
    EXPECT_EQ(invoke({"gradcheck", "--net", path("and_or.json"), "--data", path("two.csv")}).code, kValidation);
}

TEST_F(CliTest, HelpExitsZero) {
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("train"), std::string::npos);
}

}  // namespace
}  // namespace ffnn::cli

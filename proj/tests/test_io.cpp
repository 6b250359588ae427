#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "ffnn/error.hpp"
#include "ffnn/exercises.hpp"
#include "ffnn/io.hpp"
#include "test_support.hpp"

namespace ffnn::io {
namespace {

TEST(NetworkFile, SwapNetworkRoundTrip) {
    const Network net = load_network(save_network(exercises::build_ex31(exercises::ex31_swap())));
    EXPECT_EQ(evaluate(net, std::vector{0.3, 0.7}), (Vector{0.7, 0.3}));
}

TEST(NetworkFile, ThresholdRoundTrip) {
    const Network src = exercises::build_ex31(exercises::ex31_and_or());
    const Network back = load_network(save_network(src));
    EXPECT_EQ(back, src);
    EXPECT_EQ(back.layer(0).activation(), ActivationKind::threshold(0.5));
}

TEST(NetworkFile, RandomNetworksRoundTripBitForBit) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        TrainConfig cfg;
        cfg.seed = rng();
        cfg.init_low = -1e3;
        cfg.init_high = 1e-3;
        const Network net = init_random(testing::random_shape(rng, true), cfg);
        const Network back = load_network(save_network(net));
        ASSERT_EQ(back.depth(), net.depth());
        for (std::size_t k = 0; k < net.depth(); ++k) {
            const auto a = net.layer(k).weights().data();
            const auto b = back.layer(k).weights().data();
            ASSERT_EQ(a.size(), b.size());
            EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
        }
        EXPECT_EQ(back, net);
        EXPECT_EQ(save_network(back), save_network(net));
    }
}

TEST(NetworkFile, ExactDocument) {
    const Network net(2, {Layer(Matrix(1, 3, {0.5, -2.0, 0.1}), ActivationKind::sigmoid(), true)});
    EXPECT_EQ(save_network(net),
              "{\n"
              "  \"format_version\": 1,\n"
              "  \"input_dim\": 2,\n"
              "  \"layers\": [\n"
              "    {\n"
              "      \"activation\": \"sigmoid\",\n"
              "      \"has_bias\": true,\n"
              "      \"weights\": [\n"
              "        [0.5, -2, 0.1]\n"
              "      ]\n"
              "    }\n"
              "  ]\n"
              "}\n");
}

constexpr const char* kValid = R"({"format_version": 1, "input_dim": 2, "layers": [
    {"activation": "identity", "has_bias": false, "weights": [[1, 2], [3, 4]]},
    {"activation": {"threshold": 0.5}, "has_bias": true, "weights": [[1, 1, -1]]}]})";

TEST(NetworkFile, LoadsHandWrittenDocument) {
    const Network net = load_network(kValid);
    EXPECT_EQ(net.input_dim(), 2u);
    EXPECT_EQ(net.depth(), 2u);
    EXPECT_EQ(evaluate(net, std::vector{1.0, 0.0}), (Vector{1.0}));  // 1 + 3 - 1 = 3 > 0.5
}

TEST(NetworkFile, Errors) {
    EXPECT_THROW(load_network("{not json"), ParseError);
    EXPECT_THROW(load_network("[]"), ParseError);
    EXPECT_THROW(load_network(R"({"format_version": 2, "input_dim": 1, "layers": []})"), VersionError);
    EXPECT_THROW(load_network(R"({"input_dim": 1, "layers": []})"), ParseError);
    // Second layer expects 3 inputs, first provides 2.
    EXPECT_THROW(load_network(R"({"format_version": 1, "input_dim": 2, "layers": [
        {"activation": "identity", "has_bias": false, "weights": [[1, 2], [3, 4]]},
        {"activation": "identity", "has_bias": false, "weights": [[1, 1, 1]]}]})"),
                 ValidationError);
    EXPECT_THROW(load_network(R"({"format_version": 1, "input_dim": 2, "layers": [
        {"activation": "identity", "has_bias": false, "weights": [[1, null]]}]})"),
                 ValidationError);
    EXPECT_THROW(load_network(R"({"format_version": 1, "input_dim": 2, "layers": [
        {"activation": "identity", "has_bias": false, "weights": [[1, 2], [3]]}]})"),
                 ValidationError);
    EXPECT_THROW(load_network(R"({"format_version": 1, "input_dim": 2, "layers": [
        {"activation": "relu", "has_bias": false, "weights": [[1, 2]]}]})"),
                 ParseError);
    EXPECT_THROW(load_network(R"({"format_version": 1, "input_dim": 2, "layers": []})"), ValidationError);
    EXPECT_THROW(load_network(R"({"format_version": 1, "input_dim": 0, "layers": []})"), ValidationError);
}

TEST(Dataset, Ex41File) {
    const auto data = load_dataset("x1,x2,x3,d1,d2,d3\n1,0.25,-0.5,1,-1,0\n", 3, 3);
    ASSERT_EQ(data.size(), 1u);
    EXPECT_EQ(data[0].input, (Vector{1, 0.25, -0.5}));
    EXPECT_EQ(data[0].target, (Vector{1, -1, 0}));
}

TEST(Dataset, OrderAndWhitespace) {
    const auto data = load_dataset("x1, d1\r\n 1 ,2\r\n\n3,4\n-5e-1,+6\n", 1, 1);
    ASSERT_EQ(data.size(), 3u);
    EXPECT_EQ(data[0].input[0], 1.0);
    EXPECT_EQ(data[1].target[0], 4.0);
    EXPECT_EQ(data[2].input[0], -0.5);
    EXPECT_EQ(data[2].target[0], 6.0);
}

TEST(Dataset, EmptyBody) { EXPECT_TRUE(load_dataset("x1,x2,d1\n", 2, 1).empty()); }

TEST(Dataset, Errors) {
    EXPECT_THROW(load_dataset("x1,x2,x3,d1,d2,d3\n1,2,3,4,5\n", 3, 3), ParseError);
    EXPECT_THROW(load_dataset("x1,d1\n1,abc\n", 1, 1), ParseError);
    EXPECT_THROW(load_dataset("x1,d1\n1,nan\n", 1, 1), ParseError);
    EXPECT_THROW(load_dataset("x1,d1\n1,2\n", 2, 1), ValidationError);
    EXPECT_THROW(load_dataset("a,b\n1,2\n", 1, 1), ValidationError);
    EXPECT_THROW(load_dataset("", 1, 1), ParseError);
}

TEST(Dataset, SaveLoadRoundTrip) {
    std::mt19937_64 rng(5);
    Dataset data;
    for (int i = 0; i < 20; ++i) data.push_back({testing::random_vector(rng, 3), testing::random_vector(rng, 2)});
    const auto back = load_dataset(save_dataset(data), 3, 2);
    ASSERT_EQ(back.size(), data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        EXPECT_EQ(back[i].input, data[i].input);
        EXPECT_EQ(back[i].target, data[i].target);
    }
}

TEST(ShapeSpec, Grammar) {
    const auto s = parse_shape_spec("3-2s-3ib");
    EXPECT_EQ(s, exercises::ex41_shape());
    const auto t = parse_shape_spec("4-5s-5s-1i");
    EXPECT_EQ(t.input_dim, 4u);
    ASSERT_EQ(t.layers.size(), 3u);
    EXPECT_FALSE(t.layers[0].has_bias);
    EXPECT_EQ(t.layers[2].activation, ActivationKind::identity());
    EXPECT_EQ(t.layers[1].n_neurons, 5u);
}

TEST(ShapeSpec, Errors) {
    for (const char* bad : {"", "3", "3-2", "3-2x", "3s-2s", "0-2s", "3-0s", "3--2s", "3-2sb-1i", "a-2s", "3-s"}) {
        EXPECT_THROW(parse_shape_spec(bad), ParseError) << bad;
    }
}

TEST(Numbers, FormatAndParse) {
    EXPECT_EQ(format_vector(std::vector{0.7, 0.3}), "0.7,0.3");
    EXPECT_EQ(format_vector(std::vector{2.0, -2.0, 0.0}), "2,-2,0");
    EXPECT_EQ(parse_vector("1, -0.5,2e3"), (Vector{1, -0.5, 2000}));
    EXPECT_THROW(parse_vector(""), ParseError);
    EXPECT_THROW(parse_vector("1,,2"), ParseError);
    EXPECT_THROW(parse_number("1.5x"), ParseError);
    EXPECT_THROW(parse_number("inf"), ParseError);

    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        double v;
        const auto bits = rng();
        std::memcpy(&v, &bits, sizeof v);
        if (!std::isfinite(v)) continue;
        EXPECT_EQ(parse_number(format_number(v)), v);
    }
}

TEST(TraceCsv, Format) {
    TrainReport r;
    r.epochs_run = 2;
    r.error_trace = {1.0, 0.25};
    EXPECT_EQ(format_trace_csv(r), "epoch,error\n1,1\n2,0.25\n");
}

TEST(Files, MissingFileIsIoError) {
    EXPECT_THROW(read_file("/nonexistent/dir/file.json"), IoError);
    EXPECT_THROW(write_file("/nonexistent/dir/file.json", "x"), IoError);
}

}  // namespace
}  // namespace ffnn::io

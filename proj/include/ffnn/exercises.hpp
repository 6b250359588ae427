#pragma once

#include <array>
#include <optional>
#include <utility>

#include "ffnn/backprop.hpp"
#include "ffnn/core.hpp"

namespace ffnn::exercises {

/// Hand-set weights of the four-neuron summing network: two input neurons
/// with one weighted input each, two output neurons that sum both input
/// neurons and scale the result by an output weight.
struct Ex31Weights {
    std::array<double, 2> input_weights{1.0, 1.0};
    /// cross_weights[j][i]: input neuron i -> output neuron j.
    std::array<std::array<double, 2>, 2> cross_weights{{{1.0, 1.0}, {1.0, 1.0}}};
    std::array<double, 2> output_weights{1.0, 1.0};
    /// {input 1, input 2, output 1, output 2}; present iff neurons fire on a
    /// threshold instead of passing their sum through.
    std::optional<std::array<double, 4>> thresholds;
};

Ex31Weights ex31_all_ones();
/// Outputs are the inputs in reverse order.
Ex31Weights ex31_swap();
/// Outputs are twice the inputs.
Ex31Weights ex31_double();
/// Threshold mode: output 1 = AND, output 2 = OR over inputs in {0,1}.
Ex31Weights ex31_and_or();

/// Three layers: diag(input_weights), cross_weights, diag(output_weights).
/// Without thresholds every layer is Identity with no bias. With thresholds
/// the first two layers are threshold layers; when the two neurons of a
/// layer share a threshold it becomes the layer's theta, otherwise each
/// neuron's threshold is moved into a bias weight of -theta against a
/// Threshold(0) layer (A - theta > 0 iff A > theta).
Network build_ex31(const Ex31Weights& weights);

/// 3-2-3 task: sigmoid hidden layer, identity outputs, bias on both layers.
NetworkShape ex41_shape();
/// Input (1, 0.25, -0.5), target (1, -1, 0).
Sample ex41_sample();

std::pair<Network, TrainReport> run_ex41(const TrainConfig& config);

}  // namespace ffnn::exercises

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ffnn/core.hpp"
#include "ffnn/gradient.hpp"

namespace ffnn {

struct LayerSpec {
    std::size_t n_neurons;
    ActivationKind activation;
    bool has_bias;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Architecture of a network without its weights.
struct NetworkShape {
    std::size_t input_dim = 0;
    std::vector<LayerSpec> layers;

    static NetworkShape of(const Network& net);

    friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

enum class UpdateScheme { PerSample, FullBatch };

struct TrainConfig {
    double eta = 0.5;
    std::size_t max_epochs = 10000;
    double target_error = 1e-4;
    std::uint64_t seed = 42;
    double init_low = -0.5;
    double init_high = 0.5;
    UpdateScheme update_scheme = UpdateScheme::PerSample;

    /// Throws ValidationError unless eta >= 0 (0 freezes the weights), max_epochs >= 1,
    /// target_error >= 0 and init_low < init_high (all finite).
    void validate() const;
};

struct TrainReport {
    std::size_t epochs_run = 0;
    /// Total dataset error after each epoch.
    std::vector<double> error_trace;
    bool converged = false;

    friend bool operator==(const TrainReport&, const TrainReport&) = default;
};

/// (o - d)^2
double neuron_error(double o, double d) noexcept;

/// Sum of squared output residuals, no 1/2 factor. Throws DimensionError.
double network_error(std::span<const double> outputs, std::span<const double> targets);

/// dE/dA for an output neuron: 2(o - d) * o(1 - o) for sigmoid, 2(o - d) for
/// identity. Throws NonDifferentiableError for threshold units.
double output_delta(double o, double d, ActivationKind kind);

/// Analytic gradient of the single-sample error for the trace produced by
/// forward(net, ...).
Gradient backprop_gradient(const Network& net, const ForwardTrace& trace,
                           std::span<const double> target);

/// Sum of per-sample gradients over the dataset. Samples are evaluated in
/// parallel and reduced in dataset order, so the result is bit-identical to
/// batch_gradient_serial.
Gradient batch_gradient(const Network& net, std::span<const Sample> dataset);
Gradient batch_gradient_serial(const Network& net, std::span<const Sample> dataset);

/// w <- w - eta * dE/dw for every weight.
Network apply_update(Network net, const Gradient& grad, double eta);

/// Uniform weights in [init_low, init_high) from a 64-bit Mersenne Twister
/// seeded with config.seed. Platform independent for a given seed.
Network init_random(const NetworkShape& shape, const TrainConfig& config);

/// Error of the whole dataset (sum of per-sample network errors).
double dataset_error(const Network& net, std::span<const Sample> dataset);

/// Gradient descent starting from `initial`.
std::pair<Network, TrainReport> train(Network initial, std::span<const Sample> dataset,
                                      const TrainConfig& config);

/// Gradient descent from init_random(shape, config).
std::pair<Network, TrainReport> train(const NetworkShape& shape, std::span<const Sample> dataset,
                                      const TrainConfig& config);

}  // namespace ffnn

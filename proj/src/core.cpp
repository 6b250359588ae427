#include "ffnn/core.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ffnn/error.hpp"

namespace ffnn {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("matrix data has " + std::to_string(data_.size()) +
                             " entries, expected " + std::to_string(rows * cols));
    }
}

ActivationKind ActivationKind::threshold(double theta) {
    if (!std::isfinite(theta)) throw ValidationError("threshold must be finite");
    return ActivationKind(Kind::Threshold, theta);
}

Layer::Layer(Matrix weights, ActivationKind activation, bool has_bias)
    : weights_(std::move(weights)), activation_(activation), has_bias_(has_bias) {
    if (weights_.rows() == 0) throw ValidationError("layer needs at least one neuron");
    if (weights_.cols() < (has_bias_ ? 2u : 1u)) {
        throw ValidationError("layer needs at least one input");
    }
    for (double w : weights_.data()) {
        if (!std::isfinite(w)) throw ValidationError("layer has a non-finite weight");
    }
}

Network::Network(std::size_t input_dim, std::vector<Layer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
    if (input_dim_ == 0) throw ValidationError("network input_dim must be positive");
    if (layers_.empty()) throw ValidationError("network needs at least one layer");
    std::size_t fan_in = input_dim_;
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        if (layers_[k].n_inputs() != fan_in) {
            throw ValidationError("layer " + std::to_string(k) + " expects " +
                                  std::to_string(layers_[k].n_inputs()) + " inputs but receives " +
                                  std::to_string(fan_in));
        }
        fan_in = layers_[k].n_neurons();
    }
}

std::size_t Network::weight_count() const noexcept {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.weights().size();
    return n;
}

bool Network::differentiable() const noexcept {
    for (const auto& l : layers_) {
        if (!l.activation().differentiable()) return false;
    }
    return true;
}

double weighted_sum(std::span<const double> inputs, std::span<const double> weights) {
    if (inputs.size() != weights.size()) {
        throw DimensionError("weighted_sum: " + std::to_string(inputs.size()) + " inputs vs " +
                             std::to_string(weights.size()) + " weights");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) sum += inputs[i] * weights[i];
    return sum;
}

double sigmoid(double a) noexcept { return 1.0 / (1.0 + std::exp(-a)); }

double apply_activation(ActivationKind kind, double a) noexcept {
    switch (kind.kind()) {
        case ActivationKind::Kind::Identity:
            return a;
        case ActivationKind::Kind::Sigmoid:
            return sigmoid(a);
        case ActivationKind::Kind::Threshold:
            return a > kind.theta() ? 1.0 : 0.0;
    }
    return a;
}

ForwardTrace forward(const Network& net, std::span<const double> input) {
    if (input.size() != net.input_dim()) {
        throw DimensionError("network expects " + std::to_string(net.input_dim()) +
                             " inputs, got " + std::to_string(input.size()));
    }
    ForwardTrace trace;
    trace.input.assign(input.begin(), input.end());
    trace.activations.reserve(net.depth());
    trace.outputs.reserve(net.depth());

    Vector x;
    for (std::size_t k = 0; k < net.depth(); ++k) {
        const Layer& layer = net.layer(k);
        const Vector& prev = trace.layer_input(k);
        x.assign(prev.begin(), prev.end());
        if (layer.has_bias()) x.push_back(1.0);

        Vector a(layer.n_neurons());
        Vector o(layer.n_neurons());
        for (std::size_t j = 0; j < layer.n_neurons(); ++j) {
            a[j] = weighted_sum(x, layer.weights().row(j));
            o[j] = apply_activation(layer.activation(), a[j]);
        }
        trace.activations.push_back(std::move(a));
        trace.outputs.push_back(std::move(o));
    }
    return trace;
}

Vector evaluate(const Network& net, std::span<const double> input) {
    return forward(net, input).outputs.back();
}

}  // namespace ffnn

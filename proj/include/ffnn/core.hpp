#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ffnn {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Output function applied to a neuron's activation.
class ActivationKind {
public:
    enum class Kind { Identity, Sigmoid, Threshold };

    static ActivationKind identity() noexcept { return ActivationKind(Kind::Identity, 0.0); }
    static ActivationKind sigmoid() noexcept { return ActivationKind(Kind::Sigmoid, 0.0); }
    /// Throws ValidationError if theta is not finite.
    static ActivationKind threshold(double theta);

    Kind kind() const noexcept { return kind_; }
    /// Only meaningful for Kind::Threshold.
    double theta() const noexcept { return theta_; }
    bool differentiable() const noexcept { return kind_ != Kind::Threshold; }

    friend bool operator==(const ActivationKind&, const ActivationKind&) = default;

private:
    ActivationKind(Kind kind, double theta) noexcept : kind_(kind), theta_(theta) {}

    Kind kind_;
    double theta_;
};

/// One fully connected layer. Row j of the weight matrix holds the incoming
/// weights of neuron j; when has_bias is set the last column multiplies a
/// constant 1.0 input.
class Layer {
public:
    /// Throws ValidationError on an empty shape or a non-finite weight.
    Layer(Matrix weights, ActivationKind activation, bool has_bias);

    std::size_t n_neurons() const noexcept { return weights_.rows(); }
    /// Inputs coming from the previous layer, excluding the bias column.
    std::size_t n_inputs() const noexcept { return weights_.cols() - (has_bias_ ? 1 : 0); }

    const Matrix& weights() const noexcept { return weights_; }
    Matrix& weights() noexcept { return weights_; }
    ActivationKind activation() const noexcept { return activation_; }
    bool has_bias() const noexcept { return has_bias_; }

    friend bool operator==(const Layer&, const Layer&) = default;

private:
    Matrix weights_;
    ActivationKind activation_;
    bool has_bias_;
};

/// Layered feed-forward network.
class Network {
public:
    /// Throws ValidationError when layers is empty or adjacent layers disagree
    /// on their dimensions.
    Network(std::size_t input_dim, std::vector<Layer> layers);

    std::size_t input_dim() const noexcept { return input_dim_; }
    std::size_t output_dim() const noexcept { return layers_.back().n_neurons(); }
    std::size_t depth() const noexcept { return layers_.size(); }

    std::span<const Layer> layers() const noexcept { return layers_; }
    const Layer& layer(std::size_t k) const { return layers_[k]; }
    Layer& layer(std::size_t k) { return layers_[k]; }

    /// Total number of weights, bias columns included.
    std::size_t weight_count() const noexcept;
    bool differentiable() const noexcept;

    friend bool operator==(const Network&, const Network&) = default;

private:
    std::size_t input_dim_;
    std::vector<Layer> layers_;
};

/// Everything forward() computed, kept for the backward pass.
struct ForwardTrace {
    Vector input;
    std::vector<Vector> activations;
    std::vector<Vector> outputs;

    /// Values fed into layer k (without the bias input).
    const Vector& layer_input(std::size_t k) const { return k == 0 ? input : outputs[k - 1]; }
    const Vector& output() const { return outputs.back(); }
};

struct Sample {
    Vector input;
    Vector target;
};

using Dataset = std::vector<Sample>;

/// Sum of inputs[i] * weights[i] in index order. Throws DimensionError on a
/// length mismatch.
double weighted_sum(std::span<const double> inputs, std::span<const double> weights);

double sigmoid(double a) noexcept;

/// Identity: a. Sigmoid: 1/(1+e^-a). Threshold(theta): 1 if a > theta, else 0.
double apply_activation(ActivationKind kind, double a) noexcept;

/// Throws DimensionError when input.size() != net.input_dim().
ForwardTrace forward(const Network& net, std::span<const double> input);

/// Network output only.
Vector evaluate(const Network& net, std::span<const double> input);

}  // namespace ffnn

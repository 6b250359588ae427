#include "ffnn/backprop.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ffnn/error.hpp"

namespace ffnn {

Gradient Gradient::zeros_like(const Network& net) {
    Gradient g;
    g.layers.reserve(net.depth());
    for (const auto& l : net.layers()) g.layers.emplace_back(l.weights().rows(), l.weights().cols());
    return g;
}

bool Gradient::congruent_with(const Network& net) const noexcept {
    if (layers.size() != net.depth()) return false;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (!layers[k].same_shape(net.layer(k).weights())) return false;
    }
    return true;
}

Gradient& Gradient::operator+=(const Gradient& other) {
    if (layers.size() != other.layers.size()) throw DimensionError("gradient depth mismatch");
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (!layers[k].same_shape(other.layers[k])) throw DimensionError("gradient shape mismatch");
        auto dst = layers[k].data();
        auto src = other.layers[k].data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    return *this;
}

NetworkShape NetworkShape::of(const Network& net) {
    NetworkShape shape;
    shape.input_dim = net.input_dim();
    for (const auto& l : net.layers()) shape.layers.push_back({l.n_neurons(), l.activation(), l.has_bias()});
    return shape;
}

void TrainConfig::validate() const {
    if (!(std::isfinite(eta) && eta >= 0.0)) throw ValidationError("eta must be a non-negative finite number");
    if (max_epochs < 1) throw ValidationError("max_epochs must be at least 1");
    if (!(std::isfinite(target_error) && target_error >= 0.0)) {
        throw ValidationError("target_error must be non-negative");
    }
    if (!(std::isfinite(init_low) && std::isfinite(init_high) && init_low < init_high)) {
        throw ValidationError("init range must satisfy low < high");
    }
}

double neuron_error(double o, double d) noexcept {
    const double r = o - d;
    return r * r;
}

double network_error(std::span<const double> outputs, std::span<const double> targets) {
    if (outputs.size() != targets.size()) {
        throw DimensionError("network_error: " + std::to_string(outputs.size()) + " outputs vs " +
                             std::to_string(targets.size()) + " targets");
    }
    double e = 0.0;
    for (std::size_t j = 0; j < outputs.size(); ++j) e += neuron_error(outputs[j], targets[j]);
    return e;
}

namespace {

// dO/dA expressed through the neuron output.
double output_slope(ActivationKind kind, double o) {
    switch (kind.kind()) {
        case ActivationKind::Kind::Identity:
            return 1.0;
        case ActivationKind::Kind::Sigmoid:
            return o * (1.0 - o);
        case ActivationKind::Kind::Threshold:
            break;
    }
    throw NonDifferentiableError("threshold units have no gradient");
}

void require_differentiable(const Network& net) {
    for (std::size_t k = 0; k < net.depth(); ++k) {
        if (!net.layer(k).activation().differentiable()) {
            throw NonDifferentiableError("layer " + std::to_string(k) + " uses a threshold output");
        }
    }
}

void require_sample_dims(const Network& net, const Sample& s) {
    if (s.input.size() != net.input_dim() || s.target.size() != net.output_dim()) {
        throw DimensionError("sample is " + std::to_string(s.input.size()) + "->" +
                             std::to_string(s.target.size()) + " but network is " +
                             std::to_string(net.input_dim()) + "->" + std::to_string(net.output_dim()));
    }
}

Gradient sample_gradient(const Network& net, const Sample& s) {
    return backprop_gradient(net, forward(net, s.input), s.target);
}

}  // namespace

double output_delta(double o, double d, ActivationKind kind) {
    return 2.0 * (o - d) * output_slope(kind, o);
}

Gradient backprop_gradient(const Network& net, const ForwardTrace& trace,
                           std::span<const double> target) {
    require_differentiable(net);
    if (trace.outputs.size() != net.depth() || trace.input.size() != net.input_dim()) {
        throw DimensionError("trace does not belong to this network");
    }
    for (std::size_t k = 0; k < net.depth(); ++k) {
        if (trace.outputs[k].size() != net.layer(k).n_neurons()) {
            throw DimensionError("trace does not belong to this network");
        }
    }
    if (target.size() != net.output_dim()) {
        throw DimensionError("target has " + std::to_string(target.size()) + " entries, network has " +
                             std::to_string(net.output_dim()) + " outputs");
    }

    Gradient grad = Gradient::zeros_like(net);
    const std::size_t last = net.depth() - 1;

    // delta[j] = dE/dA_j for the layer currently being processed.
    Vector delta(net.layer(last).n_neurons());
    {
        const Layer& out = net.layer(last);
        const Vector& o = trace.outputs[last];
        for (std::size_t j = 0; j < delta.size(); ++j) delta[j] = output_delta(o[j], target[j], out.activation());
    }

    for (std::size_t k = last + 1; k-- > 0;) {
        const Layer& layer = net.layer(k);
        const Vector& x = trace.layer_input(k);
        Matrix& g = grad.layers[k];
        for (std::size_t j = 0; j < layer.n_neurons(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) g(j, i) = delta[j] * x[i];
            if (layer.has_bias()) g(j, x.size()) = delta[j];
        }
        if (k == 0) break;

        // Error signal reaching each neuron of layer k-1: sum over every
        // downstream neuron j of delta_j * w_ji, times that neuron's slope.
        const Layer& below = net.layer(k - 1);
        Vector next(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < layer.n_neurons(); ++j) s += delta[j] * layer.weights()(j, i);
            next[i] = s * output_slope(below.activation(), x[i]);
        }
        delta = std::move(next);
    }
    return grad;
}

Gradient batch_gradient_serial(const Network& net, std::span<const Sample> dataset) {
    require_differentiable(net);
    for (const auto& s : dataset) require_sample_dims(net, s);
    Gradient total = Gradient::zeros_like(net);
    for (const auto& s : dataset) total += sample_gradient(net, s);
    return total;
}

Gradient batch_gradient(const Network& net, std::span<const Sample> dataset) {
    require_differentiable(net);
    for (const auto& s : dataset) require_sample_dims(net, s);

    const auto n = static_cast<std::ptrdiff_t>(dataset.size());
    std::vector<Gradient> per_sample(dataset.size());
#pragma omp parallel for schedule(static) if (n > 1)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        per_sample[static_cast<std::size_t>(s)] = sample_gradient(net, dataset[static_cast<std::size_t>(s)]);
    }

    // Fixed reduction order keeps the sum independent of the thread count.
    Gradient total = Gradient::zeros_like(net);
    for (const auto& g : per_sample) total += g;
    return total;
}

Network apply_update(Network net, const Gradient& grad, double eta) {
    if (!grad.congruent_with(net)) throw DimensionError("gradient is not congruent with the network");
    if (!std::isfinite(eta)) throw ValidationError("eta must be finite");
    for (std::size_t k = 0; k < net.depth(); ++k) {
        auto w = net.layer(k).weights().data();
        auto g = grad.layers[k].data();
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] -= eta * g[i];
            if (!std::isfinite(w[i])) throw ValidationError("weight update produced a non-finite value");
        }
    }
    return net;
}

Network init_random(const NetworkShape& shape, const TrainConfig& config) {
    if (!(config.init_low < config.init_high)) throw ValidationError("init range must satisfy low < high");
    std::mt19937_64 rng(config.seed);
    const double span = config.init_high - config.init_low;
    auto draw = [&] {
        // 53 random mantissa bits -> [0, 1); avoids the implementation-defined
        // std::uniform_real_distribution.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return config.init_low + span * u;
    };

    std::vector<Layer> layers;
    layers.reserve(shape.layers.size());
    std::size_t fan_in = shape.input_dim;
    for (const auto& spec : shape.layers) {
        Matrix w(spec.n_neurons, fan_in + (spec.has_bias ? 1 : 0));
        for (double& v : w.data()) v = draw();
        layers.emplace_back(std::move(w), spec.activation, spec.has_bias);
        fan_in = spec.n_neurons;
    }
    return Network(shape.input_dim, std::move(layers));
}

double dataset_error(const Network& net, std::span<const Sample> dataset) {
    double e = 0.0;
    for (const auto& s : dataset) e += network_error(evaluate(net, s.input), s.target);
    return e;
}

std::pair<Network, TrainReport> train(Network net, std::span<const Sample> dataset,
                                      const TrainConfig& config) {
    config.validate();
    if (dataset.empty()) throw ValidationError("training needs at least one sample");
    require_differentiable(net);
    for (const auto& s : dataset) require_sample_dims(net, s);

    TrainReport report;
    report.error_trace.reserve(config.max_epochs);
    while (report.epochs_run < config.max_epochs) {
        if (config.update_scheme == UpdateScheme::PerSample) {
            for (const auto& s : dataset) {
                Gradient g = sample_gradient(net, s);
                net = apply_update(std::move(net), g, config.eta);
            }
        } else {
            Gradient g = batch_gradient(net, dataset);
            net = apply_update(std::move(net), g, config.eta);
        }
        ++report.epochs_run;
        const double e = dataset_error(net, dataset);
        report.error_trace.push_back(e);
        if (e <= config.target_error) {
            report.converged = true;
            break;
        }
    }
    return {std::move(net), std::move(report)};
}

std::pair<Network, TrainReport> train(const NetworkShape& shape, std::span<const Sample> dataset,
                                      const TrainConfig& config) {
    config.validate();
    for (const auto& spec : shape.layers) {
        if (!spec.activation.differentiable()) throw NonDifferentiableError("threshold layers cannot be trained");
    }
    return train(init_random(shape, config), dataset, config);
}

}  // namespace ffnn

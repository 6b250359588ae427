#include "ffnn/grad_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ffnn/error.hpp"

namespace ffnn {

namespace {

void check_inputs(const Network& net, const Sample& sample, const FiniteDiffConfig& cfg) {
    if (!(std::isfinite(cfg.epsilon) && cfg.epsilon > 0.0)) {
        throw ValidationError("finite-difference epsilon must be positive");
    }
    if (!net.differentiable()) throw NonDifferentiableError("threshold units have no gradient");
    if (sample.input.size() != net.input_dim() || sample.target.size() != net.output_dim()) {
        throw DimensionError("sample does not match network dimensions (" + std::to_string(net.input_dim()) +
                             "->" + std::to_string(net.output_dim()) + ")");
    }
}

double squared_error(const Network& net, const Sample& sample) {
    const ForwardTrace trace = forward(net, sample.input);
    const Vector& out = trace.outputs.back();
    double e = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double r = out[j] - sample.target[j];
        e += r * r;
    }
    return e;
}

// Perturbs one weight of `scratch` in place and restores it bit-exactly.
double central_difference(Network& scratch, std::size_t layer, std::size_t index, const Sample& sample,
                          double eps) {
    double& w = scratch.layer(layer).weights().data()[index];
    const double saved = w;
    w = saved + eps;
    const double e_plus = squared_error(scratch, sample);
    w = saved - eps;
    const double e_minus = squared_error(scratch, sample);
    w = saved;
    return (e_plus - e_minus) / (2.0 * eps);
}

}  // namespace

Gradient finite_diff_gradient_serial(const Network& net, const Sample& sample, const FiniteDiffConfig& cfg) {
    check_inputs(net, sample, cfg);
    Network scratch = net;
    Gradient grad;
    for (std::size_t k = 0; k < net.depth(); ++k) {
        const Matrix& w = net.layer(k).weights();
        Matrix g(w.rows(), w.cols());
        for (std::size_t i = 0; i < w.size(); ++i) {
            g.data()[i] = central_difference(scratch, k, i, sample, cfg.epsilon);
        }
        grad.layers.push_back(std::move(g));
    }
    return grad;
}

Gradient finite_diff_gradient(const Network& net, const Sample& sample, const FiniteDiffConfig& cfg) {
    check_inputs(net, sample, cfg);

    // Flat index -> (layer, offset) via prefix sums over layer sizes.
    std::vector<std::size_t> starts{0};
    Gradient grad;
    for (const auto& l : net.layers()) {
        grad.layers.emplace_back(l.weights().rows(), l.weights().cols());
        starts.push_back(starts.back() + l.weights().size());
    }
    const auto total = static_cast<std::ptrdiff_t>(starts.back());

#pragma omp parallel if (total > 64)
    {
        Network scratch = net;
#pragma omp for schedule(static)
        for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
            const auto f = static_cast<std::size_t>(flat);
            const auto it = std::upper_bound(starts.begin(), starts.end(), f) - 1;
            const auto k = static_cast<std::size_t>(it - starts.begin());
            const std::size_t i = f - *it;
            grad.layers[k].data()[i] = central_difference(scratch, k, i, sample, cfg.epsilon);
        }
    }
    return grad;
}

GradientDeviation& GradientDeviation::operator|=(const GradientDeviation& other) {
    max_abs = std::max(max_abs, other.max_abs);
    max_rel = std::max(max_rel, other.max_rel);
    within_tolerance = within_tolerance && other.within_tolerance;
    return *this;
}

GradientDeviation compare_gradients(const Gradient& analytic, const Gradient& numeric,
                                    const GradientTolerance& tol) {
    if (analytic.layers.size() != numeric.layers.size()) throw DimensionError("gradient depth mismatch");
    GradientDeviation dev;
    for (std::size_t k = 0; k < analytic.layers.size(); ++k) {
        if (!analytic.layers[k].same_shape(numeric.layers[k])) throw DimensionError("gradient shape mismatch");
        const auto a = analytic.layers[k].data();
        const auto b = numeric.layers[k].data();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double diff = std::abs(a[i] - b[i]);
            const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
            const double rel = scale > 0.0 ? diff / scale : 0.0;
            dev.max_abs = std::max(dev.max_abs, diff);
            dev.max_rel = std::max(dev.max_rel, rel);
            if (!(diff <= std::max(tol.abs_tol, tol.rel_tol * scale))) dev.within_tolerance = false;
        }
    }
    return dev;
}

}  // namespace ffnn

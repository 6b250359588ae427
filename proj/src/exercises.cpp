#include "ffnn/exercises.hpp"

#include <cmath>
#include <vector>

#include "ffnn/error.hpp"

namespace ffnn::exercises {

Ex31Weights ex31_all_ones() { return {}; }

Ex31Weights ex31_swap() {
    Ex31Weights w;
    w.cross_weights = {{{0.0, 1.0}, {1.0, 0.0}}};
    return w;
}

Ex31Weights ex31_double() {
    Ex31Weights w;
    w.cross_weights = {{{1.0, 0.0}, {0.0, 1.0}}};
    w.output_weights = {2.0, 2.0};
    return w;
}

Ex31Weights ex31_and_or() {
    Ex31Weights w;
    // 0.5 on the input neurons maps {0,1} onto itself.
    w.thresholds = {0.5, 0.5, 1.5, 0.5};
    return w;
}

namespace {

Layer threshold_layer(const Matrix& weights, double theta_a, double theta_b) {
    if (theta_a == theta_b) return Layer(weights, ActivationKind::threshold(theta_a), false);
    Matrix with_bias(2, 3);
    for (std::size_t j = 0; j < 2; ++j) {
        with_bias(j, 0) = weights(j, 0);
        with_bias(j, 1) = weights(j, 1);
    }
    with_bias(0, 2) = -theta_a;
    with_bias(1, 2) = -theta_b;
    return Layer(std::move(with_bias), ActivationKind::threshold(0.0), true);
}

}  // namespace

Network build_ex31(const Ex31Weights& w) {
    const Matrix input(2, 2, {w.input_weights[0], 0.0, 0.0, w.input_weights[1]});
    const Matrix cross(2, 2, {w.cross_weights[0][0], w.cross_weights[0][1], w.cross_weights[1][0],
                              w.cross_weights[1][1]});
    const Matrix output(2, 2, {w.output_weights[0], 0.0, 0.0, w.output_weights[1]});

    std::vector<Layer> layers;
    if (w.thresholds) {
        const auto& t = *w.thresholds;
        for (double theta : t) {
            if (!std::isfinite(theta)) throw ValidationError("ex31 thresholds must be finite");
        }
        layers.push_back(threshold_layer(input, t[0], t[1]));
        layers.push_back(threshold_layer(cross, t[2], t[3]));
    } else {
        layers.emplace_back(input, ActivationKind::identity(), false);
        layers.emplace_back(cross, ActivationKind::identity(), false);
    }
    layers.emplace_back(output, ActivationKind::identity(), false);
    return Network(2, std::move(layers));
}

NetworkShape ex41_shape() {
    return {3, {{2, ActivationKind::sigmoid(), true}, {3, ActivationKind::identity(), true}}};
}

Sample ex41_sample() { return {{1.0, 0.25, -0.5}, {1.0, -1.0, 0.0}}; }

std::pair<Network, TrainReport> run_ex41(const TrainConfig& config) {
    const std::vector<Sample> data{ex41_sample()};
    return train(ex41_shape(), data, config);
}

}  // namespace ffnn::exercises

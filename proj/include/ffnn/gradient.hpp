#pragma once

#include <vector>

#include "ffnn/core.hpp"

namespace ffnn {

/// dE/dw for every weight of a network, one matrix per layer shaped like
/// that layer's weight matrix.
struct Gradient {
    std::vector<Matrix> layers;

    static Gradient zeros_like(const Network& net);

    bool congruent_with(const Network& net) const noexcept;
    /// Throws DimensionError if shapes differ.
    Gradient& operator+=(const Gradient& other);

    friend bool operator==(const Gradient&, const Gradient&) = default;
};

}  // namespace ffnn

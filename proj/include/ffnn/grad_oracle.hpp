#pragma once

#include "ffnn/core.hpp"
#include "ffnn/gradient.hpp"

namespace ffnn {

struct FiniteDiffConfig {
    /// Perturbation step for central differences.
    double epsilon = 1e-6;
};

/// Central-difference estimate of dE/dw for every weight, where E is the
/// squared output error of `sample`. Only forward() is shared with the
/// analytic path. Weights are perturbed in parallel on per-thread copies of
/// the network; every entry is computed independently so the result matches
/// finite_diff_gradient_serial exactly.
Gradient finite_diff_gradient(const Network& net, const Sample& sample, const FiniteDiffConfig& cfg = {});
Gradient finite_diff_gradient_serial(const Network& net, const Sample& sample,
                                     const FiniteDiffConfig& cfg = {});

/// Default acceptance band: an entry passes when
/// |a - b| <= max(abs_tol, rel_tol * max(|a|, |b|)).
struct GradientTolerance {
    double abs_tol = 1e-6;
    double rel_tol = 1e-4;
};

struct GradientDeviation {
    double max_abs = 0.0;
    /// |a - b| / max(|a|, |b|); 0 where both entries are 0.
    double max_rel = 0.0;
    bool within_tolerance = true;

    /// Merge another comparison into this one.
    GradientDeviation& operator|=(const GradientDeviation& other);
};

/// Throws DimensionError if the gradients have different shapes.
GradientDeviation compare_gradients(const Gradient& analytic, const Gradient& numeric,
                                    const GradientTolerance& tol = {});

}  // namespace ffnn

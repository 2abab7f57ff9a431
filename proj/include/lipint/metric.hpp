#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

#include "lipint/errors.hpp"

namespace lipint {

/// Input-space metric d(x,y) = ||x - y||_p ^ alpha.
///
/// p is a positive integer norm order or infinity (max-norm); alpha is the
/// Holder exponent in (0, 1]. Non-integer p is rejected by construction.
struct HolderMetric {
    int p = 2;              // norm order, >= 1; ignored when p_infinite
    bool p_infinite = false;
    double alpha = 1.0;     // in (0, 1]

    void validate() const {
        if (!p_infinite && p < 1)
            throw input_error("HolderMetric: p must be a positive integer or infinity");
        if (!(alpha > 0.0) || alpha > 1.0)
            throw input_error("HolderMetric: alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
};

inline HolderMetric lp_metric(int p, double alpha = 1.0) {
    HolderMetric m{p, false, alpha};
    m.validate();
    return m;
}

inline HolderMetric max_norm_metric(double alpha = 1.0) {
    HolderMetric m{0, true, alpha};
    m.validate();
    return m;
}

/// d(x,y) = ||x - y||_p ^ alpha. Symmetric, zero iff x == y.
inline double holder_distance(std::span<const double> x, std::span<const double> y,
                              const HolderMetric& metric) {
    if (x.size() != y.size())
        throw input_error("holder_distance: dimension mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
    const std::size_t d = x.size();
    double norm = 0.0;
    if (metric.p_infinite) {
        for (std::size_t i = 0; i < d; ++i)
            norm = std::max(norm, std::abs(x[i] - y[i]));
    } else if (metric.p == 1) {
        for (std::size_t i = 0; i < d; ++i)
            norm += std::abs(x[i] - y[i]);
    } else if (metric.p == 2) {
        for (std::size_t i = 0; i < d; ++i) {
            const double t = x[i] - y[i];
            norm += t * t;
        }
        norm = std::sqrt(norm);
    } else {
        for (std::size_t i = 0; i < d; ++i)
            norm += std::pow(std::abs(x[i] - y[i]), metric.p);
        norm = std::pow(norm, 1.0 / metric.p);
    }
    return metric.alpha == 1.0 ? norm : std::pow(norm, metric.alpha);
}

} // namespace lipint

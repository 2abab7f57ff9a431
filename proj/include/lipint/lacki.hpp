#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "lipint/interpolator.hpp"
#include "lipint/metric.hpp"
#include "lipint/sample_set.hpp"

namespace lipint {

/// Strongin-style Lipschitz constant estimate over all sample pairs:
///     L(n) = max{ 0, max_{d(s,s') > 0} (|y(s) - y(s')| - lambda) / d(s,s') }.
/// Pairs at zero distance are excluded, so duplicate inputs with conflicting
/// outputs never blow the estimate up. Empty and singleton data give 0.
inline double lacki_full(const SampleSet& data, double lambda, const HolderMetric& metric) {
    if (!(lambda >= 0.0)) throw input_error("lacki_full: lambda must be >= 0");
    double best = 0.0;
    const std::size_t n = data.size();
    for (std::size_t i = 1; i < n; ++i) {
        const auto si = data.input(i);
        const double yi = data.output(i);
        for (std::size_t j = 0; j < i; ++j) {
            const double gap = std::abs(yi - data.output(j)) - lambda;
            const double dist = holder_distance(si, data.input(j), metric);
            // gap/dist can only win when gap > best*dist; divide only then.
            if (dist > 0.0 && gap > best * dist) best = gap / dist;
        }
    }
    return best;
}

/// Lazily Adapted Constant Kinky Inference: a Lipschitz interpolation
/// predictor whose hyperparameter is the running estimate above, refreshed
/// incrementally as samples arrive.
///
/// With lambda = 2 e_bar and noise supported on [-e_bar, e_bar], every finite
/// sample estimate underestimates the target's best Lipschitz constant, and
/// the estimate converges to it under uniformly dense sampling.
class LackiState {
public:
    LackiState(std::size_t dim, double lambda, HolderMetric metric = {})
        : data_(dim), lambda_(lambda), metric_(metric) {
        if (!(lambda >= 0.0)) throw input_error("LackiState: lambda must be >= 0");
        metric_.validate();
    }

    double lambda() const { return lambda_; }
    double current_l() const { return current_l_; }
    const SampleSet& data() const { return data_; }
    const HolderMetric& metric() const { return metric_; }

    /// Append (s, y) and refresh the estimate by scanning only pairs that
    /// involve the new sample; equals lacki_full on the enlarged data.
    void update(std::span<const double> s, double y) {
        const std::size_t n = data_.size();
        double best = current_l_;
        for (std::size_t j = 0; j < n; ++j) {
            const double gap = std::abs(y - data_.output(j)) - lambda_;
            const double dist = holder_distance(s, data_.input(j), metric_);
            if (dist > 0.0 && gap > best * dist) best = gap / dist;
        }
        data_.add(s, y);   // may throw on dimension mismatch; estimate untouched then
        current_l_ = best;
    }

    /// Lipschitz interpolation prediction with L = current_l().
    double predict(std::span<const double> x) const {
        return lipint::predict(x, data_, interpolator());
    }

    LipschitzInterpolator interpolator() const {
        LipschitzInterpolator model;
        model.metric = metric_;
        model.lipschitz = current_l_;
        return model;
    }

private:
    SampleSet data_;
    double lambda_;
    HolderMetric metric_;
    double current_l_ = 0.0;
};

} // namespace lipint

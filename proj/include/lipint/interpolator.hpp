#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lipint/errors.hpp"
#include "lipint/metric.hpp"
#include "lipint/sample_set.hpp"

namespace lipint {

/// Lipschitz interpolation (kinky inference / nonlinear set membership).
///
/// Given samples (s_i, y_i) and a Lipschitz hyperparameter L, the ceiling and
/// floor
///     u(x) = min_i  y_i + L d(x, s_i)
///     l(x) = max_i  y_i - L d(x, s_i)
/// are the tightest L-Lipschitz upper/lower functions consistent with the
/// data; the predictor is their midpoint. With a known bound e_bar on the
/// observation noise, u(x) + e_bar and l(x) - e_bar enclose every consistent
/// target with probability 1.
struct LipschitzInterpolator {
    HolderMetric metric{};
    double lipschitz = 0.0;                                  // hyperparameter L >= 0
    std::optional<double> noise_bound{};                     // symmetric e_bar >= 0
    std::optional<std::pair<double, double>> noise_bounds_asym{};  // e1 < 0 < e2

    void validate() const {
        metric.validate();
        if (!(lipschitz >= 0.0))
            throw input_error("LipschitzInterpolator: lipschitz must be >= 0");
        if (noise_bound && !(*noise_bound >= 0.0))
            throw input_error("LipschitzInterpolator: noise_bound must be >= 0");
        if (noise_bounds_asym && !(noise_bounds_asym->first < 0.0 && noise_bounds_asym->second > 0.0))
            throw input_error("LipschitzInterpolator: asymmetric bounds require e1 < 0 < e2");
    }
};

struct Envelope {
    double lower;
    double upper;
};

namespace detail {

struct MinMaxScan {
    double ceil;
    double floor;
};

// One pass over the data computing both extremes.
inline MinMaxScan scan(std::span<const double> x, const SampleSet& data,
                       const LipschitzInterpolator& model) {
    if (data.empty()) throw empty_data_error("Lipschitz interpolation: empty sample set");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t n = data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double shift = model.lipschitz * holder_distance(x, data.input(i), model.metric);
        const double y = data.output(i);
        lo = std::min(lo, y + shift);
        hi = std::max(hi, y - shift);
    }
    return {lo, hi};
}

} // namespace detail

/// u_n(x): tightest consistent L-Lipschitz upper function.
inline double ceiling(std::span<const double> x, const SampleSet& data,
                      const LipschitzInterpolator& model) {
    return detail::scan(x, data, model).ceil;
}

/// l_n(x): tightest consistent L-Lipschitz lower function.
inline double floor(std::span<const double> x, const SampleSet& data,
                    const LipschitzInterpolator& model) {
    return detail::scan(x, data, model).floor;
}

/// Midpoint predictor f_hat(x) = (u_n(x) + l_n(x)) / 2.
inline double predict(std::span<const double> x, const SampleSet& data,
                      const LipschitzInterpolator& model) {
    const auto s = detail::scan(x, data, model);
    return 0.5 * s.ceil + 0.5 * s.floor;
}

/// Worst-case bounds (l_n(x) - e_bar, u_n(x) + e_bar) under a known symmetric
/// noise bound. Contains the target everywhere when L >= L* and |e| <= e_bar.
inline Envelope envelope(std::span<const double> x, const SampleSet& data,
                         const LipschitzInterpolator& model) {
    if (!model.noise_bound)
        throw config_error("envelope: model has no symmetric noise_bound configured");
    const auto s = detail::scan(x, data, model);
    const double e = *model.noise_bound;
    return {s.floor - e, s.ceil + e};
}

/// Boundary-regression pair (l_n(x) - e1 - e2, u_n(x) + e1 + e2) for
/// asymmetric noise bounds e1 < 0 < e2. Note the shift e1 + e2 cancels for
/// symmetric bounds; the sign convention is applied literally as configured.
inline Envelope boundary_estimators(std::span<const double> x, const SampleSet& data,
                                    const LipschitzInterpolator& model) {
    if (!model.noise_bounds_asym)
        throw config_error("boundary_estimators: model has no asymmetric noise bounds configured");
    const auto s = detail::scan(x, data, model);
    const double shift = model.noise_bounds_asym->first + model.noise_bounds_asym->second;
    return {s.floor - shift, s.ceil + shift};
}

/// Component-wise predictor for vector-valued outputs with a shared L.
/// Component j equals predict() on the j-th component sample set.
inline std::vector<double> predict_multi(std::span<const double> x,
                                         const MultiOutputSampleSet& data,
                                         const LipschitzInterpolator& model) {
    if (data.empty()) throw empty_data_error("predict_multi: empty sample set");
    const std::size_t l = data.dim_out();
    std::vector<double> lo(l, std::numeric_limits<double>::infinity());
    std::vector<double> hi(l, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double shift = model.lipschitz * holder_distance(x, data.input(i), model.metric);
        const auto y = data.output(i);
        for (std::size_t j = 0; j < l; ++j) {
            lo[j] = std::min(lo[j], y[j] + shift);
            hi[j] = std::max(hi[j], y[j] - shift);
        }
    }
    std::vector<double> out(l);
    for (std::size_t j = 0; j < l; ++j) out[j] = 0.5 * lo[j] + 0.5 * hi[j];
    return out;
}

/// max over the grid of |predictor(x) - f_true(x)|; empirical stand-in for
/// the sup-norm error.
template <typename Predictor, typename Target>
double sup_error(Predictor&& predictor, Target&& f_true,
                 std::span<const std::vector<double>> grid) {
    if (grid.empty()) throw input_error("sup_error: empty evaluation grid");
    double worst = 0.0;
    for (const auto& x : grid) {
        const std::span<const double> xs(x);
        worst = std::max(worst, std::abs(predictor(xs) - f_true(xs)));
    }
    return worst;
}

} // namespace lipint

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lipint/errors.hpp"
#include "lipint/interpolator.hpp"
#include "lipint/lacki.hpp"
#include "lipint/noise.hpp"
#include "lipint/parallel.hpp"
#include "lipint/rates.hpp"
#include "lipint/rng.hpp"
#include "lipint/targets.hpp"

namespace lipint {

/// Monte-Carlo convergence study: per sample size and repetition, draw inputs
/// uniformly on the target's box, corrupt outputs with the configured noise,
/// fit the interpolator and record the sup error on a fixed uniform grid.
struct ConvergenceStudyConfig {
    std::string target = "ripple";
    HolderMetric metric{};                 // p = 2, alpha = 1
    std::optional<double> lipschitz{};     // default 1.1 * target best constant
    NoiseModel noise = make_uniform(0.5);
    std::vector<std::size_t> sample_sizes = {128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768};
    int repetitions = 20;
    std::size_t grid_points = 2000;
    std::uint64_t seed = 1;
    std::optional<double> lambda{};        // LACKI studies only; default 2 e_bar

    void validate() const {
        metric.validate();
        find_target(target);
        if (sample_sizes.empty()) throw input_error("study: sample_sizes must be nonempty");
        for (std::size_t i = 0; i + 1 < sample_sizes.size(); ++i)
            if (sample_sizes[i] >= sample_sizes[i + 1])
                throw input_error("study: sample_sizes must be strictly increasing");
        if (sample_sizes.front() == 0) throw input_error("study: sample sizes must be >= 1");
        if (repetitions < 1) throw input_error("study: repetitions must be >= 1");
        if (grid_points < 100) throw input_error("study: grid_points must be >= 100");
        if (lipschitz && !(*lipschitz >= 0.0)) throw input_error("study: lipschitz must be >= 0");
        if (lambda && !(*lambda >= 0.0)) throw input_error("study: lambda must be >= 0");
    }

    double effective_lipschitz() const {
        return lipschitz ? *lipschitz : 1.1 * find_target(target).best_lipschitz;
    }

    double effective_lambda() const {
        if (lambda) return *lambda;
        if (noise.kind == NoiseKind::none)
            throw config_error("study: lambda required when the noise model has no e_bar");
        return 2.0 * noise.e_bar;
    }

    // eta of the configured noise, when the study admits a rate prediction.
    std::optional<RateSpec> rate_spec() const {
        if (noise.kind == NoiseKind::none) return std::nullopt;
        return RateSpec{find_target(target).dim, metric.alpha, noise.eta};
    }
};

struct StudyRow {
    std::size_t n;
    double mean;
    double stddev;                 // across repetitions, n-1 normalisation
    std::vector<double> errors;    // one per repetition
    bool operator==(const StudyRow&) const = default;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    bool operator==(const StudyResult&) const = default;
};

namespace detail {

inline std::pair<double, double> mean_stddev(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

} // namespace detail

/// Uniform evaluation grid over the target box: exactly `points` for d = 1,
/// the nearest product grid (round(points^(1/d)) per axis) for d > 1.
inline std::vector<std::vector<double>> uniform_grid(const StudyTarget& target,
                                                     std::size_t points) {
    if (points < 2) throw input_error("uniform_grid: need at least 2 points");
    const auto [lo, hi] = target.box;
    if (target.dim == 1) {
        std::vector<std::vector<double>> grid(points);
        for (std::size_t i = 0; i < points; ++i)
            grid[i] = {lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1)};
        return grid;
    }
    const auto per_axis = static_cast<std::size_t>(std::lround(
        std::pow(static_cast<double>(points), 1.0 / target.dim)));
    const std::size_t m = std::max<std::size_t>(per_axis, 2);
    std::vector<std::vector<double>> grid;
    std::vector<std::size_t> idx(target.dim, 0);
    while (true) {
        std::vector<double> x(target.dim);
        for (int a = 0; a < target.dim; ++a)
            x[a] = lo + (hi - lo) * static_cast<double>(idx[a]) / static_cast<double>(m - 1);
        grid.push_back(std::move(x));
        int axis = 0;
        while (axis < target.dim && ++idx[axis] == m) idx[axis++] = 0;
        if (axis == target.dim) break;
    }
    return grid;
}

namespace detail {

inline SampleSet draw_dataset(const StudyTarget& target, const NoiseModel& noise, std::size_t n,
                              Rng& rng) {
    SampleSet data(static_cast<std::size_t>(target.dim));
    std::vector<double> x(target.dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < target.dim; ++a) x[a] = rng.uniform(target.box[0], target.box[1]);
        data.add(x, target.f(x) + sample_noise(noise, rng));
    }
    return data;
}

} // namespace detail

/// Runs the configured study. Fully deterministic given the seed: each
/// (sample size, repetition) task owns a sub-seed derived from
/// (seed, n, repetition), so thread count and scheduling cannot change the
/// result.
inline StudyResult run_convergence_study(const ConvergenceStudyConfig& config) {
    config.validate();
    const StudyTarget& target = find_target(config.target);
    const auto grid = uniform_grid(target, config.grid_points);
    const double lipschitz = config.effective_lipschitz();

    const std::size_t reps = static_cast<std::size_t>(config.repetitions);
    const std::size_t tasks = config.sample_sizes.size() * reps;
    std::vector<double> errors(tasks);

    parallel_for(tasks, [&](std::size_t task) {
        const std::size_t size_idx = task / reps;
        const std::size_t rep = task % reps;
        const std::size_t n = config.sample_sizes[size_idx];
        Rng rng(derive_seed(config.seed, n, rep));
        const SampleSet data = detail::draw_dataset(target, config.noise, n, rng);
        LipschitzInterpolator model;
        model.metric = config.metric;
        model.lipschitz = lipschitz;
        errors[task] = sup_error(
            [&](std::span<const double> x) { return predict(x, data, model); },
            [&](std::span<const double> x) { return target.f(x); }, grid);
    });

    StudyResult result;
    for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) {
        StudyRow row;
        row.n = config.sample_sizes[s];
        row.errors.assign(errors.begin() + static_cast<std::ptrdiff_t>(s * reps),
                          errors.begin() + static_cast<std::ptrdiff_t>((s + 1) * reps));
        std::tie(row.mean, row.stddev) = detail::mean_stddev(row.errors);
        result.rows.push_back(std::move(row));
    }
    return result;
}

struct LoglogFit {
    double slope;
    double intercept;
};

/// Ordinary least squares of log(mean sup error) against log(n).
inline LoglogFit fit_loglog_slope(const StudyResult& result) {
    if (result.rows.size() < 3)
        throw input_error("fit_loglog_slope: need at least 3 sample sizes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(result.rows.size());
    for (const auto& row : result.rows) {
        if (!(row.mean > 0.0))
            throw degenerate_data_error("fit_loglog_slope: nonpositive mean error at n = " +
                                        std::to_string(row.n));
        const double x = std::log(static_cast<double>(row.n));
        const double y = std::log(row.mean);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw degenerate_data_error("fit_loglog_slope: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / n};
}

struct LackiStudyRow {
    std::size_t n;
    double mean_l;
    double stddev_l;
    double mean_abs_err;           // mean |L(n) - L*|
    std::vector<double> estimates; // one per repetition
};

struct LackiStudyResult {
    double target_lipschitz;       // L* of the study target
    std::vector<LackiStudyRow> rows;
};

/// LACKI estimation study: per repetition one growing sample stream; the
/// estimate is recorded at every configured checkpoint size, so within a
/// repetition the sample sets are nested and L(n) is nondecreasing.
inline LackiStudyResult run_lacki_study(const ConvergenceStudyConfig& config) {
    config.validate();
    const StudyTarget& target = find_target(config.target);
    const double lambda = config.effective_lambda();
    const std::size_t reps = static_cast<std::size_t>(config.repetitions);
    const std::size_t checkpoints = config.sample_sizes.size();

    std::vector<double> estimates(reps * checkpoints);
    parallel_for(reps, [&](std::size_t rep) {
        Rng rng(derive_seed(config.seed, 0, rep));
        LackiState state(static_cast<std::size_t>(target.dim), lambda, config.metric);
        std::vector<double> x(target.dim);
        std::size_t next = 0;
        for (std::size_t i = 1; i <= config.sample_sizes.back(); ++i) {
            for (int a = 0; a < target.dim; ++a) x[a] = rng.uniform(target.box[0], target.box[1]);
            state.update(x, target.f(x) + sample_noise(config.noise, rng));
            if (next < checkpoints && i == config.sample_sizes[next])
                estimates[rep * checkpoints + next++] = state.current_l();
        }
    });

    LackiStudyResult result{target.best_lipschitz, {}};
    for (std::size_t c = 0; c < checkpoints; ++c) {
        LackiStudyRow row;
        row.n = config.sample_sizes[c];
        for (std::size_t rep = 0; rep < reps; ++rep)
            row.estimates.push_back(estimates[rep * checkpoints + c]);
        std::tie(row.mean_l, row.stddev_l) = detail::mean_stddev(row.estimates);
        double abs_sum = 0.0;
        for (double l : row.estimates) abs_sum += std::abs(l - target.best_lipschitz);
        row.mean_abs_err = abs_sum / static_cast<double>(reps);
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace lipint

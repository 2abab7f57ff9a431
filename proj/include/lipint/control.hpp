#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "lipint/errors.hpp"
#include "lipint/interpolator.hpp"
#include "lipint/noise.hpp"
#include "lipint/parallel.hpp"
#include "lipint/rng.hpp"
#include "lipint/sample_set.hpp"

namespace lipint {

struct Mat2 {
    double m00, m01;
    double m10, m11;
};

/// Closed-loop tracking-error matrix of the Euler-discretised double
/// integrator under u = -f_hat + K1 z1 + K2 z2:
///     M = [[1, delta], [-delta k1, 1 - delta k2]].
inline Mat2 closed_loop_matrix(double delta, double k1, double k2) {
    if (!(delta >= 0.0)) throw input_error("closed_loop_matrix: delta must be >= 0");
    return {1.0, delta, -delta * k1, 1.0 - delta * k2};
}

/// Largest eigenvalue modulus via the characteristic quadratic. The linear
/// map z -> Mz is eventually contracting iff this is < 1.
inline double spectral_radius(const Mat2& m) {
    const double tr = m.m00 + m.m11;
    const double det = m.m00 * m.m11 - m.m01 * m.m10;
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return std::max(std::abs(0.5 * (tr + root)), std::abs(0.5 * (tr - root)));
    }
    return std::sqrt(det);   // complex pair, |lambda|^2 = det
}

/// Torque-actuated single pendulum, q'' = f(x) + u with f(x) = -sin(q) - q'.
struct PendulumState {
    double q = 0.0;
    double q_dot = 0.0;
};

inline double pendulum_true_dynamics(const PendulumState& s) {
    return -std::sin(s.q) - s.q_dot;
}

/// Explicit Euler step. The plant itself is noise-free; noise only enters the
/// acceleration observations.
inline PendulumState pendulum_step(const PendulumState& s, double u, double delta) {
    if (!(delta > 0.0)) throw input_error("pendulum_step: delta must be > 0");
    return {s.q + delta * s.q_dot, s.q_dot + delta * (pendulum_true_dynamics(s) + u)};
}

/// Noisy acceleration measurement f(x) + u + e. The training pair stored for
/// the interpolator is (x, observation - u) = (x, f(x) + e).
inline double observe_acceleration(const PendulumState& s, double u, const NoiseModel& noise,
                                   Rng& rng) {
    return pendulum_true_dynamics(s) + u + sample_noise(noise, rng);
}

/// Set-point-relative tracking law u = -f_hat(x) + K1 (xi1 - q) + K2 (xi2 - q'):
/// cancels the learned dynamics and applies linear feedback on the tracking
/// error, so the error obeys z' = Mz - delta d e2 with d the one-step model
/// error.
template <typename Predictor>
double control_law(const PendulumState& s, Predictor&& predictor,
                   std::array<double, 2> setpoint, double k1, double k2) {
    const double z1 = setpoint[0] - s.q;
    const double z2 = setpoint[1] - s.q_dot;
    return -predictor(s) + k1 * z1 + k2 * z2;
}

/// Regressor buffer for NARX models: x_n = (y_{n-dy}, ..., y_{n-1},
/// u_{n-du}, ..., u_n), flattened to length dy*l + (du+1)*s.
class NarxRegressor {
public:
    NarxRegressor(int d_y, int d_u, int out_dim, int ctrl_dim)
        : d_y_(d_y), d_u_(d_u), out_dim_(out_dim), ctrl_dim_(ctrl_dim) {
        if (d_y < 1 || d_u < 0 || out_dim < 1 || ctrl_dim < 1)
            throw input_error("NarxRegressor: need d_y >= 1, d_u >= 0, dims >= 1");
    }

    std::size_t regressor_length() const {
        return static_cast<std::size_t>(d_y_) * out_dim_ +
               static_cast<std::size_t>(d_u_ + 1) * ctrl_dim_;
    }

    void push_output(std::span<const double> y) {
        if (y.size() != static_cast<std::size_t>(out_dim_))
            throw input_error("NarxRegressor::push_output: dimension mismatch");
        outputs_.emplace_back(y.begin(), y.end());
        if (outputs_.size() > static_cast<std::size_t>(d_y_)) outputs_.pop_front();
    }

    void push_control(std::span<const double> u) {
        if (u.size() != static_cast<std::size_t>(ctrl_dim_))
            throw input_error("NarxRegressor::push_control: dimension mismatch");
        controls_.emplace_back(u.begin(), u.end());
        if (controls_.size() > static_cast<std::size_t>(d_u_ + 1)) controls_.pop_front();
    }

    bool ready() const {
        return outputs_.size() == static_cast<std::size_t>(d_y_) &&
               controls_.size() == static_cast<std::size_t>(d_u_ + 1);
    }

    // Oldest entries first, outputs then controls (current control last).
    std::vector<double> regressor() const {
        if (!ready()) throw input_error("NarxRegressor: insufficient history");
        std::vector<double> x;
        x.reserve(regressor_length());
        for (const auto& y : outputs_) x.insert(x.end(), y.begin(), y.end());
        for (const auto& u : controls_) x.insert(x.end(), u.begin(), u.end());
        return x;
    }

private:
    int d_y_, d_u_, out_dim_, ctrl_dim_;
    std::deque<std::vector<double>> outputs_;
    std::deque<std::vector<double>> controls_;
};

/// Closed-loop pendulum experiment configuration. Defaults reproduce the
/// reference set-point experiment: delta = 0.1, K1 = K2 = 1, L = 11, uniform
/// observation noise on [-2, 2], x0 = (-2, -1), set-point (2*pi, 0).
struct ControlConfig {
    double delta = 0.1;
    double k1 = 1.0;
    double k2 = 1.0;
    double lipschitz = 11.0;
    HolderMetric metric{};                  // 2-norm, alpha = 1
    NoiseModel noise = make_uniform(2.0);
    PendulumState x0{-2.0, -1.0};
    std::array<double, 2> setpoint{2.0 * std::numbers::pi, 0.0};
    int steps = 300;
    int repetitions = 30;
    std::uint64_t seed = 1;
    bool oracle_model = false;              // bypass learning, predict with the true f

    void validate() const {
        metric.validate();
        if (!(delta > 0.0)) throw input_error("ControlConfig: delta must be > 0");
        if (!(lipschitz >= 0.0)) throw input_error("ControlConfig: lipschitz must be >= 0");
        if (steps < 0) throw input_error("ControlConfig: steps must be >= 0");
        if (repetitions < 1) throw input_error("ControlConfig: repetitions must be >= 1");
        const double rho = spectral_radius(closed_loop_matrix(delta, k1, k2));
        if (!(rho < 1.0))
            throw input_error("ControlConfig: spectral radius " + std::to_string(rho) +
                              " >= 1; gains do not stabilise the error dynamics");
    }
};

struct TraceStep {
    int step;
    PendulumState state;
    double u;          // control applied at this step (planned, for the final row)
    double zeta1;      // setpoint[0] - q
    double zeta2;      // setpoint[1] - q_dot
    double err_norm;   // 2-norm of (zeta1, zeta2)
    double f_hat;      // model prediction at the state
    double f_true;     // true dynamics at the state
    double d_model;    // f_true - f_hat
};

struct TrackingTrace {
    std::vector<TraceStep> steps;   // steps + 1 records, index 0 = initial state
};

/// One closed-loop episode. At step n the controller predicts with the
/// samples gathered at steps < n (prediction 0 while the set is empty),
/// applies the tracking law, stores the de-biased observation
/// (x_n, f(x_n) + e_n) and advances the plant. The final record holds the
/// terminal state and the action the controller would take next.
inline TrackingTrace run_episode(const ControlConfig& config, Rng& rng) {
    config.validate();
    SampleSet data(2);
    LipschitzInterpolator model;
    model.metric = config.metric;
    model.lipschitz = config.lipschitz;

    const auto predict_at = [&](const PendulumState& s) {
        if (config.oracle_model) return pendulum_true_dynamics(s);
        if (data.empty()) return 0.0;
        const std::array<double, 2> x{s.q, s.q_dot};
        return predict(std::span<const double>(x), data, model);
    };

    TrackingTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(config.steps) + 1);
    PendulumState state = config.x0;
    for (int n = 0; n <= config.steps; ++n) {
        TraceStep rec;
        rec.step = n;
        rec.state = state;
        rec.zeta1 = config.setpoint[0] - state.q;
        rec.zeta2 = config.setpoint[1] - state.q_dot;
        rec.err_norm = std::hypot(rec.zeta1, rec.zeta2);
        rec.f_hat = predict_at(state);
        rec.f_true = pendulum_true_dynamics(state);
        rec.d_model = rec.f_true - rec.f_hat;
        rec.u = control_law(state, predict_at, config.setpoint, config.k1, config.k2);
        trace.steps.push_back(rec);
        if (n == config.steps) break;
        if (!config.oracle_model) {
            const double observed = observe_acceleration(state, rec.u, config.noise, rng);
            const std::array<double, 2> x{state.q, state.q_dot};
            data.add(std::span<const double>(x), observed - rec.u);
        }
        state = pendulum_step(state, rec.u, config.delta);
    }
    return trace;
}

struct MonteCarloResult {
    std::vector<double> mean_err;          // per step, across repetitions
    std::vector<double> std_err;
    std::vector<TrackingTrace> traces;     // one per repetition
};

/// Independent episodes with sub-seeds derived from (seed, repetition);
/// deterministic for a fixed config regardless of thread count.
inline MonteCarloResult run_monte_carlo(const ControlConfig& config) {
    config.validate();
    const std::size_t reps = static_cast<std::size_t>(config.repetitions);
    MonteCarloResult result;
    result.traces.resize(reps);
    parallel_for(reps, [&](std::size_t rep) {
        Rng rng(derive_seed(config.seed, rep, 0));
        result.traces[rep] = run_episode(config, rng);
    });

    const std::size_t len = static_cast<std::size_t>(config.steps) + 1;
    result.mean_err.resize(len);
    result.std_err.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        double sum = 0.0;
        for (const auto& t : result.traces) sum += t.steps[i].err_norm;
        const double mean = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (const auto& t : result.traces) {
            const double d = t.steps[i].err_norm - mean;
            ss += d * d;
        }
        result.mean_err[i] = mean;
        result.std_err[i] = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
    }
    return result;
}

} // namespace lipint

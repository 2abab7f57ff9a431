#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipint/errors.hpp"
#include "lipint/rng.hpp"

namespace lipint {

/// Bounded observation-noise families. All draws lie in [-e_bar, e_bar] with
/// probability 1 and the support bounds are tight. The boundary exponent eta
/// controls how much mass sits within eps of the support ends:
///     P(e > e_bar - eps) >= gamma * eps^eta.
enum class NoiseKind { none, uniform, truncated_gaussian, power_boundary, weibull_mixture };

inline const char* to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::none: return "none";
        case NoiseKind::uniform: return "uniform";
        case NoiseKind::truncated_gaussian: return "truncated_gaussian";
        case NoiseKind::power_boundary: return "power_boundary";
        case NoiseKind::weibull_mixture: return "weibull_mixture";
    }
    return "?";
}

struct NoiseModel {
    NoiseKind kind = NoiseKind::uniform;
    double e_bar = 1.0;                // support bound; > 0 except for `none`
    double eta = 1.0;                  // boundary exponent where meaningful
    std::optional<double> gamma{};     // boundary constant, analytic kinds only
    double sigma = 0.0;                // truncated_gaussian pre-truncation sd
    double weibull_shape = 1.5;        // illustrative defaults, no analytic tail
    double weibull_scale = 0.5;
};

// Degenerate zero-noise model for noiseless study runs. Not part of the
// bounded-noise families proper (e_bar = 0, no tail).
inline NoiseModel make_noiseless() {
    NoiseModel m;
    m.kind = NoiseKind::none;
    m.e_bar = 0.0;
    m.eta = 0.0;
    return m;
}

/// U([-e_bar, e_bar]); eta = 1, gamma = 1/(2 e_bar), exact tail eps/(2 e_bar).
inline NoiseModel make_uniform(double e_bar) {
    if (!(e_bar > 0.0)) throw input_error("make_uniform: e_bar must be > 0");
    NoiseModel m;
    m.kind = NoiseKind::uniform;
    m.e_bar = e_bar;
    m.eta = 1.0;
    m.gamma = 1.0 / (2.0 * e_bar);
    return m;
}

/// N(0, sigma^2) restricted to [-e_bar, e_bar] by rejection; sigma defaults
/// to e_bar. Density bounded away from zero on the support, so eta = 1
/// qualitatively, but no analytic gamma is exposed.
inline NoiseModel make_truncated_gaussian(double e_bar, double sigma = 0.0) {
    if (!(e_bar > 0.0)) throw input_error("make_truncated_gaussian: e_bar must be > 0");
    if (sigma == 0.0) sigma = e_bar;
    if (!(sigma > 0.0)) throw input_error("make_truncated_gaussian: sigma must be > 0");
    NoiseModel m;
    m.kind = NoiseKind::truncated_gaussian;
    m.e_bar = e_bar;
    m.eta = 1.0;
    m.sigma = sigma;
    return m;
}

/// Canonical tunable-eta family: e = S * e_bar * (1 - U^(1/eta)) with S
/// uniform on {-1,+1} and U uniform on (0,1). Exact upper tail
/// P(e > e_bar - eps) = (eps/e_bar)^eta / 2 for eps in (0, e_bar], i.e.
/// gamma = 1/(2 e_bar^eta). eta = 1 coincides with U([-e_bar, e_bar]) in
/// distribution.
inline NoiseModel make_power_boundary(double e_bar, double eta) {
    if (!(e_bar > 0.0)) throw input_error("make_power_boundary: e_bar must be > 0");
    if (!(eta > 0.0)) throw input_error("make_power_boundary: eta must be > 0");
    NoiseModel m;
    m.kind = NoiseKind::power_boundary;
    m.e_bar = e_bar;
    m.eta = eta;
    m.gamma = 1.0 / (2.0 * std::pow(e_bar, eta));
    return m;
}

/// Mixture of two Weibull humps mirrored onto [-e_bar, e_bar], truncated by
/// rejection. Boundary behaviour tracks the shape parameter qualitatively;
/// parameters are illustrative and carry no analytic tail guarantee.
inline NoiseModel make_weibull_mixture(double e_bar, double shape, double scale) {
    if (!(e_bar > 0.0) || !(shape > 0.0) || !(scale > 0.0))
        throw input_error("make_weibull_mixture: parameters must be > 0");
    NoiseModel m;
    m.kind = NoiseKind::weibull_mixture;
    m.e_bar = e_bar;
    m.eta = shape;
    m.weibull_shape = shape;
    m.weibull_scale = scale;
    return m;
}

/// One i.i.d. draw. Symmetric for every kind, zero mean.
inline double sample_noise(const NoiseModel& model, Rng& rng) {
    switch (model.kind) {
        case NoiseKind::none:
            return 0.0;
        case NoiseKind::uniform:
            return model.e_bar * (2.0 * rng.uniform01() - 1.0);
        case NoiseKind::truncated_gaussian: {
            while (true) {
                const double x = model.sigma * rng.standard_normal();
                if (std::abs(x) <= model.e_bar) return x;
            }
        }
        case NoiseKind::power_boundary: {
            const double s = rng.sign();
            const double u = rng.open01();
            return s * model.e_bar * (1.0 - std::pow(u, 1.0 / model.eta));
        }
        case NoiseKind::weibull_mixture: {
            const double s = rng.sign();
            while (true) {
                const double u = rng.open01();
                const double w =
                    model.weibull_scale * std::pow(-std::log(1.0 - u), 1.0 / model.weibull_shape);
                if (w <= 2.0 * model.e_bar) return s * (model.e_bar - w);
            }
        }
    }
    throw input_error("sample_noise: unknown kind");
}

/// Exact upper-tail probability P(e > e_bar - eps) for the kinds with an
/// analytic tail (uniform, power_boundary). eps in (0, 2 e_bar].
inline double boundary_mass(const NoiseModel& model, double eps) {
    if (!(eps > 0.0) || eps > 2.0 * model.e_bar)
        throw input_error("boundary_mass: eps must lie in (0, 2 e_bar]");
    switch (model.kind) {
        case NoiseKind::uniform:
            return eps / (2.0 * model.e_bar);
        case NoiseKind::power_boundary:
            if (eps <= model.e_bar)
                return 0.5 * std::pow(eps / model.e_bar, model.eta);
            return 1.0 - 0.5 * std::pow((2.0 * model.e_bar - eps) / model.e_bar, model.eta);
        default:
            throw capability_error(std::string("boundary_mass: no analytic tail for kind ") +
                                   to_string(model.kind));
    }
}

struct EtaCheckRow {
    double epsilon;
    double upper_freq;   // empirical P(e > e_bar - eps)
    double lower_freq;   // empirical P(e < -e_bar + eps)
    double required;     // gamma * eps^eta, clamped to [0, 1]
    double margin;       // 3 binomial standard deviations of `required`
    bool pass;           // both tails >= required - margin
};

struct EtaCheckReport {
    std::uint64_t n_draws;
    double gamma;
    double eta;
    std::vector<EtaCheckRow> rows;
    bool pass;
};

/// Empirical verification of the boundary-mass lower bound: draws n_draws
/// samples and, per epsilon, compares both tail frequencies against
/// gamma * eps^eta minus a 3-sigma binomial margin. The claimed (gamma, eta)
/// default to the model's own; kinds without an analytic gamma require an
/// explicit claim.
inline EtaCheckReport empirical_eta_check(const NoiseModel& model, std::uint64_t n_draws,
                                          std::span<const double> epsilons, Rng& rng,
                                          std::optional<double> claimed_gamma = {},
                                          std::optional<double> claimed_eta = {}) {
    if (n_draws < 10000) throw input_error("empirical_eta_check: need n_draws >= 10^4");
    if (epsilons.empty()) throw input_error("empirical_eta_check: need at least one epsilon");
    const double gamma = claimed_gamma ? *claimed_gamma
                         : model.gamma ? *model.gamma
                                       : throw capability_error(
                                             "empirical_eta_check: model carries no gamma; "
                                             "pass a claimed (gamma, eta) explicitly");
    const double eta = claimed_eta.value_or(model.eta);

    std::vector<std::uint64_t> upper(epsilons.size(), 0), lower(epsilons.size(), 0);
    for (std::uint64_t k = 0; k < n_draws; ++k) {
        const double e = sample_noise(model, rng);
        for (std::size_t i = 0; i < epsilons.size(); ++i) {
            if (e > model.e_bar - epsilons[i]) ++upper[i];
            if (e < -model.e_bar + epsilons[i]) ++lower[i];
        }
    }

    EtaCheckReport report{n_draws, gamma, eta, {}, true};
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        EtaCheckRow row{};
        row.epsilon = epsilons[i];
        row.upper_freq = static_cast<double>(upper[i]) / static_cast<double>(n_draws);
        row.lower_freq = static_cast<double>(lower[i]) / static_cast<double>(n_draws);
        row.required = std::min(1.0, gamma * std::pow(epsilons[i], eta));
        row.margin =
            3.0 * std::sqrt(row.required * (1.0 - row.required) / static_cast<double>(n_draws));
        row.pass = row.upper_freq >= row.required - row.margin &&
                   row.lower_freq >= row.required - row.margin;
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace lipint

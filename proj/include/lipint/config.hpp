#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipint/control.hpp"
#include "lipint/errors.hpp"
#include "lipint/format.hpp"
#include "lipint/metric.hpp"
#include "lipint/noise.hpp"
#include "lipint/study.hpp"

namespace lipint {

// JSON experiment configs. Validation is strict: unknown keys, wrong types
// and out-of-range values are reported with their JSON path. Every default
// lives here, next to the field it belongs to.

using json = nlohmann::json;

namespace cfg {

inline json load_json_file(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw config_error("config '" + path.string() + "': " + e.what());
    }
    if (!j.is_object()) throw config_error("config '" + path.string() + "': expected an object");
    return j;
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& ctx) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok) {
            std::string msg = ctx + ": unknown key '" + key + "'; allowed:";
            for (const char* a : allowed) msg += std::string(" ") + a;
            throw config_error(msg);
        }
    }
}

inline double get_number(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key)) throw config_error(ctx + ": missing required field '" + key + "'");
    if (!j[key].is_number()) throw config_error(ctx + "." + key + ": expected a number");
    return j[key].get<double>();
}

inline double opt_number(const json& j, const char* key, double fallback, const std::string& ctx) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw config_error(ctx + "." + key + ": expected a number");
    return j[key].get<double>();
}

inline std::string opt_string(const json& j, const char* key, const std::string& fallback,
                              const std::string& ctx) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw config_error(ctx + "." + key + ": expected a string");
    return j[key].get<std::string>();
}

inline std::string get_string(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key)) throw config_error(ctx + ": missing required field '" + key + "'");
    if (!j[key].is_string()) throw config_error(ctx + "." + key + ": expected a string");
    return j[key].get<std::string>();
}

inline HolderMetric metric_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object()) throw config_error(ctx + ": expected an object");
    check_keys(j, {"p", "alpha"}, ctx);
    HolderMetric m;
    if (j.contains("p")) {
        if (j["p"].is_string()) {
            const auto s = j["p"].get<std::string>();
            if (s != "inf" && s != "infinity")
                throw config_error(ctx + ".p: expected a positive integer or \"inf\"");
            m.p_infinite = true;
        } else if (j["p"].is_number_integer()) {
            m.p = j["p"].get<int>();
        } else {
            throw config_error(ctx + ".p: expected a positive integer or \"inf\"");
        }
    }
    m.alpha = opt_number(j, "alpha", 1.0, ctx);
    try {
        m.validate();
    } catch (const input_error& e) {
        throw config_error(ctx + ": " + e.what());
    }
    return m;
}

inline NoiseModel noise_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object()) throw config_error(ctx + ": expected an object");
    const std::string kind = get_string(j, "kind", ctx);
    try {
        if (kind == "none") {
            check_keys(j, {"kind"}, ctx);
            return make_noiseless();
        }
        if (kind == "uniform") {
            check_keys(j, {"kind", "e_bar"}, ctx);
            return make_uniform(get_number(j, "e_bar", ctx));
        }
        if (kind == "truncated_gaussian") {
            check_keys(j, {"kind", "e_bar", "sigma"}, ctx);
            return make_truncated_gaussian(get_number(j, "e_bar", ctx),
                                           opt_number(j, "sigma", 0.0, ctx));
        }
        if (kind == "power_boundary") {
            check_keys(j, {"kind", "e_bar", "eta"}, ctx);
            return make_power_boundary(get_number(j, "e_bar", ctx), get_number(j, "eta", ctx));
        }
        if (kind == "weibull_mixture") {
            check_keys(j, {"kind", "e_bar", "shape", "scale"}, ctx);
            const double e_bar = get_number(j, "e_bar", ctx);
            return make_weibull_mixture(e_bar, opt_number(j, "shape", 1.5, ctx),
                                        opt_number(j, "scale", e_bar, ctx));
        }
    } catch (const input_error& e) {
        throw config_error(ctx + ": " + e.what());
    }
    throw config_error(ctx + ".kind: unknown noise kind '" + kind +
                       "'; expected none|uniform|truncated_gaussian|power_boundary|weibull_mixture");
}

inline std::vector<std::size_t> sizes_from_json(const json& j, const char* key,
                                                std::vector<std::size_t> fallback,
                                                const std::string& ctx) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_array()) throw config_error(ctx + "." + key + ": expected an array");
    std::vector<std::size_t> out;
    for (const auto& v : j[key]) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw config_error(ctx + "." + key + ": entries must be positive integers");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

/// rate-study / lacki-study document. Every field is optional; the defaults
/// reproduce the reference uniform-noise study on the `ripple` target.
inline ConvergenceStudyConfig study_from_json(const json& j) {
    const std::string ctx = "study";
    check_keys(j,
               {"target", "metric", "lipschitz", "noise", "sample_sizes", "repetitions",
                "grid_points", "seed", "lambda"},
               ctx);
    ConvergenceStudyConfig c;
    c.target = opt_string(j, "target", c.target, ctx);
    if (j.contains("metric")) c.metric = metric_from_json(j["metric"], ctx + ".metric");
    if (j.contains("lipschitz")) c.lipschitz = get_number(j, "lipschitz", ctx);
    if (j.contains("noise")) c.noise = noise_from_json(j["noise"], ctx + ".noise");
    c.sample_sizes = sizes_from_json(j, "sample_sizes", c.sample_sizes, ctx);
    c.repetitions = static_cast<int>(opt_number(j, "repetitions", c.repetitions, ctx));
    c.grid_points = static_cast<std::size_t>(opt_number(
        j, "grid_points", static_cast<double>(c.grid_points), ctx));
    c.seed = static_cast<std::uint64_t>(opt_number(j, "seed", 1.0, ctx));
    if (j.contains("lambda")) c.lambda = get_number(j, "lambda", ctx);
    try {
        c.validate();
    } catch (const input_error& e) {
        throw config_error(ctx + ": " + e.what());
    }
    return c;
}

/// Defaults for `lacki-study` when no config is given: constant-estimation on
/// the sine target under uniform noise with lambda = 2 e_bar.
inline ConvergenceStudyConfig default_lacki_study() {
    ConvergenceStudyConfig c;
    c.target = "sine";
    c.noise = make_uniform(0.1);
    c.sample_sizes = {1250, 2500, 5000, 10000, 20000};
    c.repetitions = 20;
    return c;
}

/// pendulum document; defaults are the reference closed-loop experiment.
inline ControlConfig control_from_json(const json& j) {
    const std::string ctx = "pendulum";
    check_keys(j,
               {"delta", "k1", "k2", "lipschitz", "metric", "noise", "x0", "setpoint", "steps",
                "repetitions", "seed", "model"},
               ctx);
    ControlConfig c;
    c.delta = opt_number(j, "delta", c.delta, ctx);
    c.k1 = opt_number(j, "k1", c.k1, ctx);
    c.k2 = opt_number(j, "k2", c.k2, ctx);
    c.lipschitz = opt_number(j, "lipschitz", c.lipschitz, ctx);
    if (j.contains("metric")) c.metric = metric_from_json(j["metric"], ctx + ".metric");
    if (j.contains("noise")) c.noise = noise_from_json(j["noise"], ctx + ".noise");
    for (const char* key : {"x0", "setpoint"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_array() || j[key].size() != 2 || !j[key][0].is_number() ||
            !j[key][1].is_number())
            throw config_error(ctx + "." + key + ": expected [number, number]");
        if (std::string(key) == "x0")
            c.x0 = {j[key][0].get<double>(), j[key][1].get<double>()};
        else
            c.setpoint = {j[key][0].get<double>(), j[key][1].get<double>()};
    }
    c.steps = static_cast<int>(opt_number(j, "steps", c.steps, ctx));
    c.repetitions = static_cast<int>(opt_number(j, "repetitions", c.repetitions, ctx));
    c.seed = static_cast<std::uint64_t>(opt_number(j, "seed", 1.0, ctx));
    const std::string model = opt_string(j, "model", "li", ctx);
    if (model == "oracle")
        c.oracle_model = true;
    else if (model != "li")
        throw config_error(ctx + ".model: expected \"li\" or \"oracle\"");
    try {
        c.validate();
    } catch (const input_error& e) {
        throw config_error(ctx + ": " + e.what());
    }
    return c;
}

struct EtaCheckConfig {
    NoiseModel noise = make_power_boundary(0.5, 1.0);
    std::uint64_t n_draws = 1000000;
    std::vector<double> epsilons{};            // default {0.05, 0.1, 0.2} * e_bar
    std::optional<double> claimed_gamma{};
    std::optional<double> claimed_eta{};
    std::optional<RateSpec> rate{};            // adds the exponent comparison to the report
    std::uint64_t seed = 1;

    std::vector<double> effective_epsilons() const {
        if (!epsilons.empty()) return epsilons;
        return {0.05 * noise.e_bar, 0.1 * noise.e_bar, 0.2 * noise.e_bar};
    }
};

inline EtaCheckConfig eta_check_from_json(const json& j) {
    const std::string ctx = "eta-check";
    check_keys(j, {"noise", "n_draws", "epsilons", "claimed", "rate", "seed"}, ctx);
    EtaCheckConfig c;
    if (j.contains("noise")) c.noise = noise_from_json(j["noise"], ctx + ".noise");
    c.n_draws = static_cast<std::uint64_t>(
        opt_number(j, "n_draws", static_cast<double>(c.n_draws), ctx));
    if (j.contains("epsilons")) {
        if (!j["epsilons"].is_array()) throw config_error(ctx + ".epsilons: expected an array");
        for (const auto& v : j["epsilons"]) {
            if (!v.is_number() || !(v.get<double>() > 0.0))
                throw config_error(ctx + ".epsilons: entries must be positive numbers");
            c.epsilons.push_back(v.get<double>());
        }
    }
    if (j.contains("claimed")) {
        const auto& cl = j["claimed"];
        check_keys(cl, {"gamma", "eta"}, ctx + ".claimed");
        c.claimed_gamma = get_number(cl, "gamma", ctx + ".claimed");
        c.claimed_eta = get_number(cl, "eta", ctx + ".claimed");
    }
    if (j.contains("rate")) {
        const auto& r = j["rate"];
        check_keys(r, {"d", "alpha", "eta"}, ctx + ".rate");
        RateSpec spec;
        spec.d = static_cast<int>(opt_number(r, "d", 1.0, ctx + ".rate"));
        spec.alpha = opt_number(r, "alpha", 1.0, ctx + ".rate");
        spec.eta = opt_number(r, "eta", c.noise.eta, ctx + ".rate");
        try {
            spec.validate();
        } catch (const input_error& e) {
            throw config_error(ctx + ".rate: " + e.what());
        }
        c.rate = spec;
    }
    c.seed = static_cast<std::uint64_t>(opt_number(j, "seed", 1.0, ctx));
    return c;
}

struct FitConfig {
    std::string data_path;
    HolderMetric metric{};
    double lambda = 0.0;
};

inline FitConfig fit_from_json(const json& j) {
    const std::string ctx = "fit";
    check_keys(j, {"data", "metric", "lambda"}, ctx);
    FitConfig c;
    c.data_path = get_string(j, "data", ctx);
    if (j.contains("metric")) c.metric = metric_from_json(j["metric"], ctx + ".metric");
    c.lambda = get_number(j, "lambda", ctx);
    if (!(c.lambda >= 0.0)) throw config_error(ctx + ".lambda: must be >= 0");
    return c;
}

struct PredictConfig {
    std::string data_path;
    HolderMetric metric{};
    std::optional<double> lipschitz{};        // fixed L ...
    std::optional<double> lacki_lambda{};     // ... or a LACKI estimate from the data
    std::optional<double> noise_bound{};
    std::optional<std::pair<double, double>> noise_bounds_asym{};
    std::optional<std::string> queries_path{};
    std::size_t grid_queries = 0;             // uniform grid over the data bounding box
};

inline PredictConfig predict_from_json(const json& j) {
    const std::string ctx = "predict";
    check_keys(j, {"data", "metric", "lipschitz", "lacki", "noise_bound", "noise_bounds_asym",
                   "queries", "grid"},
               ctx);
    PredictConfig c;
    c.data_path = get_string(j, "data", ctx);
    if (j.contains("metric")) c.metric = metric_from_json(j["metric"], ctx + ".metric");
    if (j.contains("lipschitz")) c.lipschitz = get_number(j, "lipschitz", ctx);
    if (j.contains("lacki")) {
        check_keys(j["lacki"], {"lambda"}, ctx + ".lacki");
        c.lacki_lambda = get_number(j["lacki"], "lambda", ctx + ".lacki");
    }
    if (!c.lipschitz && !c.lacki_lambda)
        throw config_error(ctx + ": provide either 'lipschitz' or 'lacki.lambda'");
    if (c.lipschitz && c.lacki_lambda)
        throw config_error(ctx + ": 'lipschitz' and 'lacki' are mutually exclusive");
    if (j.contains("noise_bound")) c.noise_bound = get_number(j, "noise_bound", ctx);
    if (j.contains("noise_bounds_asym")) {
        const auto& b = j["noise_bounds_asym"];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
            throw config_error(ctx + ".noise_bounds_asym: expected [e1, e2]");
        c.noise_bounds_asym = {b[0].get<double>(), b[1].get<double>()};
    }
    if (j.contains("queries")) c.queries_path = get_string(j, "queries", ctx);
    if (j.contains("grid")) {
        check_keys(j["grid"], {"points"}, ctx + ".grid");
        c.grid_queries = static_cast<std::size_t>(get_number(j["grid"], "points", ctx + ".grid"));
        if (c.grid_queries < 2) throw config_error(ctx + ".grid.points: must be >= 2");
    }
    if (bool(c.queries_path) == (c.grid_queries > 0))
        throw config_error(ctx + ": provide exactly one of 'queries' or 'grid'");
    return c;
}

} // namespace cfg

} // namespace lipint

#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipint/config.hpp"
#include "lipint/csvio.hpp"
#include "lipint/errors.hpp"
#include "lipint/format.hpp"
#include "lipint/interpolator.hpp"
#include "lipint/lacki.hpp"
#include "lipint/svg.hpp"

namespace lipint {

enum class OutputFormat { csv, json };

/// A parsed invocation. `subcommand` is one of fit, predict, rate-study,
/// lacki-study, pendulum, eta-check.
struct Command {
    std::string subcommand;
    std::optional<std::string> config_path{};
    std::optional<std::string> out_path{};
    std::optional<std::uint64_t> seed{};       // overrides the config seed
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> svg_path{};
    std::optional<int> repetitions{};          // override, studies and pendulum
    std::optional<int> steps{};                // override, pendulum only
};

namespace clidetail {

namespace fs = std::filesystem;

inline fs::path default_out(const Command& cmd) {
    if (cmd.out_path) return *cmd.out_path;
    return cmd.subcommand + (cmd.format == OutputFormat::json ? ".json" : ".csv");
}

// foo.csv -> foo.detail.csv
inline fs::path with_tag(const fs::path& base, const std::string& tag) {
    fs::path p = base;
    const std::string ext = p.extension().string();
    p.replace_extension();
    return p.string() + "." + tag + ext;
}

inline nlohmann::json config_or_empty(const Command& cmd) {
    if (cmd.config_path) return cfg::load_json_file(*cmd.config_path);
    return nlohmann::json::object();
}

inline nlohmann::json study_rows_json(const StudyResult& result,
                                      const std::optional<RateSpec>& rate) {
    nlohmann::json summary = nlohmann::json::array();
    const double exponent = rate ? rate_exponent(*rate) : 0.0;
    for (const auto& row : result.rows) {
        nlohmann::json r{{"n", row.n}, {"mean", row.mean}, {"std", row.stddev}};
        if (rate && row.n >= 2)
            r["theoretical_rate"] = TheoreticalRate{exponent}(static_cast<double>(row.n));
        summary.push_back(r);
    }
    nlohmann::json detail = nlohmann::json::array();
    for (const auto& row : result.rows)
        for (std::size_t r = 0; r < row.errors.size(); ++r)
            detail.push_back({{"n", row.n}, {"rep", r}, {"sup_error", row.errors[r]}});
    return {{"summary", summary}, {"detail", detail}};
}

inline void run_rate_study(const Command& cmd, std::ostream& info) {
    auto config = cfg::study_from_json(config_or_empty(cmd));
    if (cmd.seed) config.seed = *cmd.seed;
    if (cmd.repetitions) config.repetitions = *cmd.repetitions;
    config.validate();

    const StudyResult result = run_convergence_study(config);
    const auto rate = config.rate_spec();
    const fs::path out = default_out(cmd);
    if (cmd.format == OutputFormat::csv) {
        atomic_write_file(out, study_summary_csv(result, rate));
        atomic_write_file(with_tag(out, "detail"), study_detail_csv(result));
        info << "wrote " << out.string() << " and " << with_tag(out, "detail").string() << "\n";
    } else {
        atomic_write_file(out, study_rows_json(result, rate).dump(2) + "\n");
        info << "wrote " << out.string() << "\n";
    }
    if (cmd.svg_path) {
        atomic_write_file(*cmd.svg_path, render_study_svg(result, rate));
        info << "wrote " << *cmd.svg_path << "\n";
    }
    const auto fit = fit_loglog_slope(result);
    info << "fitted log-log slope " << format_double(fit.slope);
    if (rate) info << " (theoretical -" << format_double(rate_exponent(*rate)) << ")";
    info << "\n";
}

inline void run_lacki_study(const Command& cmd, std::ostream& info) {
    nlohmann::json j = config_or_empty(cmd);
    auto config = cmd.config_path ? cfg::study_from_json(j) : cfg::default_lacki_study();
    if (cmd.seed) config.seed = *cmd.seed;
    if (cmd.repetitions) config.repetitions = *cmd.repetitions;
    config.validate();

    const LackiStudyResult result = lipint::run_lacki_study(config);
    const fs::path out = default_out(cmd);
    if (cmd.format == OutputFormat::csv) {
        atomic_write_file(out, lacki_summary_csv(result));
        atomic_write_file(with_tag(out, "detail"), lacki_detail_csv(result));
        info << "wrote " << out.string() << " and " << with_tag(out, "detail").string() << "\n";
    } else {
        nlohmann::json summary = nlohmann::json::array();
        for (const auto& row : result.rows)
            summary.push_back({{"n", row.n},
                               {"mean_l", row.mean_l},
                               {"std_l", row.stddev_l},
                               {"mean_abs_err", row.mean_abs_err}});
        nlohmann::json detail = nlohmann::json::array();
        for (const auto& row : result.rows)
            for (std::size_t r = 0; r < row.estimates.size(); ++r)
                detail.push_back({{"n", row.n}, {"rep", r}, {"l_estimate", row.estimates[r]}});
        atomic_write_file(out, nlohmann::json{{"target_lipschitz", result.target_lipschitz},
                                              {"summary", summary},
                                              {"detail", detail}}
                                       .dump(2) +
                                   "\n");
        info << "wrote " << out.string() << "\n";
    }
    if (cmd.svg_path) {
        // |L(n) - L*| against n on log-log axes.
        StudyResult err;
        for (const auto& row : result.rows)
            err.rows.push_back({row.n, row.mean_abs_err, row.stddev_l, row.estimates});
        atomic_write_file(*cmd.svg_path,
                          render_study_svg(err, std::nullopt, "LACKI |L(n) - L*| vs n"));
        info << "wrote " << *cmd.svg_path << "\n";
    }
    info << "final mean L(n) = " << format_double(result.rows.back().mean_l) << " (target "
         << format_double(result.target_lipschitz) << ")\n";
}

inline void run_pendulum(const Command& cmd, std::ostream& info) {
    auto config = cfg::control_from_json(config_or_empty(cmd));
    if (cmd.seed) config.seed = *cmd.seed;
    if (cmd.repetitions) config.repetitions = *cmd.repetitions;
    if (cmd.steps) config.steps = *cmd.steps;
    config.validate();

    const MonteCarloResult result = run_monte_carlo(config);
    const fs::path out = default_out(cmd);
    if (cmd.format == OutputFormat::csv) {
        atomic_write_file(out, trace_summary_csv(result));
        atomic_write_file(with_tag(out, "trace"), trace_csv(result.traces));
        info << "wrote " << out.string() << " and " << with_tag(out, "trace").string() << "\n";
    } else {
        nlohmann::json summary = nlohmann::json::array();
        for (std::size_t i = 0; i < result.mean_err.size(); ++i)
            summary.push_back(
                {{"step", i}, {"mean_err", result.mean_err[i]}, {"std_err", result.std_err[i]}});
        nlohmann::json trace = nlohmann::json::array();
        for (std::size_t rep = 0; rep < result.traces.size(); ++rep)
            for (const auto& s : result.traces[rep].steps)
                trace.push_back({{"rep", rep},
                                 {"step", s.step},
                                 {"q", s.state.q},
                                 {"qdot", s.state.q_dot},
                                 {"u", s.u},
                                 {"zeta1", s.zeta1},
                                 {"zeta2", s.zeta2},
                                 {"err_norm", s.err_norm},
                                 {"d_model", s.d_model}});
        atomic_write_file(out,
                          nlohmann::json{{"summary", summary}, {"trace", trace}}.dump(2) + "\n");
        info << "wrote " << out.string() << "\n";
    }
    if (cmd.svg_path) {
        atomic_write_file(*cmd.svg_path, render_trajectory_svg(result));
        info << "wrote " << *cmd.svg_path << "\n";
    }
    info << "final mean tracking error " << format_double(result.mean_err.back()) << "\n";
}

inline void run_eta_check(const Command& cmd, std::ostream& info) {
    auto config = cfg::eta_check_from_json(config_or_empty(cmd));
    if (cmd.seed) config.seed = *cmd.seed;

    Rng rng(config.seed);
    const auto epsilons = config.effective_epsilons();
    const EtaCheckReport report = empirical_eta_check(
        config.noise, config.n_draws, epsilons, rng, config.claimed_gamma, config.claimed_eta);

    const fs::path out = default_out(cmd);
    if (cmd.format == OutputFormat::csv) {
        atomic_write_file(out, eta_check_csv(report));
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : report.rows)
            rows.push_back({{"epsilon", r.epsilon},
                            {"upper_freq", r.upper_freq},
                            {"lower_freq", r.lower_freq},
                            {"required", r.required},
                            {"margin", r.margin},
                            {"pass", r.pass}});
        nlohmann::json doc{{"n_draws", report.n_draws},
                           {"gamma", report.gamma},
                           {"eta", report.eta},
                           {"rows", rows},
                           {"pass", report.pass}};
        if (config.rate) {
            doc["rate"] = {{"exponent", rate_exponent(*config.rate)},
                           {"comparison", to_string(eta_condition(*config.rate))}};
        }
        atomic_write_file(out, doc.dump(2) + "\n");
    }
    info << "wrote " << out.string() << "\n";
    info << "tail check " << (report.pass ? "passed" : "FAILED") << " for eta = "
         << format_double(report.eta) << "\n";
    if (config.rate)
        info << "eta_condition: " << to_string(eta_condition(*config.rate)) << " (exponent "
             << format_double(rate_exponent(*config.rate)) << ")\n";
    if (!report.pass) throw degenerate_data_error("eta-check: empirical tails below the claimed bound");
}

inline void run_fit(const Command& cmd, std::ostream& info) {
    if (!cmd.config_path) throw config_error("fit: --config is required");
    const auto config = cfg::fit_from_json(cfg::load_json_file(*cmd.config_path));

    const SampleSet data = SampleSet::load_csv(config.data_path);
    const double estimate = lacki_full(data, config.lambda, config.metric);

    const fs::path out = default_out(cmd);
    if (cmd.format == OutputFormat::csv) {
        std::string csv = "count,dim,lambda,lipschitz_estimate\n";
        csv += std::to_string(data.size()) + "," + std::to_string(data.dim()) + "," +
               format_double(config.lambda) + "," + format_double(estimate) + "\n";
        atomic_write_file(out, csv);
    } else {
        nlohmann::json m{{"alpha", config.metric.alpha}};
        if (config.metric.p_infinite)
            m["p"] = "inf";
        else
            m["p"] = config.metric.p;
        atomic_write_file(out, nlohmann::json{{"count", data.size()},
                                              {"dim", data.dim()},
                                              {"metric", m},
                                              {"lambda", config.lambda},
                                              {"lipschitz_estimate", estimate}}
                                       .dump(2) +
                                   "\n");
    }
    info << "wrote " << out.string() << "\n";
    info << "L(" << data.size() << ") = " << format_double(estimate) << "\n";
}

// Query points: CSV with header x0,...,x{d-1}; a trailing y column is
// tolerated and ignored so a SampleSet file can be replayed as queries.
inline std::vector<std::vector<double>> load_query_points(const std::string& path,
                                                          std::size_t dim) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw input_error("queries CSV: empty document");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = detail::csv_cells(line);
    bool has_y = !header.empty() && header.back() == "y";
    const std::size_t d = header.size() - (has_y ? 1 : 0);
    if (d != dim)
        throw input_error("queries CSV: has " + std::to_string(d) + " coordinates, data has " +
                          std::to_string(dim));
    std::vector<std::vector<double>> points;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::csv_cells(line);
        if (cells.size() != header.size())
            throw input_error("queries CSV: ragged row '" + line + "'");
        std::vector<double> x(dim);
        for (std::size_t j = 0; j < dim; ++j) x[j] = parse_double(cells[j]);
        points.push_back(std::move(x));
    }
    if (points.empty()) throw input_error("queries CSV: no query points");
    return points;
}

inline void run_predict(const Command& cmd, std::ostream& info) {
    if (!cmd.config_path) throw config_error("predict: --config is required");
    const auto config = cfg::predict_from_json(cfg::load_json_file(*cmd.config_path));

    const SampleSet data = SampleSet::load_csv(config.data_path);
    LipschitzInterpolator model;
    model.metric = config.metric;
    model.lipschitz = config.lipschitz ? *config.lipschitz
                                       : lacki_full(data, *config.lacki_lambda, config.metric);
    model.noise_bound = config.noise_bound;
    model.noise_bounds_asym = config.noise_bounds_asym;
    model.validate();

    std::vector<std::vector<double>> queries;
    if (config.queries_path) {
        queries = load_query_points(*config.queries_path, data.dim());
    } else {
        // Uniform grid over the data's bounding box (d = 1 only).
        if (data.dim() != 1)
            throw config_error("predict.grid: grid queries support 1-d data; use 'queries'");
        double lo = data.input(0)[0], hi = lo;
        for (std::size_t i = 0; i < data.size(); ++i) {
            lo = std::min(lo, data.input(i)[0]);
            hi = std::max(hi, data.input(i)[0]);
        }
        for (std::size_t i = 0; i < config.grid_queries; ++i)
            queries.push_back({lo + (hi - lo) * static_cast<double>(i) /
                                        static_cast<double>(config.grid_queries - 1)});
    }

    std::string header;
    for (std::size_t j = 0; j < data.dim(); ++j) header += "x" + std::to_string(j) + ",";
    header += "prediction";
    if (model.noise_bound) header += ",lower,upper";
    if (model.noise_bounds_asym) header += ",boundary_lower,boundary_upper";

    nlohmann::json json_rows = nlohmann::json::array();
    std::string csv = header + "\n";
    for (const auto& x : queries) {
        const std::span<const double> xs(x);
        const double value = predict(xs, data, model);
        std::string row;
        for (double c : x) row += format_double(c) + ",";
        row += format_double(value);
        nlohmann::json jr{{"x", x}, {"prediction", value}};
        if (model.noise_bound) {
            const Envelope env = envelope(xs, data, model);
            row += "," + format_double(env.lower) + "," + format_double(env.upper);
            jr["lower"] = env.lower;
            jr["upper"] = env.upper;
        }
        if (model.noise_bounds_asym) {
            const Envelope env = boundary_estimators(xs, data, model);
            row += "," + format_double(env.lower) + "," + format_double(env.upper);
            jr["boundary_lower"] = env.lower;
            jr["boundary_upper"] = env.upper;
        }
        csv += row + "\n";
        json_rows.push_back(jr);
    }

    const fs::path out = default_out(cmd);
    if (cmd.format == OutputFormat::csv)
        atomic_write_file(out, csv);
    else
        atomic_write_file(out, nlohmann::json{{"lipschitz", model.lipschitz},
                                              {"predictions", json_rows}}
                                       .dump(2) +
                                   "\n");
    info << "wrote " << out.string() << " (" << queries.size() << " queries, L = "
         << format_double(model.lipschitz) << ")\n";
}

} // namespace clidetail

/// Runs a parsed command. Returns 0 on success, 2 for configuration/schema
/// problems, 1 for runtime failures; failures emit a one-line JSON error
/// record on `err`.
inline int dispatch(const Command& cmd, std::ostream& info = std::cout,
                    std::ostream& err = std::cerr) {
    const auto fail = [&](const char* kind, const std::string& message, int code) {
        err << nlohmann::json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
        return code;
    };
    try {
        if (cmd.subcommand == "rate-study")
            clidetail::run_rate_study(cmd, info);
        else if (cmd.subcommand == "lacki-study")
            clidetail::run_lacki_study(cmd, info);
        else if (cmd.subcommand == "pendulum")
            clidetail::run_pendulum(cmd, info);
        else if (cmd.subcommand == "eta-check")
            clidetail::run_eta_check(cmd, info);
        else if (cmd.subcommand == "fit")
            clidetail::run_fit(cmd, info);
        else if (cmd.subcommand == "predict")
            clidetail::run_predict(cmd, info);
        else
            return fail("config", "unknown subcommand '" + cmd.subcommand + "'", 2);
        return 0;
    } catch (const config_error& e) {
        return fail("config", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
}

} // namespace lipint

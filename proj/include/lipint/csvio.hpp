#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lipint/control.hpp"
#include "lipint/errors.hpp"
#include "lipint/format.hpp"
#include "lipint/noise.hpp"
#include "lipint/rates.hpp"
#include "lipint/study.hpp"

namespace lipint {

namespace detail {

inline std::vector<std::string> csv_lines(const std::string& text, const std::string& header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw input_error("CSV: empty document");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw input_error("CSV: expected header '" + header + "', got '" + line + "'");
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> csv_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace detail

// --- convergence / LACKI studies ------------------------------------------

inline std::string study_detail_csv(const StudyResult& result) {
    std::string out = "n,rep,sup_error\n";
    for (const auto& row : result.rows)
        for (std::size_t r = 0; r < row.errors.size(); ++r)
            out += std::to_string(row.n) + "," + std::to_string(r) + "," +
                   format_double(row.errors[r]) + "\n";
    return out;
}

inline std::string study_summary_csv(const StudyResult& result,
                                     const std::optional<RateSpec>& rate) {
    std::string out = "n,mean,std,theoretical_rate\n";
    const double exponent = rate ? rate_exponent(*rate) : 0.0;
    for (const auto& row : result.rows) {
        out += std::to_string(row.n) + "," + format_double(row.mean) + "," +
               format_double(row.stddev) + ",";
        if (rate && row.n >= 2)
            out += format_double(TheoreticalRate{exponent}(static_cast<double>(row.n)));
        out += "\n";
    }
    return out;
}

/// Rebuilds a StudyResult from its two CSV documents; exact inverse of the
/// writers above.
inline StudyResult parse_study_csv(const std::string& detail, const std::string& summary) {
    StudyResult result;
    for (const auto& line : detail::csv_lines(summary, "n,mean,std,theoretical_rate")) {
        const auto cells = detail::csv_cells(line);
        if (cells.size() != 4) throw input_error("study summary CSV: bad row '" + line + "'");
        StudyRow row;
        row.n = static_cast<std::size_t>(std::stoull(cells[0]));
        row.mean = parse_double(cells[1]);
        row.stddev = parse_double(cells[2]);
        result.rows.push_back(std::move(row));
    }
    for (const auto& line : detail::csv_lines(detail, "n,rep,sup_error")) {
        const auto cells = detail::csv_cells(line);
        if (cells.size() != 3) throw input_error("study detail CSV: bad row '" + line + "'");
        const auto n = static_cast<std::size_t>(std::stoull(cells[0]));
        bool found = false;
        for (auto& row : result.rows)
            if (row.n == n) {
                row.errors.push_back(parse_double(cells[2]));
                found = true;
                break;
            }
        if (!found) throw input_error("study detail CSV: n = " + cells[0] + " not in summary");
    }
    return result;
}

inline std::string lacki_detail_csv(const LackiStudyResult& result) {
    std::string out = "n,rep,l_estimate,abs_err\n";
    for (const auto& row : result.rows)
        for (std::size_t r = 0; r < row.estimates.size(); ++r)
            out += std::to_string(row.n) + "," + std::to_string(r) + "," +
                   format_double(row.estimates[r]) + "," +
                   format_double(std::abs(row.estimates[r] - result.target_lipschitz)) + "\n";
    return out;
}

inline std::string lacki_summary_csv(const LackiStudyResult& result) {
    std::string out = "n,mean_l,std_l,mean_abs_err\n";
    for (const auto& row : result.rows)
        out += std::to_string(row.n) + "," + format_double(row.mean_l) + "," +
               format_double(row.stddev_l) + "," + format_double(row.mean_abs_err) + "\n";
    return out;
}

// --- pendulum traces --------------------------------------------------------

inline std::string trace_csv(const std::vector<TrackingTrace>& traces) {
    std::string out = "rep,step,q,qdot,u,zeta1,zeta2,err_norm,d_model\n";
    for (std::size_t rep = 0; rep < traces.size(); ++rep)
        for (const auto& s : traces[rep].steps) {
            out += std::to_string(rep) + "," + std::to_string(s.step) + "," +
                   format_double(s.state.q) + "," + format_double(s.state.q_dot) + "," +
                   format_double(s.u) + "," + format_double(s.zeta1) + "," +
                   format_double(s.zeta2) + "," + format_double(s.err_norm) + "," +
                   format_double(s.d_model) + "\n";
        }
    return out;
}

inline std::string trace_summary_csv(const MonteCarloResult& result) {
    std::string out = "step,mean_err,std_err\n";
    for (std::size_t i = 0; i < result.mean_err.size(); ++i)
        out += std::to_string(i) + "," + format_double(result.mean_err[i]) + "," +
               format_double(result.std_err[i]) + "\n";
    return out;
}

// --- eta check --------------------------------------------------------------

inline std::string eta_check_csv(const EtaCheckReport& report) {
    std::string out = "epsilon,upper_freq,lower_freq,required,margin,pass\n";
    for (const auto& row : report.rows)
        out += format_double(row.epsilon) + "," + format_double(row.upper_freq) + "," +
               format_double(row.lower_freq) + "," + format_double(row.required) + "," +
               format_double(row.margin) + "," + (row.pass ? "1" : "0") + "\n";
    return out;
}

} // namespace lipint

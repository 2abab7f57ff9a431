#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "lipint/control.hpp"
#include "lipint/errors.hpp"
#include "lipint/rates.hpp"
#include "lipint/study.hpp"

namespace lipint {

// Static line plots of study outputs. Pure functions of their inputs with
// fixed number formatting, so identical inputs yield byte-identical documents.

namespace svgdetail {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMargin = 56;

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct Scale {
    double lo, hi;
    double min_px, max_px;
    double operator()(double v) const {
        return min_px + (v - lo) / (hi - lo) * (max_px - min_px);
    }
};

inline std::string polyline(const std::vector<std::pair<double, double>>& pts,
                            const std::string& style) {
    std::string out = "<polyline fill=\"none\" " + style + " points=\"";
    for (const auto& [x, y] : pts) out += num(x) + "," + num(y) + " ";
    out += "\"/>\n";
    return out;
}

inline std::string header(const std::string& title) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
           "<text x=\"" + std::to_string(kWidth / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           title + "</text>\n" +
           "<rect x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kMargin) +
           "\" width=\"" + std::to_string(kWidth - 2 * kMargin) + "\" height=\"" +
           std::to_string(kHeight - 2 * kMargin) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

inline std::string axis_label(double x, double y, const std::string& text,
                              const std::string& anchor) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + text + "</text>\n";
}

} // namespace svgdetail

/// Log-log plot of mean sup error against n, with the theoretical rate
/// anchored at the first sample size overlaid when a RateSpec is given.
inline std::string render_study_svg(const StudyResult& result,
                                    const std::optional<RateSpec>& rate,
                                    const std::string& title = "sup-norm error vs n") {
    using namespace svgdetail;
    if (result.rows.empty()) throw input_error("render_study_svg: empty result");
    for (const auto& row : result.rows)
        if (!(row.mean > 0.0) || row.n < 2)
            throw input_error("render_study_svg: needs positive means and n >= 2");

    std::vector<std::pair<double, double>> emp;
    for (const auto& row : result.rows)
        emp.emplace_back(std::log10(static_cast<double>(row.n)), std::log10(row.mean));

    std::vector<std::pair<double, double>> theo;
    if (rate) {
        const auto fn = theoretical_rate(*rate);
        const double anchor = result.rows.front().mean /
                              fn(static_cast<double>(result.rows.front().n));
        for (const auto& row : result.rows)
            theo.emplace_back(std::log10(static_cast<double>(row.n)),
                              std::log10(anchor * fn(static_cast<double>(row.n))));
    }

    double xlo = emp.front().first, xhi = emp.back().first;
    double ylo = emp.front().second, yhi = emp.front().second;
    for (const auto& series : {emp, theo})
        for (const auto& [x, y] : series) {
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (yhi == ylo) yhi = ylo + 1.0;
    const Scale sx{xlo, xhi, double(kMargin), double(kWidth - kMargin)};
    const Scale sy{ylo, yhi, double(kHeight - kMargin), double(kMargin)};   // y grows upward

    const auto map = [&](const std::vector<std::pair<double, double>>& pts) {
        std::vector<std::pair<double, double>> out;
        for (const auto& [x, y] : pts) out.emplace_back(sx(x), sy(y));
        return out;
    };

    std::string svg = header(title);
    svg += axis_label(kMargin, kHeight - kMargin + 16, "log10 n = " + num(xlo), "start");
    svg += axis_label(kWidth - kMargin, kHeight - kMargin + 16, num(xhi), "end");
    svg += axis_label(kMargin - 6, kHeight - kMargin, "log10 err = " + num(ylo), "end");
    svg += axis_label(kMargin - 6, kMargin + 4, num(yhi), "end");
    svg += polyline(map(emp), "stroke=\"#1f66ad\" stroke-width=\"2\"");
    if (!theo.empty())
        svg += polyline(map(theo), "stroke=\"#c03a2b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
    svg += "</svg>\n";
    return svg;
}

/// Tracking-error trajectories: one faint line per repetition plus the dashed
/// empirical mean.
inline std::string render_trajectory_svg(const MonteCarloResult& result,
                                         const std::string& title = "tracking error vs step") {
    using namespace svgdetail;
    if (result.mean_err.empty() || result.traces.empty())
        throw input_error("render_trajectory_svg: empty result");

    const double steps = static_cast<double>(result.mean_err.size() - 1);
    double yhi = 0.0;
    for (const auto& t : result.traces)
        for (const auto& s : t.steps) yhi = std::max(yhi, s.err_norm);
    if (yhi == 0.0) yhi = 1.0;
    const Scale sx{0.0, std::max(steps, 1.0), double(kMargin), double(kWidth - kMargin)};
    const Scale sy{0.0, yhi, double(kHeight - kMargin), double(kMargin)};

    std::string svg = header(title);
    svg += axis_label(kMargin, kHeight - kMargin + 16, "step 0", "start");
    svg += axis_label(kWidth - kMargin, kHeight - kMargin + 16, num(steps), "end");
    svg += axis_label(kMargin - 6, kHeight - kMargin, "0", "end");
    svg += axis_label(kMargin - 6, kMargin + 4, num(yhi), "end");
    for (const auto& t : result.traces) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& s : t.steps)
            pts.emplace_back(sx(static_cast<double>(s.step)), sy(s.err_norm));
        svg += polyline(pts, "stroke=\"#7fb2d9\" stroke-width=\"0.8\" opacity=\"0.55\"");
    }
    std::vector<std::pair<double, double>> mean;
    for (std::size_t i = 0; i < result.mean_err.size(); ++i)
        mean.emplace_back(sx(static_cast<double>(i)), sy(result.mean_err[i]));
    svg += polyline(mean, "stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"7 4\"");
    svg += "</svg>\n";
    return svg;
}

} // namespace lipint

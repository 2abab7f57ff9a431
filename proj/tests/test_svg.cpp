#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "lipint/svg.hpp"

using namespace lipint;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace

TEST_CASE("study svg: single series renders one polyline with one vertex per point") {
    StudyResult r;
    r.rows.push_back({10, 0.5, 0.0, {0.5}});
    r.rows.push_back({100, 0.2, 0.0, {0.2}});
    r.rows.push_back({1000, 0.1, 0.0, {0.1}});

    const std::string svg = render_study_svg(r, std::nullopt);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "<polyline") == 1);

    // 3 vertices on the data polyline
    const std::size_t start = svg.find("points=\"");
    const std::size_t end = svg.find('"', start + 8);
    const std::string pts = svg.substr(start + 8, end - start - 8);
    CHECK(count_occurrences(pts, ",") == 3);

    CHECK(render_study_svg(r, std::nullopt) == svg);   // deterministic
    CHECK_THROWS_AS(render_study_svg(StudyResult{}, std::nullopt), input_error);
}

TEST_CASE("study svg: rate overlay adds an anchored dashed line") {
    StudyResult r;
    r.rows.push_back({128, 0.4, 0.0, {0.4}});
    r.rows.push_back({512, 0.2, 0.0, {0.2}});
    r.rows.push_back({2048, 0.1, 0.0, {0.1}});
    const std::string svg = render_study_svg(r, RateSpec{1, 1.0, 1.0});
    CHECK(count_occurrences(svg, "<polyline") == 2);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("trajectory svg: per-repetition lines plus dashed mean") {
    ControlConfig c;
    c.steps = 20;
    c.repetitions = 4;
    const MonteCarloResult r = run_monte_carlo(c);
    const std::string svg = render_trajectory_svg(r);
    // 4 repetition lines + 1 mean line
    CHECK(count_occurrences(svg, "<polyline") == 5);
    CHECK(count_occurrences(svg, "stroke-dasharray") == 1);
    CHECK(count_occurrences(svg, "opacity") == 4);
    CHECK(render_trajectory_svg(r) == svg);
    CHECK_THROWS_AS(render_trajectory_svg(MonteCarloResult{}), input_error);
}

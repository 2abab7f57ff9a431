#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lipint/csvio.hpp"
#include "lipint/study.hpp"

using namespace lipint;
using Catch::Approx;

namespace {

ConvergenceStudyConfig small_study() {
    ConvergenceStudyConfig c;
    c.target = "ripple";
    c.noise = make_uniform(0.5);
    c.sample_sizes = {64, 256, 1024};
    c.repetitions = 3;
    c.grid_points = 400;
    c.seed = 7;
    return c;
}

} // namespace

TEST_CASE("study config validation and defaults") {
    ConvergenceStudyConfig c = small_study();
    CHECK(c.effective_lipschitz() == Approx(1.1 * find_target("ripple").best_lipschitz));
    c.lipschitz = 5.0;
    CHECK(c.effective_lipschitz() == 5.0);
    CHECK(c.effective_lambda() == Approx(1.0));   // 2 e_bar

    c = small_study();
    c.sample_sizes = {64, 64};
    CHECK_THROWS_AS(c.validate(), input_error);
    c = small_study();
    c.repetitions = 0;
    CHECK_THROWS_AS(c.validate(), input_error);
    c = small_study();
    c.grid_points = 10;
    CHECK_THROWS_AS(c.validate(), input_error);
    c = small_study();
    c.target = "nope";
    CHECK_THROWS_AS(c.validate(), input_error);
}

TEST_CASE("uniform grid") {
    const auto& t1 = find_target("ripple");
    const auto g1 = uniform_grid(t1, 101);
    REQUIRE(g1.size() == 101);
    CHECK(g1.front()[0] == 0.0);
    CHECK(g1.back()[0] == 2.0);
    CHECK(g1[50][0] == Approx(1.0));

    const auto& t2 = find_target("wave2d");
    const auto g2 = uniform_grid(t2, 100);
    CHECK(g2.size() == 100);   // 10 x 10
    CHECK(g2.front() == std::vector<double>{0.0, 0.0});
    CHECK(g2.back() == std::vector<double>{2.0, 2.0});
}

TEST_CASE("convergence study is deterministic and error decreases") {
    const auto config = small_study();
    const StudyResult a = run_convergence_study(config);
    const StudyResult b = run_convergence_study(config);
    CHECK(a == b);   // identical seed, identical result

    REQUIRE(a.rows.size() == 3);
    for (const auto& row : a.rows) {
        CHECK(row.errors.size() == 3);
        CHECK(row.mean > 0.0);
    }
    // desk-scale sanity: more data helps on this span
    CHECK(a.rows.back().mean < a.rows.front().mean);

    auto single = config;
    single.repetitions = 1;
    const StudyResult c = run_convergence_study(single);
    CHECK(c.rows[0].errors.size() == 1);
    CHECK(c.rows[0].stddev == 0.0);
    CHECK(c.rows[0].mean == c.rows[0].errors[0]);
}

TEST_CASE("zero-noise run converges within the covering bound") {
    ConvergenceStudyConfig c = small_study();
    c.noise = make_noiseless();
    c.sample_sizes = {4096};
    c.repetitions = 2;
    const StudyResult r = run_convergence_study(c);
    // noiseless sup error is at most L * (largest sample gap); with 4096
    // uniform draws on [0, 2] the max gap concentrates near 2 log(n)/n
    const double bound = c.effective_lipschitz() * 2.0 * 12.0 * std::log(4096.0) / 4096.0;
    CHECK(r.rows[0].mean < bound);

    CHECK(!c.rate_spec().has_value());
    CHECK_THROWS_AS(c.effective_lambda(), config_error);
}

TEST_CASE("lacki study: nested streams, nondecreasing estimates") {
    ConvergenceStudyConfig c;
    c.target = "sine";
    c.noise = make_uniform(0.1);
    c.lambda = 0.2;
    c.sample_sizes = {200, 400, 800};
    c.repetitions = 4;
    c.seed = 3;

    const LackiStudyResult r = run_lacki_study(c);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.target_lipschitz == 1.0);
    for (std::size_t rep = 0; rep < 4; ++rep) {
        CHECK(r.rows[0].estimates[rep] <= r.rows[1].estimates[rep]);
        CHECK(r.rows[1].estimates[rep] <= r.rows[2].estimates[rep]);
        // underestimation with lambda = 2 e_bar
        CHECK(r.rows[2].estimates[rep] <= 1.0 + 1e-12);
    }

    const LackiStudyResult again = run_lacki_study(c);
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        CHECK(again.rows[i].estimates == r.rows[i].estimates);
}

TEST_CASE("study csv round trip") {
    const StudyResult r = run_convergence_study(small_study());
    const auto rate = small_study().rate_spec();
    const StudyResult back = parse_study_csv(study_detail_csv(r), study_summary_csv(r, rate));
    CHECK(back == r);

    // theoretical_rate column is empty without a rate spec
    const std::string summary = study_summary_csv(r, std::nullopt);
    CHECK(summary.find(",\n") != std::string::npos);
    CHECK(parse_study_csv(study_detail_csv(r), summary) == r);

    CHECK_THROWS_AS(parse_study_csv("bogus", summary), input_error);
}

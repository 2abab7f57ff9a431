#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <vector>

#include "lipint/sample_set.hpp"

using namespace lipint;

TEST_CASE("add_sample grows without disturbing prior entries") {
    SampleSet set(1);
    CHECK(set.empty());
    set.add({0.0}, 1.0);
    CHECK(set.size() == 1);

    // duplicate inputs with different outputs are both retained
    set.add({0.0}, 2.0);
    CHECK(set.size() == 2);
    CHECK(set.output(0) == 1.0);
    CHECK(set.output(1) == 2.0);
    CHECK(set.input(1)[0] == 0.0);

    CHECK_THROWS_AS(set.add(std::vector<double>{1.0, 2.0}, 0.0), input_error);
    CHECK(set.size() == 2);
}

TEST_CASE("sample set csv round trip") {
    SampleSet set(2);
    set.add({0.5, -1.25}, 3.0);
    set.add({1e-9, 2.0 / 3.0}, -0.1);
    set.add({123456.789, 0.0}, 1.0 / 3.0);

    const std::string csv = set.to_csv();
    CHECK(csv.substr(0, 8) == "x0,x1,y\n");
    const SampleSet back = SampleSet::from_csv(csv);
    CHECK(back == set);

    const auto path = std::filesystem::temp_directory_path() / "lipint_test_samples.csv";
    set.save_csv(path);
    CHECK(SampleSet::load_csv(path) == set);
    std::filesystem::remove(path);
}

TEST_CASE("sample set csv rejects malformed documents") {
    CHECK_THROWS_AS(SampleSet::from_csv(""), input_error);
    CHECK_THROWS_AS(SampleSet::from_csv("a,b\n1,2\n"), input_error);
    CHECK_THROWS_AS(SampleSet::from_csv("x0,y\n1\n"), input_error);
    CHECK_THROWS_AS(SampleSet::from_csv("x0,y\n1,abc\n"), input_error);
    CHECK_NOTHROW(SampleSet::from_csv("x0,y\n1,2\n\n"));
}

TEST_CASE("multi-output component extraction") {
    MultiOutputSampleSet set(1, 2);
    set.add(std::vector<double>{0.0}, std::vector<double>{1.0, -1.0});
    set.add(std::vector<double>{1.0}, std::vector<double>{2.0, -3.0});
    CHECK(set.size() == 2);

    const SampleSet c0 = set.component(0);
    const SampleSet c1 = set.component(1);
    CHECK(c0.output(1) == 2.0);
    CHECK(c1.output(1) == -3.0);
    CHECK(c0.input(1)[0] == 1.0);
    CHECK_THROWS_AS(set.component(2), input_error);
    CHECK_THROWS_AS(set.add(std::vector<double>{0.0}, std::vector<double>{1.0}), input_error);
}

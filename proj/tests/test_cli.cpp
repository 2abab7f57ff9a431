#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lipint/cli.hpp"

using namespace lipint;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lipint_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

int run(Command cmd, std::string* info_out = nullptr, std::string* err_out = nullptr) {
    std::ostringstream info, err;
    const int code = dispatch(cmd, info, err);
    if (info_out) *info_out = info.str();
    if (err_out) *err_out = err.str();
    return code;
}

} // namespace

TEST_CASE("unknown subcommand and bad configs exit 2 with a json error record") {
    std::string err;
    Command cmd;
    cmd.subcommand = "explode";
    CHECK(run(cmd, nullptr, &err) == 2);
    CHECK(err.find("\"kind\":\"config\"") != std::string::npos);

    TempDir dir;
    write(dir.file("bad.json"), "{ not json");
    cmd = Command{};
    cmd.subcommand = "rate-study";
    cmd.config_path = dir.file("bad.json");
    CHECK(run(cmd, nullptr, &err) == 2);

    write(dir.file("unknown_key.json"), R"({"repetitionz": 3})");
    cmd.config_path = dir.file("unknown_key.json");
    CHECK(run(cmd, nullptr, &err) == 2);
    CHECK(err.find("repetitionz") != std::string::npos);

    write(dir.file("bad_noise.json"), R"({"noise": {"kind": "laplace", "e_bar": 1}})");
    cmd.config_path = dir.file("bad_noise.json");
    CHECK(run(cmd, nullptr, &err) == 2);

    // schema-valid config that fails at runtime (missing dataset) exits 1
    write(dir.file("fit.json"), R"({"data": "/nonexistent/data.csv", "lambda": 0.5})");
    cmd = Command{};
    cmd.subcommand = "fit";
    cmd.config_path = dir.file("fit.json");
    cmd.out_path = dir.file("fit.csv");
    CHECK(run(cmd, nullptr, &err) == 1);
    CHECK(err.find("\"kind\":\"runtime\"") != std::string::npos);
}

TEST_CASE("rate-study: files written atomically, reruns byte-identical") {
    TempDir dir;
    write(dir.file("study.json"), R"({
        "target": "ripple",
        "noise": {"kind": "uniform", "e_bar": 0.5},
        "sample_sizes": [64, 128, 256],
        "repetitions": 2,
        "grid_points": 200,
        "seed": 11
    })");

    Command cmd;
    cmd.subcommand = "rate-study";
    cmd.config_path = dir.file("study.json");
    cmd.out_path = dir.file("out.csv");
    cmd.svg_path = dir.file("out.svg");
    std::string info;
    REQUIRE(run(cmd, &info) == 0);
    CHECK(info.find("fitted log-log slope") != std::string::npos);

    const std::string summary1 = read_file(dir.file("out.csv"));
    const std::string detail1 = read_file(dir.file("out.detail.csv"));
    const std::string svg1 = read_file(dir.file("out.svg"));
    CHECK(summary1.rfind("n,mean,std,theoretical_rate\n", 0) == 0);
    CHECK(detail1.rfind("n,rep,sup_error\n", 0) == 0);
    CHECK(svg1.find("<svg") != std::string::npos);
    CHECK(!fs::exists(dir.file("out.csv.tmp")));

    // round trip back into an identical in-memory result
    const StudyResult parsed = parse_study_csv(detail1, summary1);
    const auto config = cfg::study_from_json(cfg::load_json_file(dir.file("study.json")));
    CHECK(parsed == run_convergence_study(config));

    REQUIRE(run(cmd) == 0);
    CHECK(read_file(dir.file("out.csv")) == summary1);
    CHECK(read_file(dir.file("out.detail.csv")) == detail1);
    CHECK(read_file(dir.file("out.svg")) == svg1);

    // seed override changes the bytes
    cmd.seed = 12;
    REQUIRE(run(cmd) == 0);
    CHECK(read_file(dir.file("out.csv")) != summary1);

    // json format
    cmd.seed.reset();
    cmd.format = OutputFormat::json;
    cmd.out_path = dir.file("out.json");
    REQUIRE(run(cmd) == 0);
    const auto doc = nlohmann::json::parse(read_file(dir.file("out.json")));
    REQUIRE(doc.contains("summary"));
    CHECK(doc["summary"].size() == 3);
    CHECK(doc["detail"].size() == 6);
}

TEST_CASE("lacki-study and pendulum run end to end") {
    TempDir dir;
    write(dir.file("lacki.json"), R"({
        "target": "sine",
        "noise": {"kind": "uniform", "e_bar": 0.1},
        "lambda": 0.2,
        "sample_sizes": [100, 200],
        "repetitions": 2,
        "seed": 4
    })");
    Command cmd;
    cmd.subcommand = "lacki-study";
    cmd.config_path = dir.file("lacki.json");
    cmd.out_path = dir.file("lacki.csv");
    REQUIRE(run(cmd) == 0);
    CHECK(read_file(dir.file("lacki.csv")).rfind("n,mean_l,std_l,mean_abs_err\n", 0) == 0);
    CHECK(read_file(dir.file("lacki.detail.csv")).rfind("n,rep,l_estimate,abs_err\n", 0) == 0);
    const std::string first = read_file(dir.file("lacki.csv"));
    REQUIRE(run(cmd) == 0);
    CHECK(read_file(dir.file("lacki.csv")) == first);

    write(dir.file("pend.json"), R"({"steps": 40, "repetitions": 2, "seed": 3})");
    cmd = Command{};
    cmd.subcommand = "pendulum";
    cmd.config_path = dir.file("pend.json");
    cmd.out_path = dir.file("pend.csv");
    cmd.svg_path = dir.file("pend.svg");
    REQUIRE(run(cmd) == 0);
    const std::string summary = read_file(dir.file("pend.csv"));
    CHECK(summary.rfind("step,mean_err,std_err\n", 0) == 0);
    CHECK(read_file(dir.file("pend.trace.csv"))
              .rfind("rep,step,q,qdot,u,zeta1,zeta2,err_norm,d_model\n", 0) == 0);
    REQUIRE(run(cmd) == 0);
    CHECK(read_file(dir.file("pend.csv")) == summary);

    // defaults + overrides, no config file at all
    cmd = Command{};
    cmd.subcommand = "pendulum";
    cmd.out_path = dir.file("pend_default.csv");
    cmd.repetitions = 2;
    cmd.steps = 30;
    cmd.seed = 1;
    REQUIRE(run(cmd) == 0);
    std::istringstream in(read_file(dir.file("pend_default.csv")));
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1 + 31);   // header + steps + 1
}

TEST_CASE("eta-check writes a report and flags violations") {
    TempDir dir;
    Command cmd;
    cmd.subcommand = "eta-check";
    cmd.out_path = dir.file("eta.csv");
    write(dir.file("eta.json"), R"({
        "noise": {"kind": "power_boundary", "e_bar": 0.5, "eta": 1.0},
        "n_draws": 200000,
        "seed": 2,
        "rate": {"d": 1, "alpha": 1.0}
    })");
    cmd.config_path = dir.file("eta.json");
    std::string info;
    REQUIRE(run(cmd, &info) == 0);
    CHECK(read_file(dir.file("eta.csv"))
              .rfind("epsilon,upper_freq,lower_freq,required,margin,pass\n", 0) == 0);
    CHECK(info.find("eta_condition: li_faster") != std::string::npos);

    // eta = 3 draws claimed to have an eta = 1 tail: check fails, exit 1
    write(dir.file("eta_bad.json"), R"({
        "noise": {"kind": "power_boundary", "e_bar": 0.5, "eta": 3.0},
        "claimed": {"gamma": 1.0, "eta": 1.0},
        "n_draws": 200000,
        "seed": 2
    })");
    cmd.config_path = dir.file("eta_bad.json");
    CHECK(run(cmd, &info) == 1);
}

TEST_CASE("fit and predict round trip through csv datasets") {
    TempDir dir;
    SampleSet data(1);
    data.add({0.0}, 0.0);
    data.add({1.0}, 3.0);
    data.add({3.0}, 3.0);
    data.save_csv(dir.file("data.csv"));

    write(dir.file("fit.json"),
          R"({"data": ")" + dir.file("data.csv") + R"(", "lambda": 1.0})");
    Command cmd;
    cmd.subcommand = "fit";
    cmd.config_path = dir.file("fit.json");
    cmd.out_path = dir.file("model.json");
    cmd.format = OutputFormat::json;
    REQUIRE(run(cmd) == 0);
    const auto model = nlohmann::json::parse(read_file(dir.file("model.json")));
    CHECK(model["count"] == 3);
    CHECK(model["lipschitz_estimate"].get<double>() == Catch::Approx(2.0));

    write(dir.file("pred.json"), R"({
        "data": ")" + dir.file("data.csv") + R"(",
        "lipschitz": 1.0,
        "noise_bound": 0.5,
        "grid": {"points": 5}
    })");
    cmd = Command{};
    cmd.subcommand = "predict";
    cmd.config_path = dir.file("pred.json");
    cmd.out_path = dir.file("pred.csv");
    REQUIRE(run(cmd) == 0);
    const std::string pred = read_file(dir.file("pred.csv"));
    CHECK(pred.rfind("x0,prediction,lower,upper\n", 0) == 0);

    // single-sample dataset: constant prediction column
    SampleSet one(1);
    one.add({0.0}, 7.0);
    one.save_csv(dir.file("one.csv"));
    write(dir.file("pred_one.json"), R"({
        "data": ")" + dir.file("one.csv") + R"(",
        "lipschitz": 2.0,
        "queries": ")" + dir.file("data.csv") + R"("
    })");
    cmd.config_path = dir.file("pred_one.json");
    cmd.out_path = dir.file("pred_one.csv");
    REQUIRE(run(cmd) == 0);
    std::istringstream in(read_file(dir.file("pred_one.csv")));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x0,prediction");
    while (std::getline(in, line))
        CHECK(line.substr(line.find(',') + 1) == "7");

    // missing config is a config error
    cmd = Command{};
    cmd.subcommand = "predict";
    CHECK(run(cmd) == 2);
}

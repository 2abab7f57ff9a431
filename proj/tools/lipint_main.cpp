// Command-line front end: Lipschitz interpolation fits and predictions,
// convergence-rate and LACKI studies, noise tail checks and the closed-loop
// pendulum experiment.

#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "lipint/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz interpolation toolkit"};
    app.require_subcommand(1);

    lipint::Command cmd;
    std::string format = "csv";

    const auto add_common = [&](CLI::App* sub, bool with_seed = true) {
        sub->add_option_function<std::string>(
               "--config", [&](const std::string& v) { cmd.config_path = v; },
               "JSON config file (defaults documented in the README)");
        sub->add_option_function<std::string>(
               "--out", [&](const std::string& v) { cmd.out_path = v; },
               "output path (default <subcommand>.csv/.json)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_seed)
            sub->add_option_function<std::uint64_t>(
                   "--seed", [&](std::uint64_t v) { cmd.seed = v; }, "seed override");
    };
    const auto add_svg = [&](CLI::App* sub) {
        sub->add_option_function<std::string>(
               "--svg", [&](const std::string& v) { cmd.svg_path = v; }, "also render an SVG plot");
    };
    const auto add_reps = [&](CLI::App* sub) {
        sub->add_option_function<int>(
               "--reps", [&](int v) { cmd.repetitions = v; }, "repetitions override");
    };

    CLI::App* fit = app.add_subcommand("fit", "LACKI Lipschitz-constant estimate from a CSV dataset");
    add_common(fit, false);

    CLI::App* predict = app.add_subcommand("predict", "evaluate the interpolation predictor and bounds");
    add_common(predict, false);

    CLI::App* rate = app.add_subcommand("rate-study", "Monte-Carlo sup-error convergence study");
    add_common(rate);
    add_svg(rate);
    add_reps(rate);

    CLI::App* lacki = app.add_subcommand("lacki-study", "LACKI constant-estimation study");
    add_common(lacki);
    add_svg(lacki);
    add_reps(lacki);

    CLI::App* pend = app.add_subcommand("pendulum", "closed-loop online-learning pendulum experiment");
    add_common(pend);
    add_svg(pend);
    add_reps(pend);
    pend->add_option_function<int>(
            "--steps", [&](int v) { cmd.steps = v; }, "steps override");

    CLI::App* eta = app.add_subcommand("eta-check", "empirical noise boundary-mass verification");
    add_common(eta);

    CLI11_PARSE(app, argc, argv);

    cmd.subcommand = app.get_subcommands().front()->get_name();
    cmd.format = format == "json" ? lipint::OutputFormat::json : lipint::OutputFormat::csv;
    return lipint::dispatch(cmd);
}

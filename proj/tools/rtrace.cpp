#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rtrace/cli.hpp"

int main(int argc, char** argv) {
    using rtrace::cli::Command;
    rtrace::cli::CommandConfig cfg;

    CLI::App app{"Reidemeister trace calculator for wedges of circles and tori"};
    app.require_subcommand(1);
    const std::map<std::string, std::pair<Command, std::string>> commands = {
        {"wedge", {Command::Wedge, "chain-level trace of a wedge-of-circles self-map"}},
        {"torus", {Command::Torus, "local trace of an affine torus self-map"}},
        {"coincidence", {Command::Coincidence, "local trace of a pair of affine torus maps"}},
        {"classes", {Command::Classes, "enumerate or compare Reidemeister classes"}},
        {"verify", {Command::Verify, "run the axiom harness on random torus instances"}},
    };
    for (const auto& [name, entry] : commands) {
        auto* sub = app.add_subcommand(name, entry.second);
        const Command c = entry.first;
        sub->callback([&cfg, c] { cfg.command = c; });
        if (c != Command::Verify) {
            sub->add_option("--input,-i", cfg.input_path, "instance file ('-' for stdin)");
            sub->add_option("--inline", cfg.inline_text, "instance text given inline");
        }
        sub->add_option("--budget", cfg.budget, "free-group search budget (word length)")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "harness seed")->capture_default_str();
        sub->add_option("--trials", cfg.trials, "number of random instances")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rtrace::cli::kParseError;
    }

    const auto result = rtrace::cli::run(cfg);
    const bool report = result.status == rtrace::cli::kOk ||
                        result.status == rtrace::cli::kAxiomFailure;
    (report ? std::cout : std::cerr) << result.output;
    return result.status;
}

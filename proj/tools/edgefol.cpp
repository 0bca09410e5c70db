#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include <edgefol/command.hpp>

int main(int argc, char** argv)
{
    using namespace edgefol;

    CLI::App app{"Classify and render foliations on a cuspidal edge"};
    app.require_subcommand(1);

    CommandConfig cfg;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());

    auto add_jet = [&](CLI::App* sub) {
        sub->add_option("--jet", cfg.jet_path, "jet file (JSON)")->required();
        sub->add_option("--foliation", cfg.foliation, "lc, asymptotic or characteristic")->capture_default_str();
    };
    auto add_trace = [&](CLI::App* sub) {
        sub->add_option("--box", cfg.box, "half-width of the domain box")->capture_default_str();
        sub->add_option("--step", cfg.step, "integration step")->capture_default_str();
        sub->add_option("--seeds", cfg.seeds, "seeds per side of the box")->capture_default_str();
        sub->add_option("--max-steps", cfg.max_steps, "step cap per direction")->capture_default_str();
        sub->add_option("--out", cfg.out, "output file")->required();
    };
    auto add_trials = [&](CLI::App* sub) {
        sub->add_option("--trials", cfg.trials, "number of sampled jets")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
        sub->add_option("--out", cfg.out, "also write the report to this file");
    };

    auto* classify = app.add_subcommand("classify", "classify the foliation at the origin");
    add_jet(classify);
    auto* trace = app.add_subcommand("trace", "trace the portrait to CSV");
    add_jet(trace);
    add_trace(trace);
    auto* render = app.add_subcommand("render", "render the portrait to SVG");
    add_jet(render);
    add_trace(render);
    render->add_flag("--surface", cfg.surface, "also write the surface view next to --out");
    auto* verify = app.add_subcommand("verify", "run the oracle suites");
    add_trials(verify);
    verify->add_option("--tol", cfg.tol, "tangency tolerance")->capture_default_str();
    auto* survey = app.add_subcommand("survey", "class frequencies over sampled jets");
    add_trials(survey);

    for (auto* sub : {classify, trace, render, verify, survey}) {
        sub->add_flag("--json", cfg.json, "machine-readable output and errors");
        sub->add_option("--workers", cfg.workers, "worker threads");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (auto [sub, c] : {std::pair{classify, Command::classify}, std::pair{trace, Command::trace},
                          std::pair{render, Command::render}, std::pair{verify, Command::verify},
                          std::pair{survey, Command::survey}})
        if (sub->parsed())
            cfg.command = c;

    Logger log;
    log.level = log_level_from(std::getenv("EDGEFOL_LOG"));
    return run_command(cfg, std::cout, log);
}

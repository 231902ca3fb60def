#include <CLI11.hpp>
#include <functional>
#include <iostream>

#include "edlab/errors.hpp"
#include "edlab/scenario.hpp"

namespace {

using Runner = edlab::scenario::RunOutcome (*)(const std::filesystem::path &,
                                               const edlab::scenario::RunOptions &);

struct Command {
    const char *name;
    const char *help;
    Runner run;
};

const Command kCommands[] = {
    {"maxent", "Maximum-entropy update of a prior under moment constraints",
     edlab::scenario::run_maxent},
    {"evolve", "Propagate a wave function and emit snapshots + diagnostics",
     edlab::scenario::run_evolve},
    {"sample", "Draw stochastic trajectories and compare against |psi|^2",
     edlab::scenario::run_sample},
    {"symmetry", "Cross-frame check of an extended Galilean transformation",
     edlab::scenario::run_symmetry},
    {"gauge-check", "Evolve a gauge pair and compare densities",
     edlab::scenario::run_gauge_check},
    {"measure", "Born probabilities, sampled outcomes and expectation values",
     edlab::scenario::run_measure},
    {"classical-limit", "Center-of-mass fluctuation scaling and phase-equation terms",
     edlab::scenario::run_classical_limit},
    {"uncertainty", "Momentum-variance split and uncertainty products for packets",
     edlab::scenario::run_uncertainty},
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entropic-dynamics laboratory"};
    app.require_subcommand(1);

    std::string config;
    edlab::scenario::RunOptions options;
    std::uint64_t seed = 0;
    bool seed_given = false;
    Runner chosen = nullptr;

    for (const Command &cmd : kCommands) {
        CLI::App *sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("config", config, "Scenario JSON file")->required();
        sub->add_option("--out", options.out_dir, "Output directory (default: .)");
        sub->add_option("--seed", seed, "Override the config seed");
        sub->add_flag("--quiet", options.quiet, "Suppress the summary on stdout");
        sub->callback([&, run = cmd.run, sub]() {
            chosen = run;
            seed_given = sub->count("--seed") > 0;
        });
    }

    CLI11_PARSE(app, argc, argv);

    if (seed_given) options.seed_override = seed;
    try {
        return chosen(config, options).exit_code;
    } catch (const edlab::InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << std::endl;
        return 2;
    } catch (const edlab::ValidationError &e) {
        std::cerr << "invalid input: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}

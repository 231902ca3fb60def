#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

namespace edlab::scenario {

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;
};

struct RunOutcome {
    /// 0: success (all declared checks passed); 1: a declared check
    /// failed; 2: the problem was infeasible/overconstrained.
    int exit_code = 0;
};

/// Each runner loads a strict-schema JSON config, executes the pipeline,
/// writes CSV artifacts plus summary.json into out_dir, and returns the
/// outcome. Validation problems throw ValidationError; infeasible
/// updating throws InfeasibleError or yields exit code 2.
RunOutcome run_maxent(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_evolve(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_sample(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_symmetry(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_gauge_check(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_measure(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_classical_limit(const std::filesystem::path &config, const RunOptions &opt);
RunOutcome run_uncertainty(const std::filesystem::path &config, const RunOptions &opt);

} // namespace edlab::scenario

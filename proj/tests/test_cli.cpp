#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("edlab-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string &args) {
    const std::string cmd = std::string(EDLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_file(const fs::path &p, const std::string &text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char *kEvolveConfig = R"({
  "version": 1,
  "grid": {"x_min": -12.8, "dx": 0.05, "n": 512},
  "initial": {"type": "gaussian", "x0": 0.0, "sigma0": 1.0, "k0": 0.0},
  "potential": "0",
  "evolution": {"dt": 0.001, "steps": 200, "checkpoint_every": 100},
  "checks": {"norm_drift_per_step": 1e-12}
})";

} // namespace

TEST_CASE("evolve writes snapshots and a summary") {
    TempDir tmp;
    write_file(tmp.path / "cfg.json", kEvolveConfig);
    const int code =
        run_cli("evolve " + (tmp.path / "cfg.json").string() + " --out " +
                (tmp.path / "out").string() + " --quiet");
    CHECK(code == 0);
    CHECK(fs::exists(tmp.path / "out" / "summary.json"));
    CHECK(fs::exists(tmp.path / "out" / "state_0000.csv"));
    CHECK(fs::exists(tmp.path / "out" / "state_0002.csv"));
    CHECK(fs::exists(tmp.path / "out" / "state_0002.meta.json"));

    json summary;
    std::ifstream(tmp.path / "out" / "summary.json") >> summary;
    CHECK(summary["passed"].get<bool>());
    CHECK(summary["checks"]["norm_drift_per_step"]["passed"].get<bool>());
}

TEST_CASE("unknown config keys exit with the validation code") {
    TempDir tmp;
    std::string cfg = kEvolveConfig;
    cfg.insert(cfg.rfind('}'), R"(, "tpyo": 1)");
    write_file(tmp.path / "cfg.json", cfg);
    const int code = run_cli("evolve " + (tmp.path / "cfg.json").string() + " --out " +
                             (tmp.path / "out").string() + " --quiet");
    CHECK(code == 3);
}

TEST_CASE("overconstrained updates exit with code 2") {
    TempDir tmp;
    write_file(tmp.path / "cfg.json", R"({
      "version": 1,
      "support": {"type": "discrete", "prior": [0.25, 0.25, 0.25, 0.25]},
      "constraints": [
        {"f": [0, 1, 2, 3], "target": 0.0},
        {"f": [0, 1, 2, 3], "target": 1.0}
      ]
    })");
    const int code = run_cli("maxent " + (tmp.path / "cfg.json").string() + " --out " +
                             (tmp.path / "out").string() + " --quiet");
    CHECK(code == 2);

    json summary;
    std::ifstream(tmp.path / "out" / "summary.json") >> summary;
    CHECK(summary["classification"].get<std::string>() == "overconstrained");
}

TEST_CASE("maxent solves the canonical two-state problem") {
    TempDir tmp;
    write_file(tmp.path / "cfg.json", R"({
      "version": 1,
      "support": {"type": "discrete", "prior": [0.5, 0.5]},
      "constraints": [{"f": [0.0, 1.0], "target": 0.3, "label": "energy"}]
    })");
    const int code = run_cli("maxent " + (tmp.path / "cfg.json").string() + " --out " +
                             (tmp.path / "out").string() + " --quiet");
    CHECK(code == 0);
    CHECK(fs::exists(tmp.path / "out" / "posterior.csv"));
}

TEST_CASE("sampling runs are reproducible and respond to --seed") {
    TempDir tmp;
    write_file(tmp.path / "cfg.json", R"({
      "version": 1,
      "grid": {"x_min": -20.0, "dx": 0.2, "n": 200},
      "initial": {"type": "gaussian", "x0": 0.0, "sigma0": 1.0, "k0": 0.0},
      "potential": "0",
      "evolution": {"dt": 0.01, "steps": 50, "checkpoint_every": 1},
      "sampler": {"n_traj": 500, "dt": 0.0025},
      "seed": 12
    })");
    const std::string cfg = (tmp.path / "cfg.json").string();
    CHECK(run_cli("sample " + cfg + " --out " + (tmp.path / "a").string() + " --quiet") == 0);
    CHECK(run_cli("sample " + cfg + " --out " + (tmp.path / "b").string() + " --quiet") == 0);
    CHECK(run_cli("sample " + cfg + " --out " + (tmp.path / "c").string() +
                  " --seed 99 --quiet") == 0);

    CHECK(slurp(tmp.path / "a" / "ensemble.csv") == slurp(tmp.path / "b" / "ensemble.csv"));
    CHECK(slurp(tmp.path / "a" / "ensemble.csv") != slurp(tmp.path / "c" / "ensemble.csv"));
}

TEST_CASE("snapshots round-trip through the CLI") {
    TempDir tmp;
    write_file(tmp.path / "cfg.json", kEvolveConfig);
    REQUIRE(run_cli("evolve " + (tmp.path / "cfg.json").string() + " --out " +
                    (tmp.path / "out").string() + " --quiet") == 0);

    // Feed the final state back in as the initial condition.
    write_file(tmp.path / "cfg2.json", std::string(R"({
      "version": 1,
      "grid": {"x_min": -12.8, "dx": 0.05, "n": 512},
      "initial": {"type": "snapshot", "path": ")") +
                                           (tmp.path / "out" / "state_0002.csv").string() +
                                           R"("},
      "potential": "0",
      "evolution": {"dt": 0.001, "steps": 100, "checkpoint_every": 100}
    })");
    CHECK(run_cli("evolve " + (tmp.path / "cfg2.json").string() + " --out " +
                  (tmp.path / "out2").string() + " --quiet") == 0);
}

TEST_CASE("measure emits an outcome table") {
    TempDir tmp;
    write_file(tmp.path / "cfg.json", R"({
      "version": 1,
      "grid": {"x_min": -10.0, "dx": 0.02, "n": 1001},
      "initial": {"type": "gaussian", "x0": 0.3, "sigma0": 0.8, "k0": 0.0},
      "device": {"preset": "harmonic", "n": 8, "omega": 1.0},
      "shots": 5000,
      "seed": 5,
      "checks": {"min_p_value": 0.001}
    })");
    const int code = run_cli("measure " + (tmp.path / "cfg.json").string() + " --out " +
                             (tmp.path / "out").string() + " --quiet");
    CHECK(code == 0);

    const std::string table = slurp(tmp.path / "out" / "outcomes.csv");
    CHECK(table.rfind("outcome,pointer_x,prob,count", 0) == 0);
}

TEST_CASE("missing arguments fail fast") {
    CHECK(run_cli("evolve") != 0);
    CHECK(run_cli("no-such-command x.json") != 0);
    CHECK(run_cli("evolve /nonexistent/path.json") == 3);
}

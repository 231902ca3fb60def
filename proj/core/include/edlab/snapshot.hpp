#pragma once

#include <filesystem>

#include "edlab/wavefunction.hpp"

namespace edlab::wave {

struct Snapshot {
    WaveFunction psi;
    UnitSystem units;
    double t = 0.0;
};

/// Sidecar path for a snapshot CSV ("state.csv" -> "state.meta.json").
std::filesystem::path snapshot_sidecar_path(const std::filesystem::path &csv_path);

/// Write `x,re,im` rows at 17 significant digits plus a JSON sidecar with
/// the grid, units, time and boundary. Save/load/save is byte-identical.
void save_snapshot(const std::filesystem::path &csv_path, const WaveFunction &psi,
                   const UnitSystem &units, double t);

/// Load and validate a snapshot: the sidecar must agree with the CSV and
/// the state must be normalized to 1e-10.
Snapshot load_snapshot(const std::filesystem::path &csv_path);

} // namespace edlab::wave

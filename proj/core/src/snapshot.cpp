#include "edlab/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace edlab::wave {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::filesystem::path snapshot_sidecar_path(const std::filesystem::path &csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta.json");
    return p;
}

void save_snapshot(const std::filesystem::path &csv_path, const WaveFunction &psi,
                   const UnitSystem &units, double t) {
    std::ofstream csv(csv_path);
    if (!csv) throw ValidationError("save_snapshot: cannot open " + csv_path.string());
    csv << "x,re,im\n";
    for (std::size_t i = 0; i < psi.size(); ++i)
        csv << fmt17(psi.grid.x(i)) << ',' << fmt17(psi.amp[i].real()) << ','
            << fmt17(psi.amp[i].imag()) << '\n';
    csv.close();

    nlohmann::ordered_json meta;
    meta["grid"] = {{"x_min", psi.grid.x_min}, {"dx", psi.grid.dx}, {"n", psi.grid.n}};
    meta["units"] = {{"hbar", units.hbar},
                     {"mass", units.mass},
                     {"osmotic_mass", units.osmotic_mass}};
    meta["t"] = t;
    meta["boundary"] = psi.boundary == Boundary::Periodic ? "periodic" : "dirichlet";

    std::ofstream side(snapshot_sidecar_path(csv_path));
    if (!side)
        throw ValidationError("save_snapshot: cannot open sidecar for " + csv_path.string());
    side << meta.dump(2) << '\n';
}

Snapshot load_snapshot(const std::filesystem::path &csv_path) {
    std::ifstream side(snapshot_sidecar_path(csv_path));
    if (!side)
        throw ValidationError("load_snapshot: missing sidecar " +
                              snapshot_sidecar_path(csv_path).string());
    nlohmann::json meta;
    try {
        side >> meta;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("load_snapshot: malformed sidecar: ") + e.what());
    }

    Grid1D grid;
    UnitSystem units;
    double t = 0.0;
    Boundary boundary = Boundary::Dirichlet;
    try {
        grid = Grid1D(meta.at("grid").at("x_min").get<double>(),
                      meta.at("grid").at("dx").get<double>(),
                      meta.at("grid").at("n").get<std::size_t>());
        units = UnitSystem(meta.at("units").at("hbar").get<double>(),
                           meta.at("units").at("mass").get<double>(),
                           meta.at("units").at("osmotic_mass").get<double>());
        t = meta.at("t").get<double>();
        const std::string b = meta.at("boundary").get<std::string>();
        if (b == "periodic")
            boundary = Boundary::Periodic;
        else if (b == "dirichlet")
            boundary = Boundary::Dirichlet;
        else
            throw ValidationError("load_snapshot: unknown boundary '" + b + "'");
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("load_snapshot: incomplete sidecar: ") + e.what());
    }

    std::ifstream csv(csv_path);
    if (!csv) throw ValidationError("load_snapshot: cannot open " + csv_path.string());
    std::string line;
    if (!std::getline(csv, line) || line != "x,re,im")
        throw ValidationError("load_snapshot: bad CSV header");

    std::vector<Complex> amp;
    amp.reserve(grid.n);
    std::size_t row = 0;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string fx, fre, fim;
        if (!std::getline(ss, fx, ',') || !std::getline(ss, fre, ',') ||
            !std::getline(ss, fim))
            throw ValidationError("load_snapshot: malformed row " + std::to_string(row));
        const double x = std::stod(fx);
        const double re = std::stod(fre);
        const double im = std::stod(fim);
        if (row >= grid.n)
            throw ValidationError("load_snapshot: more rows than the sidecar grid declares");
        if (std::abs(x - grid.x(row)) > 1e-9 * std::max(1.0, std::abs(x)))
            throw ValidationError("load_snapshot: x column disagrees with the sidecar grid");
        amp.emplace_back(re, im);
        ++row;
    }
    if (row != grid.n)
        throw ValidationError("load_snapshot: row count does not match the sidecar grid");

    WaveFunction psi(grid, boundary, std::move(amp));
    psi.check_normalized(1e-10);
    return Snapshot{std::move(psi), units, t};
}

} // namespace edlab::wave

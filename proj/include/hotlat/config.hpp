#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hotlat/assembly.hpp"
#include "hotlat/lattice.hpp"
#include "hotlat/spectral.hpp"
#include "hotlat/topology.hpp"

namespace hotlat {

using Json = nlohmann::json;

struct SpectrumSection {
    std::vector<double> phi_values;
    bool symmetrize = true;
    ClassifyOptions classify{};
};

struct DosSection {
    std::optional<double> eta;  // empty means 0.05 * max axis t
    DosKernel kernel = DosKernel::Lorentzian;
    int grid_points = 2001;
    double pad = 70.0;
};

enum class ChernMethod { Abelian, Vector };

struct ChernSection {
    ChernMethod method = ChernMethod::Vector;
    std::vector<int> bands;                       // abelian; empty means all
    std::vector<std::vector<BandRange>> subsets;  // vector; empty means auto
    int target_subsets = 3;
    ChernOptions options{};
    bool dump_flux = false;
};

struct StateRequest {
    std::string name;  // used in file names: corner, hinge_z, surface_y, ...
    std::vector<AxisRole> roles;
};

struct AssembleSection {
    std::vector<StateRequest> states;
    ClassifyOptions classify{};
    bool verify = true;
};

enum class GridEmission { None, Last, All };

struct EvolveSection {
    std::vector<std::vector<long>> injections;  // 0-based
    std::vector<double> distances;
    int half_width = 3;
    GridEmission grids = GridEmission::All;
};

struct RunConfig {
    int version = 1;
    LatticeSpec lattice;
    std::optional<SpectrumSection> spectrum;
    std::optional<DosSection> dos;
    std::optional<ChernSection> chern;
    std::optional<AssembleSection> assemble;
    std::optional<EvolveSection> evolve;

    // Fully-defaulted, unit-normalized echo of the input. Parsing it again
    // reproduces this config exactly.
    Json normalized;
};

// Validates against the versioned schema; unknown keys are rejected. Errors
// carry the offending field path. Angle-valued fields accept radians or
// strings like "0.14pi"; frequencies accept a number, "mu/nu", or "golden".
RunConfig parse_config(const Json& input);
RunConfig load_config_file(const std::string& path);

double parse_angle(const Json& value, const std::string& path);
Frequency parse_frequency(const Json& value, const std::string& path);

}  // namespace hotlat

#pragma once

#include <optional>
#include <vector>

#include "hotlat/lattice.hpp"
#include "hotlat/spectral.hpp"

namespace hotlat {

// Bloch Hamiltonian of one axis at momentum k. Requires a declared rational
// b = mu/nu (otherwise std::domain_error); the result is nu x nu with the
// wrap coupling carrying the gauge phase e^{i*k*nu}, so it is exactly
// periodic in k with period 2*pi/nu.
HoppingMatrix build_bloch_hamiltonian(const AxisModulation& axis, double k);

struct ChernResult {
    long integer = 0;
    double raw_sum = 0.0;          // curvature sum / 2 pi before rounding
    double max_plaquette_flux = 0.0;
    int grid_n1 = 0;               // grid actually used (after refinement)
    int grid_n2 = 0;
};

struct ChernOptions {
    int grid_n1 = 40;
    int grid_n2 = 40;
    bool auto_refine = true;       // double the grid on numerical failures
    int max_grid = 320;
    unsigned workers = 0;
};

// Berry flux per plaquette, row-major over the (n1, n2) grid.
struct FluxField {
    int n1 = 0;
    int n2 = 0;
    std::vector<double> flux;
};

// Chern number of one Bloch band over the (k, phi) torus, computed from
// gauge-invariant link variables. The band must stay isolated on the whole
// grid (GapClosingError otherwise).
ChernResult abelian_chern(const AxisModulation& axis, int band, const ChernOptions& opts = {},
                          FluxField* flux_out = nullptr);

// Chern number of a band subset of the finite twisted chain over the
// (theta, phi) torus. Links are det of the overlap matrix between subset
// frames, so internal degeneracies are harmless; the subset must stay
// separated from the rest of the spectrum on the whole grid.
ChernResult nonabelian_chern(const AxisModulation& axis, BandRange subset,
                             const ChernOptions& opts = {}, FluxField* flux_out = nullptr);

struct AxisChern {
    std::vector<ChernResult> subsets;
    BandPartition partition;
};

struct VectorChern {
    std::vector<AxisChern> axes;
    bool auto_partitioned = false;
};

// Per-axis vector of subset Chern numbers. When subsets_per_axis is empty the
// spectrum of each axis is partitioned automatically into target_subsets
// groups at its widest persistent gaps over the (theta, phi) grid. Axes are
// computed independently and never mixed.
VectorChern vector_chern(const LatticeSpec& spec,
                         const std::vector<std::vector<BandRange>>& subsets_per_axis,
                         int target_subsets = 3, const ChernOptions& opts = {});

}  // namespace hotlat

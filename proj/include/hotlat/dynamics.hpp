#pragma once

#include <string>
#include <vector>

#include "hotlat/lattice.hpp"
#include "hotlat/spectral.hpp"

namespace hotlat {

// exp(-i H z) of one axis via its eigendecomposition. z must be >= 0.
HoppingMatrix axis_propagator(const HoppingMatrix& axis_h, double z);
HoppingMatrix axis_propagator(const EigenSolution& sol, double z);

struct EvolutionResult {
    std::vector<long> initial_site;   // 0-based
    std::vector<double> distances;
    std::vector<StateGrid> states;    // one per distance
    std::vector<double> norms;
};

// Evolves an initial state under the Kronecker sum by applying the per-axis
// propagators one axis at a time; the factorization is exact because the
// axis terms commute. Distances are propagated independently (in parallel),
// each directly from z = 0.
EvolutionResult evolve(const LatticeSpec& spec, const StateGrid& initial,
                       const std::vector<double>& distances, unsigned workers = 0);

// Single-site excitation at `site` (0-based).
EvolutionResult evolve(const LatticeSpec& spec, const std::vector<long>& site,
                       const std::vector<double>& distances, unsigned workers = 0);

struct LocalizationReport {
    double xi = 0.0;
    std::vector<long> center;   // 0-based
    int half_width = 0;
    std::string window;         // "square" or "strip"
};

// Fraction of the state's probability within Chebyshev distance half_width of
// center, window clipped at the lattice boundary. The distribution is
// normalized by its own total, so xi is in [0, 1].
LocalizationReport corner_metric(const StateGrid& state, const std::vector<long>& center,
                                 int half_width = 3);

// 2D boundary sides; x grows rightward, y grows upward.
enum class BoundarySide { Left, Right, Bottom, Top };
const char* to_string(BoundarySide side);

// Same window as corner_metric, but the center must sit on the named boundary
// of a 2D lattice, so the window is a strip hugging that edge.
LocalizationReport edge_metric(const StateGrid& state, BoundarySide side,
                               const std::vector<long>& center, int half_width = 3);

}  // namespace hotlat

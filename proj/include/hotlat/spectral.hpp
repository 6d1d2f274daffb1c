#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hotlat/lattice.hpp"

namespace hotlat {

// Full eigensystem of a Hermitian matrix. Values ascend; vectors are the
// matching orthonormal columns, each rotated so its first component of
// significant magnitude is real and positive.
struct EigenSolution {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;

    long dimension() const { return values.size(); }
};

// Throws std::domain_error when H is not square or deviates from Hermiticity
// by more than 1e-8 in any entry.
EigenSolution eigensolve(const HoppingMatrix& h);

// <v|P|v> where P reverses the site order. +1 symmetric, -1 antisymmetric.
double reflection_parity(const Eigen::VectorXcd& v);

// Rotates every numerically degenerate group (relative tolerance rel_tol on
// the eigenvalue scale) into reflection-parity eigenstates, symmetric first.
// Non-degenerate spectra pass through untouched.
void symmetrize_degenerate(EigenSolution& sol, double rel_tol = 1e-9);

enum class StateKind { Bulk, LeftEdge, RightEdge, BothEdges };
const char* to_string(StateKind kind);

struct StateClassification {
    StateKind kind = StateKind::Bulk;
    double left_weight = 0.0;
    double right_weight = 0.0;
    double ipr = 0.0;
};

struct ClassifyOptions {
    int edge_width = 2;
    double weight_threshold = 0.5;
    // BothEdges additionally requires ipr >= ipr_factor / n_sites.
    double ipr_factor = 2.0;
};

// Labels each eigenvector by where its probability sits: LeftEdge (RightEdge)
// when at least weight_threshold of the probability lives on the first (last)
// edge_width sites while the opposite edge stays below threshold; BothEdges
// when each edge holds at least threshold/2 and the state is localized enough
// (ipr >= ipr_factor / n_sites); Bulk otherwise. Requires edge_width < n/2.
std::vector<StateClassification> classify_edge_states(const EigenSolution& sol,
                                                      const ClassifyOptions& opts = {});

struct AxisSolution {
    AxisModulation axis;
    EigenSolution eigen;
    std::vector<StateClassification> classifications;
    std::vector<double> parities;
};

AxisSolution solve_axis(const AxisModulation& axis, const ClassifyOptions& opts = {},
                        bool symmetrize = true);

enum class DosKernel { Lorentzian, Gaussian };

struct DosCurve {
    Eigen::VectorXd energy;
    Eigen::VectorXd density;
    double eta = 0.0;
};

Eigen::VectorXd linear_grid(double lo, double hi, int count);

// Density of states: each eigenvalue is broadened by a normalized kernel of
// width eta and the contributions are summed on the given energy grid.
DosCurve dos(const std::vector<double>& eigenvalues, double eta,
             const Eigen::VectorXd& grid, DosKernel kernel = DosKernel::Lorentzian);

// Convenience overload: uniform grid padded by pad*eta beyond the spectrum.
DosCurve dos(const std::vector<double>& eigenvalues, double eta, int grid_points = 2001,
             double pad = 70.0, DosKernel kernel = DosKernel::Lorentzian);

// Spectrum and classification of one axis per phase offset. energies is
// n_sites x phi_values.size().
struct SpectrumSweep {
    std::vector<double> phi_values;
    Eigen::MatrixXd energies;
    std::vector<std::vector<StateClassification>> classifications;
};

SpectrumSweep spectrum_sweep(const AxisModulation& axis, const std::vector<double>& phi_values,
                             const ClassifyOptions& opts = {}, bool symmetrize = true,
                             unsigned workers = 0);

// Contiguous index range [lo, hi] into an ascending spectrum.
struct BandRange {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
};

struct BandPartition {
    std::vector<BandRange> ranges;
    // Persistent gap above each range (size ranges.size() - 1).
    std::vector<double> separations;
};

// Splits N sorted levels, tracked across every spectrum in the family, into
// `count` groups at the count-1 widest persistent gaps. A persistent gap is
// min over spectra of (level i+1) minus max over spectra of (level i). Throws
// GapClosingError when a chosen gap is not positive, naming the level pair
// and the spectrum where it closes.
BandPartition band_subsets(const std::vector<Eigen::VectorXd>& spectra, int count);

}  // namespace hotlat

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hotlat/lattice.hpp"
#include "hotlat/spectral.hpp"

namespace hotlat {

// One factor of a product state: an eigenvector of a single axis together
// with everything known about it.
struct AxisComponent {
    Eigen::VectorXcd state;
    double energy = 0.0;
    StateClassification classification{};
    double parity = 0.0;
    int index = -1;     // position in the axis spectrum
    char tag = '?';     // S, A, L, R for edge states, X for extended
};

// Tensor product of per-axis eigenvectors. Its energy is the sum of the
// component energies and it is an exact eigenstate of the Kronecker sum.
struct ProductState {
    StateGrid grid;
    double energy = 0.0;
    std::vector<AxisComponent> components;
    std::string label;  // component tags, x first
};

ProductState product_state(std::vector<AxisComponent> components);

// || H psi - E psi ||_2. Dimension mismatches throw std::invalid_argument.
double verify_eigenpair(const KroneckerOperator& op, const StateGrid& state, double energy);

enum class EdgeSide { Any, Left, Right };

// What to pick on one axis when assembling products.
struct AxisRole {
    bool edge = true;
    EdgeSide side = EdgeSide::Any;
    int gap = 1;                        // 1-based in-gap group, by energy
    std::optional<int> extended_index;  // override for non-edge components
};

// Role builders for the standard geometries. A corner is edge states on every
// axis; a hinge along axis `along` is edge states on the other axes and an
// extended state on `along`; a surface with normal `normal` is the opposite.
std::vector<AxisRole> corner_roles(int dimension, const std::vector<EdgeSide>& sides = {});
std::vector<AxisRole> hinge_roles(int dimension, int along, const std::vector<EdgeSide>& sides = {});
std::vector<AxisRole> surface_roles(int dimension, int normal, EdgeSide side = EdgeSide::Any);

// Assembles every combination of the states selected by the per-axis roles.
// Edge candidates come from classify_edge_states after parity symmetrization;
// in-gap groups are maximal runs of non-bulk states that are adjacent in the
// axis spectrum, numbered from low energy. The default extended component is
// the bulk state just below the first in-gap group (the top of the first
// band). Throws NotFoundError when a role cannot be satisfied.
std::vector<ProductState> construct_states(const LatticeSpec& spec,
                                           const std::vector<AxisRole>& roles,
                                           const ClassifyOptions& opts = {});

// Same, but reuses already-solved axes (must match spec.axes order).
std::vector<ProductState> construct_states(const std::vector<AxisSolution>& axes,
                                           const std::vector<AxisRole>& roles);

}  // namespace hotlat

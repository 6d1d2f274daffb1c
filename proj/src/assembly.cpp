#include "hotlat/assembly.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "hotlat/errors.hpp"

namespace hotlat {

namespace {

char component_tag(const StateClassification& cls, double parity) {
    switch (cls.kind) {
        case StateKind::LeftEdge: return 'L';
        case StateKind::RightEdge: return 'R';
        case StateKind::BothEdges: return parity >= 0.0 ? 'S' : 'A';
        case StateKind::Bulk: return 'X';
    }
    return '?';
}

const char* to_string(EdgeSide side) {
    switch (side) {
        case EdgeSide::Any: return "any";
        case EdgeSide::Left: return "left";
        case EdgeSide::Right: return "right";
    }
    return "?";
}

bool side_matches(StateKind kind, EdgeSide side) {
    switch (side) {
        case EdgeSide::Any: return true;
        case EdgeSide::Left: return kind == StateKind::LeftEdge;
        case EdgeSide::Right: return kind == StateKind::RightEdge;
    }
    return false;
}

// Maximal runs of non-bulk states adjacent in the spectrum, low energy first.
std::vector<std::vector<int>> edge_groups(const std::vector<StateClassification>& cls) {
    std::vector<std::vector<int>> groups;
    std::size_t i = 0;
    while (i < cls.size()) {
        if (cls[i].kind == StateKind::Bulk) {
            ++i;
            continue;
        }
        std::vector<int> group;
        while (i < cls.size() && cls[i].kind != StateKind::Bulk)
            group.push_back(static_cast<int>(i++));
        groups.push_back(std::move(group));
    }
    return groups;
}

std::vector<AxisComponent> pick_candidates(const AxisSolution& sol, const AxisRole& role,
                                           std::size_t axis_index) {
    const auto& cls = sol.classifications;
    std::string where = "axis " + std::to_string(axis_index);

    auto make = [&](int idx) {
        AxisComponent c;
        c.state = sol.eigen.vectors.col(idx);
        c.energy = sol.eigen.values[idx];
        c.classification = cls[static_cast<std::size_t>(idx)];
        c.parity = sol.parities[static_cast<std::size_t>(idx)];
        c.index = idx;
        c.tag = component_tag(c.classification, c.parity);
        return c;
    };

    auto groups = edge_groups(cls);
    if (role.edge) {
        if (groups.empty()) throw NotFoundError(where + " has no in-gap states");
        if (role.gap < 1 || static_cast<std::size_t>(role.gap) > groups.size())
            throw NotFoundError(where + " has only " + std::to_string(groups.size()) +
                                " in-gap groups, requested gap " + std::to_string(role.gap));
        std::vector<AxisComponent> out;
        const auto& group = groups[static_cast<std::size_t>(role.gap - 1)];
        for (int idx : group)
            if (side_matches(cls[static_cast<std::size_t>(idx)].kind, role.side))
                out.push_back(make(idx));
        if (out.empty()) {
            std::string present;
            for (int idx : group) {
                if (!present.empty()) present += ", ";
                present += to_string(cls[static_cast<std::size_t>(idx)].kind);
            }
            throw NotFoundError(where + " gap " + std::to_string(role.gap) + " has no " +
                                to_string(role.side) + "-edge state (present: " + present + ")");
        }
        return out;
    }

    int idx;
    if (role.extended_index) {
        idx = *role.extended_index;
        if (idx < 0 || idx >= sol.eigen.dimension())
            throw std::invalid_argument(where + ": extended_index out of range");
    } else {
        if (groups.empty())
            throw NotFoundError(where + " has no in-gap states to bound the first band; give "
                                        "extended_index explicitly");
        idx = groups.front().front() - 1;
        if (idx < 0) throw NotFoundError(where + " has no bulk state below the first in-gap group");
    }
    return {make(idx)};
}

}  // namespace

ProductState product_state(std::vector<AxisComponent> components) {
    if (components.empty() || components.size() > 3)
        throw std::invalid_argument("product_state: need 1 to 3 components");
    std::vector<long> dims;
    dims.reserve(components.size());
    for (const auto& c : components) {
        if (c.state.size() < 1) throw std::invalid_argument("product_state: empty component");
        dims.push_back(c.state.size());
    }

    Eigen::VectorXcd amps = components.front().state;
    for (std::size_t a = 1; a < components.size(); ++a) {
        const Eigen::VectorXcd& next = components[a].state;
        Eigen::VectorXcd expanded(amps.size() * next.size());
        for (long i = 0; i < amps.size(); ++i)
            expanded.segment(i * next.size(), next.size()) = amps[i] * next;
        amps = std::move(expanded);
    }

    ProductState out;
    out.grid = StateGrid(std::move(dims), std::move(amps));
    for (const auto& c : components) {
        out.energy += c.energy;
        out.label += c.tag;
    }
    out.components = std::move(components);
    return out;
}

double verify_eigenpair(const KroneckerOperator& op, const StateGrid& state, double energy) {
    if (state.dims != op.dims())
        throw std::invalid_argument("verify_eigenpair: state dims do not match the operator");
    StateGrid residual = op.apply(state);
    residual.amplitudes -= energy * state.amplitudes;
    return residual.amplitudes.norm();
}

std::vector<AxisRole> corner_roles(int dimension, const std::vector<EdgeSide>& sides) {
    if (dimension < 2 || dimension > 3)
        throw std::invalid_argument("corner_roles: corners live in 2 or 3 dimensions");
    if (!sides.empty() && sides.size() != static_cast<std::size_t>(dimension))
        throw std::invalid_argument("corner_roles: one side per axis");
    std::vector<AxisRole> roles(static_cast<std::size_t>(dimension));
    for (std::size_t a = 0; a < roles.size(); ++a)
        if (!sides.empty()) roles[a].side = sides[a];
    return roles;
}

std::vector<AxisRole> hinge_roles(int dimension, int along, const std::vector<EdgeSide>& sides) {
    if (dimension != 3) throw std::invalid_argument("hinge_roles: hinges live in 3 dimensions");
    if (along < 0 || along >= dimension)
        throw std::invalid_argument("hinge_roles: hinge axis out of range");
    if (!sides.empty() && sides.size() != 2)
        throw std::invalid_argument("hinge_roles: one side per transverse axis");
    std::vector<AxisRole> roles(3);
    roles[static_cast<std::size_t>(along)].edge = false;
    std::size_t s = 0;
    for (int a = 0; a < 3; ++a)
        if (a != along && !sides.empty()) roles[static_cast<std::size_t>(a)].side = sides[s++];
    return roles;
}

std::vector<AxisRole> surface_roles(int dimension, int normal, EdgeSide side) {
    if (dimension < 2 || dimension > 3)
        throw std::invalid_argument("surface_roles: surfaces live in 2 or 3 dimensions");
    if (normal < 0 || normal >= dimension)
        throw std::invalid_argument("surface_roles: normal axis out of range");
    std::vector<AxisRole> roles(static_cast<std::size_t>(dimension));
    for (int a = 0; a < dimension; ++a)
        if (a != normal) roles[static_cast<std::size_t>(a)].edge = false;
    roles[static_cast<std::size_t>(normal)].side = side;
    return roles;
}

std::vector<ProductState> construct_states(const std::vector<AxisSolution>& axes,
                                           const std::vector<AxisRole>& roles) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("construct_states: need 1 to 3 axes");
    if (roles.size() != axes.size())
        throw std::invalid_argument("construct_states: one role per axis required");

    std::vector<std::vector<AxisComponent>> candidates;
    candidates.reserve(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a)
        candidates.push_back(pick_candidates(axes[a], roles[a], a));

    std::vector<ProductState> out;
    std::vector<std::size_t> pick(axes.size(), 0);
    for (;;) {
        std::vector<AxisComponent> parts;
        parts.reserve(axes.size());
        for (std::size_t a = 0; a < axes.size(); ++a) parts.push_back(candidates[a][pick[a]]);
        out.push_back(product_state(std::move(parts)));

        std::size_t a = axes.size() - 1;
        for (;;) {
            if (++pick[a] < candidates[a].size()) break;
            pick[a] = 0;
            if (a == 0) return out;
            --a;
        }
    }
}

std::vector<ProductState> construct_states(const LatticeSpec& spec,
                                           const std::vector<AxisRole>& roles,
                                           const ClassifyOptions& opts) {
    spec.validate();
    std::vector<AxisSolution> axes;
    axes.reserve(spec.axes.size());
    for (const auto& axis : spec.axes) axes.push_back(solve_axis(axis, opts, true));
    return construct_states(axes, roles);
}

}  // namespace hotlat

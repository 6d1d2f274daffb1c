#include "hotlat/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hotlat/errors.hpp"
#include "hotlat/parallel.hpp"

namespace hotlat {

HoppingMatrix axis_propagator(const EigenSolution& sol, double z) {
    if (!(z >= 0.0)) throw std::domain_error("axis_propagator: z must be non-negative");
    Eigen::VectorXcd phases(sol.dimension());
    for (long i = 0; i < sol.dimension(); ++i)
        phases[i] = std::exp(Complex(0.0, -sol.values[i] * z));
    return sol.vectors * phases.asDiagonal() * sol.vectors.adjoint();
}

HoppingMatrix axis_propagator(const HoppingMatrix& axis_h, double z) {
    return axis_propagator(eigensolve(axis_h), z);
}

EvolutionResult evolve(const LatticeSpec& spec, const StateGrid& initial,
                       const std::vector<double>& distances, unsigned workers) {
    spec.validate();
    if (initial.dims != spec.site_dims())
        throw std::invalid_argument("evolve: initial state does not match the lattice");
    if (distances.empty()) throw std::invalid_argument("evolve: no propagation distances");
    for (double z : distances)
        if (!(z >= 0.0)) throw std::domain_error("evolve: distances must be non-negative");

    std::vector<EigenSolution> axes;
    axes.reserve(spec.axes.size());
    for (const auto& axis : spec.axes) axes.push_back(eigensolve(build_axis_hamiltonian(axis)));

    EvolutionResult result;
    result.distances = distances;
    result.states.resize(distances.size());
    result.norms.resize(distances.size());
    parallel_for(distances.size(), workers, [&](std::size_t i) {
        StateGrid state = initial;
        for (int a = 0; a < spec.dimension(); ++a)
            state = apply_axis_matrix(axis_propagator(axes[static_cast<std::size_t>(a)],
                                                      distances[i]),
                                      a, state);
        result.norms[i] = state.norm();
        result.states[i] = std::move(state);
    });
    return result;
}

EvolutionResult evolve(const LatticeSpec& spec, const std::vector<long>& site,
                       const std::vector<double>& distances, unsigned workers) {
    spec.validate();
    EvolutionResult result =
        evolve(spec, StateGrid::delta(spec.site_dims(), site), distances, workers);
    result.initial_site = site;
    return result;
}

LocalizationReport corner_metric(const StateGrid& state, const std::vector<long>& center,
                                 int half_width) {
    if (half_width < 0) throw std::domain_error("corner_metric: half_width must be non-negative");
    if (center.size() != state.dims.size())
        throw std::domain_error("corner_metric: center rank does not match the lattice");

    int d = state.dimension();
    std::vector<long> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        std::size_t ua = static_cast<std::size_t>(a);
        lo[ua] = std::max<long>(0, center[ua] - half_width);
        hi[ua] = std::min<long>(state.dims[ua] - 1, center[ua] + half_width);
        if (lo[ua] > hi[ua])
            throw std::domain_error("corner_metric: window does not intersect the lattice");
    }

    double total = state.amplitudes.squaredNorm();
    if (total == 0.0) throw std::domain_error("corner_metric: zero state");

    double inside = 0.0;
    std::vector<long> site = lo;
    for (;;) {
        inside += std::norm(state.amplitudes[state.flat_index(site)]);
        int a = d - 1;
        for (;;) {
            std::size_t ua = static_cast<std::size_t>(a);
            if (++site[ua] <= hi[ua]) break;
            site[ua] = lo[ua];
            if (a == 0) {
                LocalizationReport report;
                report.xi = inside / total;
                report.center = center;
                report.half_width = half_width;
                report.window = "square";
                return report;
            }
            --a;
        }
    }
}

const char* to_string(BoundarySide side) {
    switch (side) {
        case BoundarySide::Left: return "left";
        case BoundarySide::Right: return "right";
        case BoundarySide::Bottom: return "bottom";
        case BoundarySide::Top: return "top";
    }
    return "?";
}

LocalizationReport edge_metric(const StateGrid& state, BoundarySide side,
                               const std::vector<long>& center, int half_width) {
    if (state.dimension() != 2) throw std::domain_error("edge_metric: needs a 2D lattice");
    if (center.size() != 2) throw std::domain_error("edge_metric: center must be a 2D site");
    state.flat_index(center);  // range check

    bool on_boundary = false;
    switch (side) {
        case BoundarySide::Left: on_boundary = center[0] == 0; break;
        case BoundarySide::Right: on_boundary = center[0] == state.dims[0] - 1; break;
        case BoundarySide::Bottom: on_boundary = center[1] == 0; break;
        case BoundarySide::Top: on_boundary = center[1] == state.dims[1] - 1; break;
    }
    if (!on_boundary)
        throw std::domain_error(std::string("edge_metric: center is not on the ") +
                                to_string(side) + " boundary");

    LocalizationReport report = corner_metric(state, center, half_width);
    report.window = "strip";
    return report;
}

}  // namespace hotlat

#include "hotlat/topology.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "hotlat/errors.hpp"
#include "hotlat/parallel.hpp"

namespace hotlat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TorusGrid {
    int n1 = 0;
    int n2 = 0;
    std::vector<Eigen::VectorXd> values;
    std::vector<Eigen::MatrixXcd> vectors;

    std::size_t at(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n2) +
               static_cast<std::size_t>(j);
    }
};

// Samples the family on an n1 x n2 grid covering one period in each
// direction. Points sit at half-step offsets so high-symmetry degeneracies
// (k = 0, theta = 0, ...) stay between sample points.
TorusGrid solve_torus(const std::function<HoppingMatrix(double, double)>& family,
                      double period1, double period2, int n1, int n2, unsigned workers) {
    TorusGrid grid;
    grid.n1 = n1;
    grid.n2 = n2;
    std::size_t total = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
    grid.values.resize(total);
    grid.vectors.resize(total);
    parallel_for(total, workers, [&](std::size_t p) {
        int i = static_cast<int>(p) / n2;
        int j = static_cast<int>(p) % n2;
        double u1 = (i + 0.5) * period1 / n1;
        double u2 = (j + 0.5) * period2 / n2;
        EigenSolution sol = eigensolve(family(u1, u2));
        grid.values[p] = std::move(sol.values);
        grid.vectors[p] = std::move(sol.vectors);
    });
    return grid;
}

void check_isolated(const TorusGrid& grid, int lo, int hi, const std::string& what) {
    long n = grid.values.front().size();
    double tightest = std::numeric_limits<double>::infinity();
    int where_i = 0, where_j = 0;
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            const Eigen::VectorXd& e = grid.values[grid.at(i, j)];
            double gap = std::numeric_limits<double>::infinity();
            if (lo > 0) gap = std::min(gap, e[lo] - e[lo - 1]);
            if (hi + 1 < n) gap = std::min(gap, e[hi + 1] - e[hi]);
            if (gap < tightest) {
                tightest = gap;
                where_i = i;
                where_j = j;
            }
        }
    if (!std::isfinite(tightest)) return;  // subset is the whole spectrum
    double scale = std::max(1.0, grid.values.front().cwiseAbs().maxCoeff());
    if (tightest <= 1e-12 * scale)
        throw GapClosingError(what + " [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "] touches the rest of the spectrum at grid point (" +
                              std::to_string(where_i) + ", " + std::to_string(where_j) +
                              "), gap " + std::to_string(tightest));
}

// Unit-modulus link between the subset frames at two grid points.
Complex subset_link(const Eigen::MatrixXcd& va, const Eigen::MatrixXcd& vb, int lo, int g) {
    Complex det;
    if (g == 1) {
        det = va.col(lo).dot(vb.col(lo));
    } else {
        Eigen::MatrixXcd overlap = va.middleCols(lo, g).adjoint() * vb.middleCols(lo, g);
        det = overlap.determinant();
    }
    double mag = std::abs(det);
    if (mag < 1e-12)
        throw DegenerateLinkError("link variable lost its magnitude (|det| = " +
                                  std::to_string(mag) + ")");
    return det / mag;
}

ChernResult fhs_chern(const TorusGrid& grid, int lo, int hi, FluxField* flux_out) {
    int n1 = grid.n1, n2 = grid.n2;
    int g = hi - lo + 1;
    std::size_t total = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);

    std::vector<Complex> u1(total), u2(total);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const Eigen::MatrixXcd& here = grid.vectors[grid.at(i, j)];
            u1[grid.at(i, j)] = subset_link(here, grid.vectors[grid.at((i + 1) % n1, j)], lo, g);
            u2[grid.at(i, j)] = subset_link(here, grid.vectors[grid.at(i, (j + 1) % n2)], lo, g);
        }

    std::vector<double> flux(total);
    double max_flux = 0.0;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            Complex loop = u1[grid.at(i, j)] * u2[grid.at((i + 1) % n1, j)] *
                           std::conj(u1[grid.at(i, (j + 1) % n2)]) * std::conj(u2[grid.at(i, j)]);
            double f = std::arg(loop);
            flux[grid.at(i, j)] = f;
            max_flux = std::max(max_flux, std::abs(f));
        }
    if (max_flux >= std::numbers::pi - 1e-12)
        throw RefinementError("plaquette flux reached the principal branch (max |F| = " +
                              std::to_string(max_flux) + "); the grid is too coarse");

    ChernResult result;
    result.raw_sum = pairwise_sum(flux) / kTwoPi;
    double rounded = std::round(result.raw_sum);
    if (std::abs(result.raw_sum - rounded) >= 1e-8)
        throw QuantizationError("curvature sum " + std::to_string(result.raw_sum) +
                                " is not an integer");
    result.integer = static_cast<long>(rounded);
    result.max_plaquette_flux = max_flux;
    result.grid_n1 = n1;
    result.grid_n2 = n2;
    if (flux_out) *flux_out = FluxField{n1, n2, std::move(flux)};
    return result;
}

void check_options(const ChernOptions& opts) {
    if (opts.grid_n1 < 2 || opts.grid_n2 < 2)
        throw std::invalid_argument("chern: grid must be at least 2x2");
    if (opts.max_grid < std::max(opts.grid_n1, opts.grid_n2))
        throw std::invalid_argument("chern: max_grid below the starting grid");
}

// Doubles the grid on resolution-type failures. A closed gap is physical and
// is not retried.
template <typename Compute>
auto with_refinement(const ChernOptions& opts, Compute&& compute) {
    int n1 = opts.grid_n1, n2 = opts.grid_n2;
    for (;;) {
        try {
            return compute(n1, n2);
        } catch (const GapClosingError&) {
            throw;
        } catch (const NumericalError&) {
            if (!opts.auto_refine || 2 * std::max(n1, n2) > opts.max_grid) throw;
            n1 *= 2;
            n2 *= 2;
        }
    }
}

std::function<HoppingMatrix(double, double)> twisted_family(const AxisModulation& axis) {
    return [axis](double theta, double phi) {
        return build_axis_hamiltonian(axis.with_phi(phi).twisted(theta));
    };
}

void check_subsets(const std::vector<BandRange>& subsets, long n) {
    if (subsets.empty()) throw std::invalid_argument("chern: empty subset list");
    for (const auto& r : subsets)
        if (r.lo < 0 || r.hi < r.lo || r.hi >= n)
            throw std::invalid_argument("chern: subset [" + std::to_string(r.lo) + ", " +
                                        std::to_string(r.hi) + "] out of range");
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = a + 1; b < subsets.size(); ++b)
            if (subsets[a].lo <= subsets[b].hi && subsets[b].lo <= subsets[a].hi)
                throw std::invalid_argument("chern: subsets overlap");
}

}  // namespace

HoppingMatrix build_bloch_hamiltonian(const AxisModulation& axis, double k) {
    axis.validate();
    if (!axis.b.is_rational())
        throw std::domain_error("build_bloch_hamiltonian: b must be a declared rational");
    long nu = axis.b.den;
    if (nu < 2)
        throw std::domain_error("build_bloch_hamiltonian: unit cell must span at least 2 sites");
    AxisModulation cell = axis;
    cell.n_sites = static_cast<int>(nu);
    return build_axis_hamiltonian(cell.twisted(k * static_cast<double>(nu)));
}

ChernResult abelian_chern(const AxisModulation& axis, int band, const ChernOptions& opts,
                          FluxField* flux_out) {
    axis.validate();
    check_options(opts);
    if (!axis.b.is_rational())
        throw std::domain_error("abelian_chern: b must be a declared rational");
    long nu = axis.b.den;
    if (band < 0 || band >= nu) throw std::domain_error("abelian_chern: band out of range");

    double k_period = kTwoPi / static_cast<double>(nu);
    return with_refinement(opts, [&](int n1, int n2) {
        TorusGrid grid = solve_torus(
            [&axis](double k, double phi) {
                return build_bloch_hamiltonian(axis.with_phi(phi), k);
            },
            k_period, kTwoPi, n1, n2, opts.workers);
        check_isolated(grid, band, band, "abelian_chern: band");
        return fhs_chern(grid, band, band, flux_out);
    });
}

ChernResult nonabelian_chern(const AxisModulation& axis, BandRange subset,
                             const ChernOptions& opts, FluxField* flux_out) {
    axis.validate();
    check_options(opts);
    check_subsets({subset}, axis.n_sites);

    return with_refinement(opts, [&](int n1, int n2) {
        TorusGrid grid = solve_torus(twisted_family(axis), kTwoPi, kTwoPi, n1, n2, opts.workers);
        check_isolated(grid, subset.lo, subset.hi, "nonabelian_chern: subset");
        return fhs_chern(grid, subset.lo, subset.hi, flux_out);
    });
}

VectorChern vector_chern(const LatticeSpec& spec,
                         const std::vector<std::vector<BandRange>>& subsets_per_axis,
                         int target_subsets, const ChernOptions& opts) {
    spec.validate();
    check_options(opts);
    bool automatic = subsets_per_axis.empty();
    if (!automatic && subsets_per_axis.size() != spec.axes.size())
        throw std::invalid_argument("vector_chern: subset list does not match the axis count");
    if (automatic && (target_subsets < 1))
        throw std::invalid_argument("vector_chern: target_subsets must be positive");

    VectorChern out;
    out.auto_partitioned = automatic;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
        const AxisModulation& axis = spec.axes[a];
        if (!automatic) check_subsets(subsets_per_axis[a], axis.n_sites);
        AxisChern axis_result = with_refinement(opts, [&](int n1, int n2) {
            TorusGrid grid =
                solve_torus(twisted_family(axis), kTwoPi, kTwoPi, n1, n2, opts.workers);
            AxisChern ac;
            if (automatic) {
                ac.partition = band_subsets(grid.values, target_subsets);
            } else {
                ac.partition.ranges = subsets_per_axis[a];
            }
            for (const BandRange& r : ac.partition.ranges) {
                check_isolated(grid, r.lo, r.hi, "vector_chern: subset");
                ac.subsets.push_back(fhs_chern(grid, r.lo, r.hi, nullptr));
            }
            return ac;
        });
        out.axes.push_back(std::move(axis_result));
    }
    return out;
}

}  // namespace hotlat

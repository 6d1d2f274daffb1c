#include "hotlat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hotlat/errors.hpp"
#include "hotlat/parallel.hpp"

namespace hotlat {

namespace {

// Rotates a column so its first component of significant magnitude is real
// and positive. Keeps eigenvector output deterministic across runs.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> col) {
    for (long i = 0; i < col.size(); ++i) {
        double mag = std::abs(col[i]);
        if (mag > 1e-12) {
            col *= std::conj(col[i]) / mag;
            return;
        }
    }
}

bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    for (long i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

EigenSolution eigensolve(const HoppingMatrix& h) {
    if (h.rows() != h.cols() || h.rows() < 1)
        throw std::domain_error("eigensolve: matrix must be square and non-empty");
    double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-8)
        throw std::domain_error("eigensolve: matrix deviates from Hermitian by " +
                                std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<HoppingMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigensolve: eigendecomposition did not converge");

    EigenSolution sol{solver.eigenvalues(), solver.eigenvectors()};
    for (long c = 0; c < sol.dimension(); ++c) fix_phase(sol.vectors.col(c));

    // Exactly tied eigenvalues get a stable column order.
    long i = 0;
    while (i < sol.dimension()) {
        long j = i;
        while (j + 1 < sol.dimension() && sol.values[j + 1] == sol.values[i]) ++j;
        if (j > i) {
            std::vector<Eigen::VectorXcd> cols;
            for (long c = i; c <= j; ++c) cols.push_back(sol.vectors.col(c));
            std::sort(cols.begin(), cols.end(), lex_less);
            for (long c = i; c <= j; ++c) sol.vectors.col(c) = cols[static_cast<std::size_t>(c - i)];
        }
        i = j + 1;
    }
    return sol;
}

double reflection_parity(const Eigen::VectorXcd& v) {
    Complex overlap = v.dot(v.reverse().eval());
    return overlap.real() / v.squaredNorm();
}

void symmetrize_degenerate(EigenSolution& sol, double rel_tol) {
    long n = sol.dimension();
    if (n < 2) return;
    double tol = rel_tol * std::max(1.0, sol.values.cwiseAbs().maxCoeff());

    long i = 0;
    while (i < n) {
        long j = i;
        while (j + 1 < n && sol.values[j + 1] - sol.values[j] <= tol) ++j;
        long g = j - i + 1;
        if (g >= 2) {
            Eigen::MatrixXcd block = sol.vectors.middleCols(i, g);
            Eigen::MatrixXcd overlap = block.adjoint() * block.colwise().reverse();
            overlap = ((overlap + overlap.adjoint()) / 2.0).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rot(overlap);
            // Parity eigenvalues ascend; flip so the symmetric state leads.
            sol.vectors.middleCols(i, g) = block * rot.eigenvectors().rowwise().reverse();
            for (long c = i; c <= j; ++c) fix_phase(sol.vectors.col(c));
        }
        i = j + 1;
    }
}

const char* to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Bulk: return "bulk";
        case StateKind::LeftEdge: return "left";
        case StateKind::RightEdge: return "right";
        case StateKind::BothEdges: return "both";
    }
    return "?";
}

std::vector<StateClassification> classify_edge_states(const EigenSolution& sol,
                                                      const ClassifyOptions& opts) {
    long n = sol.dimension();
    long w = opts.edge_width;
    if (w < 1 || 2 * w >= n)
        throw std::domain_error("classify_edge_states: edge_width must be in [1, n/2)");
    if (!(opts.weight_threshold > 0.0) || opts.weight_threshold > 1.0)
        throw std::domain_error("classify_edge_states: weight_threshold must be in (0, 1]");

    std::vector<StateClassification> out(static_cast<std::size_t>(n));
    for (long c = 0; c < n; ++c) {
        Eigen::VectorXd p = sol.vectors.col(c).cwiseAbs2();
        p /= p.sum();
        StateClassification& cls = out[static_cast<std::size_t>(c)];
        cls.left_weight = p.head(w).sum();
        cls.right_weight = p.tail(w).sum();
        cls.ipr = p.squaredNorm();

        double thr = opts.weight_threshold;
        if (cls.left_weight >= thr && cls.right_weight < thr)
            cls.kind = StateKind::LeftEdge;
        else if (cls.right_weight >= thr && cls.left_weight < thr)
            cls.kind = StateKind::RightEdge;
        else if (cls.left_weight >= thr / 2 && cls.right_weight >= thr / 2 &&
                 cls.ipr >= opts.ipr_factor / static_cast<double>(n))
            cls.kind = StateKind::BothEdges;
        else
            cls.kind = StateKind::Bulk;
    }
    return out;
}

AxisSolution solve_axis(const AxisModulation& axis, const ClassifyOptions& opts,
                        bool symmetrize) {
    AxisSolution out;
    out.axis = axis;
    out.eigen = eigensolve(build_axis_hamiltonian(axis));
    if (symmetrize) symmetrize_degenerate(out.eigen);
    out.classifications = classify_edge_states(out.eigen, opts);
    out.parities.reserve(static_cast<std::size_t>(out.eigen.dimension()));
    for (long c = 0; c < out.eigen.dimension(); ++c)
        out.parities.push_back(reflection_parity(out.eigen.vectors.col(c)));
    return out;
}

Eigen::VectorXd linear_grid(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("linear_grid: need at least 2 points");
    if (!(hi > lo)) throw std::invalid_argument("linear_grid: hi must exceed lo");
    Eigen::VectorXd grid(count);
    double step = (hi - lo) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) grid[i] = lo + step * i;
    return grid;
}

DosCurve dos(const std::vector<double>& eigenvalues, double eta, const Eigen::VectorXd& grid,
             DosKernel kernel) {
    if (eigenvalues.empty()) throw std::invalid_argument("dos: no eigenvalues");
    if (!(eta > 0.0)) throw std::invalid_argument("dos: eta must be positive");
    if (grid.size() < 1) throw std::invalid_argument("dos: empty energy grid");

    DosCurve curve{grid, Eigen::VectorXd::Zero(grid.size()), eta};
    const double lorentz_norm = eta / std::numbers::pi;
    const double gauss_norm = 1.0 / (eta * std::sqrt(2.0 * std::numbers::pi));
    for (long i = 0; i < grid.size(); ++i) {
        double sum = 0.0;
        for (double e : eigenvalues) {
            double d = grid[i] - e;
            if (kernel == DosKernel::Lorentzian)
                sum += lorentz_norm / (d * d + eta * eta);
            else
                sum += gauss_norm * std::exp(-d * d / (2.0 * eta * eta));
        }
        curve.density[i] = sum;
    }
    return curve;
}

DosCurve dos(const std::vector<double>& eigenvalues, double eta, int grid_points, double pad,
             DosKernel kernel) {
    if (eigenvalues.empty()) throw std::invalid_argument("dos: no eigenvalues");
    if (!(eta > 0.0)) throw std::invalid_argument("dos: eta must be positive");
    auto [lo_it, hi_it] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
    double margin = pad * eta;
    return dos(eigenvalues, eta, linear_grid(*lo_it - margin, *hi_it + margin, grid_points),
               kernel);
}

SpectrumSweep spectrum_sweep(const AxisModulation& axis, const std::vector<double>& phi_values,
                             const ClassifyOptions& opts, bool symmetrize, unsigned workers) {
    if (phi_values.empty()) throw std::invalid_argument("spectrum_sweep: no phi values");
    axis.validate();

    SpectrumSweep sweep;
    sweep.phi_values = phi_values;
    sweep.energies.resize(axis.n_sites, static_cast<long>(phi_values.size()));
    sweep.classifications.resize(phi_values.size());

    parallel_for(phi_values.size(), workers, [&](std::size_t i) {
        AxisSolution sol = solve_axis(axis.with_phi(phi_values[i]), opts, symmetrize);
        sweep.energies.col(static_cast<long>(i)) = sol.eigen.values;
        sweep.classifications[i] = std::move(sol.classifications);
    });
    return sweep;
}

BandPartition band_subsets(const std::vector<Eigen::VectorXd>& spectra, int count) {
    if (spectra.empty()) throw std::invalid_argument("band_subsets: no spectra");
    long n = spectra.front().size();
    for (const auto& s : spectra)
        if (s.size() != n)
            throw std::invalid_argument("band_subsets: spectra must share one length");
    if (count < 1 || count > n)
        throw std::invalid_argument("band_subsets: count must be in [1, n]");

    // Envelope of each sorted level across the family.
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
    for (const auto& s : spectra) {
        lo = lo.cwiseMin(s);
        hi = hi.cwiseMax(s);
    }

    std::vector<std::pair<double, int>> gaps;
    gaps.reserve(static_cast<std::size_t>(n - 1));
    for (long i = 0; i + 1 < n; ++i) gaps.emplace_back(lo[i + 1] - hi[i], static_cast<int>(i));
    std::sort(gaps.begin(), gaps.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<std::pair<int, double>> splits;  // (level above which we split, gap)
    for (int s = 0; s < count - 1; ++s) {
        auto [gap, level] = gaps[static_cast<std::size_t>(s)];
        if (!(gap > 0.0)) {
            std::size_t where = 0;
            double tightest = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < spectra.size(); ++k) {
                double g = spectra[k][level + 1] - spectra[k][level];
                if (g < tightest) {
                    tightest = g;
                    where = k;
                }
            }
            throw GapClosingError("band_subsets: gap between levels " + std::to_string(level) +
                                  " and " + std::to_string(level + 1) +
                                  " closes (persistent width " + std::to_string(gap) +
                                  ", tightest in spectrum " + std::to_string(where) + ")");
        }
        splits.emplace_back(level, gap);
    }
    std::sort(splits.begin(), splits.end());

    BandPartition partition;
    int start = 0;
    for (const auto& [level, gap] : splits) {
        partition.ranges.push_back({start, level});
        partition.separations.push_back(gap);
        start = level + 1;
    }
    partition.ranges.push_back({start, static_cast<int>(n - 1)});
    return partition;
}

}  // namespace hotlat

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "hotlat/errors.hpp"
#include "hotlat/lattice.hpp"
#include "hotlat/spectral.hpp"

using namespace hotlat;

namespace {

const double kPi = 3.14159265358979323846;

AxisModulation experimental_axis(int n, double phi_over_pi) {
    AxisModulation a;
    a.t = 0.3;
    a.lambda = 0.5;
    a.b = Frequency::golden();
    a.phi = phi_over_pi * kPi;
    a.n_sites = n;
    return a;
}

AxisModulation rational_axis(int n, double lambda) {
    AxisModulation a;
    a.t = 1.0;
    a.lambda = lambda;
    a.b = Frequency::rational(1, 3);
    a.phi = 0.0;
    a.n_sites = n;
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("eigensolve: residuals, orthonormality and the phase convention") {
    auto h = build_axis_hamiltonian(experimental_axis(16, 0.14));
    auto sol = eigensolve(h);
    REQUIRE(sol.dimension() == 16);
    double scale = h.cwiseAbs().maxCoeff();
    for (int i = 0; i < 16; ++i) {
        Eigen::VectorXcd r = h * sol.vectors.col(i) - sol.values[i] * sol.vectors.col(i);
        CHECK(r.norm() < 1e-9 * std::max(scale, 1.0));
    }
    Eigen::MatrixXcd overlap = sol.vectors.adjoint() * sol.vectors;
    CHECK((overlap - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i + 1 < 16; ++i) CHECK(sol.values[i] <= sol.values[i + 1]);
    for (int i = 0; i < 16; ++i) {
        for (int row = 0; row < 16; ++row) {
            Complex c = sol.vectors(row, i);
            if (std::abs(c) > 1e-12) {
                CHECK(c.real() > 0.0);
                CHECK(std::abs(c.imag()) < 1e-12 * std::abs(c));
                break;
            }
        }
    }
}

TEST_CASE("eigensolve: non-Hermitian and non-square inputs are rejected") {
    Eigen::MatrixXcd bad(2, 2);
    bad << Complex(0, 0), Complex(1, 0), Complex(0.5, 0), Complex(0, 0);
    CHECK_THROWS_AS(eigensolve(bad), std::domain_error);
    CHECK_THROWS_AS(eigensolve(Eigen::MatrixXcd::Zero(2, 3)), std::domain_error);
}

TEST_CASE("reflection_parity: exact on handcrafted vectors") {
    Eigen::VectorXcd s(4), a(4);
    s << 1, 2, 2, 1;
    a << 1, 2, -2, -1;
    s.normalize();
    a.normalize();
    CHECK(reflection_parity(s) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reflection_parity(a) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("symmetrize_degenerate: palindromic chain pairs become parity eigenstates") {
    // b=1/2, phi=pi/2 gives J = (1, ..,) symmetric under reflection for even chains.
    AxisModulation ax;
    ax.t = 1.0;
    ax.lambda = 0.6;
    ax.b = Frequency::rational(1, 2);
    ax.phi = kPi / 2.0;
    ax.n_sites = 8;
    auto sol = eigensolve(build_axis_hamiltonian(ax));
    symmetrize_degenerate(sol);
    auto h = build_axis_hamiltonian(ax);
    for (int i = 0; i < 8; ++i) {
        Eigen::VectorXcd r = h * sol.vectors.col(i) - sol.values[i] * sol.vectors.col(i);
        CHECK(r.norm() < 1e-9);
    }
    // The bond pattern is palindromic, so every state carries parity +-1; in
    // each degenerate pair the symmetric partner must come first.
    for (int i = 0; i < 8; ++i) CHECK(std::abs(std::abs(reflection_parity(sol.vectors.col(i))) - 1.0) < 1e-9);
    for (int i = 0; i + 1 < 8; ++i) {
        if (std::abs(sol.values[i + 1] - sol.values[i]) < 1e-9) {
            CHECK(reflection_parity(sol.vectors.col(i)) > 0.0);
            CHECK(reflection_parity(sol.vectors.col(i + 1)) < 0.0);
        }
    }
}

TEST_CASE("classify_edge_states: frozen table for the 16-site experimental chain") {
    auto sol = eigensolve(build_axis_hamiltonian(experimental_axis(16, 0.14)));
    auto cls = classify_edge_states(sol);
    std::vector<int> nonbulk;
    for (int i = 0; i < 16; ++i)
        if (cls[i].kind != StateKind::Bulk) nonbulk.push_back(i);
    REQUIRE(nonbulk == std::vector<int>{5, 6, 9, 10});
    CHECK(cls[5].kind == StateKind::LeftEdge);
    CHECK(cls[6].kind == StateKind::RightEdge);
    CHECK(cls[9].kind == StateKind::RightEdge);
    CHECK(cls[10].kind == StateKind::LeftEdge);
    CHECK(sol.values[5] == doctest::Approx(-0.2096099685890142).epsilon(1e-10));
    CHECK(sol.values[6] == doctest::Approx(-0.18278557929574257).epsilon(1e-10));
    CHECK(sol.values[9] == doctest::Approx(0.18278557929574257).epsilon(1e-10));
    CHECK(sol.values[10] == doctest::Approx(0.20960996858901434).epsilon(1e-10));
}

TEST_CASE("classify_edge_states: 15-site chain flips sides with phi") {
    auto count = [](const std::vector<StateClassification>& cls, StateKind k) {
        int c = 0;
        for (const auto& e : cls)
            if (e.kind == k) ++c;
        return c;
    };
    auto at = [&](double phi_over_pi) {
        auto sol = eigensolve(build_axis_hamiltonian(experimental_axis(15, phi_over_pi)));
        return classify_edge_states(sol);
    };
    auto left = at(0.14);
    CHECK(count(left, StateKind::LeftEdge) == 2);
    CHECK(count(left, StateKind::RightEdge) == 0);
    auto right = at(1.25);
    CHECK(count(right, StateKind::LeftEdge) == 0);
    CHECK(count(right, StateKind::RightEdge) == 2);
    auto none = at(0.75);
    CHECK(count(none, StateKind::LeftEdge) == 0);
    CHECK(count(none, StateKind::RightEdge) == 0);
    CHECK(count(none, StateKind::BothEdges) == 0);
}

TEST_CASE("classify_edge_states: global phase of eigenvectors is irrelevant") {
    auto sol = eigensolve(build_axis_hamiltonian(experimental_axis(16, 0.14)));
    auto base = classify_edge_states(sol);
    EigenSolution rotated = sol;
    for (int i = 0; i < rotated.vectors.cols(); ++i)
        rotated.vectors.col(i) *= std::exp(Complex(0.0, 0.1 + 0.7 * i));
    auto turned = classify_edge_states(rotated);
    for (size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].kind == turned[i].kind);
        CHECK(base[i].left_weight == doctest::Approx(turned[i].left_weight).epsilon(1e-12));
    }
}

TEST_CASE("classify_edge_states: parameter validation") {
    auto sol = eigensolve(build_axis_hamiltonian(experimental_axis(8, 0.0)));
    ClassifyOptions opts;
    opts.edge_width = 4;  // not < n/2
    CHECK_THROWS_AS(classify_edge_states(sol, opts), std::domain_error);
    opts.edge_width = 0;
    CHECK_THROWS_AS(classify_edge_states(sol, opts), std::domain_error);
    opts = ClassifyOptions{};
    opts.weight_threshold = 0.0;
    CHECK_THROWS_AS(classify_edge_states(sol, opts), std::domain_error);
}

TEST_CASE("solve_axis: 30-site rational chain has the frozen in-gap pair") {
    auto axis = rational_axis(30, 0.5);
    auto as = solve_axis(axis);
    std::vector<int> nonbulk;
    for (int i = 0; i < 30; ++i)
        if (as.classifications[i].kind != StateKind::Bulk) nonbulk.push_back(i);
    REQUIRE(nonbulk == std::vector<int>{9, 10, 19, 20});
    CHECK(as.classifications[9].kind == StateKind::BothEdges);
    CHECK(as.classifications[10].kind == StateKind::BothEdges);
    CHECK(as.eigen.values[8] == doctest::Approx(-1.525216795744549).epsilon(1e-10));
    CHECK(as.eigen.values[9] == doctest::Approx(-0.750545801251629).epsilon(1e-10));
    CHECK(as.eigen.values[10] == doctest::Approx(-0.7494470898432112).epsilon(1e-10));
    CHECK(as.eigen.values[11] == doctest::Approx(-0.49953896787506125).epsilon(1e-10));
    CHECK(as.parities[9] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(as.parities[10] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("spectrum_sweep: lambda = 0 columns are identical and sweeps are deterministic") {
    AxisModulation a;
    a.t = 0.8;
    a.lambda = 0.0;
    a.b = Frequency::golden();
    a.n_sites = 10;
    std::vector<double> phis{0.0, 0.9, 2.1, 4.4};
    auto sweep = spectrum_sweep(a, phis);
    REQUIRE(sweep.energies.rows() == 10);
    REQUIRE(sweep.energies.cols() == 4);
    for (int c = 1; c < 4; ++c)
        CHECK((sweep.energies.col(c) - sweep.energies.col(0)).cwiseAbs().maxCoeff() < 1e-12);

    auto modulated = experimental_axis(16, 0.0);
    std::vector<double> grid;
    for (int i = 0; i < 24; ++i) grid.push_back(2.0 * kPi * i / 24.0);
    auto s1 = spectrum_sweep(modulated, grid, {}, true, 1);
    auto s4 = spectrum_sweep(modulated, grid, {}, true, 4);
    CHECK((s1.energies - s4.energies).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(spectrum_sweep(modulated, {}), std::invalid_argument);
}

TEST_CASE("spectrum_sweep: adjacent-phi columns obey the Weyl continuity bound") {
    auto a = experimental_axis(16, 0.0);
    std::vector<double> grid;
    const int m = 64;
    for (int i = 0; i <= m; ++i) grid.push_back(2.0 * kPi * i / m);
    auto sweep = spectrum_sweep(a, grid);
    // |dH| <= t*lambda*|dphi| per bond, so the Lipschitz constant is bounded
    // by t*lambda*N (crude but safe).
    double bound = a.t * a.lambda * a.n_sites * (2.0 * kPi / m);
    for (int c = 0; c + 1 < sweep.energies.cols(); ++c)
        CHECK((sweep.energies.col(c + 1) - sweep.energies.col(c)).cwiseAbs().maxCoeff() <=
              bound);
}

TEST_CASE("dos: integral matches the state count within 1 percent") {
    auto sol = eigensolve(build_axis_hamiltonian(experimental_axis(16, 0.14)));
    std::vector<double> e(sol.values.data(), sol.values.data() + 16);
    double eta = 0.05 * 0.3;
    auto curve = dos(e, eta);
    REQUIRE(curve.energy.size() == 2001);
    double integral = 0.0;
    for (int i = 0; i + 1 < curve.energy.size(); ++i)
        integral += 0.5 * (curve.density[i] + curve.density[i + 1]) *
                    (curve.energy[i + 1] - curve.energy[i]);
    CHECK(std::abs(integral - 16.0) / 16.0 < 0.01);
}

TEST_CASE("dos: kernels peak at an isolated level and reject bad input") {
    std::vector<double> levels{0.0};
    auto grid = linear_grid(-1.0, 1.0, 801);
    auto lor = dos(levels, 0.05, grid, DosKernel::Lorentzian);
    int peak;
    lor.density.maxCoeff(&peak);
    CHECK(std::abs(lor.energy[peak]) < 3e-3);
    CHECK(lor.density[peak] == doctest::Approx(1.0 / (kPi * 0.05)).epsilon(1e-3));
    auto gau = dos(levels, 0.05, grid, DosKernel::Gaussian);
    gau.density.maxCoeff(&peak);
    CHECK(std::abs(gau.energy[peak]) < 3e-3);
    CHECK(gau.density[peak] ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi) / 0.05).epsilon(1e-3));
    CHECK_THROWS_AS(dos(levels, 0.0, grid), std::invalid_argument);
    CHECK_THROWS_AS(dos(std::vector<double>{}, 0.05, grid), std::invalid_argument);
}

TEST_CASE("band_subsets: rational 30-site twisted family splits 10/10/10") {
    auto axis = rational_axis(30, 0.5);
    std::vector<Eigen::VectorXd> spectra;
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
            auto tw = axis.with_phi(2.0 * kPi * (j + 0.5) / 12.0)
                          .twisted(2.0 * kPi * (i + 0.5) / 12.0);
            spectra.push_back(eigensolve(build_axis_hamiltonian(tw)).values);
        }
    }
    auto part = band_subsets(spectra, 3);
    REQUIRE(part.ranges.size() == 3);
    CHECK(part.ranges[0].lo == 0);
    CHECK(part.ranges[0].hi == 9);
    CHECK(part.ranges[1].lo == 10);
    CHECK(part.ranges[1].hi == 19);
    CHECK(part.ranges[2].lo == 20);
    CHECK(part.ranges[2].hi == 29);
    REQUIRE(part.separations.size() == 2);
    CHECK(part.separations[0] == doctest::Approx(0.964117).epsilon(1e-4));
    CHECK(part.separations[1] == doctest::Approx(0.964117).epsilon(1e-4));
}

TEST_CASE("band_subsets: one persistent gap gives two groups; closed gaps throw") {
    Eigen::VectorXd s1(4), s2(4);
    s1 << 0.0, 0.1, 1.0, 1.1;
    s2 << 0.05, 0.15, 1.05, 1.15;
    auto part = band_subsets({s1, s2}, 2);
    REQUIRE(part.ranges.size() == 2);
    CHECK(part.ranges[0].hi == 1);
    CHECK(part.ranges[1].lo == 2);

    // A gap that closes across the family (levels cross between members)
    // must fail loudly once the requested count needs it.
    Eigen::VectorXd c1(4), c2(4);
    c1 << 0.0, 0.5, 1.0, 1.5;
    c2 << 0.6, 0.7, 1.6, 1.7;
    CHECK_THROWS_AS(band_subsets({c1, c2}, 3), GapClosingError);
    CHECK_THROWS_WITH_AS(band_subsets({c1, c2}, 3),
                         doctest::Contains("levels"), GapClosingError);
    CHECK_THROWS_AS(band_subsets({s1, s2}, 0), std::invalid_argument);
    CHECK_THROWS_AS(band_subsets({}, 1), std::invalid_argument);
}

TEST_SUITE_END();

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "hotlat/errors.hpp"
#include "hotlat/lattice.hpp"
#include "hotlat/spectral.hpp"
#include "hotlat/topology.hpp"

using namespace hotlat;

namespace {

const double kPi = 3.14159265358979323846;

AxisModulation rational_axis(int n, double t, double lambda) {
    AxisModulation a;
    a.t = t;
    a.lambda = lambda;
    a.b = Frequency::rational(1, 3);
    a.phi = 0.0;
    a.n_sites = n;
    return a;
}

AxisModulation golden_axis(int n, double t, double lambda) {
    AxisModulation a;
    a.t = t;
    a.lambda = lambda;
    a.b = Frequency::golden();
    a.phi = 0.0;
    a.n_sites = n;
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("topology");

TEST_CASE("build_bloch_hamiltonian: couplings, hermiticity and exact periodicity") {
    auto axis = rational_axis(30, 1.0, 0.5);
    auto h = build_bloch_hamiltonian(axis, 0.0);
    REQUIRE(h.rows() == 3);
    // Bonds 1, 2 inside the cell, bond 3 wraps: J = (0.75, 0.75, 1.5).
    CHECK(h(0, 1).real() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(h(1, 2).real() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(h(2, 0).real() == doctest::Approx(1.5).epsilon(1e-14));
    double k = 0.37;
    auto hk = build_bloch_hamiltonian(axis, k);
    CHECK((hk - hk.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(hk(2, 0) - 1.5 * std::exp(Complex(0.0, 3.0 * k))) < 1e-14);
    auto hk2 = build_bloch_hamiltonian(axis, k + 2.0 * kPi / 3.0);
    CHECK((hk - hk2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("build_bloch_hamiltonian: SSH gap edges and irrational rejection") {
    AxisModulation ssh;
    ssh.t = 1.0;
    ssh.lambda = 0.5;
    ssh.b = Frequency::rational(1, 2);
    ssh.phi = 0.0;
    ssh.n_sites = 10;
    // J1 = 0.5, J2 = 1.5; band edges at |J1 - J2| = 1 and J1 + J2 = 2.
    auto e0 = eigensolve(build_bloch_hamiltonian(ssh, 0.0)).values;
    auto epi = eigensolve(build_bloch_hamiltonian(ssh, kPi / 2.0)).values;
    double inner = std::min(std::abs(e0[1]), std::abs(epi[1]));
    double outer = std::max(std::abs(e0[0]), std::abs(epi[0]));
    CHECK(inner == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(outer == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(build_bloch_hamiltonian(golden_axis(10, 1.0, 0.5), 0.0),
                    std::domain_error);
}

TEST_CASE("abelian_chern: rational three-band benchmark is (-1, 2, -1)") {
    auto axis = rational_axis(30, 1.0, 0.5);
    std::vector<long> expected{-1, 2, -1};
    long sum = 0;
    for (int band = 0; band < 3; ++band) {
        auto r = abelian_chern(axis, band);
        CHECK(r.integer == expected[band]);
        CHECK(std::abs(r.raw_sum - static_cast<double>(r.integer)) < 1e-8);
        CHECK(r.max_plaquette_flux < kPi);
        CHECK(r.grid_n1 == 40);
        sum += r.integer;
    }
    CHECK(sum == 0);
}

TEST_CASE("abelian_chern: unmodulated bands are exactly trivial") {
    auto axis = rational_axis(30, 1.0, 0.0);
    for (int band = 0; band < 3; ++band) {
        auto r = abelian_chern(axis, band);
        CHECK(r.integer == 0);
        CHECK(std::abs(r.raw_sum) < 1e-12);
    }
}

TEST_CASE("abelian_chern: band index is validated") {
    auto axis = rational_axis(30, 1.0, 0.5);
    CHECK_THROWS_AS(abelian_chern(axis, 3), std::domain_error);
    CHECK_THROWS_AS(abelian_chern(axis, -1), std::domain_error);
    CHECK_THROWS_AS(abelian_chern(golden_axis(10, 1.0, 0.5), 0), std::domain_error);
}

TEST_CASE("abelian_chern: flux field sums to the integer and is grid-shaped") {
    auto axis = rational_axis(30, 1.0, 0.5);
    FluxField flux;
    ChernOptions opts;
    opts.grid_n1 = 24;
    opts.grid_n2 = 24;
    auto r = abelian_chern(axis, 1, opts, &flux);
    REQUIRE(flux.n1 == 24);
    REQUIRE(flux.n2 == 24);
    REQUIRE(flux.flux.size() == 24u * 24u);
    double total = 0.0;
    for (double f : flux.flux) total += f;
    CHECK(total / (2.0 * kPi) == doctest::Approx(static_cast<double>(r.integer)).epsilon(1e-10));
}

TEST_CASE("nonabelian_chern: golden-ratio subsets give (1, -2, 1)") {
    auto axis = golden_axis(15, 0.5, 0.95);
    ChernOptions opts;
    opts.grid_n1 = 24;
    opts.grid_n2 = 24;
    auto low = nonabelian_chern(axis, BandRange{0, 5}, opts);
    auto mid = nonabelian_chern(axis, BandRange{6, 8}, opts);
    auto high = nonabelian_chern(axis, BandRange{9, 14}, opts);
    CHECK(low.integer == 1);
    CHECK(mid.integer == -2);
    CHECK(high.integer == 1);
    CHECK(std::abs(low.raw_sum - 1.0) < 1e-8);
    CHECK(std::abs(mid.raw_sum + 2.0) < 1e-8);
    CHECK(std::abs(high.raw_sum - 1.0) < 1e-8);
}

TEST_CASE("nonabelian_chern: unmodulated chain is trivial for any subset") {
    auto axis = golden_axis(15, 0.5, 0.0);
    ChernOptions opts;
    opts.grid_n1 = 16;
    opts.grid_n2 = 16;
    auto r = nonabelian_chern(axis, BandRange{0, 5}, opts);
    CHECK(r.integer == 0);
    CHECK(std::abs(r.raw_sum) < 1e-12);
}

TEST_CASE("nonabelian_chern: agrees with summed abelian numbers for rational b") {
    auto axis = rational_axis(30, 1.0, 0.5);
    ChernOptions opts;
    opts.grid_n1 = 24;
    opts.grid_n2 = 24;
    auto low = nonabelian_chern(axis, BandRange{0, 9}, opts);
    auto mid = nonabelian_chern(axis, BandRange{10, 19}, opts);
    auto high = nonabelian_chern(axis, BandRange{20, 29}, opts);
    CHECK(low.integer == -1);
    CHECK(mid.integer == 2);
    CHECK(high.integer == -1);
}

TEST_CASE("nonabelian_chern: degenerate subset boundary fails; bad ranges rejected") {
    // Uniform 4-site ring: the two lowest levels cross exactly at theta = pi,
    // which an odd grid samples. A closed gap is physical, so refinement must
    // not retry it away even when enabled.
    AxisModulation ring;
    ring.t = 1.0;
    ring.lambda = 0.0;
    ring.b = Frequency::rational(1, 2);
    ring.phi = 0.0;
    ring.n_sites = 4;
    ChernOptions odd;
    odd.grid_n1 = 5;
    odd.grid_n2 = 5;
    odd.auto_refine = false;
    CHECK_THROWS_AS(nonabelian_chern(ring, BandRange{0, 0}, odd), GapClosingError);
    odd.auto_refine = true;
    CHECK_THROWS_AS(nonabelian_chern(ring, BandRange{0, 0}, odd), GapClosingError);

    auto axis = golden_axis(15, 0.5, 0.95);
    ChernOptions opts;
    opts.grid_n1 = 8;
    opts.grid_n2 = 8;
    CHECK_THROWS_AS(nonabelian_chern(axis, BandRange{-1, 3}, opts), std::invalid_argument);
    CHECK_THROWS_AS(nonabelian_chern(axis, BandRange{3, 2}, opts), std::invalid_argument);
}

TEST_CASE("nonabelian_chern: grid-refinement stability at two resolutions") {
    auto axis = golden_axis(15, 0.5, 0.95);
    ChernOptions coarse;
    coarse.grid_n1 = 16;
    coarse.grid_n2 = 16;
    ChernOptions fine;
    fine.grid_n1 = 32;
    fine.grid_n2 = 32;
    auto a = nonabelian_chern(axis, BandRange{6, 8}, coarse);
    auto b = nonabelian_chern(axis, BandRange{6, 8}, fine);
    CHECK(a.integer == b.integer);
    CHECK(b.max_plaquette_flux < a.max_plaquette_flux);
}

TEST_CASE("vector_chern: auto-partition reproduces the frozen golden benchmark") {
    auto axis = golden_axis(15, 0.5, 0.95);
    LatticeSpec spec{{axis, axis}};
    ChernOptions opts;
    opts.grid_n1 = 24;
    opts.grid_n2 = 24;
    auto vc = vector_chern(spec, {}, 3, opts);
    REQUIRE(vc.axes.size() == 2);
    CHECK(vc.auto_partitioned);
    for (const auto& ax : vc.axes) {
        REQUIRE(ax.subsets.size() == 3);
        CHECK(ax.partition.ranges[0].size() == 6);
        CHECK(ax.partition.ranges[1].size() == 3);
        CHECK(ax.partition.ranges[2].size() == 6);
        CHECK(ax.subsets[0].integer == 1);
        CHECK(ax.subsets[1].integer == -2);
        CHECK(ax.subsets[2].integer == 1);
    }
}

TEST_CASE("vector_chern: explicit subsets must be disjoint and in range") {
    auto axis = golden_axis(15, 0.5, 0.95);
    LatticeSpec spec{{axis, axis}};
    ChernOptions opts;
    opts.grid_n1 = 8;
    opts.grid_n2 = 8;
    std::vector<std::vector<BandRange>> overlapping{{{0, 5}, {5, 8}}, {{0, 5}, {6, 8}}};
    CHECK_THROWS_AS(vector_chern(spec, overlapping, 3, opts), std::invalid_argument);
    std::vector<std::vector<BandRange>> wrong_axes{{{0, 5}}};
    CHECK_THROWS_AS(vector_chern(spec, wrong_axes, 3, opts), std::invalid_argument);
}

TEST_CASE("gauge invariance: library fluxes match a phase-randomized recomputation") {
    // Recompute the band-1 flux field from scratch with randomly re-phased
    // eigenframes; normalized links must erase the gauge choice entirely.
    auto axis = rational_axis(30, 1.0, 0.5);
    const int n1 = 12, n2 = 12;
    ChernOptions opts;
    opts.grid_n1 = n1;
    opts.grid_n2 = n2;
    FluxField lib;
    abelian_chern(axis, 1, opts, &lib);

    std::mt19937 rng(20260815);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);
    std::vector<std::vector<Eigen::VectorXcd>> frames(n1);
    double dk = (2.0 * kPi / 3.0) / n1;
    double dphi = 2.0 * kPi / n2;
    for (int i = 0; i < n1; ++i) {
        frames[i].resize(n2);
        for (int j = 0; j < n2; ++j) {
            auto h = build_bloch_hamiltonian(axis.with_phi((j + 0.5) * dphi), (i + 0.5) * dk);
            Eigen::VectorXcd v = eigensolve(h).vectors.col(1);
            frames[i][j] = v * std::exp(Complex(0.0, uphase(rng)));
        }
    }
    auto link = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        Complex d = a.dot(b);
        return d / std::abs(d);
    };
    double maxdiff = 0.0;
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            Complex u1 = link(frames[i][j], frames[(i + 1) % n1][j]);
            Complex u2 = link(frames[i][j], frames[i][(j + 1) % n2]);
            Complex u3 = link(frames[i][(j + 1) % n2], frames[(i + 1) % n1][(j + 1) % n2]);
            Complex u4 = link(frames[(i + 1) % n1][j], frames[(i + 1) % n1][(j + 1) % n2]);
            double f = std::arg(u1 * u4 * std::conj(u3) * std::conj(u2));
            maxdiff = std::max(maxdiff, std::abs(f - lib.flux[i * n2 + j]));
        }
    }
    CHECK(maxdiff < 1e-12);
}

TEST_CASE("chern results are identical across worker counts") {
    auto axis = golden_axis(15, 0.5, 0.95);
    ChernOptions one;
    one.grid_n1 = 16;
    one.grid_n2 = 16;
    one.workers = 1;
    ChernOptions many = one;
    many.workers = 4;
    auto a = nonabelian_chern(axis, BandRange{0, 5}, one);
    auto b = nonabelian_chern(axis, BandRange{0, 5}, many);
    CHECK(a.raw_sum == b.raw_sum);
    CHECK(a.max_plaquette_flux == b.max_plaquette_flux);
}

TEST_SUITE_END();

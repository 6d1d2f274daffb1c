#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hotlat {

using Complex = std::complex<double>;

// Complex amplitudes over a 1- to 3-dimensional site lattice, stored flat.
// Axis 0 (x) varies slowest; the last axis is contiguous. Sites are 0-based
// internally; the CLI layer translates from 1-based user coordinates.
struct StateGrid {
    std::vector<long> dims;
    Eigen::VectorXcd amplitudes;

    StateGrid() = default;
    explicit StateGrid(std::vector<long> dims_in);
    StateGrid(std::vector<long> dims_in, Eigen::VectorXcd amps);

    long size() const { return static_cast<long>(amplitudes.size()); }
    int dimension() const { return static_cast<int>(dims.size()); }

    // Flat index of a site tuple; throws std::domain_error when out of range.
    long flat_index(const std::vector<long>& site) const;
    std::vector<long> site_of(long flat) const;

    // Unit amplitude on a single site, zero elsewhere.
    static StateGrid delta(std::vector<long> dims, const std::vector<long>& site);

    double norm() const { return amplitudes.norm(); }
    void normalize();

    // |amplitude|^2 per site, in flat order. Not normalized.
    std::vector<double> probabilities() const;

    // Inverse participation ratio of the normalized state.
    double ipr() const;
};

}  // namespace hotlat

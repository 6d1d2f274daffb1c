#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hotlat/state_grid.hpp"

namespace hotlat {

using HoppingMatrix = Eigen::MatrixXcd;

// Modulation frequency b. A positive denominator marks a declared rational
// mu/nu (stored coprime); anything else is treated as irrational.
struct Frequency {
    double value = 0.0;
    long num = 0;
    long den = 0;

    Frequency() = default;
    explicit Frequency(double v) : value(v) {}

    static Frequency rational(long mu, long nu);
    static Frequency golden();

    bool is_rational() const { return den > 0; }
};

enum class Boundary { Open, Twisted };

// One modulated direction: bond j couples sites j and j+1 with strength
//   J_j = t * (1 + lambda * cos(2*pi*b*j + phi)).
// Bond indices start at bond_origin, so an open chain of n_sites sites uses
// bonds bond_origin .. bond_origin + n_sites - 2. Under twisted boundary the
// wrap bond bond_origin + n_sites - 1 closes the ring and carries an extra
// phase e^{i*theta}.
struct AxisModulation {
    double t = 1.0;
    double lambda = 0.0;
    Frequency b{};
    double phi = 0.0;
    int n_sites = 2;
    int bond_origin = 1;
    Boundary boundary = Boundary::Open;
    double theta = 0.0;

    void validate() const;

    AxisModulation with_phi(double value) const;
    AxisModulation twisted(double theta_value) const;

    long first_bond() const { return bond_origin; }
    long last_open_bond() const { return bond_origin + n_sites - 2; }
    long wrap_bond() const { return bond_origin + n_sites - 1; }
};

// Coupling strength of bond j. Out-of-range j throws std::domain_error; the
// wrap bond is in range only under twisted boundary.
double bond_strength(const AxisModulation& axis, long j);

// Number of bonds with negative coupling (possible when |lambda| > 1).
int negative_bond_count(const AxisModulation& axis);

// n_sites x n_sites nearest-neighbor Hamiltonian of one axis.
HoppingMatrix build_axis_hamiltonian(const AxisModulation& axis);

struct LatticeSpec {
    std::vector<AxisModulation> axes;

    void validate() const;
    int dimension() const { return static_cast<int>(axes.size()); }
    std::vector<long> site_dims() const;
    long total_sites() const;
};

// Applies m to one tensor axis of v, leaving the other axes alone.
StateGrid apply_axis_matrix(const HoppingMatrix& m, int axis, const StateGrid& v);

// Kronecker sum H = H_x (+) H_y (+) H_z held as its per-axis factors. The
// full operator is never formed unless materialize() is asked for it.
class KroneckerOperator {
public:
    static constexpr long kDefaultMaterializeCap = 4096;

    explicit KroneckerOperator(std::vector<HoppingMatrix> terms);

    const std::vector<HoppingMatrix>& terms() const { return terms_; }
    const std::vector<long>& dims() const { return dims_; }
    int dimension() const { return static_cast<int>(terms_.size()); }
    long total_sites() const { return total_; }

    // y = H v without forming H.
    StateGrid apply(const StateGrid& v) const;

    // Dense form, refused above the cap.
    HoppingMatrix materialize(long cap = kDefaultMaterializeCap) const;

    // Upper bound on the operator norm (sum of per-axis infinity norms).
    double norm_bound() const;

private:
    std::vector<HoppingMatrix> terms_;
    std::vector<long> dims_;
    long total_ = 0;
};

KroneckerOperator kron_sum(const LatticeSpec& spec);

// Wraps an angle into [0, 2*pi) for reporting.
double reduce_angle(double angle);

}  // namespace hotlat

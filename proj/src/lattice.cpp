#include "hotlat/lattice.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hotlat/errors.hpp"

namespace hotlat {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Frequency Frequency::rational(long mu, long nu) {
    if (nu <= 0) throw std::invalid_argument("Frequency: denominator must be positive");
    if (mu < 0) throw std::invalid_argument("Frequency: numerator must be non-negative");
    long g = std::gcd(mu, nu);
    if (g > 1) {
        mu /= g;
        nu /= g;
    }
    Frequency f;
    f.num = mu;
    f.den = nu;
    f.value = static_cast<double>(mu) / static_cast<double>(nu);
    return f;
}

Frequency Frequency::golden() {
    return Frequency((std::sqrt(5.0) + 1.0) / 2.0);
}

void AxisModulation::validate() const {
    if (!(t > 0.0)) throw std::invalid_argument("AxisModulation: t must be positive");
    if (n_sites < 2) throw std::invalid_argument("AxisModulation: need at least 2 sites");
    if (!std::isfinite(lambda) || !std::isfinite(phi) || !std::isfinite(theta) ||
        !std::isfinite(b.value))
        throw std::invalid_argument("AxisModulation: parameters must be finite");
    if (b.value < 0.0) throw std::invalid_argument("AxisModulation: b must be non-negative");
}

AxisModulation AxisModulation::with_phi(double value) const {
    AxisModulation copy = *this;
    copy.phi = value;
    return copy;
}

AxisModulation AxisModulation::twisted(double theta_value) const {
    AxisModulation copy = *this;
    copy.boundary = Boundary::Twisted;
    copy.theta = theta_value;
    return copy;
}

double bond_strength(const AxisModulation& axis, long j) {
    axis.validate();
    bool in_open_range = j >= axis.first_bond() && j <= axis.last_open_bond();
    bool is_wrap = axis.boundary == Boundary::Twisted && j == axis.wrap_bond();
    if (!in_open_range && !is_wrap)
        throw std::domain_error("bond_strength: bond index " + std::to_string(j) +
                                " out of range");
    double arg = kTwoPi * axis.b.value * static_cast<double>(j) + axis.phi;
    return axis.t * (1.0 + axis.lambda * std::cos(arg));
}

int negative_bond_count(const AxisModulation& axis) {
    axis.validate();
    int count = 0;
    long last = axis.boundary == Boundary::Twisted ? axis.wrap_bond() : axis.last_open_bond();
    for (long j = axis.first_bond(); j <= last; ++j)
        if (bond_strength(axis, j) < 0.0) ++count;
    return count;
}

HoppingMatrix build_axis_hamiltonian(const AxisModulation& axis) {
    axis.validate();
    long n = axis.n_sites;
    HoppingMatrix h = HoppingMatrix::Zero(n, n);
    for (long s = 0; s + 1 < n; ++s) {
        double j = bond_strength(axis, axis.first_bond() + s);
        h(s, s + 1) = Complex(j, 0.0);
        h(s + 1, s) = Complex(j, 0.0);
    }
    if (axis.boundary == Boundary::Twisted) {
        Complex wrap = bond_strength(axis, axis.wrap_bond()) *
                       std::exp(Complex(0.0, axis.theta));
        h(n - 1, 0) += wrap;
        h(0, n - 1) += std::conj(wrap);
    }
    return h;
}

void LatticeSpec::validate() const {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("LatticeSpec: dimension must be 1, 2, or 3");
    for (const auto& axis : axes) axis.validate();
}

std::vector<long> LatticeSpec::site_dims() const {
    std::vector<long> dims;
    dims.reserve(axes.size());
    for (const auto& axis : axes) dims.push_back(axis.n_sites);
    return dims;
}

long LatticeSpec::total_sites() const {
    long total = 1;
    for (const auto& axis : axes) total *= axis.n_sites;
    return total;
}

StateGrid apply_axis_matrix(const HoppingMatrix& m, int axis, const StateGrid& v) {
    if (axis < 0 || axis >= v.dimension())
        throw std::invalid_argument("apply_axis_matrix: axis out of range");
    long n = v.dims[static_cast<std::size_t>(axis)];
    if (m.rows() != m.cols() || m.rows() != n)
        throw std::invalid_argument("apply_axis_matrix: matrix does not match axis dimension");

    long left = 1, right = 1;
    for (int a = 0; a < axis; ++a) left *= v.dims[static_cast<std::size_t>(a)];
    for (int a = axis + 1; a < v.dimension(); ++a) right *= v.dims[static_cast<std::size_t>(a)];

    StateGrid out(v.dims);
    // Each contiguous block of n*right amplitudes is a (right x n) column-major
    // matrix whose columns are the fibers along `axis`.
    for (long blk = 0; blk < left; ++blk) {
        Eigen::Map<const Eigen::MatrixXcd> src(v.amplitudes.data() + blk * n * right, right, n);
        Eigen::Map<Eigen::MatrixXcd> dst(out.amplitudes.data() + blk * n * right, right, n);
        dst.noalias() = src * m.transpose();
    }
    return out;
}

KroneckerOperator::KroneckerOperator(std::vector<HoppingMatrix> terms)
    : terms_(std::move(terms)) {
    if (terms_.empty() || terms_.size() > 3)
        throw std::invalid_argument("KroneckerOperator: need 1 to 3 axis terms");
    total_ = 1;
    for (const auto& m : terms_) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw std::invalid_argument("KroneckerOperator: axis terms must be square");
        dims_.push_back(m.rows());
        total_ *= m.rows();
    }
}

StateGrid KroneckerOperator::apply(const StateGrid& v) const {
    if (v.dims != dims_)
        throw std::invalid_argument("KroneckerOperator: state dims do not match operator");
    StateGrid out(v.dims);
    for (int axis = 0; axis < dimension(); ++axis)
        out.amplitudes += apply_axis_matrix(terms_[static_cast<std::size_t>(axis)], axis, v)
                              .amplitudes;
    return out;
}

HoppingMatrix KroneckerOperator::materialize(long cap) const {
    if (total_ > cap)
        throw ResourceError("KroneckerOperator: dense form is " + std::to_string(total_) + "x" +
                            std::to_string(total_) + ", above the cap of " + std::to_string(cap) +
                            "; use apply() instead");
    HoppingMatrix full = HoppingMatrix::Zero(total_, total_);
    for (int axis = 0; axis < dimension(); ++axis) {
        const HoppingMatrix& h = terms_[static_cast<std::size_t>(axis)];
        long n = dims_[static_cast<std::size_t>(axis)];
        long left = 1, right = 1;
        for (int a = 0; a < axis; ++a) left *= dims_[static_cast<std::size_t>(a)];
        for (int a = axis + 1; a < dimension(); ++a) right *= dims_[static_cast<std::size_t>(a)];
        for (long blk = 0; blk < left; ++blk)
            for (long row = 0; row < n; ++row)
                for (long col = 0; col < n; ++col) {
                    Complex value = h(row, col);
                    if (value == Complex(0.0, 0.0)) continue;
                    long base_r = (blk * n + row) * right;
                    long base_c = (blk * n + col) * right;
                    for (long r = 0; r < right; ++r) full(base_r + r, base_c + r) += value;
                }
    }
    return full;
}

double KroneckerOperator::norm_bound() const {
    double bound = 0.0;
    for (const auto& m : terms_) bound += m.cwiseAbs().rowwise().sum().maxCoeff();
    return bound;
}

KroneckerOperator kron_sum(const LatticeSpec& spec) {
    spec.validate();
    std::vector<HoppingMatrix> terms;
    terms.reserve(spec.axes.size());
    for (const auto& axis : spec.axes) terms.push_back(build_axis_hamiltonian(axis));
    return KroneckerOperator(std::move(terms));
}

double reduce_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

}  // namespace hotlat

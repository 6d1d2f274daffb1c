#include "hotlat/state_grid.hpp"

#include <stdexcept>
#include <string>

namespace hotlat {

namespace {

long checked_total(const std::vector<long>& dims) {
    if (dims.empty() || dims.size() > 3)
        throw std::invalid_argument("StateGrid: dimension must be 1, 2, or 3");
    long total = 1;
    for (long d : dims) {
        if (d < 1) throw std::invalid_argument("StateGrid: axis dimensions must be positive");
        total *= d;
    }
    return total;
}

}  // namespace

StateGrid::StateGrid(std::vector<long> dims_in) : dims(std::move(dims_in)) {
    amplitudes = Eigen::VectorXcd::Zero(checked_total(dims));
}

StateGrid::StateGrid(std::vector<long> dims_in, Eigen::VectorXcd amps)
    : dims(std::move(dims_in)), amplitudes(std::move(amps)) {
    if (checked_total(dims) != amplitudes.size())
        throw std::invalid_argument("StateGrid: amplitude count does not match dims");
}

long StateGrid::flat_index(const std::vector<long>& site) const {
    if (site.size() != dims.size())
        throw std::domain_error("StateGrid: site tuple has wrong rank");
    long flat = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        if (site[a] < 0 || site[a] >= dims[a])
            throw std::domain_error("StateGrid: site coordinate " + std::to_string(site[a]) +
                                    " out of range on axis " + std::to_string(a));
        flat = flat * dims[a] + site[a];
    }
    return flat;
}

std::vector<long> StateGrid::site_of(long flat) const {
    if (flat < 0 || flat >= size()) throw std::domain_error("StateGrid: flat index out of range");
    std::vector<long> site(dims.size());
    for (std::size_t a = dims.size(); a-- > 0;) {
        site[a] = flat % dims[a];
        flat /= dims[a];
    }
    return site;
}

StateGrid StateGrid::delta(std::vector<long> dims, const std::vector<long>& site) {
    StateGrid grid(std::move(dims));
    grid.amplitudes[grid.flat_index(site)] = Complex(1.0, 0.0);
    return grid;
}

void StateGrid::normalize() {
    double n = norm();
    if (n == 0.0) throw std::domain_error("StateGrid: cannot normalize the zero state");
    amplitudes /= n;
}

std::vector<double> StateGrid::probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(size()));
    for (long i = 0; i < size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(amplitudes[i]);
    return p;
}

double StateGrid::ipr() const {
    double norm2 = amplitudes.squaredNorm();
    if (norm2 == 0.0) throw std::domain_error("StateGrid: IPR of the zero state");
    double quartic = 0.0;
    for (long i = 0; i < size(); ++i) {
        double p = std::norm(amplitudes[i]);
        quartic += p * p;
    }
    return quartic / (norm2 * norm2);
}

}  // namespace hotlat

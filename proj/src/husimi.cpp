#include "dimer/husimi.hpp"

#include <cmath>
#include <stdexcept>

namespace dimer {

double SphereGrid::normalization(int N) const {
    const double dtheta = M_PI / theta.size();
    const double dphi = 2.0 * M_PI / phi.size();
    double integral = 0.0;
    for (std::size_t it = 0; it < theta.size(); ++it) {
        double row = 0.0;
        for (std::size_t ip = 0; ip < phi.size(); ++ip)
            row += values[it * phi.size() + ip];
        integral += row * std::sin(theta[it]) * dtheta * dphi;
    }
    return (N + 1) / (4.0 * M_PI) * integral;
}

double husimi_point(const QuantumState& psi, double theta, double phi) {
    const QuantumState coh = coherent_state(psi.N, theta, phi);
    const Complex overlap = coh.amps.dot(psi.amps);  // conjugates coh
    return std::norm(overlap);
}

namespace {

SphereGrid grid_impl(const QuantumState& psi, int n_theta, int n_phi, bool parallel) {
    if (n_theta < 8 || n_phi < 8)
        throw std::invalid_argument("husimi_grid: resolution must be at least 8x8");
    SphereGrid grid;
    grid.theta.resize(n_theta);
    grid.phi.resize(n_phi);
    for (int i = 0; i < n_theta; ++i) grid.theta[i] = (i + 0.5) * M_PI / n_theta;
    for (int j = 0; j < n_phi; ++j)
        grid.phi[j] = -M_PI + (j + 0.5) * 2.0 * M_PI / n_phi;
    grid.values.resize(static_cast<std::size_t>(n_theta) * n_phi);

    auto fill_row = [&](int i) {
        for (int j = 0; j < n_phi; ++j)
            grid.values[static_cast<std::size_t>(i) * n_phi + j] =
                husimi_point(psi, grid.theta[i], grid.phi[j]);
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_theta; ++i) fill_row(i);
    } else {
        for (int i = 0; i < n_theta; ++i) fill_row(i);
    }
    return grid;
}

}  // namespace

SphereGrid husimi_grid(const QuantumState& psi, int n_theta, int n_phi) {
    return grid_impl(psi, n_theta, n_phi, true);
}

SphereGrid husimi_grid_serial(const QuantumState& psi, int n_theta, int n_phi) {
    return grid_impl(psi, n_theta, n_phi, false);
}

}  // namespace dimer

#ifndef DIMER_HUSIMI_HPP
#define DIMER_HUSIMI_HPP

#include <vector>

#include "dimer/model.hpp"

namespace dimer {

/// Q(theta, phi) = |<coherent(theta,phi)|psi>|^2 on an equal-angle grid
/// (cell midpoints). Normalization: (N+1)/(4 pi) int Q dOmega = 1.
struct SphereGrid {
    std::vector<double> theta;   // n_theta midpoints in (0, pi)
    std::vector<double> phi;     // n_phi midpoints in (-pi, pi)
    std::vector<double> values;  // row-major [theta][phi]

    double value(int it, int ip) const {
        return values[static_cast<std::size_t>(it) * phi.size() + ip];
    }
    /// Quadrature of (N+1)/(4 pi) int Q dOmega with sin(theta) weights.
    double normalization(int N) const;
};

double husimi_point(const QuantumState& psi, double theta, double phi);

SphereGrid husimi_grid(const QuantumState& psi, int n_theta, int n_phi);
/// Serial reference for the OpenMP kernel above; results are bit-identical.
SphereGrid husimi_grid_serial(const QuantumState& psi, int n_theta, int n_phi);

}  // namespace dimer

#endif

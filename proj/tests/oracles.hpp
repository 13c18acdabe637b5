// Test-only oracles, independent of the library's computational paths:
// second-quantized operator construction, a cyclic Jacobi eigensolver, a
// high-order ODE integrator for the Schroedinger equation, and a classical
// landscape minima counter.

#ifndef DIMER_TESTS_ORACLES_HPP
#define DIMER_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include "dimer/model.hpp"
#include "dimer/schedule.hpp"

namespace oracles {

/// a2^dag a1 on the |N-n, n> basis (moves one atom from site 1 to site 2).
Eigen::MatrixXd hop_12(int N);
/// a1^dag a2.
Eigen::MatrixXd hop_21(int N);
Eigen::MatrixXd number_site1(int N);
Eigen::MatrixXd number_site2(int N);

/// -U Sz^2 - Delta Sz - J Sx assembled by explicit matrix products of the
/// second-quantized operators above.
Eigen::MatrixXd brute_hamiltonian(const dimer::ModelParams& params);

/// Cyclic Jacobi rotations; ascending eigenvalues, orthonormal columns.
void jacobi_eigensystem(Eigen::MatrixXd A, Eigen::VectorXd& evals,
                        Eigen::MatrixXd& evecs);

/// Adaptive RKF78 integration of i dpsi/dt = H(t) psi under the schedule
/// (no events), with tight tolerances.
dimer::QuantumState integrate_schrodinger(const dimer::QuantumState& initial,
                                          const dimer::ControlSchedule& schedule,
                                          const dimer::ModelParams& base,
                                          double tol = 1e-12);

/// Local minima of the classical energy on the S_y = 0 great circle
/// (all critical points lie there).
int count_classical_minima(double NU, double Delta, double J, int grid = 1 << 20);

/// Bifurcation coupling located by bisection on the minima count.
double critical_coupling_oracle(double NU, double Delta, double rel_tol = 1e-8);

}  // namespace oracles

#endif

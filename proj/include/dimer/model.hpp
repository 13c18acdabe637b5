#ifndef DIMER_MODEL_HPP
#define DIMER_MODEL_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dimer {

using Complex = std::complex<double>;

/// Physical configuration of the two-mode dimer in reduced units (hbar = 1).
/// N particles, on-site interaction U (attractive convention, U > 0 in
/// protocol runs), hopping J >= 0 and site-energy bias Delta.
struct ModelParams {
    int N = 1;
    double U = 0.0;
    double J = 0.0;
    double Delta = 0.0;

    double NU() const { return static_cast<double>(N) * U; }
    /// Dimensionless landscape parameter u = NU/J.
    double u() const { return NU() / J; }

    void validate() const;  // throws std::invalid_argument
};

/// H = -U Sz^2 - Delta Sz - J Sx on the Fock basis |N-n, n>, n = 0..N.
/// Real symmetric tridiagonal; the off-diagonal is stored once.
struct TridiagonalHamiltonian {
    std::vector<double> diag;     // size N+1
    std::vector<double> offdiag;  // size N
    ModelParams params;

    int dim() const { return static_cast<int>(diag.size()); }

    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

    /// Cheap upper bound on the spectral norm (max absolute row sum).
    double norm_bound() const;
};

/// Pure state c_0..c_N over |N-n, n>, unit norm.
struct QuantumState {
    int N = 0;
    Eigen::VectorXcd amps;

    double norm() const { return amps.norm(); }
    void require_normalized(double tol = 1e-10) const;
};

TridiagonalHamiltonian build_hamiltonian(const ModelParams& params);

/// Coupling at which the classical landscape bifurcates:
/// J_c = [(NU)^{2/3} - |Delta|^{2/3}]^{3/2}. Requires |Delta| <= NU.
double critical_coupling(int N, double U, double Delta);

/// Spin coherent state at Bloch angles (theta, phi); theta = 0 is |N,0>.
/// Amplitudes are assembled in log space so N of a few thousand is fine.
QuantumState coherent_state(int N, double theta, double phi);

/// (|N,0> + e^{i*relative_phase} |0,N>)/sqrt(2). relative_phase is the full
/// accumulated phase N*varphi.
QuantumState cat_state(int N, double relative_phase);

// Spin-operator matrix elements on the Fock basis.
inline double sz_diag(int N, int n) { return 0.5 * N - n; }
inline double sx_offdiag(int N, int n) {
    // <n+1|Sx|n> = <n|Sx|n+1> = sqrt((n+1)(N-n))/2
    return 0.5 * std::sqrt(static_cast<double>(n + 1) * (N - n));
}

double expect_sz(const QuantumState& psi);
double expect_sx(const QuantumState& psi);
double expect_sy(const QuantumState& psi);

}  // namespace dimer

#endif

#include "dimer/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dimer {

void ModelParams::validate() const {
    if (N < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
    if (!std::isfinite(U) || !std::isfinite(J) || !std::isfinite(Delta))
        throw std::invalid_argument("ModelParams: non-finite parameter");
    if (J < 0.0) throw std::invalid_argument("ModelParams: J must be >= 0");
}

void TridiagonalHamiltonian::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    const int d = dim();
    y.resize(d);
    for (int i = 0; i < d; ++i) {
        Complex acc = diag[i] * x[i];
        if (i > 0) acc += offdiag[i - 1] * x[i - 1];
        if (i < d - 1) acc += offdiag[i] * x[i + 1];
        y[i] = acc;
    }
}

Eigen::VectorXd TridiagonalHamiltonian::apply(const Eigen::VectorXd& x) const {
    const int d = dim();
    Eigen::VectorXd y(d);
    for (int i = 0; i < d; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += offdiag[i - 1] * x[i - 1];
        if (i < d - 1) acc += offdiag[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

double TridiagonalHamiltonian::norm_bound() const {
    double bound = 0.0;
    const int d = dim();
    for (int i = 0; i < d; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(offdiag[i - 1]);
        if (i < d - 1) row += std::abs(offdiag[i]);
        bound = std::max(bound, row);
    }
    return bound;
}

void QuantumState::require_normalized(double tol) const {
    if (std::abs(norm() - 1.0) > tol)
        throw std::runtime_error("QuantumState: norm deviates from 1 beyond tolerance");
}

TridiagonalHamiltonian build_hamiltonian(const ModelParams& params) {
    params.validate();
    const int N = params.N;
    TridiagonalHamiltonian H;
    H.params = params;
    H.diag.resize(N + 1);
    H.offdiag.resize(N);
    for (int n = 0; n <= N; ++n) {
        const double sz = sz_diag(N, n);
        H.diag[n] = -params.U * sz * sz - params.Delta * sz;
    }
    for (int n = 0; n < N; ++n) H.offdiag[n] = -params.J * sx_offdiag(N, n);
    return H;
}

double critical_coupling(int N, double U, double Delta) {
    const double nu = static_cast<double>(N) * U;
    if (!(nu > 0.0)) throw std::invalid_argument("critical_coupling: NU must be positive");
    const double ad = std::abs(Delta);
    if (ad > nu) throw std::domain_error("critical_coupling: |Delta| > NU, no bifurcation");
    const double bracket = std::pow(nu, 2.0 / 3.0) - std::pow(ad, 2.0 / 3.0);
    if (bracket <= 0.0) return 0.0;
    return std::pow(bracket, 1.5);
}

QuantumState coherent_state(int N, double theta, double phi) {
    if (N < 1) throw std::invalid_argument("coherent_state: N must be >= 1");
    if (theta < 0.0 || theta > M_PI)
        throw std::invalid_argument("coherent_state: theta outside [0, pi]");
    QuantumState psi;
    psi.N = N;
    psi.amps = Eigen::VectorXcd::Zero(N + 1);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    if (s == 0.0) {
        psi.amps[0] = 1.0;
        return psi;
    }
    if (c == 0.0) {
        psi.amps[N] = std::polar(1.0, N * phi);
        return psi;
    }
    const double lc = std::log(c);
    const double ls = std::log(s);
    const double lgN = std::lgamma(N + 1.0);
    for (int n = 0; n <= N; ++n) {
        const double lbinom = lgN - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
        const double mag = std::exp(0.5 * lbinom + (N - n) * lc + n * ls);
        psi.amps[n] = std::polar(mag, n * phi);
    }
    // Renormalize: log-space assembly is accurate but not exactly unit.
    psi.amps /= psi.amps.norm();
    return psi;
}

QuantumState cat_state(int N, double relative_phase) {
    if (N < 1) throw std::invalid_argument("cat_state: N must be >= 1");
    QuantumState psi;
    psi.N = N;
    psi.amps = Eigen::VectorXcd::Zero(N + 1);
    psi.amps[0] = 1.0 / std::sqrt(2.0);
    psi.amps[N] = std::polar(1.0 / std::sqrt(2.0), relative_phase);
    return psi;
}

double expect_sz(const QuantumState& psi) {
    double acc = 0.0;
    for (int n = 0; n <= psi.N; ++n) acc += sz_diag(psi.N, n) * std::norm(psi.amps[n]);
    return acc;
}

double expect_sx(const QuantumState& psi) {
    // Sx couples n and n+1 with a real element, so <Sx> = 2 Re sum c*_n+1 c_n * elem.
    double acc = 0.0;
    for (int n = 0; n < psi.N; ++n)
        acc += 2.0 * sx_offdiag(psi.N, n) * std::real(std::conj(psi.amps[n + 1]) * psi.amps[n]);
    return acc;
}

double expect_sy(const QuantumState& psi) {
    // <n+1|Sy|n> = i/2 sqrt((n+1)(N-n))
    double acc = 0.0;
    for (int n = 0; n < psi.N; ++n)
        acc += 2.0 * sx_offdiag(psi.N, n) *
               std::imag(std::conj(psi.amps[n]) * psi.amps[n + 1]);
    return acc;
}

}  // namespace dimer

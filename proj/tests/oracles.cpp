#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace oracles {

Eigen::MatrixXd hop_12(int N) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int n = 0; n < N; ++n) {
        // a2^dag a1 |N-n, n> = sqrt((N-n)(n+1)) |N-n-1, n+1>
        op(n + 1, n) = std::sqrt(static_cast<double>(N - n) * (n + 1));
    }
    return op;
}

Eigen::MatrixXd hop_21(int N) { return hop_12(N).transpose(); }

Eigen::MatrixXd number_site1(int N) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) op(n, n) = N - n;
    return op;
}

Eigen::MatrixXd number_site2(int N) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) op(n, n) = n;
    return op;
}

Eigen::MatrixXd brute_hamiltonian(const dimer::ModelParams& params) {
    const int N = params.N;
    const Eigen::MatrixXd sz = 0.5 * (number_site1(N) - number_site2(N));
    const Eigen::MatrixXd sx = 0.5 * (hop_12(N) + hop_21(N));
    return -params.U * sz * sz - params.Delta * sz - params.J * sx;
}

void jacobi_eigensystem(Eigen::MatrixXd A, Eigen::VectorXd& evals,
                        Eigen::MatrixXd& evecs) {
    const int n = static_cast<int>(A.rows());
    evecs = Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (std::sqrt(off) < 1e-15 * scale * n) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * A(p, q), A(q, q) - A(p, p));
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = evecs(k, p), vkq = evecs(k, q);
                    evecs(k, p) = c * vkp - s * vkq;
                    evecs(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    evals.resize(n);
    for (int i = 0; i < n; ++i) evals[i] = A(i, i);
    // Sort ascending, permuting columns along.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return evals[a] < evals[b]; });
    Eigen::VectorXd se(n);
    Eigen::MatrixXd sv(n, n);
    for (int i = 0; i < n; ++i) {
        se[i] = evals[idx[i]];
        sv.col(i) = evecs.col(idx[i]);
    }
    evals = se;
    evecs = sv;
}

namespace {
using OdeState = std::vector<std::complex<double>>;
}

dimer::QuantumState integrate_schrodinger(const dimer::QuantumState& initial,
                                          const dimer::ControlSchedule& schedule,
                                          const dimer::ModelParams& base, double tol) {
    namespace ode = boost::numeric::odeint;
    const int dim = initial.N + 1;
    OdeState state(dim);
    for (int i = 0; i < dim; ++i) state[i] = initial.amps[i];

    auto rhs = [&](const OdeState& psi, OdeState& dpsi, double t) {
        const auto [J, D] = schedule.controls_at(t);
        dimer::ModelParams p = base;
        p.J = J;
        p.Delta = D;
        const dimer::TridiagonalHamiltonian H = dimer::build_hamiltonian(p);
        dpsi.resize(dim);
        const std::complex<double> mi(0.0, -1.0);
        for (int i = 0; i < dim; ++i) {
            std::complex<double> acc = H.diag[i] * psi[i];
            if (i > 0) acc += H.offdiag[i - 1] * psi[i - 1];
            if (i < dim - 1) acc += H.offdiag[i] * psi[i + 1];
            dpsi[i] = mi * acc;
        }
    };

    using Stepper = ode::runge_kutta_fehlberg78<OdeState>;
    const double T = schedule.total_duration();
    ode::integrate_adaptive(ode::make_controlled<Stepper>(tol, tol), rhs, state, 0.0,
                            T, std::min(1e-3, T));
    dimer::QuantumState out;
    out.N = initial.N;
    out.amps.resize(dim);
    for (int i = 0; i < dim; ++i) out.amps[i] = state[i];
    out.amps /= out.amps.norm();
    return out;
}

namespace {

// Energy along the S_y = 0 great circle, |S| = N/2 normalized out:
// f(t) = -(NU/2) cos^2 t - Delta cos t - J sin t  (per N/2).
inline double circle_energy(double NU, double Delta, double J, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return -0.5 * NU * c * c - Delta * c - J * s;
}

}  // namespace

int count_classical_minima(double NU, double Delta, double J, int grid) {
    std::vector<double> f(grid);
    for (int i = 0; i < grid; ++i)
        f[i] = circle_energy(NU, Delta, J, 2.0 * M_PI * i / grid);
    int count = 0;
    for (int i = 0; i < grid; ++i) {
        const double prev = f[(i + grid - 1) % grid];
        const double next = f[(i + 1) % grid];
        if (f[i] < prev && f[i] < next) ++count;
    }
    return count;
}

double critical_coupling_oracle(double NU, double Delta, double rel_tol) {
    if (std::abs(Delta) >= NU) return 0.0;
    double lo = 1e-9 * NU;  // double-well side
    double hi = 1.2 * NU;   // single-well side
    if (count_classical_minima(NU, Delta, lo) < 2)
        throw std::runtime_error("critical_coupling_oracle: no double well at small J");
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_classical_minima(NU, Delta, mid) >= 2)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) < rel_tol * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles

#include "dimer/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace dimer {

namespace {

constexpr double kDegeneracyRelTol = 1e-13;

void fix_sign(Eigen::MatrixXd& V) {
    for (int c = 0; c < V.cols(); ++c) {
        int imax = 0;
        V.col(c).cwiseAbs().maxCoeff(&imax);
        if (V(imax, c) < 0.0) V.col(c) = -V.col(c);
    }
}

void check_residuals(const TridiagonalHamiltonian& H, const SpectrumSnapshot& snap) {
    const double scale = std::max(H.norm_bound(), 1.0);
    for (int nu = 1; nu <= snap.levels(); ++nu) {
        const Eigen::VectorXd v = snap.vectors.col(nu - 1);
        const double res = (H.apply(v) - snap.energy(nu) * v).norm();
        if (res > 1e-10 * scale)
            throw std::runtime_error("eigensystem: residual too large at level " +
                                     std::to_string(nu));
    }
}

}  // namespace

SpectrumSnapshot eigensystem(const TridiagonalHamiltonian& H) {
    const int d = H.dim();
    SpectrumSnapshot snap;
    snap.params = H.params;
    std::vector<double> diag = H.diag;
    std::vector<double> off = H.offdiag;
    snap.vectors.resize(d, d);
    // Divide-and-conquer for the full symmetric tridiagonal eigensystem.
    lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', d, diag.data(),
                                     off.empty() ? nullptr : off.data(),
                                     snap.vectors.data(), d);
    if (info != 0)
        throw std::runtime_error("eigensystem: dstevd failed to converge, info=" +
                                 std::to_string(info));
    snap.energies = Eigen::Map<Eigen::VectorXd>(diag.data(), d);
    fix_sign(snap.vectors);
    check_residuals(H, snap);
    return snap;
}

Eigen::VectorXd eigenvalues_only(const TridiagonalHamiltonian& H) {
    const int d = H.dim();
    std::vector<double> diag = H.diag;
    std::vector<double> off = H.offdiag;
    lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', d, diag.data(),
                                    off.empty() ? nullptr : off.data(), nullptr, d);
    if (info != 0)
        throw std::runtime_error("eigenvalues_only: dstev failed, info=" +
                                 std::to_string(info));
    return Eigen::Map<Eigen::VectorXd>(diag.data(), d);
}

SpectrumSnapshot eigensystem_lowest(const TridiagonalHamiltonian& H, int k) {
    const int d = H.dim();
    if (k < 1 || k > d)
        throw std::invalid_argument("eigensystem_lowest: bad level count");
    SpectrumSnapshot snap;
    snap.params = H.params;
    std::vector<double> diag = H.diag;
    std::vector<double> off = H.offdiag;
    std::vector<double> w(d);
    Eigen::MatrixXd z(d, k);
    std::vector<lapack_int> isuppz(2 * std::max(1, k));
    lapack_int m = 0;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', d, diag.data(),
                                     off.empty() ? nullptr : off.data(), 0.0, 0.0,
                                     1, k, 0.0, &m, w.data(), z.data(), d,
                                     isuppz.data());
    if (info != 0 || m != k)
        throw std::runtime_error("eigensystem_lowest: dstevr failed, info=" +
                                 std::to_string(info));
    snap.energies = Eigen::Map<Eigen::VectorXd>(w.data(), k);
    snap.vectors = z;
    fix_sign(snap.vectors);
    return snap;
}

std::vector<Parity> classify_parity(SpectrumSnapshot& snap) {
    if (snap.params.Delta != 0.0)
        throw std::domain_error("classify_parity: requires Delta = 0");
    const int d = snap.vectors.rows();
    const int k = snap.levels();
    const double scale = std::max(snap.energies.cwiseAbs().maxCoeff(), 1e-300);

    auto mirrored = [d](const Eigen::VectorXd& v) {
        return v.reverse().eval();
    };

    std::vector<Parity> labels(k);
    int nu = 0;
    while (nu < k) {
        const bool quasi_degenerate =
            nu + 1 < k &&
            std::abs(snap.energies[nu + 1] - snap.energies[nu]) < 1e-8 * scale;
        if (quasi_degenerate) {
            // Doublet: once the splitting approaches rounding the solver
            // returns an arbitrary mixture, so re-combine the pair into
            // (even, odd). A no-op if the vectors are already parity-pure.
            const Eigen::VectorXd v = snap.vectors.col(nu);
            const Eigen::VectorXd w = snap.vectors.col(nu + 1);
            Eigen::VectorXd e1 = v + mirrored(v), e2 = w + mirrored(w);
            Eigen::VectorXd o1 = v - mirrored(v), o2 = w - mirrored(w);
            Eigen::VectorXd even = e1.norm() >= e2.norm() ? e1 : e2;
            Eigen::VectorXd odd = o1.norm() >= o2.norm() ? o1 : o2;
            snap.vectors.col(nu) = even / even.norm();
            snap.vectors.col(nu + 1) = odd / odd.norm();
            labels[nu] = Parity::Even;
            labels[nu + 1] = Parity::Odd;
            nu += 2;
            continue;
        }
        const Eigen::VectorXd v = snap.vectors.col(nu);
        const double overlap = v.dot(mirrored(v));  // +1 even, -1 odd
        if (std::abs(std::abs(overlap) - 1.0) > 1e-8)
            throw std::runtime_error("classify_parity: mixed-parity vector at level " +
                                     std::to_string(nu + 1));
        labels[nu] = overlap > 0.0 ? Parity::Even : Parity::Odd;
        ++nu;
    }
    // Re-apply the sign convention to any re-combined columns.
    for (int c = 0; c < k; ++c) {
        int imax = 0;
        snap.vectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (snap.vectors(imax, c) < 0.0) snap.vectors.col(c) = -snap.vectors.col(c);
    }
    snap.parity = labels;
    return labels;
}

namespace {

double tridiag_sandwich(const SpectrumSnapshot& snap, int nu, int mu, bool use_sx) {
    const int k = snap.levels();
    if (nu < 1 || mu < 1 || nu > k || mu > k)
        throw std::invalid_argument("matrix element: level index out of range");
    const int N = snap.params.N;
    const Eigen::VectorXd& a = snap.vectors.col(mu - 1);
    const Eigen::VectorXd& b = snap.vectors.col(nu - 1);
    double acc = 0.0;
    if (use_sx) {
        for (int n = 0; n < N; ++n)
            acc += sx_offdiag(N, n) * (a[n] * b[n + 1] + a[n + 1] * b[n]);
    } else {
        for (int n = 0; n <= N; ++n) acc += sz_diag(N, n) * a[n] * b[n];
    }
    return acc;
}

}  // namespace

double sx_matrix_element(const SpectrumSnapshot& snap, int nu, int mu) {
    return tridiag_sandwich(snap, nu, mu, true);
}

double sz_matrix_element(const SpectrumSnapshot& snap, int nu, int mu) {
    return tridiag_sandwich(snap, nu, mu, false);
}

double f_susceptibility(const SpectrumSnapshot& snap, int from_level, int to_level) {
    if (from_level == to_level)
        throw std::invalid_argument("f_susceptibility: levels must differ");
    const double gap = snap.energy(to_level) - snap.energy(from_level);
    const double scale = std::max(snap.energies.cwiseAbs().maxCoeff(), 1e-300);
    if (std::abs(gap) <= kDegeneracyRelTol * scale)
        throw std::runtime_error("f_susceptibility: degenerate level pair");
    return std::abs(sx_matrix_element(snap, from_level, to_level)) / (gap * gap);
}

double f_susceptibility(const ModelParams& params, int from_level, int to_level) {
    // At Delta = 0 fetch one extra level so a quasi-degenerate doublet at the
    // top can be disentangled into parity eigenstates first.
    const int top = std::max(from_level, to_level);
    const int need = params.Delta == 0.0 ? std::min(top + 1, params.N + 1) : top;
    SpectrumSnapshot snap = eigensystem_lowest(build_hamiltonian(params), need);
    if (params.Delta == 0.0) classify_parity(snap);
    return f_susceptibility(snap, from_level, to_level);
}

double frequency_from_spectrum(const SpectrumSnapshot& snap, int nu) {
    if (nu < 1 || nu >= snap.levels())
        throw std::invalid_argument("frequency_from_spectrum: index out of range");
    return snap.energy(nu + 1) - snap.energy(nu);
}

}  // namespace dimer

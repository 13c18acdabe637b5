#ifndef DIMER_SPECTRUM_HPP
#define DIMER_SPECTRUM_HPP

#include <optional>
#include <vector>

#include "dimer/model.hpp"

namespace dimer {

enum class Parity { Even, Odd };

/// Instantaneous eigensystem of the dimer Hamiltonian. Levels are indexed
/// nu = 1..N+1 with the ground state nu = 1; column nu-1 of `vectors` holds
/// the corresponding eigenvector. Sign convention: the largest-magnitude
/// component of each vector is real positive.
struct SpectrumSnapshot {
    Eigen::VectorXd energies;                    // ascending
    Eigen::MatrixXd vectors;                     // orthonormal columns
    std::optional<std::vector<Parity>> parity;   // set by classify_parity
    ModelParams params;

    int levels() const { return static_cast<int>(energies.size()); }
    Eigen::VectorXd level(int nu) const { return vectors.col(nu - 1); }
    double energy(int nu) const { return energies[nu - 1]; }
};

/// Full eigensystem. Residuals ||Hv - Ev|| are checked against
/// 1e-10 * ||H|| per level.
SpectrumSnapshot eigensystem(const TridiagonalHamiltonian& H);

/// Eigenvalues only (no vectors); much cheaper for large N.
Eigen::VectorXd eigenvalues_only(const TridiagonalHamiltonian& H);

/// Lowest k eigenpairs only.
SpectrumSnapshot eigensystem_lowest(const TridiagonalHamiltonian& H, int k);

/// Mirror-parity labels under n <-> N-n. Only defined for Delta = 0.
/// Quasi-degenerate doublet vectors are re-combined into even/odd pairs
/// in place (the raw solver output is an arbitrary mixture once the
/// splitting underflows); labels are also cached on the snapshot.
std::vector<Parity> classify_parity(SpectrumSnapshot& snap);

/// <mu|Sx|nu> and <mu|Sz|nu>, 1-based level indices.
double sx_matrix_element(const SpectrumSnapshot& snap, int nu, int mu);
double sz_matrix_element(const SpectrumSnapshot& snap, int nu, int mu);

/// Adiabaticity susceptibility F = |<mu|Sx|nu>| / (E_mu - E_nu)^2.
/// Throws if the pair is degenerate beyond 1e-13 relative; parity-forbidden
/// channels must be excluded by the caller.
double f_susceptibility(const SpectrumSnapshot& snap, int from_level, int to_level);
double f_susceptibility(const ModelParams& params, int from_level, int to_level);

/// Level spacing omega = E_{nu+1} - E_nu.
double frequency_from_spectrum(const SpectrumSnapshot& snap, int nu);

}  // namespace dimer

#endif

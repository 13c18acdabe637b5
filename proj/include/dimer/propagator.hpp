#ifndef DIMER_PROPAGATOR_HPP
#define DIMER_PROPAGATOR_HPP

#include <vector>

#include "dimer/model.hpp"
#include "dimer/schedule.hpp"
#include "dimer/spectrum.hpp"

namespace dimer {

struct EvolutionPolicy {
    /// Base time step; the driver additionally caps the step so that the
    /// controls change by less than 1e-3 * NU per step.
    double dt = 0.1;
    double unitarity_tol = 1e-12;
    /// Steps between recorded samples (segment boundaries always recorded).
    int snapshot_stride = 100;
    /// Number of adiabatic levels tracked in the record.
    int track_levels = 6;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> J, Delta;
    /// populations[k][i]: p_{k+1} at sample i (lowest track_levels levels).
    std::vector<std::vector<double>> populations;
    /// p_1 + p_2: gauge-safe inside quasi-degenerate doublets.
    std::vector<double> doublet_population;
    std::vector<double> mean_n, mean_n_ex, sx, sy, sz;
    QuantumState final_state;
};

/// One exactly-unitary step: psi -> exp(-i dt H) psi via the spectral
/// decomposition of H.
QuantumState step(const QuantumState& psi, const TridiagonalHamiltonian& H,
                  double dt, double unitarity_tol = 1e-12);

/// Propagate under the schedule, midpoint Hamiltonian per step, recording
/// adiabatic populations and observables. Boundary events (phase encoding,
/// rotations) are applied between segments.
TrajectoryRecord evolve(const QuantumState& initial, const ControlSchedule& schedule,
                        const ModelParams& base, const EvolutionPolicy& policy);

/// p_nu = |<E_nu|psi>|^2 for every level in the snapshot.
std::vector<double> adiabatic_populations(const QuantumState& psi,
                                          const SpectrumSnapshot& snap);

}  // namespace dimer

#endif

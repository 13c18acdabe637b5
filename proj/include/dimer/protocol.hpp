#ifndef DIMER_PROTOCOL_HPP
#define DIMER_PROTOCOL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dimer/estimation.hpp"
#include "dimer/model.hpp"
#include "dimer/propagator.hpp"
#include "dimer/schedule.hpp"

namespace dimer {

/// (from, to) adiabatic level pair, 1-based.
using Channel = std::pair<int, int>;

inline std::vector<Channel> splitting_channels() { return {{1, 3}}; }
/// The 1->2 avoided crossing is the rate limiter for the biased sweep; the
/// 1->3 channel only adds a large-gap background where the eigenbasis
/// barely rotates, so it does not constrain the schedule.
inline std::vector<Channel> branching_channels() { return {{1, 2}}; }

struct ProtocolConfig {
    enum class SweepMode { ConstantRate, Adaptive };

    ModelParams params;  // params.J is J_max
    double Delta_max = 0.0;
    double phase = 0.0;  // encoded phase varphi (per particle)
    SweepMode mode = SweepMode::ConstantRate;
    double dot_J = 1e-4;
    double dot_Delta = 1e-4;
    double lambda = 0.1;
    /// Below J_floor = frac * NU the adaptive sweep switches to a
    /// constant-rate tail down to exactly J = 0.
    double J_floor_frac = 1e-4;
    EvolutionPolicy policy;
    std::uint64_t seed = 0;

    void validate() const;  // Delta_max < U, J_max above the bifurcation
};

QuantumState encode_phase(const QuantumState& psi, double phi);

/// exp(-i angle Sy), exact via the eigendecomposition of Sy. Coherent states
/// map to coherent states at the rotated Bloch point.
QuantumState rotate_y(const QuantumState& psi, double angle);

/// Scaled sweep rate lambda = |<mu|Hdot|nu>| / (E_mu - E_nu)^2 with
/// Hdot = -dotJ Sx - dotDelta Sz.
double adiabaticity_parameter(const ModelParams& params, double dot_J,
                              double dot_Delta, Channel channel);

/// F_eff(J) = max over channels of |<mu|Sx|nu>|/(E_mu-E_nu)^2, tabulated on
/// an ascending J grid refined around the critical coupling. At Delta = 0,
/// opposite-parity channels are excluded by the symmetry test.
struct SweepTable {
    std::vector<double> J, F;
};
SweepTable tabulate_f_eff(const ModelParams& params, double Delta,
                          const std::vector<Channel>& channels, double J_floor,
                          double J_max);

/// Full five-stage schedule with piecewise-linear laws at the configured
/// constant rates; the phase-encoding event sits at the end of stage (a).
ControlSchedule constant_schedule(const ProtocolConfig& config);

/// Single downward sweep J: J_max -> 0 at fixed Delta = config.params.Delta,
/// solving dJ/dt = -lambda / F_eff(J). Total duration is
/// (1/lambda) int F_eff dJ plus the constant-rate tail below the floor.
ControlSchedule adaptive_schedule(const ProtocolConfig& config,
                                  const std::vector<Channel>& channels);

/// Full five-stage schedule in the configured sweep mode.
ControlSchedule protocol_schedule(const ProtocolConfig& config);

/// T = int_0^{J_max} F_eff(J) dJ; an optimized sweep lasts T / lambda.
double sweep_time_T(const ModelParams& params, const std::vector<Channel>& channels);

/// Adiabatic bound scale for the bias ramp: (J_Delta - NU) J_Delta / sqrt(N).
/// Callers must keep dot_Delta well below this.
double bias_ramp_bound(const ModelParams& params, double J_Delta);

struct RunResult {
    OccupationDistribution final_pn;
    TrajectoryRecord trajectory;
    std::vector<double> stage_end_times;  // ends of stages a, c, d, e
    ControlSchedule schedule;
    ProtocolConfig config;
};

/// Stages (a)-(e) from the exact ground state at (J_max, Delta=0), phase
/// encoding inserted at the stage (a)/(c) boundary.
RunResult run_protocol(const ProtocolConfig& config);

/// Splitting sweep only (stage (a) J-law designed for Delta = 0) with a
/// constant bias held during the sweep; used for bias-sensitivity scans.
RunResult run_splitting(const ProtocolConfig& config, double bias_held);

/// Non-adiabatic stretch of |X> under the frozen Hamiltonian (Delta = 0).
QuantumState quench(const ModelParams& params, double duration);

}  // namespace dimer

#endif

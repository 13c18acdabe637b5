#ifndef DIMER_ESTIMATION_HPP
#define DIMER_ESTIMATION_HPP

#include <cstdint>
#include <vector>

#include "dimer/model.hpp"

namespace dimer {

/// P(n) over the output ports, n = 0..N. sample_count < 0 marks an exact
/// (non-empirical) distribution.
struct OccupationDistribution {
    int N = 0;
    std::vector<double> P;
    long sample_count = -1;

    void require_valid(double tol = 1e-10) const;
};

OccupationDistribution distribution(const QuantumState& psi);

double mean_n(const OccupationDistribution& dist);
/// <n_ex> = sum_n (N/2 - |N/2 - n|) P(n): leakage out of the {|N,0>,|0,N>} span.
double mean_n_ex(const OccupationDistribution& dist);

/// Post-selected estimate <n>_f = N P(N) / (P(0) + P(N)).
double filtered_mean(const OccupationDistribution& dist);

/// Dephasing mixture on the two ports: x -> (1-p) x + p/2 for each of
/// P(0), P(N); inverse recovers the coherent pair and throws if the result
/// is negative (inconsistent p).
std::pair<double, double> dephasing_adjust(double P0, double PN, double p,
                                           bool inverse = false);

struct PhaseEstimate {
    /// Principal branch, phi_hat in [0, pi/N]; the N*phi ambiguity (mod 2*pi)
    /// is inherent to the two-port ratio and left to the caller.
    double phi = 0.0;
    double ratio = 0.0;              // P(N) / (P(0) + P(N))
    double rejected_fraction = 0.0;  // 1 - P(0) - P(N)
};

/// Two-port ratio inversion phi = (2/N) asin(sqrt(r)). Throws if
/// P(0) + P(N) falls below the rejection threshold.
PhaseEstimate estimate_phase(const OccupationDistribution& dist,
                             double rejection_threshold = 0.5);

/// Ramsey reference: <n> = [1 - cos(phi)] N/2.
double standard_reference(double phi, int N);

/// M multinomial draws from P(n); deterministic for a given seed.
OccupationDistribution synthesize_measurements(const OccupationDistribution& dist,
                                               long M, std::uint64_t seed);

}  // namespace dimer

#endif

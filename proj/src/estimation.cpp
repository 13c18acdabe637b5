#include "dimer/estimation.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dimer {

void OccupationDistribution::require_valid(double tol) const {
    if (static_cast<int>(P.size()) != N + 1)
        throw std::invalid_argument("OccupationDistribution: wrong size");
    double sum = 0.0;
    for (double p : P) {
        if (p < -tol) throw std::invalid_argument("OccupationDistribution: P < 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("OccupationDistribution: sum deviates from 1");
}

OccupationDistribution distribution(const QuantumState& psi) {
    OccupationDistribution dist;
    dist.N = psi.N;
    dist.P.resize(psi.N + 1);
    for (int n = 0; n <= psi.N; ++n) dist.P[n] = std::norm(psi.amps[n]);
    return dist;
}

double mean_n(const OccupationDistribution& dist) {
    double acc = 0.0;
    for (int n = 0; n <= dist.N; ++n) acc += n * dist.P[n];
    return acc;
}

double mean_n_ex(const OccupationDistribution& dist) {
    double acc = 0.0;
    const double half = 0.5 * dist.N;
    for (int n = 0; n <= dist.N; ++n) acc += (half - std::abs(half - n)) * dist.P[n];
    return acc;
}

double filtered_mean(const OccupationDistribution& dist) {
    const double p0 = dist.P.front();
    const double pn = dist.P.back();
    if (p0 + pn <= 0.0)
        throw std::domain_error("filtered_mean: no weight on the output ports");
    return dist.N * pn / (p0 + pn);
}

std::pair<double, double> dephasing_adjust(double P0, double PN, double p,
                                           bool inverse) {
    if (p < 0.0 || p >= 1.0)
        throw std::invalid_argument("dephasing_adjust: p must be in [0, 1)");
    if (!inverse) return {(1.0 - p) * P0 + 0.5 * p, (1.0 - p) * PN + 0.5 * p};
    const double q0 = (P0 - 0.5 * p) / (1.0 - p);
    const double qn = (PN - 0.5 * p) / (1.0 - p);
    if (q0 < 0.0 || qn < 0.0)
        throw std::domain_error("dephasing_adjust: inconsistent p, negative recovery");
    return {q0, qn};
}

PhaseEstimate estimate_phase(const OccupationDistribution& dist,
                             double rejection_threshold) {
    const double p0 = dist.P.front();
    const double pn = dist.P.back();
    const double kept = p0 + pn;
    if (kept < rejection_threshold)
        throw std::runtime_error("estimate_phase: port weight below rejection threshold");
    PhaseEstimate est;
    est.ratio = pn / kept;
    est.rejected_fraction = 1.0 - kept;
    est.phi = (2.0 / dist.N) * std::asin(std::sqrt(est.ratio));
    return est;
}

double standard_reference(double phi, int N) {
    return (1.0 - std::cos(phi)) * 0.5 * N;
}

OccupationDistribution synthesize_measurements(const OccupationDistribution& dist,
                                               long M, std::uint64_t seed) {
    if (M < 1) throw std::invalid_argument("synthesize_measurements: M must be >= 1");
    dist.require_valid(1e-9);
    std::vector<double> cdf(dist.P.size());
    std::partial_sum(dist.P.begin(), dist.P.end(), cdf.begin());
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<long> counts(dist.P.size(), 0);
    for (long i = 0; i < M; ++i) {
        const double u = uni(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    OccupationDistribution out;
    out.N = dist.N;
    out.sample_count = M;
    out.P.resize(dist.P.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        out.P[i] = static_cast<double>(counts[i]) / static_cast<double>(M);
    return out;
}

}  // namespace dimer

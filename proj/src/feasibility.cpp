#include "dimer/feasibility.hpp"

#include <cmath>
#include <stdexcept>

namespace dimer::feasibility {

namespace {
constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kH = 6.62607015e-34;      // J s
constexpr double kC = 2.99792458e8;        // m/s
constexpr double kAmu = 1.66053906660e-27; // kg
constexpr double kBohr = 5.29177210903e-11;  // m
}  // namespace

void TrapSpec::validate() const {
    if (!(V0 > 0.0) || !(sigma > 0.0) || !(lambda0 > 0.0) || !(m > 0.0) ||
        !(rho > 0.0) || !(P0 > 0.0) || !(tau > 0.0) || a == 0.0)
        throw std::invalid_argument("TrapSpec: all fields must be positive (a nonzero)");
}

TrapSpec potassium39_example() {
    TrapSpec spec;
    spec.V0 = 1.28e-27;
    spec.sigma = 10e-6;
    spec.lambda0 = 1064e-9;
    spec.m = 38.9637064864 * kAmu;
    spec.rho = 1e20;  // 1e14 cm^-3
    spec.a = -5.0 * kBohr;
    spec.P0 = 0.1;
    spec.tau = 1e-3;
    return spec;
}

TrapFrequencies trap_frequencies(const TrapSpec& spec) {
    spec.validate();
    TrapFrequencies f;
    f.Omega_r = std::sqrt(4.0 * spec.V0 / (spec.m * spec.sigma * spec.sigma));
    f.Z_r = M_PI * spec.sigma * spec.sigma / spec.lambda0;
    f.Omega_z = std::sqrt(2.0 * spec.V0 / (spec.m * f.Z_r * f.Z_r));
    return f;
}

CondensateNumbers condensate_numbers(const TrapSpec& spec) {
    const TrapFrequencies f = trap_frequencies(spec);
    CondensateNumbers out;
    out.w_r = std::sqrt(kHbar / (spec.m * f.Omega_r));
    out.w_z = std::sqrt(kHbar / (spec.m * f.Omega_z));
    const double vol = out.w_r * out.w_r * out.w_z;
    out.N_exact = spec.rho * std::pow(M_PI, 1.5) * vol;
    out.N = static_cast<int>(std::lround(out.N_exact));
    out.U = 4.0 * M_PI * kHbar * kHbar * spec.rho * std::abs(spec.a) / spec.m;
    out.N_c = 0.57 * std::cbrt(vol) / std::abs(spec.a);
    out.J_scale = out.N_exact * out.U;
    out.collapse_warning = out.N_exact >= out.N_c;
    return out;
}

double intensity_shot_noise(const TrapSpec& spec) {
    spec.validate();
    return std::sqrt(kH * kC / (spec.lambda0 * spec.tau * spec.P0));
}

double sweep_time_estimate(const TrapSpec& spec, double lambda_rate, double C) {
    if (!(lambda_rate > 0.0) || !(C > 0.0))
        throw std::invalid_argument("sweep_time_estimate: rates must be positive");
    const CondensateNumbers numbers = condensate_numbers(spec);
    return (C / lambda_rate) * kH / numbers.U;
}

}  // namespace dimer::feasibility

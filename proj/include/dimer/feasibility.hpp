#ifndef DIMER_FEASIBILITY_HPP
#define DIMER_FEASIBILITY_HPP

namespace dimer::feasibility {

/// Experimental parameters in SI units. `a` is the signed s-wave scattering
/// length (negative for attractive interactions).
struct TrapSpec {
    double V0 = 0.0;       // trap depth, J
    double sigma = 0.0;    // beam waist, m
    double lambda0 = 0.0;  // trap wavelength, m
    double m = 0.0;        // atomic mass, kg
    double rho = 0.0;      // condensate density, m^-3
    double a = 0.0;        // scattering length, m
    double P0 = 0.0;       // laser power, W
    double tau = 0.0;      // intensity-lock response time, s

    void validate() const;
};

/// Attractive 39K example near the 403.4 G resonance (zero crossing around
/// 350 G): a = -5 a_0, sigma = 10 um, V0 = 1.28e-27 J, lambda = 1064 nm,
/// rho = 1e14 cm^-3, P0 = 100 mW, tau = 1 ms.
TrapSpec potassium39_example();

struct TrapFrequencies {
    double Omega_r = 0.0;  // sqrt(4 V0 / (m sigma^2)), rad/s
    double Omega_z = 0.0;  // sqrt(2 V0 / (m Z_r^2)), rad/s
    double Z_r = 0.0;      // Rayleigh range pi sigma^2 / lambda0, m
};
TrapFrequencies trap_frequencies(const TrapSpec& spec);

struct CondensateNumbers {
    int N = 0;            // rho pi^{3/2} w_r^2 w_z, rounded
    double N_exact = 0.0;
    double U = 0.0;       // 4 pi hbar^2 rho |a| / m, J
    double N_c = 0.0;     // collapse threshold 0.57 (w_r^2 w_z)^{1/3} / |a|
    double J_scale = 0.0; // N U, the scale J is swept over, J
    double w_r = 0.0, w_z = 0.0;  // ground-state extents, m
    bool collapse_warning = false;  // N >= N_c
};
CondensateNumbers condensate_numbers(const TrapSpec& spec);

/// Relative laser-intensity shot noise sqrt(h c / (lambda0 tau P0)).
double intensity_shot_noise(const TrapSpec& spec);

/// Optimized-sweep duration (C / lambda_rate) in SI seconds, converting the
/// reduced-unit T = C/U through U/h.
double sweep_time_estimate(const TrapSpec& spec, double lambda_rate, double C);

}  // namespace dimer::feasibility

#endif

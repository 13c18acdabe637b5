#ifndef DIMER_WKB_HPP
#define DIMER_WKB_HPP

#include <vector>

#include "dimer/model.hpp"

namespace dimer::wkb {

/// Context for the semiclassical analysis at Delta = 0. Energies passed to
/// the area routines are offsets from the reference E_x = -J*N/2, which is
/// the landscape minimum for J >= NU and the separatrix energy for J < NU.
struct WkbContext {
    ModelParams params;

    double reference_energy() const { return -0.5 * params.J * params.N; }
    /// Planck cell on the sphere: total area 2*pi*N split into N+1 cells.
    double planck_cell() const {
        return 2.0 * M_PI * params.N / (params.N + 1.0);
    }
    /// Offset of the self-trapped minimum below the separatrix (negative);
    /// zero when J >= NU (no wells).
    double well_bottom_offset() const;
};

/// dA/dE of the phase-space area enclosed below energy offset E > 0:
///   A'(E) = 4 * int_0^{pi/2} dphi / sqrt((J - NU sin^2 phi)^2 + 4 E U sin^2 phi)
/// Adaptive quadrature, relative tolerance 1e-8, with the near-singular
/// point phi_r = asin(sqrt(J/NU)) split out when J < NU.
double area_derivative(double E, const WkbContext& ctx);

/// Same integrand for a single self-trapped well (J < NU, E < 0): the phi
/// range shrinks to [phi_t, pi/2] with phi_t the turning point where the
/// radicand vanishes. Gives the in-well level spacing 2*pi/A'.
double well_area_derivative(double E, const WkbContext& ctx);

/// Enclosed area A(E) for offsets E in (0, J*N]; includes the area of the
/// two wells below the separatrix when J < NU. A(J*N) = 2*pi*N.
double area(double E, const WkbContext& ctx);

/// In-well enclosed area for J < NU, well_bottom_offset() < E < 0.
double well_area(double E, const WkbContext& ctx);

/// omega_J = sqrt(|J - NU| J): bottom frequency for J > NU, instability
/// exponent of the hyperbolic point for J < NU.
double omega_J(const ModelParams& params);

/// Frequency along the separatrix, omega_x = omega_J / [(1/pi) ln(16 omega_J^3/(N J U^2))].
/// Requires J < NU and log argument > 1.
double omega_x(const ModelParams& params);

/// Log closed form near the separatrix: omega(E) = pi*omega_J / ln(16 omega_J^4/(N J U^2 E)).
/// Requires J < NU, E > 0 and log argument > 1.
double omega_E(double E, const ModelParams& params);

/// Approximate eigenenergies from the quantization A(E_k) = (1/2 + k) h.
/// For J >= NU these are the full ladder from the bottom. For J < NU the
/// list starts with the doublet centers from per-well quantization (each
/// doublet reported once; splittings are below this approximation) followed
/// by the levels above the separatrix. Absolute energies are returned.
std::vector<double> wkb_levels(const WkbContext& ctx, int count);

}  // namespace dimer::wkb

#endif

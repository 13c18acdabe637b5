#include "dimer/wkb.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dimer::wkb {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr double kQuadTol = 1e-9;
constexpr int kQuadDepth = 12;

void require_unbiased(const ModelParams& p) {
    if (p.Delta != 0.0)
        throw std::domain_error("wkb: analysis is defined for Delta = 0");
    if (!(p.U > 0.0) || !(p.J > 0.0))
        throw std::invalid_argument("wkb: requires U > 0 and J > 0");
}

// (J - NU s)^2 + 4 E U s with s = sin^2(phi); E is the offset from E_x.
inline double radicand(double s, double E, const ModelParams& p) {
    const double a = p.J - p.NU() * s;
    return a * a + 4.0 * E * p.U * s;
}

double integrate_inverse_sqrt(double lo, double hi, double E, const ModelParams& p) {
    auto f = [&](double phi) {
        const double s = std::sin(phi);
        return 1.0 / std::sqrt(radicand(s * s, E, p));
    };
    return Quad::integrate(f, lo, hi, kQuadDepth, kQuadTol);
}

}  // namespace

double WkbContext::well_bottom_offset() const {
    const double nu = params.NU();
    if (params.J >= nu) return 0.0;
    const double d = nu - params.J;
    return -d * d / (4.0 * params.U);
}

double area_derivative(double E, const WkbContext& ctx) {
    const ModelParams& p = ctx.params;
    require_unbiased(p);
    if (!(E > 0.0))
        throw std::domain_error(
            "area_derivative: offset E must be > 0 (integrand diverges at the "
            "separatrix for J <= NU)");
    const double half_pi = 0.5 * M_PI;
    if (p.J < p.NU()) {
        // Split at the near-singular point where J = NU sin^2 phi.
        const double phi_r = std::asin(std::sqrt(p.J / p.NU()));
        return 4.0 * (integrate_inverse_sqrt(0.0, phi_r, E, p) +
                      integrate_inverse_sqrt(phi_r, half_pi, E, p));
    }
    return 4.0 * integrate_inverse_sqrt(0.0, half_pi, E, p);
}

double well_area_derivative(double E, const WkbContext& ctx) {
    const ModelParams& p = ctx.params;
    require_unbiased(p);
    const double nu = p.NU();
    if (!(p.J < nu))
        throw std::domain_error("well_area_derivative: no wells for J >= NU");
    const double bottom = ctx.well_bottom_offset();
    if (!(E > bottom) || !(E < 0.0))
        throw std::domain_error("well_area_derivative: E must lie in (bottom, 0)");
    // Turning point: larger root of the radicand, quadratic in s.
    const double beta = p.J * nu - 2.0 * E * p.U;
    const double disc = beta * beta - nu * nu * p.J * p.J;
    const double s_t = (beta + std::sqrt(std::max(disc, 0.0))) / (nu * nu);
    const double phi_t = std::asin(std::sqrt(std::min(s_t, 1.0)));
    // Inverse-sqrt endpoint singularity at phi_t: substitute phi = phi_t + t^2.
    const double tmax = std::sqrt(0.5 * M_PI - phi_t);
    auto f = [&](double t) {
        const double s = std::sin(phi_t + t * t);
        return 2.0 * t / std::sqrt(radicand(s * s, E, p));
    };
    return 4.0 * Quad::integrate(f, 0.0, tmax, kQuadDepth, kQuadTol);
}

namespace {

// Area of both wells below the separatrix, closed form:
// 4 [ N (pi/2 - phi_r) - (J/U) cot(phi_r) ] with sin^2 phi_r = J/NU.
double below_separatrix_area(const ModelParams& p) {
    const double nu = p.NU();
    if (p.J >= nu) return 0.0;
    const double sr = p.J / nu;
    const double phi_r = std::asin(std::sqrt(sr));
    const double cot = std::sqrt((1.0 - sr) / sr);
    return 4.0 * (p.N * (0.5 * M_PI - phi_r) - (p.J / p.U) * cot);
}

}  // namespace

double area(double E, const WkbContext& ctx) {
    const ModelParams& p = ctx.params;
    require_unbiased(p);
    const double Emax = p.J * p.N;
    if (!(E > 0.0) || E > Emax * (1.0 + 1e-12))
        throw std::domain_error("area: offset E must lie in (0, J*N]");
    // e = E x^2 absorbs the logarithmic divergence of A'(e) at e -> 0.
    auto f = [&](double x) {
        return area_derivative(E * x * x, ctx) * 2.0 * E * x;
    };
    const double above = Quad::integrate(f, 0.0, 1.0, kQuadDepth, kQuadTol);
    return below_separatrix_area(p) + above;
}

double well_area(double E, const WkbContext& ctx) {
    const ModelParams& p = ctx.params;
    require_unbiased(p);
    const double bottom = ctx.well_bottom_offset();
    if (!(E > bottom) || E > 0.0)
        throw std::domain_error("well_area: E must lie in (bottom, 0]");
    const double span = E - bottom;
    auto f = [&](double x) {
        // e = bottom + span x^2: quadratic clustering toward the bottom keeps
        // the short-orbit end well resolved.
        return well_area_derivative(bottom + span * x * x, ctx) * 2.0 * span * x;
    };
    return Quad::integrate(f, 0.0, 1.0, kQuadDepth, kQuadTol);
}

double omega_J(const ModelParams& params) {
    if (params.J < 0.0) throw std::invalid_argument("omega_J: J must be >= 0");
    return std::sqrt(std::abs(params.J - params.NU()) * params.J);
}

double omega_x(const ModelParams& params) {
    require_unbiased(params);
    if (!(params.J < params.NU()))
        throw std::domain_error("omega_x: separatrix exists only for J < NU");
    const double wj = omega_J(params);
    const double arg = 16.0 * wj * wj * wj / (params.N * params.J * params.U * params.U);
    if (!(arg > 1.0))
        throw std::domain_error("omega_x: log argument <= 1, approximation invalid");
    return wj * M_PI / std::log(arg);
}

double omega_E(double E, const ModelParams& params) {
    require_unbiased(params);
    if (!(params.J < params.NU()))
        throw std::domain_error("omega_E: valid only below the critical coupling");
    if (!(E > 0.0)) throw std::domain_error("omega_E: offset E must be > 0");
    const double wj = omega_J(params);
    const double arg =
        16.0 * wj * wj * wj * wj / (params.N * params.J * params.U * params.U * E);
    if (!(arg > 1.0))
        throw std::domain_error("omega_E: log argument <= 1, outside validity window");
    return M_PI * wj / std::log(arg);
}

namespace {

// Bisection for the monotone quantization conditions.
template <typename F>
double solve_monotone(F&& f, double lo, double hi, double target) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo * fhi > 0.0)
        throw std::runtime_error("wkb_levels: bracketing failure in quantization");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid) - target;
        if (fm == 0.0 || 0.5 * (hi - lo) < 1e-13 * std::max(std::abs(mid), 1.0))
            return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> wkb_levels(const WkbContext& ctx, int count) {
    const ModelParams& p = ctx.params;
    require_unbiased(p);
    if (count < 1 || count > p.N + 1)
        throw std::invalid_argument("wkb_levels: count must be in [1, N+1]");
    const double h = ctx.planck_cell();
    const double Ex = ctx.reference_energy();
    const double Emax = p.J * p.N;
    std::vector<double> levels;
    levels.reserve(count);

    int states_below = 0;
    if (p.J < p.NU()) {
        // Doublet centers from single-well quantization.
        const double bottom = ctx.well_bottom_offset();
        const double well_total = well_area(-1e-12 * std::abs(bottom), ctx);
        const int n_centers = static_cast<int>(std::floor(well_total / h + 0.5));
        auto aw = [&](double E) { return well_area(E, ctx); };
        for (int k = 0; k < n_centers && static_cast<int>(levels.size()) < count; ++k) {
            const double target = (0.5 + k) * h;
            if (target >= well_total) break;
            const double E = solve_monotone(aw, bottom * (1.0 - 1e-12), -1e-12 * std::abs(bottom), target);
            levels.push_back(Ex + E);
            ++states_below;
        }
        states_below *= 2;  // each center stands for a quasi-degenerate pair
    }

    auto at = [&](double E) { return area(E, ctx); };
    const double total = 2.0 * M_PI * p.N;
    const double lo_E = 1e-14 * Emax;
    const double area_lo = at(lo_E);
    int nu = states_below;
    while (static_cast<int>(levels.size()) < count) {
        const double target = (0.5 + nu) * h;
        if (target >= total) break;
        if (target <= area_lo) {
            // Quantization slot still inside the (already counted) well
            // region; the separatrix neighborhood is fuzzy at this order.
            ++nu;
            continue;
        }
        levels.push_back(Ex + solve_monotone(at, lo_E, Emax, target));
        ++nu;
    }
    return levels;
}

}  // namespace dimer::wkb

#ifndef DIMER_SEMICLASSICAL_HPP
#define DIMER_SEMICLASSICAL_HPP

#include <cstdint>
#include <vector>

#include "dimer/model.hpp"
#include "dimer/schedule.hpp"

namespace dimer::semiclassical {

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// Ensemble of points on the classical sphere |S| = N/2.
struct ClassicalCloud {
    int N = 0;
    std::vector<BlochVector> points;
    std::uint64_t seed = 0;
};

enum class CloudShape { Gaussian, Circle };

/// dS/dt = B x S with the effective field B = (-J, 0, -2 U Sz - Delta).
/// The orientation matches the quantum Ehrenfest flow: for H = -J Sx the
/// spin precesses about -x.
BlochVector classical_derivative(const BlochVector& S, const ModelParams& params);

/// Energy H(S) = -U Sz^2 - Delta Sz - J Sx, conserved at frozen controls.
double classical_energy(const BlochVector& S, const ModelParams& params);

/// Sample `count` points around the coherent center (theta, phi).
/// Gaussian: tangent-plane normal deviates of std sqrt(N)/2 (the coherent
/// state's transverse spread), projected back onto the sphere.
/// Circle: ring at polar offset n_0 from the center; the default radius
/// n_0 = 1 - 1/(4N) is in units of the n coordinate relative to the center
/// (the normalization choice is a convention, so it stays a parameter).
ClassicalCloud sample_cloud(int N, double theta, double phi, CloudShape shape,
                            int count, std::uint64_t seed,
                            double circle_radius_n = -1.0);

struct CloudTrajectory {
    std::vector<double> times;
    std::vector<double> mean_n_ex;
    std::vector<double> mean_sx, mean_sy, mean_sz;
    double final_n_ex = 0.0;
    double final_n_ex_stderr = 0.0;
    ClassicalCloud final_cloud;
};

/// Fixed-step RK4 per point under the schedule; ensemble <n_ex> with
/// n_ex = N/2 - |Sz| recorded every snapshot_stride steps. Points are
/// independent; the OpenMP version reduces in fixed order and is bit-exact
/// against the serial reference.
CloudTrajectory propagate_cloud(const ClassicalCloud& cloud,
                                const ControlSchedule& schedule,
                                const ModelParams& base, double dt,
                                int snapshot_stride = 100);
CloudTrajectory propagate_cloud_serial(const ClassicalCloud& cloud,
                                       const ControlSchedule& schedule,
                                       const ModelParams& base, double dt,
                                       int snapshot_stride = 100);

struct CrossoverEstimate {
    double theta = 0.0;           // accumulated separatrix angle
    double adiabatic_rate = 0.0;  // dot-J where theta = 2*pi*0.9
    double diabatic_rate = 0.0;   // dot-J where theta = 2*pi*0.1
};

/// theta = (pi^2/8) (NU)^2 / (ln N * dot_J) and the sweep-rate borders of
/// the adiabatic-diabatic crossover.
CrossoverEstimate crossover_theta(double dot_J, const ModelParams& params);

}  // namespace dimer::semiclassical

#endif

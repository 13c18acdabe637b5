// Timing comparison of the serial reference kernels against the OpenMP
// versions: Husimi grids, truncated-Wigner cloud propagation, and the
// susceptibility tabulation used by the adaptive sweeps.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "dimer/husimi.hpp"
#include "dimer/model.hpp"
#include "dimer/protocol.hpp"
#include "dimer/semiclassical.hpp"

using namespace dimer;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());

    {
        const QuantumState psi = cat_state(200, 0.0);
        double serial_ms = 0.0, parallel_ms = 0.0;
        SphereGrid a, b;
        serial_ms = time_ms([&] { a = husimi_grid_serial(psi, 128, 256); });
        parallel_ms = time_ms([&] { b = husimi_grid(psi, 128, 256); });
        bool same = a.values == b.values;
        std::printf("husimi 128x256 N=200: serial %.1f ms, omp %.1f ms, speedup %.2fx, identical=%d\n",
                    serial_ms, parallel_ms, serial_ms / parallel_ms, same ? 1 : 0);
    }

    {
        ModelParams p;
        p.N = 100;
        p.U = 0.01;
        p.J = 1.1;
        Segment seg;
        seg.j_law = Segment::Law::Linear;
        seg.J0 = 1.1;
        seg.J1 = 0.0;
        seg.duration = 11.0;
        ControlSchedule sched;
        sched.segments.push_back(seg);
        const auto cloud = semiclassical::sample_cloud(
            p.N, 0.5 * M_PI, 0.0, semiclassical::CloudShape::Gaussian, 20000, 7);
        semiclassical::CloudTrajectory a, b;
        const double serial_ms = time_ms(
            [&] { a = semiclassical::propagate_cloud_serial(cloud, sched, p, 0.02, 0); });
        const double parallel_ms =
            time_ms([&] { b = semiclassical::propagate_cloud(cloud, sched, p, 0.02, 0); });
        const bool same = a.final_n_ex == b.final_n_ex;
        std::printf("cloud 20000 pts: serial %.1f ms, omp %.1f ms, speedup %.2fx, identical=%d\n",
                    serial_ms, parallel_ms, serial_ms / parallel_ms, same ? 1 : 0);
    }

    {
        ModelParams p;
        p.N = 250;
        p.U = 1.0 / 250;
        p.J = 1.1;
        double t_par = 0.0;
        SweepTable tb;
        t_par = time_ms([&] {
            tb = tabulate_f_eff(p, 0.0, splitting_channels(), 1e-4, 1.1);
        });
        std::printf("F(J) table N=250 (%zu pts): omp %.1f ms\n", tb.J.size(), t_par);
    }
    return 0;
}

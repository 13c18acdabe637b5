#include "dimer/semiclassical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dimer::semiclassical {

BlochVector classical_derivative(const BlochVector& S, const ModelParams& params) {
    const double bx = -params.J;
    const double bz = -2.0 * params.U * S.z - params.Delta;
    // B x S with B_y = 0
    return {-bz * S.y, bz * S.x - bx * S.z, bx * S.y};
}

double classical_energy(const BlochVector& S, const ModelParams& params) {
    return -params.U * S.z * S.z - params.Delta * S.z - params.J * S.x;
}

namespace {

struct Frame {
    BlochVector e1, e2, e3;  // e3 points at the center
};

Frame frame_at(double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    Frame f;
    // Bloch convention: theta from +z (n = 0 pole), phi about z.
    f.e3 = {st * cp, st * sp, ct};
    f.e1 = {ct * cp, ct * sp, -st};
    f.e2 = {-sp, cp, 0.0};
    return f;
}

inline BlochVector combine(const Frame& f, double a1, double a2, double a3) {
    return {a1 * f.e1.x + a2 * f.e2.x + a3 * f.e3.x,
            a1 * f.e1.y + a2 * f.e2.y + a3 * f.e3.y,
            a1 * f.e1.z + a2 * f.e2.z + a3 * f.e3.z};
}

}  // namespace

ClassicalCloud sample_cloud(int N, double theta, double phi, CloudShape shape,
                            int count, std::uint64_t seed, double circle_radius_n) {
    if (N < 1) throw std::invalid_argument("sample_cloud: N must be >= 1");
    if (count < 1) throw std::invalid_argument("sample_cloud: count must be >= 1");
    const double radius = 0.5 * N;
    const Frame f = frame_at(theta, phi);
    ClassicalCloud cloud;
    cloud.N = N;
    cloud.seed = seed;
    cloud.points.reserve(count);

    if (shape == CloudShape::Gaussian) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 0.5 * std::sqrt(double(N)));
        for (int i = 0; i < count; ++i) {
            double g1 = 0.0, g2 = 0.0, r2 = 0.0;
            do {
                g1 = gauss(rng);
                g2 = gauss(rng);
                r2 = g1 * g1 + g2 * g2;
            } while (r2 >= radius * radius);
            const double a3 = std::sqrt(radius * radius - r2);
            cloud.points.push_back(combine(f, g1, g2, a3));
        }
        return cloud;
    }

    // Circle: fixed polar offset, uniform azimuths.
    double n0 = circle_radius_n;
    if (n0 < 0.0) n0 = 1.0 - 1.0 / (4.0 * N);
    const double polar = 2.0 * std::asin(std::sqrt(n0 / N));
    const double a3 = radius * std::cos(polar);
    const double rt = radius * std::sin(polar);
    for (int i = 0; i < count; ++i) {
        const double az = 2.0 * M_PI * i / count;
        cloud.points.push_back(combine(f, rt * std::cos(az), rt * std::sin(az), a3));
    }
    return cloud;
}

namespace {

inline BlochVector axpy(const BlochVector& a, double h, const BlochVector& b) {
    return {a.x + h * b.x, a.y + h * b.y, a.z + h * b.z};
}

void rk4_step(BlochVector& S, double radius, const ModelParams& p0,
              const ModelParams& pm, const ModelParams& p1, double dt) {
    const BlochVector k1 = classical_derivative(S, p0);
    const BlochVector k2 = classical_derivative(axpy(S, 0.5 * dt, k1), pm);
    const BlochVector k3 = classical_derivative(axpy(S, 0.5 * dt, k2), pm);
    const BlochVector k4 = classical_derivative(axpy(S, dt, k3), p1);
    S.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    S.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    S.z += dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    // Project back onto the sphere; RK4 drift is tiny but secular.
    const double norm = std::sqrt(S.x * S.x + S.y * S.y + S.z * S.z);
    const double fix = radius / norm;
    S.x *= fix;
    S.y *= fix;
    S.z *= fix;
}

struct StepPlan {
    std::vector<double> seg_dt;
    std::vector<long> seg_steps;
};

StepPlan plan_steps(const ControlSchedule& schedule, const ModelParams& base,
                    double dt) {
    StepPlan plan;
    for (const auto& seg : schedule.segments) {
        double cap = dt;
        const double rate = seg.max_rate();
        if (rate > 0.0) cap = std::min(cap, 1e-3 * base.NU() / rate);
        const long n = seg.duration > 0.0
                           ? std::max(1L, (long)std::ceil(seg.duration / cap))
                           : 0L;
        plan.seg_steps.push_back(n);
        plan.seg_dt.push_back(n > 0 ? seg.duration / n : 0.0);
    }
    return plan;
}

CloudTrajectory propagate_impl(const ClassicalCloud& cloud,
                               const ControlSchedule& schedule,
                               const ModelParams& base, double dt,
                               int snapshot_stride, bool parallel) {
    if (!(dt > 0.0)) throw std::invalid_argument("propagate_cloud: dt must be positive");
    const double radius = 0.5 * cloud.N;
    const std::size_t npts = cloud.points.size();
    const StepPlan plan = plan_steps(schedule, base, dt);

    // Sample times (global step indices) shared by all points.
    std::vector<double> sample_t;
    std::vector<long> sample_step;
    {
        long gstep = 0;
        double t0 = 0.0;
        sample_t.push_back(0.0);
        sample_step.push_back(0);
        for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
            for (long i = 1; i <= plan.seg_steps[si]; ++i) {
                ++gstep;
                const bool boundary = i == plan.seg_steps[si];
                if (boundary || (snapshot_stride > 0 && gstep % snapshot_stride == 0)) {
                    sample_t.push_back(t0 + i * plan.seg_dt[si]);
                    sample_step.push_back(gstep);
                }
            }
            t0 += schedule.segments[si].duration;
        }
    }

    const std::size_t nsamp = sample_t.size();
    std::vector<double> acc_nex(nsamp * npts), acc_x(nsamp * npts),
        acc_y(nsamp * npts), acc_z(nsamp * npts);
    std::vector<BlochVector> final_pts(npts);

    auto run_point = [&](std::size_t pi) {
        BlochVector S = cloud.points[pi];
        long gstep = 0;
        std::size_t samp = 0;
        auto record = [&](std::size_t k) {
            acc_nex[k * npts + pi] = radius - std::abs(S.z);
            acc_x[k * npts + pi] = S.x;
            acc_y[k * npts + pi] = S.y;
            acc_z[k * npts + pi] = S.z;
        };
        record(samp++);
        ModelParams p0 = base, pm = base, p1 = base;
        for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
            const Segment& seg = schedule.segments[si];
            const double h = plan.seg_dt[si];
            for (long i = 0; i < plan.seg_steps[si]; ++i) {
                const double tau = i * h;
                p0.J = seg.J_at(tau);
                p0.Delta = seg.Delta_at(tau);
                pm.J = seg.J_at(tau + 0.5 * h);
                pm.Delta = seg.Delta_at(tau + 0.5 * h);
                p1.J = seg.J_at(tau + h);
                p1.Delta = seg.Delta_at(tau + h);
                rk4_step(S, radius, p0, pm, p1, h);
                ++gstep;
                if (samp < nsamp && sample_step[samp] == gstep) record(samp++);
            }
        }
        final_pts[pi] = S;
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t pi = 0; pi < npts; ++pi) run_point(pi);
    } else {
        for (std::size_t pi = 0; pi < npts; ++pi) run_point(pi);
    }

    CloudTrajectory traj;
    traj.times = sample_t;
    traj.mean_n_ex.resize(nsamp);
    traj.mean_sx.resize(nsamp);
    traj.mean_sy.resize(nsamp);
    traj.mean_sz.resize(nsamp);
    for (std::size_t k = 0; k < nsamp; ++k) {
        double sn = 0.0, sx = 0.0, sy = 0.0, sz = 0.0;
        for (std::size_t pi = 0; pi < npts; ++pi) {
            sn += acc_nex[k * npts + pi];
            sx += acc_x[k * npts + pi];
            sy += acc_y[k * npts + pi];
            sz += acc_z[k * npts + pi];
        }
        traj.mean_n_ex[k] = sn / npts;
        traj.mean_sx[k] = sx / npts;
        traj.mean_sy[k] = sy / npts;
        traj.mean_sz[k] = sz / npts;
    }
    traj.final_n_ex = traj.mean_n_ex.back();
    {
        double var = 0.0;
        const std::size_t k = nsamp - 1;
        for (std::size_t pi = 0; pi < npts; ++pi) {
            const double d = acc_nex[k * npts + pi] - traj.final_n_ex;
            var += d * d;
        }
        traj.final_n_ex_stderr =
            npts > 1 ? std::sqrt(var / (npts - 1.0) / npts) : 0.0;
    }
    traj.final_cloud.N = cloud.N;
    traj.final_cloud.seed = cloud.seed;
    traj.final_cloud.points = std::move(final_pts);

    // Energy-conservation guard on frozen-control segments.
    for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
        const Segment& seg = schedule.segments[si];
        if (seg.max_rate() > 0.0 || seg.duration <= 0.0) continue;
        ModelParams p = base;
        p.J = seg.J_at(0.0);
        p.Delta = seg.D0;
        // Spot-check the first point over the whole segment.
        BlochVector S = cloud.points.front();
        const double E0 = classical_energy(S, p);
        const double h = plan.seg_dt[si];
        for (long i = 0; i < plan.seg_steps[si]; ++i) rk4_step(S, radius, p, p, p, h);
        const double drift = std::abs(classical_energy(S, p) - E0) / seg.duration;
        if (drift > 1e-6 * base.NU())
            throw std::runtime_error("propagate_cloud: energy drift beyond tolerance");
    }
    return traj;
}

}  // namespace

CloudTrajectory propagate_cloud(const ClassicalCloud& cloud,
                                const ControlSchedule& schedule,
                                const ModelParams& base, double dt,
                                int snapshot_stride) {
    return propagate_impl(cloud, schedule, base, dt, snapshot_stride, true);
}

CloudTrajectory propagate_cloud_serial(const ClassicalCloud& cloud,
                                       const ControlSchedule& schedule,
                                       const ModelParams& base, double dt,
                                       int snapshot_stride) {
    return propagate_impl(cloud, schedule, base, dt, snapshot_stride, false);
}

CrossoverEstimate crossover_theta(double dot_J, const ModelParams& params) {
    if (!(dot_J > 0.0)) throw std::invalid_argument("crossover_theta: dot_J must be > 0");
    if (params.N < 2) throw std::invalid_argument("crossover_theta: N must be >= 2");
    const double nu = params.NU();
    const double numer = (M_PI * M_PI / 8.0) * nu * nu / std::log(double(params.N));
    CrossoverEstimate est;
    est.theta = numer / dot_J;
    est.diabatic_rate = numer / (2.0 * M_PI * 0.1);
    est.adiabatic_rate = numer / (2.0 * M_PI * 0.9);
    return est;
}

}  // namespace dimer::semiclassical

#include "dimer/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "dimer/protocol.hpp"

namespace dimer {

QuantumState step(const QuantumState& psi, const TridiagonalHamiltonian& H,
                  double dt, double unitarity_tol) {
    if (H.dim() != psi.N + 1)
        throw std::invalid_argument("step: Hamiltonian/state dimension mismatch");
    const SpectrumSnapshot snap = eigensystem(H);
    const Eigen::VectorXd coeff_re = snap.vectors.transpose() * psi.amps.real();
    const Eigen::VectorXd coeff_im = snap.vectors.transpose() * psi.amps.imag();
    Eigen::VectorXcd rotated(psi.N + 1);
    for (int k = 0; k <= psi.N; ++k) {
        const Complex phase = std::polar(1.0, -snap.energies[k] * dt);
        rotated[k] = phase * Complex(coeff_re[k], coeff_im[k]);
    }
    QuantumState out;
    out.N = psi.N;
    out.amps = snap.vectors * rotated;
    // Per-step drift; the accumulated deviation from 1 is guarded in evolve.
    const double drift = std::abs(out.norm() - psi.norm());
    if (drift > std::max(unitarity_tol, 1e-13 * psi.N))
        throw std::runtime_error("step: norm drift beyond tolerance");
    return out;
}

std::vector<double> adiabatic_populations(const QuantumState& psi,
                                          const SpectrumSnapshot& snap) {
    if (snap.vectors.rows() != psi.N + 1)
        throw std::invalid_argument("adiabatic_populations: dimension mismatch");
    std::vector<double> p(snap.levels());
    for (int k = 0; k < snap.levels(); ++k) {
        const Complex ovl = (snap.vectors.col(k).cast<Complex>()).dot(psi.amps);
        p[k] = std::norm(ovl);
    }
    return p;
}

namespace {

void record_sample(TrajectoryRecord& rec, const QuantumState& psi, double t,
                   double Jv, double Dv, const ModelParams& base, int track_levels) {
    const int N = psi.N;
    ModelParams p = base;
    p.J = Jv;
    p.Delta = Dv;
    const int k = std::min(track_levels, N + 1);
    SpectrumSnapshot snap = eigensystem_lowest(build_hamiltonian(p), k);
    const std::vector<double> pops = adiabatic_populations(psi, snap);

    rec.times.push_back(t);
    rec.J.push_back(Jv);
    rec.Delta.push_back(Dv);
    for (int i = 0; i < k; ++i) rec.populations[i].push_back(pops[i]);
    rec.doublet_population.push_back(pops[0] + (k > 1 ? pops[1] : 0.0));

    double mn = 0.0, mnex = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double w = std::norm(psi.amps[n]);
        mn += n * w;
        mnex += (0.5 * N - std::abs(0.5 * N - n)) * w;
    }
    rec.mean_n.push_back(mn);
    rec.mean_n_ex.push_back(mnex);
    rec.sx.push_back(expect_sx(psi));
    rec.sy.push_back(expect_sy(psi));
    rec.sz.push_back(expect_sz(psi));
}

}  // namespace

TrajectoryRecord evolve(const QuantumState& initial, const ControlSchedule& schedule,
                        const ModelParams& base, const EvolutionPolicy& policy) {
    if (policy.dt <= 0.0) throw std::invalid_argument("evolve: dt must be positive");
    initial.require_normalized(1e-8);

    TrajectoryRecord rec;
    rec.populations.assign(std::min(policy.track_levels, base.N + 1), {});

    QuantumState psi = initial;
    double t = 0.0;
    {
        const auto [J0, D0] = schedule.controls_at(0.0);
        record_sample(rec, psi, t, J0, D0, base, policy.track_levels);
    }

    long step_count = 0;
    for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
        const Segment& seg = schedule.segments[si];
        if (seg.duration > 0.0) {
            // Cap the step so controls move by < 1e-3 * NU per step.
            double dt_cap = policy.dt;
            const double rate = seg.max_rate();
            if (rate > 0.0) dt_cap = std::min(dt_cap, 1e-3 * base.NU() / rate);
            const long nsteps =
                std::max(1L, static_cast<long>(std::ceil(seg.duration / dt_cap)));
            const double dt = seg.duration / nsteps;
            ModelParams p = base;
            for (long i = 0; i < nsteps; ++i) {
                const double tau_mid = (i + 0.5) * dt;
                p.J = seg.J_at(tau_mid);
                p.Delta = seg.Delta_at(tau_mid);
                psi = step(psi, build_hamiltonian(p), dt, policy.unitarity_tol);
                ++step_count;
                if (policy.snapshot_stride > 0 && i + 1 < nsteps &&
                    step_count % policy.snapshot_stride == 0) {
                    const double tau = (i + 1) * dt;
                    record_sample(rec, psi, t + tau, seg.J_at(tau), seg.Delta_at(tau),
                                  base, policy.track_levels);
                }
            }
            t += seg.duration;
            record_sample(rec, psi, t, seg.J_at(seg.duration),
                          seg.Delta_at(seg.duration), base, policy.track_levels);
        }
        for (const auto& ev : schedule.events) {
            if (ev.after_segment != si) continue;
            psi = ev.kind == BoundaryEvent::Kind::PhaseEncode
                      ? encode_phase(psi, ev.value)
                      : rotate_y(psi, ev.value);
            const auto [Jv, Dv] = schedule.controls_at(t);
            record_sample(rec, psi, t, Jv, Dv, base, policy.track_levels);
        }
    }
    psi.require_normalized(1e-8);
    rec.final_state = psi;
    return rec;
}

}  // namespace dimer

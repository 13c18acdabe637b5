#include "dimer/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace dimer {

void ProtocolConfig::validate() const {
    params.validate();
    if (!(params.U > 0.0))
        throw std::invalid_argument("ProtocolConfig: protocol runs need U > 0");
    if (Delta_max < 0.0 || Delta_max >= params.U)
        throw std::invalid_argument("ProtocolConfig: requires 0 <= Delta_max < U");
    if (!(params.J > params.NU()))
        throw std::invalid_argument("ProtocolConfig: J_max must exceed the bifurcation J_c = NU");
    if (mode == SweepMode::ConstantRate) {
        if (!(dot_J > 0.0) || !(dot_Delta > 0.0))
            throw std::invalid_argument("ProtocolConfig: constant mode needs positive rates");
    } else if (!(lambda > 0.0)) {
        throw std::invalid_argument("ProtocolConfig: adaptive mode needs lambda > 0");
    }
}

QuantumState encode_phase(const QuantumState& psi, double phi) {
    QuantumState out = psi;
    for (int n = 0; n <= psi.N; ++n) out.amps[n] *= std::polar(1.0, n * phi);
    return out;
}

QuantumState rotate_y(const QuantumState& psi, double angle) {
    const int N = psi.N;
    Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int n = 0; n < N; ++n) {
        const double e = sx_offdiag(N, n);
        sy(n + 1, n) = Complex(0.0, e);
        sy(n, n + 1) = Complex(0.0, -e);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sy);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("rotate_y: Sy eigendecomposition failed");
    Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * psi.amps;
    for (int k = 0; k <= N; ++k)
        coeff[k] *= std::polar(1.0, -angle * es.eigenvalues()[k]);
    QuantumState out;
    out.N = N;
    out.amps = es.eigenvectors() * coeff;
    return out;
}

double adiabaticity_parameter(const ModelParams& params, double dot_J,
                              double dot_Delta, Channel channel) {
    const auto [nu, mu] = channel;
    if (nu == mu) throw std::invalid_argument("adiabaticity_parameter: levels must differ");
    const int top = std::max(nu, mu);
    const int fetch = params.Delta == 0.0 ? std::min(top + 1, params.N + 1) : top;
    SpectrumSnapshot snap = eigensystem_lowest(build_hamiltonian(params), fetch);
    if (params.Delta == 0.0) classify_parity(snap);
    const double gap = snap.energy(mu) - snap.energy(nu);
    const double scale = std::max(snap.energies.cwiseAbs().maxCoeff(), 1e-300);
    if (std::abs(gap) <= 1e-13 * scale)
        throw std::runtime_error("adiabaticity_parameter: degenerate channel");
    const double me =
        dot_J * sx_matrix_element(snap, nu, mu) + dot_Delta * sz_matrix_element(snap, nu, mu);
    return std::abs(me) / (gap * gap);
}

SweepTable tabulate_f_eff(const ModelParams& params, double Delta,
                          const std::vector<Channel>& channels, double J_floor,
                          double J_max) {
    if (channels.empty()) throw std::invalid_argument("tabulate_f_eff: no channels");
    if (!(J_floor > 0.0) || !(J_max > J_floor))
        throw std::invalid_argument("tabulate_f_eff: bad J range");
    int top = 0;
    for (const auto& [nu, mu] : channels) top = std::max({top, nu, mu});
    const int fetch = Delta == 0.0 ? std::min(top + 1, params.N + 1) : top;

    // Base grid plus refinement around the critical coupling, where the
    // shrinking gap makes F sharply peaked.
    std::vector<double> grid;
    const int base_pts = 321;
    for (int i = 0; i < base_pts; ++i)
        grid.push_back(J_floor + (J_max - J_floor) * i / (base_pts - 1.0));
    double jc = 0.0;
    if (std::abs(Delta) <= params.NU())
        jc = critical_coupling(params.N, params.U, Delta);
    const double halfwidth = 0.3 * params.NU();
    const double lo = std::max(J_floor, jc - halfwidth);
    const double hi = std::min(J_max, jc + halfwidth);
    if (hi > lo)
        for (int i = 0; i < base_pts; ++i)
            grid.push_back(lo + (hi - lo) * i / (base_pts - 1.0));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               grid.end());

    SweepTable table;
    table.J = grid;
    table.F.assign(grid.size(), 0.0);

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            ModelParams p = params;
            p.J = grid[i];
            p.Delta = Delta;
            SpectrumSnapshot snap = eigensystem_lowest(build_hamiltonian(p), fetch);
            std::vector<Parity> parity;
            if (Delta == 0.0) parity = classify_parity(snap);
            double best = 0.0;
            for (const auto& [nu, mu] : channels) {
                if (Delta == 0.0 && parity[nu - 1] != parity[mu - 1]) continue;
                best = std::max(best, f_susceptibility(snap, nu, mu));
            }
            table.F[i] = best;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

namespace {

// Cumulative sweep time t(J) = (1/lambda) int_J^{Jmax} F dJ', trapezoid on
// the table, plus a constant-rate tail from J_floor to exactly zero.
Segment adaptive_sweep_segment(const SweepTable& table, double lambda,
                               double J_floor, double nu_scale) {
    const std::size_t m = table.J.size();
    std::vector<double> t(m, 0.0);
    for (std::size_t i = m - 1; i-- > 0;) {
        const double dj = table.J[i + 1] - table.J[i];
        t[i] = t[i + 1] + 0.5 * (table.F[i] + table.F[i + 1]) * dj / lambda;
    }
    Segment seg;
    seg.j_law = Segment::Law::Tabulated;
    seg.tab_t.reserve(m + 1);
    seg.tab_J.reserve(m + 1);
    const double t_floor = t[0];
    for (std::size_t i = 0; i < m; ++i) {
        // t[i] is the time to reach J_i from the top; knots ascend in time.
        seg.tab_t.push_back(t[m - 1 - i]);
        seg.tab_J.push_back(table.J[m - 1 - i]);
    }
    // Tail: F is bounded below the floor, so a capped constant rate is fine.
    const double max_tail_rate = 1e3 * nu_scale * nu_scale;
    double tail_rate = table.F.front() > 0.0 ? lambda / table.F.front() : max_tail_rate;
    tail_rate = std::min(tail_rate, max_tail_rate);
    const double tail = J_floor / tail_rate;
    seg.tab_t.push_back(t_floor + tail);
    seg.tab_J.push_back(0.0);
    seg.duration = t_floor + tail;
    return seg;
}

Segment reversed(const Segment& seg) {
    Segment out = seg;
    if (seg.j_law == Segment::Law::Tabulated) {
        const double T = seg.duration;
        const std::size_t m = seg.tab_t.size();
        for (std::size_t i = 0; i < m; ++i) {
            out.tab_t[i] = T - seg.tab_t[m - 1 - i];
            out.tab_J[i] = seg.tab_J[m - 1 - i];
        }
    } else {
        std::swap(out.J0, out.J1);
    }
    std::swap(out.D0, out.D1);
    return out;
}

// Susceptibility of the bias ramp at fixed J: the Sz analogue of F.
double bias_susceptibility_max(const ModelParams& params, double Delta_max) {
    double worst = 0.0;
    const int pts = 33;
    for (int i = 0; i < pts; ++i) {
        ModelParams p = params;
        p.Delta = Delta_max * i / (pts - 1.0);
        const int fetch = p.Delta == 0.0 ? std::min(4, p.N + 1) : 3;
        SpectrumSnapshot snap = eigensystem_lowest(build_hamiltonian(p), fetch);
        if (p.Delta == 0.0) classify_parity(snap);
        for (int mu = 2; mu <= std::min(3, snap.levels()); ++mu) {
            const double gap = snap.energy(mu) - snap.energy(1);
            if (gap <= 0.0) continue;
            worst = std::max(worst,
                             std::abs(sz_matrix_element(snap, 1, mu)) / (gap * gap));
        }
    }
    return worst;
}

}  // namespace

ControlSchedule constant_schedule(const ProtocolConfig& config) {
    config.validate();
    if (config.mode != ProtocolConfig::SweepMode::ConstantRate)
        throw std::invalid_argument("constant_schedule: config is not constant-rate");
    const double J_max = config.params.J;
    ControlSchedule sched;

    Segment a;
    a.j_law = Segment::Law::Linear;
    a.J0 = J_max;
    a.J1 = 0.0;
    a.duration = J_max / config.dot_J;
    sched.segments.push_back(a);

    sched.events.push_back({0, BoundaryEvent::Kind::PhaseEncode, config.phase});

    sched.segments.push_back(reversed(a));  // (c) merging

    Segment d;
    d.j_law = Segment::Law::Constant;
    d.J0 = d.J1 = J_max;
    d.D0 = 0.0;
    d.D1 = config.Delta_max;
    d.duration = config.Delta_max / config.dot_Delta;
    sched.segments.push_back(d);

    Segment e = a;  // (e) branching
    e.D0 = e.D1 = config.Delta_max;
    sched.segments.push_back(e);
    return sched;
}

ControlSchedule adaptive_schedule(const ProtocolConfig& config,
                                  const std::vector<Channel>& channels) {
    if (!(config.lambda > 0.0))
        throw std::invalid_argument("adaptive_schedule: lambda must be positive");
    const double nu = config.params.NU();
    const double J_floor = config.J_floor_frac * nu;
    const SweepTable table = tabulate_f_eff(config.params, config.params.Delta,
                                            channels, J_floor, config.params.J);
    Segment seg = adaptive_sweep_segment(table, config.lambda, J_floor, nu);
    seg.D0 = seg.D1 = config.params.Delta;
    ControlSchedule sched;
    sched.segments.push_back(seg);
    return sched;
}

ControlSchedule protocol_schedule(const ProtocolConfig& config) {
    config.validate();
    if (config.mode == ProtocolConfig::SweepMode::ConstantRate)
        return constant_schedule(config);

    ControlSchedule sched;
    ProtocolConfig split_cfg = config;
    split_cfg.params.Delta = 0.0;
    const Segment a = adaptive_schedule(split_cfg, splitting_channels()).segments[0];
    sched.segments.push_back(a);
    sched.events.push_back({0, BoundaryEvent::Kind::PhaseEncode, config.phase});
    sched.segments.push_back(reversed(a));

    Segment d;
    d.j_law = Segment::Law::Constant;
    d.J0 = d.J1 = config.params.J;
    d.D0 = 0.0;
    d.D1 = config.Delta_max;
    const double fz = bias_susceptibility_max(config.params, config.Delta_max);
    const double rate = fz > 0.0 ? config.lambda / fz : bias_ramp_bound(config.params, config.params.J);
    d.duration = config.Delta_max > 0.0 ? config.Delta_max / rate : 0.0;
    sched.segments.push_back(d);

    ProtocolConfig branch_cfg = config;
    branch_cfg.params.Delta = config.Delta_max;
    Segment e = adaptive_schedule(branch_cfg, branching_channels()).segments[0];
    e.D0 = e.D1 = config.Delta_max;
    sched.segments.push_back(e);
    return sched;
}

double sweep_time_T(const ModelParams& params, const std::vector<Channel>& channels) {
    const double nu = params.NU();
    const double J_floor = 1e-4 * nu;
    const SweepTable table =
        tabulate_f_eff(params, params.Delta, channels, J_floor, params.J);
    double T = 0.0;
    for (std::size_t i = 1; i < table.J.size(); ++i)
        T += 0.5 * (table.F[i] + table.F[i - 1]) * (table.J[i] - table.J[i - 1]);
    T += table.F.front() * J_floor;  // bounded stub below the floor
    return T;
}

double bias_ramp_bound(const ModelParams& params, double J_Delta) {
    if (!(J_Delta > params.NU()))
        throw std::domain_error("bias_ramp_bound: requires J_Delta > NU");
    return (J_Delta - params.NU()) * J_Delta / std::sqrt(params.N);
}

namespace {

QuantumState ground_state(const ModelParams& params) {
    SpectrumSnapshot snap = eigensystem_lowest(build_hamiltonian(params), 1);
    QuantumState psi;
    psi.N = params.N;
    psi.amps = snap.vectors.col(0).cast<Complex>();
    return psi;
}

}  // namespace

RunResult run_protocol(const ProtocolConfig& config) {
    config.validate();
    ModelParams prep = config.params;
    prep.Delta = 0.0;
    RunResult result;
    result.config = config;
    result.schedule = protocol_schedule(config);
    result.trajectory =
        evolve(ground_state(prep), result.schedule, config.params, config.policy);
    result.final_pn = distribution(result.trajectory.final_state);
    double t = 0.0;
    for (const auto& seg : result.schedule.segments) {
        t += seg.duration;
        result.stage_end_times.push_back(t);
    }
    return result;
}

RunResult run_splitting(const ProtocolConfig& config, double bias_held) {
    ModelParams prep = config.params;
    prep.Delta = bias_held;

    Segment a;
    if (config.mode == ProtocolConfig::SweepMode::ConstantRate) {
        if (!(config.dot_J > 0.0))
            throw std::invalid_argument("run_splitting: needs positive dot_J");
        a.j_law = Segment::Law::Linear;
        a.J0 = config.params.J;
        a.J1 = 0.0;
        a.duration = config.params.J / config.dot_J;
    } else {
        ProtocolConfig split_cfg = config;
        split_cfg.params.Delta = 0.0;  // sweep designed for the unbiased system
        a = adaptive_schedule(split_cfg, splitting_channels()).segments[0];
    }
    a.D0 = a.D1 = bias_held;

    RunResult result;
    result.config = config;
    result.schedule.segments.push_back(a);
    result.trajectory =
        evolve(ground_state(prep), result.schedule, prep, config.policy);
    result.final_pn = distribution(result.trajectory.final_state);
    result.stage_end_times.push_back(a.duration);
    return result;
}

QuantumState quench(const ModelParams& params, double duration) {
    if (params.Delta != 0.0)
        throw std::invalid_argument("quench: defined for Delta = 0");
    if (duration < 0.0) throw std::invalid_argument("quench: negative duration");
    QuantumState psi = coherent_state(params.N, 0.5 * M_PI, 0.0);
    if (duration == 0.0) return psi;
    // Frozen Hamiltonian: one spectral step is exact for any duration.
    return step(psi, build_hamiltonian(params), duration);
}

}  // namespace dimer

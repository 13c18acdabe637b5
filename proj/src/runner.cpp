#include "dimer/runner.hpp"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <omp.h>
#include <json.hpp>

#include "dimer/csv.hpp"
#include "dimer/estimation.hpp"
#include "dimer/husimi.hpp"
#include "dimer/propagator.hpp"
#include "dimer/protocol.hpp"
#include "dimer/semiclassical.hpp"
#include "dimer/spectrum.hpp"
#include "dimer/wkb.hpp"

namespace dimer::runner {

namespace {

namespace fs = std::filesystem;
using dimer::config::JobConfig;
using json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ModelParams base_params(const JobConfig& job) {
    ModelParams p;
    p.N = job.model.N;
    p.U = job.resolved_U();
    p.J = job.model.J_max;
    p.Delta = 0.0;
    return p;
}

ProtocolConfig protocol_config(const JobConfig& job) {
    ProtocolConfig cfg;
    cfg.params = base_params(job);
    cfg.Delta_max = job.resolved_Delta_max();
    cfg.phase = job.resolved_phi();
    cfg.mode = job.schedule.mode == "adaptive" ? ProtocolConfig::SweepMode::Adaptive
                                               : ProtocolConfig::SweepMode::ConstantRate;
    cfg.dot_J = job.schedule.dot_J;
    cfg.dot_Delta = job.schedule.dot_Delta;
    cfg.lambda = job.schedule.lambda;
    cfg.J_floor_frac = job.schedule.J_floor;
    cfg.policy.dt = job.schedule.dt;
    cfg.policy.snapshot_stride = job.schedule.snapshot_stride;
    cfg.seed = job.ensemble.seed;
    return cfg;
}

json config_echo(const JobConfig& job) {
    json c;
    c["model"] = {{"N", job.model.N},
                  {"U", job.resolved_U()},
                  {"J_max", job.model.J_max},
                  {"Delta_max", job.resolved_Delta_max()}};
    c["schedule"] = {{"mode", job.schedule.mode},
                     {"dot_J", job.schedule.dot_J},
                     {"dot_Delta", job.schedule.dot_Delta},
                     {"lambda", job.schedule.lambda},
                     {"dt", job.schedule.dt},
                     {"snapshot_stride", job.schedule.snapshot_stride},
                     {"J_floor", job.schedule.J_floor},
                     {"phi", job.resolved_phi()}};
    if (job.scan.present) {
        c["scan"] = {{"variable", job.scan.variable},
                     {"from", job.scan.from},
                     {"to", job.scan.to},
                     {"steps", job.scan.steps},
                     {"values", job.scan.values}};
    }
    c["ensemble"] = {{"points", job.ensemble.points},
                     {"M", job.ensemble.M},
                     {"seed", job.ensemble.seed}};
    return c;
}

/// Collects outputs and writes a manifest echoing everything needed to
/// reproduce them.
struct Emitter {
    const JobConfig& job;
    fs::path dir;
    json manifest;
    std::vector<std::string> files;

    explicit Emitter(const JobConfig& j) : job(j), dir(j.out_dir) {
        fs::create_directories(dir);
        manifest["schema"] = kManifestSchema;
        manifest["tool"] = std::string("dimersim ") + kVersion;
        manifest["subcommand"] = job.subcommand;
        manifest["seed"] = job.ensemble.seed;
        manifest["threads"] = job.threads;
        manifest["config"] = config_echo(job);
        manifest["derived"] = json::object();
    }
    void table(const std::string& name, const csv::Table& t) {
        if (!job.output.csv) return;
        t.write((dir / name).string());
        files.push_back(name);
    }
    void derived(const std::string& key, const json& v) { manifest["derived"][key] = v; }
    void finish() {
        if (!job.output.json) return;
        manifest["outputs"] = files;
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << "\n";
    }
};

csv::Table trajectory_table(const TrajectoryRecord& rec) {
    csv::Table t;
    std::vector<std::string> cols = {"t", "J", "Delta"};
    for (std::size_t k = 0; k < rec.populations.size(); ++k)
        cols.push_back("p" + std::to_string(k + 1));
    cols.insert(cols.end(),
                {"p_doublet", "mean_n", "mean_n_ex", "sx", "sy", "sz"});
    t.columns(cols);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        std::vector<double> row = {rec.times[i], rec.J[i], rec.Delta[i]};
        for (const auto& p : rec.populations) row.push_back(p[i]);
        row.insert(row.end(), {rec.doublet_population[i], rec.mean_n[i],
                               rec.mean_n_ex[i], rec.sx[i], rec.sy[i], rec.sz[i]});
        t.row(row);
    }
    return t;
}

csv::Table distribution_table(const OccupationDistribution& dist) {
    csv::Table t;
    t.columns({"n", "P"});
    for (int n = 0; n <= dist.N; ++n)
        t.row({static_cast<double>(n), dist.P[n]});
    return t;
}

csv::Table schedule_table(const ControlSchedule& sched, int samples = 2001) {
    csv::Table t;
    t.columns({"t", "J", "Delta"});
    const double T = sched.total_duration();
    for (int i = 0; i < samples; ++i) {
        const double time = T * i / (samples - 1.0);
        const auto [J, D] = sched.controls_at(time);
        t.row({time, J, D});
    }
    return t;
}

double default_quench_duration(const ModelParams& p) {
    return M_PI / wkb::omega_x(p);
}

// ---- subcommands ----------------------------------------------------------

void run_spectrum(const JobConfig& job, Emitter& em) {
    const ModelParams base = base_params(job);
    std::vector<double> js;
    if (job.scan.present) {
        if (job.scan.variable != "J")
            throw config::ConfigError("spectrum: scan variable must be J");
        js = job.scan.grid();
    } else {
        const int steps = 201;
        for (int i = 0; i < steps; ++i)
            js.push_back(base.NU() * (0.001 + (2.0 - 0.001) * i / (steps - 1.0)));
    }
    const int K = std::min(8, base.N + 1);
    csv::Table t;
    std::vector<std::string> cols = {"J"};
    for (int k = 1; k <= K; ++k) cols.push_back("E" + std::to_string(k));
    cols.push_back("gap_21");
    cols.push_back("gap_31");
    t.columns(cols);
    std::vector<std::vector<double>> rows(js.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < js.size(); ++i) {
        try {
            ModelParams p = base;
            p.J = js[i];
            const Eigen::VectorXd evals = eigenvalues_only(build_hamiltonian(p));
            std::vector<double> row = {js[i]};
            for (int k = 0; k < K; ++k) row.push_back(evals[k]);
            row.push_back(K > 1 ? evals[1] - evals[0] : kNaN);
            row.push_back(K > 2 ? evals[2] - evals[0] : kNaN);
            rows[i] = row;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& row : rows) t.row(row);
    t.meta("levels and gaps vs J");
    em.table("spectrum.csv", t);
}

void run_wkb(const JobConfig& job, Emitter& em) {
    ModelParams p = base_params(job);
    wkb::WkbContext ctx{p};
    const double Ex = ctx.reference_energy();

    if (job.scan.present && job.scan.variable == "J") {
        csv::Table t;
        t.columns({"J", "omega_J", "omega_x", "omega_sep_exact", "gap_21"});
        for (double Jv : job.scan.grid()) {
            ModelParams q = p;
            q.J = Jv;
            double wx = kNaN;
            try {
                wx = wkb::omega_x(q);
            } catch (const std::domain_error&) {}
            const Eigen::VectorXd evals = eigenvalues_only(build_hamiltonian(q));
            const double ex = -0.5 * Jv * q.N;
            double wsep = kNaN;
            for (int k = 0; k + 1 < evals.size(); ++k) {
                if (evals[k] > ex) {
                    wsep = evals[k + 1] - evals[k];
                    break;
                }
            }
            t.row({Jv, wkb::omega_J(q), wx, wsep, evals[1] - evals[0]});
        }
        em.table("freqs_vs_J.csv", t);
        em.finish();
        return;
    }

    const Eigen::VectorXd evals = eigenvalues_only(build_hamiltonian(p));
    csv::Table t;
    t.columns({"E_mid", "E_offset", "spacing_exact", "omega_quadrature",
               "omega_logform", "kind"});
    const double bottom = ctx.well_bottom_offset();
    for (int k = 0; k + 1 < evals.size(); ++k) {
        const double mid = 0.5 * (evals[k] + evals[k + 1]);
        const double off = mid - Ex;
        double wq = kNaN, wl = kNaN;
        // kind: 0 = intra-doublet splitting, 1 = level spacing branch
        double kind = 1.0;
        if (off < 0.0) {
            if (k % 2 == 0) kind = 0.0;
            if (off > bottom) {
                try {
                    wq = 2.0 * M_PI / wkb::well_area_derivative(off, ctx);
                } catch (const std::domain_error&) {}
            }
        } else {
            try {
                wq = 2.0 * M_PI / wkb::area_derivative(off, ctx);
            } catch (const std::domain_error&) {}
            try {
                wl = wkb::omega_E(off, p);
            } catch (const std::domain_error&) {}
        }
        t.row({mid, off, evals[k + 1] - evals[k], wq, wl, kind});
    }
    t.meta("exact spacings vs quadrature and log-form frequencies");
    em.table("omega_vs_E.csv", t);

    const int count = std::min(40, p.N + 1);
    const std::vector<double> lv = wkb::wkb_levels(ctx, count);
    csv::Table lt;
    lt.columns({"k", "E_wkb", "E_exact"});
    for (std::size_t k = 0; k < lv.size(); ++k) {
        const double exact =
            p.J >= p.NU() && k < static_cast<std::size_t>(evals.size())
                ? evals[k]
                : kNaN;
        lt.row({static_cast<double>(k + 1), lv[k], exact});
    }
    em.table("wkb_levels.csv", lt);
    em.derived("planck_cell", ctx.planck_cell());
    em.derived("E_reference", Ex);
    em.finish();
}

void run_quench(const JobConfig& job, Emitter& em) {
    ModelParams p = base_params(job);
    const double duration =
        job.quench.duration > 0.0 ? job.quench.duration : default_quench_duration(p);
    const int samples = std::max(2, job.quench.samples);

    QuantumState psi = coherent_state(p.N, 0.5 * M_PI, 0.0);
    const TridiagonalHamiltonian H = build_hamiltonian(p);
    const double h = duration / samples;
    csv::Table t;
    t.columns({"t", "P0", "PN", "mean_n", "mean_n_ex", "sx", "sy", "sz"});
    auto emit = [&](double time) {
        const OccupationDistribution d = distribution(psi);
        t.row({time, d.P.front(), d.P.back(), mean_n(d), mean_n_ex(d),
               expect_sx(psi), expect_sy(psi), expect_sz(psi)});
    };
    emit(0.0);
    for (int i = 1; i <= samples; ++i) {
        psi = step(psi, H, h);
        emit(i * h);
    }
    em.table("timeseries.csv", t);
    em.table("final_pn.csv", distribution_table(distribution(psi)));
    em.derived("duration", duration);
    em.derived("omega_x", wkb::omega_x(p));
    em.derived("P0_final", distribution(psi).P.front());
    em.derived("PN_final", distribution(psi).P.back());
    em.finish();
}

void run_protocol_cmd(const JobConfig& job, Emitter& em) {
    ProtocolConfig cfg = protocol_config(job);

    if (job.scan.present) {
        if (job.scan.variable != "phi" && job.scan.variable != "N_phi")
            throw config::ConfigError("protocol: scan variable must be phi or N_phi");
        std::vector<double> phis = job.scan.grid();
        if (job.scan.variable == "N_phi")
            for (auto& v : phis) v /= cfg.params.N;

        const ControlSchedule proto = protocol_schedule(cfg);
        ModelParams prep = cfg.params;
        prep.Delta = 0.0;
        SpectrumSnapshot gs = eigensystem_lowest(build_hamiltonian(prep), 1);
        QuantumState ground;
        ground.N = prep.N;
        ground.amps = gs.vectors.col(0).cast<Complex>();

        std::vector<std::vector<double>> rows(phis.size());
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < phis.size(); ++i) {
            try {
                ControlSchedule sched = proto;
                for (auto& ev : sched.events)
                    if (ev.kind == BoundaryEvent::Kind::PhaseEncode) ev.value = phis[i];
                const TrajectoryRecord rec = evolve(ground, sched, cfg.params, cfg.policy);
                const OccupationDistribution dist = distribution(rec.final_state);
                double filt = kNaN, phi_hat = kNaN, ratio = kNaN, rej = kNaN;
                try {
                    filt = filtered_mean(dist);
                    const PhaseEstimate est = estimate_phase(dist);
                    phi_hat = est.phi;
                    ratio = est.ratio;
                    rej = est.rejected_fraction;
                } catch (const std::exception&) {}
                const double nphi = phis[i] * cfg.params.N;
                const double ideal = std::pow(std::sin(0.5 * nphi), 2);
                rows[i] = {phis[i],        nphi,
                           mean_n(dist) / cfg.params.N,
                           filt / cfg.params.N, ratio,
                           ideal,          phi_hat,
                           rej,            dist.P.front(),
                           dist.P.back()};
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        csv::Table t;
        t.columns({"phi", "N_phi", "mean_n_over_N", "filtered_over_N", "ratio",
                   "ideal_sin2", "phi_hat", "rejected_fraction", "P0", "PN"});
        for (const auto& row : rows) t.row(row);
        em.table("response.csv", t);
        em.table("schedule.csv", schedule_table(proto));
        em.finish();
        return;
    }

    const RunResult result = run_protocol(cfg);
    em.table("populations.csv", trajectory_table(result.trajectory));
    em.table("schedule.csv", schedule_table(result.schedule));
    em.table("final_pn.csv", distribution_table(result.final_pn));
    em.derived("stage_end_times", result.stage_end_times);
    em.derived("mean_n", mean_n(result.final_pn));
    em.derived("mean_n_ex", mean_n_ex(result.final_pn));
    em.derived("P0", result.final_pn.P.front());
    em.derived("PN", result.final_pn.P.back());
    try {
        em.derived("filtered_mean", filtered_mean(result.final_pn));
        const PhaseEstimate est = estimate_phase(result.final_pn);
        em.derived("phi_hat", est.phi);
        em.derived("rejected_fraction", est.rejected_fraction);
    } catch (const std::exception&) {}
    if (job.ensemble.M > 0) {
        const OccupationDistribution emp = synthesize_measurements(
            result.final_pn, job.ensemble.M, job.ensemble.seed);
        em.table("final_pn_sampled.csv", distribution_table(emp));
    }
    em.finish();
}

void run_nex_scan(const JobConfig& job, Emitter& em) {
    ProtocolConfig cfg = protocol_config(job);
    const bool adaptive = cfg.mode == ProtocolConfig::SweepMode::Adaptive;
    if (!job.scan.present)
        throw config::ConfigError("nex-scan: a scan block is required");
    if (job.scan.variable != (adaptive ? "lambda" : "dot_J"))
        throw config::ConfigError(
            "nex-scan: scan variable must match the schedule mode (dot_J for "
            "constant, lambda for adaptive)");
    const std::vector<double> rates = job.scan.grid();

    const auto borders =
        semiclassical::crossover_theta(1.0, cfg.params);  // rates only

    // Quantum splitting sweeps.
    std::vector<double> nex_q(rates.size(), kNaN);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < rates.size(); ++i) {
        try {
            ProtocolConfig c = cfg;
            if (adaptive)
                c.lambda = rates[i];
            else
                c.dot_J = rates[i];
            const RunResult r = run_splitting(c, 0.0);
            nex_q[i] = mean_n_ex(r.final_pn);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    // Truncated-Wigner ensembles (point-parallel inside).
    std::vector<double> nex_c(rates.size(), kNaN), nex_err(rates.size(), kNaN);
    for (std::size_t i = 0; i < rates.size(); ++i) {
        ProtocolConfig c = cfg;
        if (adaptive)
            c.lambda = rates[i];
        else
            c.dot_J = rates[i];
        Segment seg;
        if (adaptive) {
            ProtocolConfig sc = c;
            sc.params.Delta = 0.0;
            seg = adaptive_schedule(sc, splitting_channels()).segments[0];
        } else {
            seg.j_law = Segment::Law::Linear;
            seg.J0 = c.params.J;
            seg.J1 = 0.0;
            seg.duration = c.params.J / c.dot_J;
        }
        ControlSchedule sched;
        sched.segments.push_back(seg);
        const auto cloud = semiclassical::sample_cloud(
            c.params.N, 0.5 * M_PI, 0.0, semiclassical::CloudShape::Gaussian,
            job.ensemble.points, job.ensemble.seed);
        const double dtc = std::min(job.schedule.dt, 0.02 / c.params.NU());
        const auto traj =
            semiclassical::propagate_cloud(cloud, sched, c.params, dtc, 0);
        nex_c[i] = traj.final_n_ex;
        nex_err[i] = traj.final_n_ex_stderr;
    }

    csv::Table t;
    t.columns({"rate", "nex_quantum", "nex_cloud", "nex_cloud_stderr",
               "border_adiabatic", "border_diabatic"});
    for (std::size_t i = 0; i < rates.size(); ++i)
        t.row({rates[i], nex_q[i], nex_c[i], nex_err[i], borders.adiabatic_rate,
               borders.diabatic_rate});
    em.table("nex_vs_rate.csv", t);
    em.derived("border_adiabatic", borders.adiabatic_rate);
    em.derived("border_diabatic", borders.diabatic_rate);
    em.finish();
}

void run_fscan(const JobConfig& job, Emitter& em) {
    const ModelParams base = base_params(job);
    const double nu_base = base.NU();
    const double dfrac = job.resolved_Delta_max() / job.resolved_U();
    std::vector<double> Ns = {static_cast<double>(base.N)};
    if (job.scan.present) {
        if (job.scan.variable != "N")
            throw config::ConfigError("fscan: scan variable must be N");
        Ns = job.scan.grid();
    }

    csv::Table tn;
    tn.columns({"N", "T_split", "Fmax_split", "T_branch", "Fmax_branch"});
    for (double Nd : Ns) {
        ModelParams p = base;
        p.N = static_cast<int>(std::lround(Nd));
        p.U = nu_base / p.N;  // keep NU fixed across the N scan
        const double J_floor = job.schedule.J_floor * p.NU();

        const SweepTable split =
            tabulate_f_eff(p, 0.0, splitting_channels(), J_floor, p.J);
        const double delta = dfrac * p.U;
        const SweepTable b12 = tabulate_f_eff(p, delta, {{1, 2}}, J_floor, p.J);
        const SweepTable b13 = tabulate_f_eff(p, delta, {{1, 3}}, J_floor, p.J);

        auto integral = [](const SweepTable& tb) {
            double T = 0.0;
            for (std::size_t i = 1; i < tb.J.size(); ++i)
                T += 0.5 * (tb.F[i] + tb.F[i - 1]) * (tb.J[i] - tb.J[i - 1]);
            return T + tb.F.front() * tb.J.front();
        };
        auto peak = [](const SweepTable& tb) {
            double m = 0.0;
            for (double f : tb.F) m = std::max(m, f);
            return m;
        };

        csv::Table fj;
        fj.columns({"J", "F_split_13", "F_branch_12", "F_branch_13"});
        for (std::size_t i = 0; i < split.J.size(); ++i) {
            // Grids coincide when Delta is the same refinement center; they
            // are not, so interpolate the branching tables onto split.J.
            auto interp = [](const SweepTable& tb, double x) {
                const auto it = std::lower_bound(tb.J.begin(), tb.J.end(), x);
                if (it == tb.J.begin()) return tb.F.front();
                if (it == tb.J.end()) return tb.F.back();
                const std::size_t k = static_cast<std::size_t>(it - tb.J.begin());
                const double f = (x - tb.J[k - 1]) / (tb.J[k] - tb.J[k - 1]);
                return tb.F[k - 1] + f * (tb.F[k] - tb.F[k - 1]);
            };
            fj.row({split.J[i], split.F[i], interp(b12, split.J[i]),
                    interp(b13, split.J[i])});
        }
        em.table("fj_N" + std::to_string(p.N) + ".csv", fj);

        SweepTable branch_max = b12;
        for (std::size_t i = 0; i < branch_max.F.size(); ++i)
            branch_max.F[i] = std::max(branch_max.F[i], b13.F[i]);
        tn.row({static_cast<double>(p.N), integral(split), peak(split),
                integral(branch_max), peak(branch_max)});
    }
    em.table("tn.csv", tn);
    em.finish();
}

void run_bias_scan(const JobConfig& job, Emitter& em) {
    ProtocolConfig cfg = protocol_config(job);
    if (!job.scan.present)
        throw config::ConfigError("bias-scan: a scan block is required");
    std::vector<double> biases = job.scan.grid();
    if (job.scan.variable == "Delta_over_U")
        for (auto& b : biases) b *= cfg.params.U;
    else if (job.scan.variable != "Delta")
        throw config::ConfigError("bias-scan: scan variable must be Delta or Delta_over_U");

    std::vector<std::vector<double>> rows(biases.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < biases.size(); ++i) {
        try {
            const RunResult r = run_splitting(cfg, biases[i]);
            rows[i] = {biases[i], biases[i] / cfg.params.U,
                       mean_n(r.final_pn) / cfg.params.N,
                       mean_n_ex(r.final_pn), r.final_pn.P.front(),
                       r.final_pn.P.back()};
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    csv::Table t;
    t.columns({"Delta", "Delta_over_U", "mean_n_over_N", "mean_n_ex", "P0", "PN"});
    for (const auto& row : rows) t.row(row);
    em.table("bias.csv", t);
    em.finish();
}

void run_husimi(const JobConfig& job, Emitter& em) {
    const ModelParams p = base_params(job);
    QuantumState psi;
    const std::string& src = job.husimi.source;
    if (src == "coherent") {
        psi = coherent_state(p.N, job.husimi.theta, job.husimi.phi);
    } else if (src == "cat") {
        psi = cat_state(p.N, job.husimi.cat_phase);
    } else if (src == "quench") {
        const double d = job.husimi.duration > 0.0 ? job.husimi.duration
                                                   : default_quench_duration(p);
        psi = quench(p, d);
    } else if (src == "protocol") {
        psi = run_protocol(protocol_config(job)).trajectory.final_state;
    } else {
        throw config::ConfigError("husimi: unknown source '" + src + "'");
    }
    if (job.husimi.rotate != 0.0) psi = rotate_y(psi, job.husimi.rotate);

    const SphereGrid grid = husimi_grid(psi, job.husimi.n_theta, job.husimi.n_phi);
    csv::Table q;
    std::vector<std::string> cols = {"theta"};
    for (std::size_t j = 0; j < grid.phi.size(); ++j)
        cols.push_back("q" + std::to_string(j));
    q.columns(cols);
    for (std::size_t i = 0; i < grid.theta.size(); ++i) {
        std::vector<double> row = {grid.theta[i]};
        for (std::size_t j = 0; j < grid.phi.size(); ++j)
            row.push_back(grid.value(static_cast<int>(i), static_cast<int>(j)));
        q.row(row);
    }
    em.table("husimi_q.csv", q);
    csv::Table ax;
    ax.columns({"theta"});
    for (double v : grid.theta) ax.row({v});
    em.table("husimi_theta.csv", ax);
    csv::Table ap;
    ap.columns({"phi"});
    for (double v : grid.phi) ap.row({v});
    em.table("husimi_phi.csv", ap);
    em.derived("normalization", grid.normalization(p.N));
    em.finish();
}

void run_feasibility(const JobConfig& job, Emitter& em) {
    namespace feas = dimer::feasibility;
    const feas::TrapSpec& spec = job.feasibility.spec;
    const feas::TrapFrequencies f = feas::trap_frequencies(spec);
    const feas::CondensateNumbers n = feas::condensate_numbers(spec);
    const double noise = feas::intensity_shot_noise(spec);
    const double t_split =
        feas::sweep_time_estimate(spec, job.feasibility.lambda, job.feasibility.C_split);
    const double t_branch =
        feas::sweep_time_estimate(spec, job.feasibility.lambda, job.feasibility.C_branch);
    const double twopi = 2.0 * M_PI;

    csv::Table t;
    t.columns({"Omega_r_Hz", "Omega_z_Hz", "Z_r_m", "N", "N_exact", "U_over_h_Hz",
               "NU_over_h_Hz", "N_c", "shot_noise", "sweep_time_split_s",
               "sweep_time_branch_s", "collapse_warning"});
    t.row({f.Omega_r / twopi, f.Omega_z / twopi, f.Z_r, static_cast<double>(n.N),
           n.N_exact, n.U / 6.62607015e-34, n.J_scale / 6.62607015e-34, n.N_c,
           noise, t_split, t_branch, n.collapse_warning ? 1.0 : 0.0});
    em.table("feasibility.csv", t);

    json rep;
    rep["Omega_r_Hz"] = f.Omega_r / twopi;
    rep["Omega_z_Hz"] = f.Omega_z / twopi;
    rep["Z_r_m"] = f.Z_r;
    rep["N"] = n.N;
    rep["N_exact"] = n.N_exact;
    rep["U_J"] = n.U;
    rep["U_over_h_Hz"] = n.U / 6.62607015e-34;
    rep["NU_over_h_Hz"] = n.J_scale / 6.62607015e-34;
    rep["N_c"] = n.N_c;
    rep["w_r_m"] = n.w_r;
    rep["w_z_m"] = n.w_z;
    rep["shot_noise"] = noise;
    rep["sweep_time_split_s"] = t_split;
    rep["sweep_time_branch_s"] = t_branch;
    rep["collapse_warning"] = n.collapse_warning;
    em.derived("report", rep);
    em.finish();
}

}  // namespace

int execute(const JobConfig& job) {
    try {
        if (job.threads > 0) omp_set_num_threads(job.threads);
        Emitter em(job);
        if (job.subcommand == "spectrum") {
            run_spectrum(job, em);
            em.finish();
        } else if (job.subcommand == "wkb") {
            run_wkb(job, em);
        } else if (job.subcommand == "quench") {
            run_quench(job, em);
        } else if (job.subcommand == "protocol") {
            run_protocol_cmd(job, em);
        } else if (job.subcommand == "nex-scan") {
            run_nex_scan(job, em);
        } else if (job.subcommand == "fscan") {
            run_fscan(job, em);
        } else if (job.subcommand == "bias-scan") {
            run_bias_scan(job, em);
        } else if (job.subcommand == "husimi") {
            run_husimi(job, em);
        } else if (job.subcommand == "feasibility") {
            run_feasibility(job, em);
        } else {
            throw config::ConfigError("unknown subcommand: " + job.subcommand);
        }
        return 0;
    } catch (const config::ConfigError& e) {
        std::cerr << "dimersim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dimersim: " << job.subcommand << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dimer::runner

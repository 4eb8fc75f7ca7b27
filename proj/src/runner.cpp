#include "nlslab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "nlslab/integrator.hpp"
#include "nlslab/scenarios.hpp"
#include "nlslab/snapshot.hpp"

namespace nlslab {

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::blowup: return "blowup";
        case RunStatus::failed: return "failed";
    }
    return "failed";
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

// Initial data in physical space; returns the starting time (nonzero only
// when seeding from a snapshot).
double build_initial_field(const ExperimentConfig& cfg, const Grid& g, cplx* u) {
    switch (cfg.ic_kind) {
        case IcKind::soliton:
            soliton_field(cfg.soliton, g, 0.0, u);
            return 0.0;
        case IcKind::gaussian:
            gaussian_perturbed(cfg.soliton, cfg.gaussian, g, u);
            return 0.0;
        case IcKind::periodic:
            periodic_deformed(cfg.soliton, cfg.periodic, g, u);
            return 0.0;
        case IcKind::snapshot: break;
    }
    auto [h, field] = [&] {
        try {
            return read_snapshot(cfg.snapshot_path);
        } catch (const std::runtime_error& e) {
            throw ConfigError(e.what());
        }
    }();
    if (h.nx != g.nx() || h.ny != g.ny() || h.lx != g.lx() || h.ly != g.ly())
        throw ConfigError("snapshot grid does not match the configured grid: " +
                          cfg.snapshot_path);
    if (h.model_tag != model_tag(cfg.model_kind))
        throw ConfigError("snapshot was written by a different model: " + cfg.snapshot_path);
    std::copy(field.data(), field.data() + field.size(), u);
    return h.t;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
    const Grid g(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
    auto fft = std::make_shared<SpectralTransform>(g);
    Model model(cfg.model_kind, g, fft, cfg.model_params);
    IntegratorOptions opt;
    opt.scheme = cfg.scheme;
    opt.dt = cfg.dt;
    opt.split_threshold = cfg.split_threshold;
    opt.dealias = cfg.dealias;
    Integrator integ(model, opt);

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const std::string dir = cfg.output_dir;
    write_config(dir + "/config_used.cfg", cfg);

    RunReport rep;
    rep.output_dir = dir;
    rep.m = g.min_fourier_distance();

    CplxArray u(g.size()), v(g.size()), v_good(g.size());
    const double t0 = build_initial_field(cfg, g, u.data());
    fft->to_spectral(u.data(), v.data());

    DiagnosticsEngine diag(model, cfg.fit_kmin, cfg.fit_kmax);
    CsvWriter csv(dir + "/diagnostics.csv");
    BlowupMonitor monitor(rep.m);

    // Requested snapshot times, deduplicated; each fires at the first state
    // whose time has reached it.
    std::vector<double> pending = cfg.snapshot_times;
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    std::size_t next_snap = 0;
    auto emit_snapshots = [&](double t, const cplx* v_spec) {
        while (next_snap < pending.size() && pending[next_snap] <= t + 1e-12) {
            fft->to_physical(v_spec, u.data());
            SnapshotHeader h{g.nx(), g.ny(), g.lx(), g.ly(), t, model_tag(cfg.model_kind)};
            write_snapshot(dir + "/state_t" + fmt_short(pending[next_snap]) + ".bin", h, u.data());
            ++next_snap;
        }
    };

    double t_good = t0;
    auto diag_row = [&](double t, const cplx* v_spec) -> const DiagnosticsRecord& {
        rep.rows.push_back(diag.compute(t, v_spec));
        const auto& r = rep.rows.back();
        csv.write_row(r);
        if (r.coeff_floor > 1e-6) rep.under_resolved = true;
        std::copy(v_spec, v_spec + g.size(), v_good.data());
        t_good = t;
        return r;
    };

    long long nsteps = static_cast<long long>(std::ceil((cfg.tmax - t0) / cfg.dt - 1e-9));
    if (nsteps < 0) nsteps = 0;

    emit_snapshots(t0, v.data());
    {
        const auto& r0 = diag_row(t0, v.data());
        if (r0.fit) rep.detection = monitor.update(t0, *r0.fit);
    }

    long long last = rep.detection ? std::min<long long>(nsteps, cfg.post_detect_steps) : nsteps;
    try {
        for (long long i = 1; i <= last; ++i) {
            const double t_prev = t0 + static_cast<double>(i - 1) * cfg.dt;
            integ.step(v.data(), t_prev);
            const double t = t0 + static_cast<double>(i) * cfg.dt;
            rep.steps = static_cast<std::size_t>(i);
            emit_snapshots(t, v.data());
            if (i % static_cast<long long>(cfg.diag_stride) == 0 || i == last) {
                const auto& r = diag_row(t, v.data());
                if (!rep.detection && r.fit) {
                    rep.detection = monitor.update(t, *r.fit);
                    if (rep.detection)
                        last = std::min<long long>(
                            nsteps, i + static_cast<long long>(cfg.post_detect_steps));
                }
            }
        }
        rep.status = rep.detection ? RunStatus::blowup : RunStatus::completed;
    } catch (const SolverFailure& sf) {
        // after a detection the crash is part of normal blow-up termination
        if (rep.detection) {
            rep.status = RunStatus::blowup;
        } else {
            rep.status = RunStatus::failed;
            rep.failure_t = sf.t();
        }
    }
    rep.t_end = t_good;

    fft->to_physical(v_good.data(), u.data());
    SnapshotHeader h{g.nx(), g.ny(), g.lx(), g.ly(), t_good, model_tag(cfg.model_kind)};
    write_snapshot(dir + "/state_final.bin", h, u.data());

    write_report(dir + "/report.txt", rep);
    return rep;
}

void write_report(const std::string& path, const RunReport& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << "status = " << to_string(r.status) << '\n';
    out << "t_end = " << fmt(r.t_end) << '\n';
    out << "steps = " << r.steps << '\n';
    out << "m = " << fmt(r.m) << '\n';
    out << "under_resolved = " << (r.under_resolved ? "true" : "false") << '\n';
    out << "blowup_detected = " << (r.detection ? "true" : "false") << '\n';
    if (r.detection) {
        out << "blowup_t_star = " << fmt(r.detection->t_star) << '\n';
        out << "blowup_B = " << fmt(r.detection->B) << '\n';
        out << "blowup_alpha = " << fmt(r.detection->alpha) << '\n';
        out << "blowup_p = " << fmt(r.detection->p) << '\n';
        out << "blowup_reliable = " << (r.detection->reliable ? "true" : "false") << '\n';
        out << "blowup_t_row = " << fmt(r.detection->t_row) << '\n';
    }
    if (r.failure_t) out << "failure_t = " << fmt(*r.failure_t) << '\n';
}

}  // namespace nlslab

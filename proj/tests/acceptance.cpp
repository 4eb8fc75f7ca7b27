// Acceptance gate. Each criterion is a self-contained scenario with every
// run parameter and tolerance pinned below; the binary prints one
// "criterion N: PASS|FAIL" line per requested criterion plus an audit line
// for each individual gate. Run with --criterion N (1..10) or with no
// arguments for the full sequence. Exit code 0 only when everything passed.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "nlslab/common.hpp"
#include "nlslab/config.hpp"
#include "nlslab/diagnostics.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/integrator.hpp"
#include "nlslab/models.hpp"
#include "nlslab/runner.hpp"
#include "nlslab/scenarios.hpp"
#include "nlslab/singularity.hpp"
#include "nlslab/snapshot.hpp"

using namespace nlslab;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return std::string(buf);
}

struct Gate {
    bool ok = true;
    void check(bool cond, const std::string& what) {
        std::printf("  %s: %s\n", cond ? "ok" : "FAIL", what.c_str());
        std::fflush(stdout);
        if (!cond) ok = false;
    }
};

std::string run_dir(const std::string& leaf) {
    std::filesystem::create_directories("acceptance_runs");
    return "acceptance_runs/" + leaf;
}

std::string model_label(ModelKind k) {
    switch (k) {
        case ModelKind::nls_plus: return "nlsp";
        case ModelKind::nls_minus: return "nlsm";
        case ModelKind::ds_pp: return "dspp";
        case ModelKind::ds_ii: return "dsii";
    }
    return "model";
}

double default_kmax(std::size_t n, double l) {
    return 2.0 * (static_cast<double>(n / 2) / l) / 3.0;
}

// Shared skeleton: square grid with L = 15, soliton parameters (1, sqrt2, 0, 0),
// default fit window, detection stops the run at the diagnostic row that fires.
ExperimentConfig base_config(ModelKind kind, std::size_t n, double dt, double tmax,
                             const std::string& dir) {
    ExperimentConfig cfg;
    cfg.model_kind = kind;
    cfg.nx = cfg.ny = n;
    cfg.lx = cfg.ly = 15.0;
    cfg.dt = dt;
    cfg.tmax = tmax;
    cfg.soliton.lambda = 1.0;
    cfg.soliton.v = kSqrt2;
    cfg.fit_kmin = 10.0;
    cfg.fit_kmax = default_kmax(n, 15.0);
    cfg.diag_stride = 50;
    cfg.output_dir = dir;
    return cfg;
}

// L2 distance between the stored final state of a run and the traveling
// soliton evaluated at the stored time.
double soliton_final_error(const std::string& dir, const SolitonParams& p) {
    auto [h, u] = read_snapshot(dir + "/state_final.bin");
    Grid g(h.nx, h.ny, h.lx, h.ly);
    CplxArray ref(g.size());
    soliton_field(p, g, h.t, ref.data());
    return validate_against(g, u.data(), ref.data());
}

void report_run(const std::string& tag, const RunReport& rep) {
    if (rep.detection) {
        const auto& d = *rep.detection;
        std::printf("  [%s] blowup: t*=%.6g B=%.4g alpha=%.6g p=%.4g (row t=%.6g, %zu steps)\n",
                    tag.c_str(), d.t_star, d.B, d.alpha, d.p, d.t_row, rep.steps);
    } else {
        std::printf("  [%s] %s at t=%.6g (%zu steps)\n", tag.c_str(),
                    to_string(rep.status).c_str(), rep.t_end, rep.steps);
    }
    std::fflush(stdout);
}

// 1. Four-model soliton transport: conservation, shape fidelity at t = 2 and
//    a flat analyticity record (delta near pi/2, algebraic exponent near 0).
bool criterion1() {
    Gate g;
    const std::array<ModelKind, 4> kinds = {ModelKind::nls_plus, ModelKind::nls_minus,
                                            ModelKind::ds_pp, ModelKind::ds_ii};
    for (ModelKind kind : kinds) {
        const std::string tag = model_label(kind);
        auto cfg = base_config(kind, 512, 1e-3, 2.0, run_dir("c1_" + tag));
        cfg.diag_stride = 100;
        RunReport rep = run_experiment(cfg);
        report_run(tag, rep);
        g.check(rep.status == RunStatus::completed && !rep.detection,
                tag + ": run completes without detection");
        if (rep.rows.empty()) continue;

        double max_de = 0.0, max_dm = 0.0, bmax = 0.0;
        double dmin = 1e300, dmax = -1e300;
        bool fit_everywhere = true;
        const double m0 = rep.rows.front().mass;
        for (const auto& r : rep.rows) {
            if (r.delta_E) max_de = std::max(max_de, *r.delta_E);
            max_dm = std::max(max_dm, std::abs(r.mass - m0) / m0);
            if (!r.fit) {
                fit_everywhere = false;
                continue;
            }
            dmin = std::min(dmin, r.fit->delta);
            dmax = std::max(dmax, r.fit->delta);
            bmax = std::max(bmax, std::abs(r.fit->B));
        }
        g.check(max_de <= 1e-10, fmt("%s: energy drift %.3e <= 1e-10", tag.c_str(), max_de));
        g.check(max_dm <= 1e-10, fmt("%s: mass drift %.3e <= 1e-10", tag.c_str(), max_dm));
        g.check(fit_everywhere && dmin >= 1.55 && dmax <= 1.60,
                fmt("%s: delta in [1.55, 1.60] at every row (saw [%.4f, %.4f])", tag.c_str(),
                    dmin, dmax));
        g.check(bmax <= 0.1, fmt("%s: |B| <= 0.1 at every row (max %.3e)", tag.c_str(), bmax));

        const double d2 = soliton_final_error(cfg.output_dir, cfg.soliton);
        g.check(d2 <= 1e-8, fmt("%s: final-state soliton error %.3e <= 1e-8", tag.c_str(), d2));
    }
    return g.ok;
}

// Richardson order estimate from three step sizes in ratio 4:2:1.
double observed_order(Scheme scheme) {
    Grid g(512, 512, 15.0, 15.0);
    auto fft = std::make_shared<SpectralTransform>(g);
    SolitonParams p{1.0, kSqrt2, 0.0, 0.0};
    CplxArray u0(g.size()), v0(g.size());
    soliton_field(p, g, 0.0, u0.data());
    fft->to_spectral(u0.data(), v0.data());

    const double tend = 2.0;
    const std::array<double, 3> dts = {4e-3, 2e-3, 1e-3};
    std::vector<CplxArray> finals;
    for (double dt : dts) {
        Model model(ModelKind::nls_plus, g, fft);
        IntegratorOptions opt;
        opt.scheme = scheme;
        opt.dt = dt;
        Integrator integ(model, opt);
        CplxArray v(g.size());
        v.copy_from(v0);
        const long long n = std::llround(tend / dt);
        for (long long i = 0; i < n; ++i) integ.step(v.data(), static_cast<double>(i) * dt);
        CplxArray uf(g.size());
        fft->to_physical(v.data(), uf.data());
        finals.push_back(std::move(uf));
    }
    const double e_coarse = validate_against(g, finals[0].data(), finals[1].data());
    const double e_fine = validate_against(g, finals[1].data(), finals[2].data());
    std::printf("  [%s] successive differences %.6e / %.6e\n",
                to_string(scheme).c_str(), e_coarse, e_fine);
    std::fflush(stdout);
    return std::log2(e_coarse / e_fine);
}

// 2. Time-stepping order on the traveling soliton.
bool criterion2() {
    Gate g;
    const double q_dcrk = observed_order(Scheme::dcrk);
    g.check(q_dcrk >= 3.8, fmt("composite scheme order %.3f >= 3.8", q_dcrk));
    const double q_strang = observed_order(Scheme::strang);
    g.check(std::abs(q_strang - 2.0) <= 0.1, fmt("splitting order %.3f = 2.0 +- 0.1", q_strang));
    return g.ok;
}

ExperimentConfig gaussian_config(ModelKind kind, double A, std::size_t n, double dt, double tmax,
                                 const std::string& dir) {
    auto cfg = base_config(kind, n, dt, tmax, dir);
    cfg.ic_kind = IcKind::gaussian;
    cfg.gaussian.A = A;
    return cfg;
}

// 3. Focusing collapse of the Gaussian-bumped soliton: quantitative tracker
//    output at A = 0.1 plus the amplitude sweep against the reference times.
bool criterion3() {
    Gate g;
    const std::array<double, 4> amps = {0.1, 0.2, 0.3, 0.5};
    // generous horizons; detection ends each run at the row where it fires
    const std::array<double, 4> horizon = {7.0, 5.3, 4.2, 2.8};
    const std::array<double, 4> t_ref = {5.16, 3.89, 3.10, 2.06};
    std::array<double, 4> t_star{};
    bool all_detected = true;

    for (std::size_t i = 0; i < amps.size(); ++i) {
        auto cfg = gaussian_config(ModelKind::nls_plus, amps[i], 1024, 2e-4, horizon[i],
                                   run_dir(fmt("c3_a%02.0f", amps[i] * 100.0)));
        RunReport rep = run_experiment(cfg);
        report_run(fmt("A=%.1f", amps[i]), rep);
        g.check(rep.detection.has_value(), fmt("A=%.1f: collapse detected", amps[i]));
        if (!rep.detection) {
            all_detected = false;
            continue;
        }
        const auto& d = *rep.detection;
        t_star[i] = d.t_star;
        g.check(std::abs(d.t_star - t_ref[i]) <= 0.1 * t_ref[i],
                fmt("A=%.1f: t* = %.4f within 10%% of %.2f", amps[i], d.t_star, t_ref[i]));
        if (i == 0) {
            g.check(d.p <= 0.5, fmt("A=0.1: fit residual %.3g <= 0.5", d.p));
            g.check(std::abs(d.t_star - 5.148) <= 0.5148,
                    fmt("A=0.1: t* = %.4f within 10%% of 5.148", d.t_star));
            g.check(std::abs(d.alpha - 7.2162) <= 0.5,
                    fmt("A=0.1: alpha = %.4f within 0.5 of 7.2162", d.alpha));
            g.check(d.B >= 0.3 && d.B <= 0.8, fmt("A=0.1: B = %.4f in [0.3, 0.8]", d.B));
        }
    }
    if (all_detected) {
        const bool mono = t_star[0] > t_star[1] && t_star[1] > t_star[2] && t_star[2] > t_star[3];
        g.check(mono, fmt("t* strictly decreasing: %.4f > %.4f > %.4f > %.4f", t_star[0],
                          t_star[1], t_star[2], t_star[3]));
    }
    return g.ok;
}

// 4. Mean-field regularization: the coupled elliptic system still collapses
//    under the same seeds but strictly later than the plain focusing model.
bool criterion4() {
    Gate g;
    const std::array<double, 4> amps = {0.1, 0.2, 0.3, 0.5};
    const std::array<double, 4> t_plain = {5.16, 3.89, 3.10, 2.06};  // criterion 3 references
    std::array<double, 4> t_star{};
    bool all_detected = true;

    for (std::size_t i = 0; i < amps.size(); ++i) {
        auto cfg = gaussian_config(ModelKind::ds_pp, amps[i], 512, 1e-3, 40.0,
                                   run_dir(fmt("c4_a%02.0f", amps[i] * 100.0)));
        cfg.model_params.chi = -1.0;
        cfg.model_params.beta = 1.0;
        cfg.model_params.gamma_ds = 1.0;
        RunReport rep = run_experiment(cfg);
        report_run(fmt("A=%.1f", amps[i]), rep);
        g.check(rep.detection.has_value(), fmt("A=%.1f: collapse detected", amps[i]));
        if (!rep.detection) {
            all_detected = false;
            continue;
        }
        t_star[i] = rep.detection->t_star;
        g.check(t_star[i] > t_plain[i],
                fmt("A=%.1f: t* = %.4f later than plain-model %.2f", amps[i], t_star[i],
                    t_plain[i]));
    }
    if (all_detected) {
        const bool mono = t_star[0] > t_star[1] && t_star[1] > t_star[2] && t_star[2] > t_star[3];
        g.check(mono, fmt("t* strictly decreasing: %.4f > %.4f > %.4f > %.4f", t_star[0],
                          t_star[1], t_star[2], t_star[3]));
    }
    return g.ok;
}

// 5. Transverse defocusing disperses the same seed: no detection, the strip
//    width stays an order of magnitude above the resolution scale, and the
//    sup norm ends below its initial value.
bool criterion5() {
    Gate g;
    auto cfg = gaussian_config(ModelKind::nls_minus, 0.1, 1024, 2e-3, 10.0, run_dir("c5_nlsm"));
    RunReport rep = run_experiment(cfg);
    report_run("nlsm", rep);
    g.check(rep.status == RunStatus::completed && !rep.detection,
            "run completes to t = 10 without detection");
    if (rep.rows.empty()) return false;

    double dmin = 1e300;
    bool fit_everywhere = true;
    for (const auto& r : rep.rows) {
        if (r.fit)
            dmin = std::min(dmin, r.fit->delta);
        else
            fit_everywhere = false;
    }
    g.check(fit_everywhere && dmin >= 10.0 * rep.m,
            fmt("delta >= 10 m at every row (min %.4f vs 10 m = %.4f)", dmin, 10.0 * rep.m));
    const double l0 = rep.rows.front().linf_u, l1 = rep.rows.back().linf_u;
    g.check(l1 < l0, fmt("sup norm decays: %.6f -> %.6f", l0, l1));
    return g.ok;
}

// 6. Integrable hyperbolic case: the bump radiates away, the strip width
//    oscillates near pi/2 and the sup norm settles onto a plateau.
bool criterion6() {
    Gate g;
    auto cfg = gaussian_config(ModelKind::ds_ii, 0.1, 512, 2e-3, 20.0, run_dir("c6_dsii"));
    RunReport rep = run_experiment(cfg);
    report_run("dsii", rep);
    g.check(rep.status == RunStatus::completed && !rep.detection,
            "run completes to t = 20 without detection");
    if (rep.rows.empty()) return false;

    double dmin = 1e300, dmax = -1e300;
    bool fit_everywhere = true;
    for (const auto& r : rep.rows) {
        if (!r.fit) {
            fit_everywhere = false;
            continue;
        }
        dmin = std::min(dmin, r.fit->delta);
        dmax = std::max(dmax, r.fit->delta);
    }
    g.check(fit_everywhere && dmin >= 1.3 && dmax <= 1.7,
            fmt("delta in [1.3, 1.7] at every row (saw [%.4f, %.4f])", dmin, dmax));

    // final quarter of the run: sup norm flat to 5 percent, and already below
    // its starting value
    double qmin = 1e300, qmax = -1e300, q_first = 0.0;
    bool seen = false;
    for (const auto& r : rep.rows) {
        if (r.t < 15.0 - 1e-9) continue;
        if (!seen) q_first = r.linf_u;
        seen = true;
        qmin = std::min(qmin, r.linf_u);
        qmax = std::max(qmax, r.linf_u);
    }
    const double l0 = rep.rows.front().linf_u;
    g.check(seen && q_first < l0,
            fmt("sup norm decreased into the final quarter: %.6f -> %.6f", l0, q_first));
    g.check(seen && (qmax - qmin) / qmin <= 0.05,
            fmt("sup norm flat over t in [15, 20]: spread %.3f%%", 100.0 * (qmax - qmin) / qmin));
    return g.ok;
}

// 7. Hyperbolic mean-field model on y-independent data reduces to the 1D
//    cubic focusing equation, so the soliton must transport exactly.
bool criterion7() {
    Gate g;
    auto cfg = base_config(ModelKind::ds_ii, 512, 1e-3, 2.0, run_dir("c7_dsii"));
    RunReport rep = run_experiment(cfg);
    report_run("dsii", rep);
    g.check(rep.status == RunStatus::completed, "run completes to t = 2");
    const double d2 = soliton_final_error(cfg.output_dir, cfg.soliton);
    g.check(d2 <= 1e-8, fmt("final-state soliton error %.3e <= 1e-8", d2));
    return g.ok;
}

ExperimentConfig periodic_config(ModelKind kind, double eps, double gamma, std::size_t n,
                                 double dt, double tmax, const std::string& dir) {
    auto cfg = base_config(kind, n, dt, tmax, dir);
    cfg.ic_kind = IcKind::periodic;
    cfg.periodic.epsilon = eps;
    cfg.periodic.gamma_pert = gamma;
    return cfg;
}

int maxima_at_final_state(const std::string& dir) {
    auto [h, u] = read_snapshot(dir + "/state_final.bin");
    Grid g(h.nx, h.ny, h.lx, h.ly);
    return count_local_maxima_y(g, u.data());
}

// 8. Periodic transverse deformation: the focusing model breaks into one
//    collapse point per modulation maximum (counted on the closed transverse
//    interval), faster for the faster modulation; the stable models shed the
//    same deformation without any high-frequency content.
bool criterion8() {
    Gate g;

    auto cfg2 = periodic_config(ModelKind::nls_plus, 0.1, 2.0, 1024, 6e-4, 12.0,
                                run_dir("c8_gamma2"));
    RunReport rep2 = run_experiment(cfg2);
    report_run("gamma=2", rep2);
    g.check(rep2.detection.has_value(), "gamma = 2: collapse detected");

    auto cfg4 = periodic_config(ModelKind::nls_plus, 0.1, 4.0, 1024, 6e-4, 8.0,
                                run_dir("c8_gamma4"));
    RunReport rep4 = run_experiment(cfg4);
    report_run("gamma=4", rep4);
    g.check(rep4.detection.has_value(), "gamma = 4: collapse detected");

    if (rep2.detection && rep4.detection) {
        const int n2 = maxima_at_final_state(cfg2.output_dir);
        const int n4 = maxima_at_final_state(cfg4.output_dir);
        g.check(n2 == 3, fmt("gamma = 2: %d transverse maxima at detection (want 3)", n2));
        g.check(n4 == 5, fmt("gamma = 4: %d transverse maxima at detection (want 5)", n4));
        g.check(rep4.detection->t_star < rep2.detection->t_star,
                fmt("t*(gamma=4) = %.4f earlier than t*(gamma=2) = %.4f",
                    rep4.detection->t_star, rep2.detection->t_star));
    }

    for (ModelKind kind : {ModelKind::nls_minus, ModelKind::ds_ii}) {
        const std::string tag = model_label(kind);
        auto cfg = periodic_config(kind, 0.2, 2.0, 1024, 2e-3, 10.0, run_dir("c8_" + tag));
        RunReport rep = run_experiment(cfg);
        report_run(tag, rep);
        g.check(rep.status == RunStatus::completed && !rep.detection,
                tag + ": run completes to t = 10 without detection");
        double floor_max = 0.0;
        for (const auto& r : rep.rows) floor_max = std::max(floor_max, r.coeff_floor);
        g.check(floor_max <= 1e-10,
                fmt("%s: highest-shell coefficients stay <= 1e-10 (max %.3e)", tag.c_str(),
                    floor_max));
    }
    return g.ok;
}

// 9. Fit core on synthetic spectra: exact parameter recovery, branch
//    reconstruction through wrapped phases, window-shift insensitivity.
bool criterion9() {
    Gate g;
    const double A = 1.7, B = 0.62, delta = 0.41, C = 0.9, alpha = 7.3;
    const double kmin = 10.0, kmax = default_kmax(1024, 15.0);

    std::vector<double> k, mod, phase, wrapped;
    for (int j = 1; j <= 511; ++j) {
        const double kk = static_cast<double>(j) / 15.0;
        k.push_back(kk);
        mod.push_back(std::exp(A - B * std::log(kk) - delta * kk));
        const double ph = C - alpha * kk;
        phase.push_back(ph);
        wrapped.push_back(std::arg(std::polar(1.0, ph)));
    }

    FitResult fit = fit_decay(k, mod, kmin, kmax);
    g.check(std::abs(fit.A - A) < 1e-10 && std::abs(fit.B - B) < 1e-10 &&
                std::abs(fit.delta - delta) < 1e-10,
            fmt("decay triple recovered: |dA|=%.2e |dB|=%.2e |ddelta|=%.2e",
                std::abs(fit.A - A), std::abs(fit.B - B), std::abs(fit.delta - delta)));

    fit_location(k, mod, phase, kmin, kmax, fit);
    g.check(std::abs(fit.C - C) < 1e-10 && std::abs(fit.alpha - alpha) < 1e-10,
            fmt("location pair recovered: |dC|=%.2e |dalpha|=%.2e", std::abs(fit.C - C),
                std::abs(fit.alpha - alpha)));

    // same fit fed the principal-value phases; the intercept may move by a
    // whole number of branch steps, the slope may not
    fit_location(k, mod, wrapped, kmin, kmax, fit);
    const double c_residue = std::abs(std::remainder(fit.C - C, M_PI));
    g.check(std::abs(fit.alpha - alpha) < 1e-10 && c_residue < 1e-10,
            fmt("wrapped phases: |dalpha|=%.2e, intercept off-branch by %.2e",
                std::abs(fit.alpha - alpha), c_residue));

    // direct branch reconstruction: descending-k linear phase with injected
    // pi-multiple jumps comes back exactly
    std::vector<double> clean, jumped;
    for (int j = 0; j < 64; ++j) {
        const double ph = 0.4 - 0.37 * static_cast<double>(j);
        clean.push_back(ph);
        const int steps = (j % 5 == 2) ? 3 : (j % 7 == 4) ? -2 : 0;
        jumped.push_back(ph + M_PI * static_cast<double>(steps));
    }
    const std::vector<double> rec = unwrap_phase(jumped);
    double worst = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i)
        worst = std::max(worst, std::abs(rec[i] - clean[i]));
    g.check(worst < 1e-10, fmt("injected pi jumps removed: max error %.2e", worst));

    // shifting the window start by +-5 must not move synthetic-model fits
    double spread_delta = 0.0, spread_alpha = 0.0;
    for (double k0 : {5.0, 15.0}) {
        FitResult shifted = fit_decay(k, mod, k0, kmax);
        fit_location(k, mod, phase, k0, kmax, shifted);
        spread_delta = std::max(spread_delta, std::abs(shifted.delta - fit.delta));
        spread_alpha = std::max(spread_alpha, std::abs(shifted.alpha - fit.alpha));
    }
    g.check(spread_delta < 1e-8 && spread_alpha < 1e-8,
            fmt("window shift +-5: |ddelta|=%.2e |dalpha|=%.2e", spread_delta, spread_alpha));
    return g.ok;
}

// 10. Infrastructure: snapshot bit-exactness, restart consistency, and
//     byte-identical diagnostics across repeated runs.
bool criterion10() {
    Gate g;

    // bitwise round trip through the snapshot codec
    {
        Grid grid(128, 128, 4.0, 4.0);
        CplxArray u(grid.size());
        SolitonParams p{1.0, kSqrt2, 0.3, 0.5};
        soliton_field(p, grid, 0.37, u.data());
        const std::string path = run_dir("c10_probe.bin");
        SnapshotHeader h{grid.nx(), grid.ny(), grid.lx(), grid.ly(), 0.37,
                         model_tag(ModelKind::ds_pp)};
        write_snapshot(path, h, u.data());
        auto [h2, u2] = read_snapshot(path);
        const bool header_ok = h2.nx == h.nx && h2.ny == h.ny &&
                               std::memcmp(&h2.lx, &h.lx, sizeof(double)) == 0 &&
                               std::memcmp(&h2.ly, &h.ly, sizeof(double)) == 0 &&
                               std::memcmp(&h2.t, &h.t, sizeof(double)) == 0 &&
                               h2.model_tag == h.model_tag;
        g.check(header_ok, "snapshot header round-trips bitwise");
        g.check(u2.size() == u.size() &&
                    std::memcmp(u.data(), u2.data(), u.size() * sizeof(cplx)) == 0,
                "snapshot payload round-trips bitwise");
    }

    // a run restarted from its own mid-time snapshot lands on the same state
    auto small_run = [&](const std::string& dir) {
        ExperimentConfig cfg;
        cfg.model_kind = ModelKind::nls_plus;
        cfg.nx = cfg.ny = 128;
        cfg.lx = cfg.ly = 4.0;
        cfg.dt = 1e-3;
        cfg.tmax = 0.1;
        cfg.soliton.lambda = 1.0;
        cfg.soliton.v = kSqrt2;
        cfg.ic_kind = IcKind::gaussian;
        cfg.gaussian.A = 0.05;
        cfg.diag_stride = 10;
        cfg.fit_kmin = 2.0;
        cfg.fit_kmax = 6.0;
        cfg.output_dir = run_dir(dir);
        return cfg;
    };

    auto cfg_a = small_run("c10_full");
    cfg_a.snapshot_times = {0.05};
    run_experiment(cfg_a);

    auto cfg_b = small_run("c10_restart");
    cfg_b.ic_kind = IcKind::snapshot;
    cfg_b.snapshot_path = cfg_a.output_dir + "/state_t0.05.bin";
    run_experiment(cfg_b);

    {
        auto [ha, ua] = read_snapshot(cfg_a.output_dir + "/state_final.bin");
        auto [hb, ub] = read_snapshot(cfg_b.output_dir + "/state_final.bin");
        Grid grid(ha.nx, ha.ny, ha.lx, ha.ly);
        const double d2 = validate_against(grid, ua.data(), ub.data());
        g.check(std::abs(ha.t - hb.t) < 1e-12, fmt("restart reaches the same time (%.17g vs %.17g)",
                                                   ha.t, hb.t));
        g.check(d2 <= 1e-12, fmt("restarted state matches full run: L2 distance %.3e <= 1e-12", d2));
    }

    // repeated identical runs must write byte-identical diagnostics
    auto slurp = [](const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    run_experiment(small_run("c10_rep1"));
    run_experiment(small_run("c10_rep2"));
    const std::string csv1 = slurp(run_dir("c10_rep1") + "/diagnostics.csv");
    const std::string csv2 = slurp(run_dir("c10_rep2") + "/diagnostics.csv");
    g.check(!csv1.empty() && csv1 == csv2,
            fmt("repeated runs write byte-identical diagnostics (%zu bytes)", csv1.size()));
    return g.ok;
}

bool run_criterion(int n) {
    switch (n) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        case 9: return criterion9();
        case 10: return criterion10();
    }
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 1;
        }
    }
    if (selected != 0 && (selected < 1 || selected > 10)) {
        std::fprintf(stderr, "criterion must be in 1..10, got %d\n", selected);
        return 1;
    }

    bool all_ok = true;
    for (int n = 1; n <= 10; ++n) {
        if (selected != 0 && n != selected) continue;
        std::printf("criterion %d:\n", n);
        std::fflush(stdout);
        bool ok = false;
        try {
            ok = run_criterion(n);
        } catch (const std::exception& e) {
            std::printf("  FAIL: unhandled exception: %s\n", e.what());
        }
        std::printf("criterion %d: %s\n", n, ok ? "PASS" : "FAIL");
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}

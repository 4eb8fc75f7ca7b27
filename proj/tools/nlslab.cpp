#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlslab/config.hpp"
#include "nlslab/plots.hpp"
#include "nlslab/runner.hpp"
#include "nlslab/singularity.hpp"

namespace {

struct SpectrumFile {
    std::vector<double> k, modulus, phase;
    bool has_phase = false;
};

// Plain decimal text, columns k and |v| (phase optional third column),
// separated by commas and/or whitespace. A non-numeric first line is
// treated as a header.
SpectrumFile read_spectrum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open spectrum file: " + path);
    SpectrumFile s;
    std::string line;
    int lineno = 0;
    bool saw_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::vector<double> vals;
        double x;
        while (ls >> x) vals.push_back(x);
        const bool clean = ls.eof();  // every token parsed as a number
        if (vals.empty() && clean) continue;
        if (!clean) {
            if (!saw_content) {
                saw_content = true;  // header line
                continue;
            }
            throw std::runtime_error("spectrum parse error at line " + std::to_string(lineno));
        }
        saw_content = true;
        if (vals.size() < 2)
            throw std::runtime_error("spectrum parse error at line " + std::to_string(lineno) +
                                     ": need columns k, |v|");
        s.k.push_back(vals[0]);
        s.modulus.push_back(vals[1]);
        if (vals.size() >= 3) {
            s.phase.push_back(vals[2]);
            s.has_phase = true;
        } else {
            s.phase.push_back(0.0);
        }
    }
    if (s.k.empty()) throw std::runtime_error("spectrum file has no samples: " + path);
    return s;
}

void print_report(const nlslab::RunReport& rep) {
    std::printf("status: %s\n", nlslab::to_string(rep.status).c_str());
    std::printf("t_end: %.17g after %zu steps\n", rep.t_end, rep.steps);
    if (rep.under_resolved) std::printf("warning: run is under-resolved (coeff_floor > 1e-6)\n");
    if (rep.detection) {
        const auto& d = *rep.detection;
        std::printf("blow-up detected: t* = %.17g, B = %.17g, alpha = %.17g, p = %.17g (%s)\n",
                    d.t_star, d.B, d.alpha, d.p, d.reliable ? "reliable" : "unreliable");
    }
    if (rep.failure_t) std::printf("solver failure at t = %.17g without detection\n", *rep.failure_t);
    std::printf("outputs: %s\n", rep.output_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral lab for transverse dynamics of the cubic NLS line soliton"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one experiment from a config file");
    std::string cfg_path;
    int threads = 1;
    run->add_option("--config", cfg_path, "experiment config file")->required();
    run->add_option("--threads", threads, "worker thread cap (default 1)");

    auto* fit = app.add_subcommand("fit", "Fit coefficient decay on an external spectrum");
    std::string spectrum_path;
    double kmin = 10.0, kmax = -1.0;
    fit->add_option("--spectrum", spectrum_path, "text file, columns k, |v| (phase optional)")
        ->required();
    fit->add_option("--kmin", kmin, "fit window lower bound (default 10)");
    fit->add_option("--kmax", kmax, "fit window upper bound (default: above the largest k)");

    auto* plot = app.add_subcommand("plot", "Render plots for a finished run directory");
    std::string run_dir;
    plot->add_option("run_dir", run_dir, "run output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "Run a config once per value of one key");
    std::string sweep_cfg, sweep_key, sweep_values;
    int sweep_threads = 1;
    sweep->add_option("--config", sweep_cfg, "base experiment config file")->required();
    sweep->add_option("--key", sweep_key, "dotted config key to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep->add_option("--threads", sweep_threads, "worker thread cap (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            nlslab::set_max_threads(threads);
            const auto cfg = nlslab::load_config(cfg_path);
            const auto rep = nlslab::run_experiment(cfg);
            print_report(rep);
            return rep.exit_code();
        }

        if (*fit) {
            const auto s = read_spectrum(spectrum_path);
            if (kmax <= 0.0) kmax = *std::max_element(s.k.begin(), s.k.end()) + 1.0;
            auto res = nlslab::fit_decay(s.k, s.modulus, kmin, kmax);
            if (s.has_phase) nlslab::fit_location(s.k, s.modulus, s.phase, kmin, kmax, res);
            std::printf("A = %.17g\n", res.A);
            std::printf("B = %.17g\n", res.B);
            std::printf("delta = %.17g\n", res.delta);
            std::printf("p = %.17g\n", res.p);
            if (s.has_phase) {
                std::printf("C = %.17g\n", res.C);
                std::printf("alpha = %.17g\n", res.alpha);
            }
            std::printf("samples = %zu\n", res.samples);
            return 0;
        }

        if (*plot) {
            const auto images = nlslab::emit_plots(run_dir);
            for (const auto& p : images) std::printf("%s\n", p.c_str());
            return 0;
        }

        if (*sweep) {
            nlslab::set_max_threads(sweep_threads);
            std::vector<std::string> values;
            {
                std::istringstream in(sweep_values);
                std::string item;
                while (std::getline(in, item, ','))
                    if (!item.empty()) values.push_back(item);
            }
            if (values.empty()) throw nlslab::ConfigError("sweep needs at least one value");

            const auto base = nlslab::load_config(sweep_cfg);
            std::filesystem::create_directories(base.output_dir);
            std::ofstream summary(base.output_dir + "/sweep_summary.csv", std::ios::binary);
            summary << "value,status,t_end,t_star,B,alpha,p,reliable\n";
            int worst = 0;
            for (const auto& val : values) {
                auto cfg = nlslab::load_config_with_override(sweep_cfg, sweep_key, val);
                if (sweep_key != "output_dir")
                    cfg.output_dir = base.output_dir + "/" + sweep_key + "=" + val;
                const auto rep = nlslab::run_experiment(cfg);
                print_report(rep);
                char buf[256];
                if (rep.detection) {
                    const auto& d = *rep.detection;
                    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                                  val.c_str(), nlslab::to_string(rep.status).c_str(), rep.t_end,
                                  d.t_star, d.B, d.alpha, d.p, d.reliable ? "true" : "false");
                } else {
                    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,,,,,\n", val.c_str(),
                                  nlslab::to_string(rep.status).c_str(), rep.t_end);
                }
                summary << buf;
                summary.flush();
                worst = std::max(worst, rep.exit_code());
            }
            return worst;
        }
    } catch (const nlslab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

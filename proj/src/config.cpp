#include "nlslab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "nlslab/grid.hpp"

namespace nlslab {

std::string to_string(IcKind k) {
    switch (k) {
        case IcKind::soliton: return "soliton";
        case IcKind::gaussian: return "gaussian";
        case IcKind::periodic: return "periodic";
        case IcKind::snapshot: return "snapshot";
    }
    return "soliton";
}

IcKind ic_kind_from_string(const std::string& s) {
    if (s == "soliton") return IcKind::soliton;
    if (s == "gaussian") return IcKind::gaussian;
    if (s == "periodic") return IcKind::periodic;
    if (s == "snapshot") return IcKind::snapshot;
    throw ConfigError("ic.kind must be one of soliton, gaussian, periodic, snapshot; got '" + s +
                      "'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value for " + key + " is not a number: '" + value + "'");
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    try {
        if (!value.empty() && value[0] == '-') throw std::invalid_argument("");
        std::size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("value for " + key + " is not a non-negative integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("value for " + key + " is not a boolean (true/false): '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(const std::string& text) {
    std::vector<ConfigEntry> entries;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("parse error at line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("parse error at line " + std::to_string(lineno) + ": empty key");
        if (!seen.insert(key).second)
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(lineno));
        entries.push_back({key, value, lineno});
    }
    return entries;
}

ExperimentConfig materialize_config(const std::vector<ConfigEntry>& entries) {
    static const std::set<std::string> known = {
        "model.kind",        "model.mu",          "model.chi",
        "model.beta",        "model.gamma_ds",    "model.b",
        "model.ds_alpha",    "grid.Nx",           "grid.Ny",
        "grid.Lx",           "grid.Ly",           "integrator.dt",
        "integrator.tmax",   "integrator.scheme", "integrator.split_threshold",
        "integrator.dealias", "ic.kind",          "ic.soliton.lambda",
        "ic.soliton.v",      "ic.soliton.phi0",   "ic.soliton.x0",
        "ic.gaussian.A",     "ic.gaussian.x1",    "ic.gaussian.y1",
        "ic.periodic.epsilon", "ic.periodic.gamma_pert", "ic.snapshot.path",
        "diag_stride",       "fit.kmin",          "fit.kmax",
        "snapshot_times",    "output_dir",        "post_detect_steps"};
    for (const auto& e : entries)
        if (!known.count(e.key))
            throw ConfigError("unknown key '" + e.key + "' at line " + std::to_string(e.line));

    auto get = [&](const char* k) -> std::optional<std::string> {
        for (const auto& e : entries)
            if (e.key == k) return e.value;
        return std::nullopt;
    };
    auto require = [&](const char* k) -> std::string {
        auto v = get(k);
        if (!v) throw ConfigError(std::string("missing required key: ") + k);
        return *v;
    };

    ExperimentConfig cfg;
    cfg.model_kind = [&] {
        auto v = get("model.kind");
        if (!v) throw ConfigError("missing required key: model.kind");
        try {
            return model_kind_from_string(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();

    cfg.model_params.mu = cfg.model_kind == ModelKind::nls_minus ? -1.0 : 1.0;
    if (auto v = get("model.mu")) {
        double mu = parse_double("model.mu", *v);
        if ((cfg.model_kind == ModelKind::nls_plus || cfg.model_kind == ModelKind::nls_minus) &&
            mu != cfg.model_params.mu)
            throw ConfigError("model.mu is fixed to " + fmt(cfg.model_params.mu) +
                              " by model.kind " + to_string(cfg.model_kind));
        if (cfg.model_kind != ModelKind::nls_plus && cfg.model_kind != ModelKind::nls_minus)
            cfg.model_params.mu = mu;
    }
    if (auto v = get("model.chi")) cfg.model_params.chi = parse_double("model.chi", *v);
    if (auto v = get("model.beta")) cfg.model_params.beta = parse_double("model.beta", *v);
    if (auto v = get("model.gamma_ds")) cfg.model_params.gamma_ds = parse_double("model.gamma_ds", *v);
    if (auto v = get("model.b")) cfg.model_params.b = parse_double("model.b", *v);
    if (auto v = get("model.ds_alpha")) cfg.model_params.ds_alpha = parse_double("model.ds_alpha", *v);
    if (cfg.model_kind == ModelKind::ds_pp) {
        if (cfg.model_params.chi != 1.0 && cfg.model_params.chi != -1.0)
            throw ConfigError("model.chi must be +1 or -1, got " + fmt(cfg.model_params.chi));
        if (!(cfg.model_params.beta > 0.0))
            throw ConfigError("model.beta must be positive, got " + fmt(cfg.model_params.beta));
    }
    if (cfg.model_kind == ModelKind::ds_ii || cfg.model_kind == ModelKind::ds_pp) {
        if (cfg.model_params.ds_alpha != 1.0 && cfg.model_params.ds_alpha != -1.0)
            throw ConfigError("model.ds_alpha must be +1 or -1, got " +
                              fmt(cfg.model_params.ds_alpha));
    }

    cfg.nx = parse_size("grid.Nx", require("grid.Nx"));
    cfg.ny = parse_size("grid.Ny", require("grid.Ny"));
    cfg.lx = parse_double("grid.Lx", require("grid.Lx"));
    cfg.ly = parse_double("grid.Ly", require("grid.Ly"));
    const Grid grid = [&] {
        try {
            return Grid(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();

    cfg.dt = parse_double("integrator.dt", require("integrator.dt"));
    if (!(cfg.dt > 0.0)) throw ConfigError("integrator.dt must be positive, got " + fmt(cfg.dt));
    cfg.tmax = parse_double("integrator.tmax", require("integrator.tmax"));
    if (!(cfg.tmax > 0.0))
        throw ConfigError("integrator.tmax must be positive, got " + fmt(cfg.tmax));
    if (auto v = get("integrator.scheme")) {
        try {
            cfg.scheme = scheme_from_string(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto v = get("integrator.split_threshold"))
        cfg.split_threshold = parse_double("integrator.split_threshold", *v);
    if (!(cfg.split_threshold > 0.0))
        throw ConfigError("integrator.split_threshold must be positive, got " +
                          fmt(cfg.split_threshold));
    if (auto v = get("integrator.dealias")) cfg.dealias = parse_bool("integrator.dealias", *v);

    if (auto v = get("ic.kind")) cfg.ic_kind = ic_kind_from_string(*v);
    if (auto v = get("ic.soliton.lambda")) cfg.soliton.lambda = parse_double("ic.soliton.lambda", *v);
    if (auto v = get("ic.soliton.v")) cfg.soliton.v = parse_double("ic.soliton.v", *v);
    if (auto v = get("ic.soliton.phi0")) cfg.soliton.phi0 = parse_double("ic.soliton.phi0", *v);
    if (auto v = get("ic.soliton.x0")) cfg.soliton.x0 = parse_double("ic.soliton.x0", *v);
    if (auto v = get("ic.gaussian.A")) cfg.gaussian.A = parse_double("ic.gaussian.A", *v);
    if (auto v = get("ic.gaussian.x1")) cfg.gaussian.x1 = parse_double("ic.gaussian.x1", *v);
    if (auto v = get("ic.gaussian.y1")) cfg.gaussian.y1 = parse_double("ic.gaussian.y1", *v);
    if (auto v = get("ic.periodic.epsilon"))
        cfg.periodic.epsilon = parse_double("ic.periodic.epsilon", *v);
    if (auto v = get("ic.periodic.gamma_pert"))
        cfg.periodic.gamma_pert = parse_double("ic.periodic.gamma_pert", *v);
    if (auto v = get("ic.snapshot.path")) cfg.snapshot_path = *v;
    try {
        switch (cfg.ic_kind) {
            case IcKind::soliton: validate(cfg.soliton); break;
            case IcKind::gaussian:
                validate(cfg.soliton);
                validate(cfg.gaussian, grid);
                break;
            case IcKind::periodic:
                validate(cfg.soliton);
                validate(cfg.periodic);
                break;
            case IcKind::snapshot:
                if (cfg.snapshot_path.empty())
                    throw std::invalid_argument("ic.snapshot.path required for ic.kind = snapshot");
                break;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (auto v = get("diag_stride")) cfg.diag_stride = parse_size("diag_stride", *v);
    if (cfg.diag_stride == 0) throw ConfigError("diag_stride must be at least 1");

    if (auto v = get("fit.kmin")) cfg.fit_kmin = parse_double("fit.kmin", *v);
    cfg.fit_kmax = 2.0 * grid.kx_max() / 3.0;
    if (auto v = get("fit.kmax")) cfg.fit_kmax = parse_double("fit.kmax", *v);
    if (!(cfg.fit_kmin >= 0.0))
        throw ConfigError("fit.kmin must be non-negative, got " + fmt(cfg.fit_kmin));
    if (!(cfg.fit_kmax > cfg.fit_kmin))
        throw ConfigError("fit.kmax must exceed fit.kmin, got " + fmt(cfg.fit_kmax));
    if (cfg.fit_kmax > grid.kx_max())
        throw ConfigError("fit.kmax exceeds the resolvable range kx_max = " + fmt(grid.kx_max()));

    if (auto v = get("snapshot_times")) cfg.snapshot_times = parse_list("snapshot_times", *v);
    for (double ts : cfg.snapshot_times)
        if (ts < 0.0 || ts > cfg.tmax)
            throw ConfigError("snapshot_times entry " + fmt(ts) + " outside [0, tmax]");

    if (auto v = get("output_dir")) {
        if (v->empty()) throw ConfigError("output_dir must not be empty");
        cfg.output_dir = *v;
    }
    if (auto v = get("post_detect_steps"))
        cfg.post_detect_steps = parse_size("post_detect_steps", *v);

    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return materialize_config(parse_config_text(buf.str()));
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "model.kind = " << to_string(cfg.model_kind) << '\n';
    out << "model.mu = " << fmt(cfg.model_params.mu) << '\n';
    out << "model.chi = " << fmt(cfg.model_params.chi) << '\n';
    out << "model.beta = " << fmt(cfg.model_params.beta) << '\n';
    out << "model.gamma_ds = " << fmt(cfg.model_params.gamma_ds) << '\n';
    out << "model.b = " << fmt(cfg.model_params.b) << '\n';
    out << "model.ds_alpha = " << fmt(cfg.model_params.ds_alpha) << '\n';
    out << "grid.Nx = " << cfg.nx << '\n';
    out << "grid.Ny = " << cfg.ny << '\n';
    out << "grid.Lx = " << fmt(cfg.lx) << '\n';
    out << "grid.Ly = " << fmt(cfg.ly) << '\n';
    out << "integrator.dt = " << fmt(cfg.dt) << '\n';
    out << "integrator.tmax = " << fmt(cfg.tmax) << '\n';
    out << "integrator.scheme = " << to_string(cfg.scheme) << '\n';
    out << "integrator.split_threshold = " << fmt(cfg.split_threshold) << '\n';
    out << "integrator.dealias = " << (cfg.dealias ? "true" : "false") << '\n';
    out << "ic.kind = " << to_string(cfg.ic_kind) << '\n';
    if (cfg.ic_kind != IcKind::snapshot) {
        out << "ic.soliton.lambda = " << fmt(cfg.soliton.lambda) << '\n';
        out << "ic.soliton.v = " << fmt(cfg.soliton.v) << '\n';
        out << "ic.soliton.phi0 = " << fmt(cfg.soliton.phi0) << '\n';
        out << "ic.soliton.x0 = " << fmt(cfg.soliton.x0) << '\n';
    }
    if (cfg.ic_kind == IcKind::gaussian) {
        out << "ic.gaussian.A = " << fmt(cfg.gaussian.A) << '\n';
        out << "ic.gaussian.x1 = " << fmt(cfg.gaussian.x1) << '\n';
        out << "ic.gaussian.y1 = " << fmt(cfg.gaussian.y1) << '\n';
    }
    if (cfg.ic_kind == IcKind::periodic) {
        out << "ic.periodic.epsilon = " << fmt(cfg.periodic.epsilon) << '\n';
        out << "ic.periodic.gamma_pert = " << fmt(cfg.periodic.gamma_pert) << '\n';
    }
    if (cfg.ic_kind == IcKind::snapshot) out << "ic.snapshot.path = " << cfg.snapshot_path << '\n';
    out << "diag_stride = " << cfg.diag_stride << '\n';
    out << "fit.kmin = " << fmt(cfg.fit_kmin) << '\n';
    out << "fit.kmax = " << fmt(cfg.fit_kmax) << '\n';
    out << "snapshot_times = ";
    for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i)
        out << (i ? "," : "") << fmt(cfg.snapshot_times[i]);
    out << '\n';
    out << "output_dir = " << cfg.output_dir << '\n';
    out << "post_detect_steps = " << cfg.post_detect_steps << '\n';
    return out.str();
}

void write_config(const std::string& path, const ExperimentConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << serialize_config(cfg);
}

ExperimentConfig load_config_with_override(const std::string& path, const std::string& key,
                                           const std::string& value) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto entries = parse_config_text(buf.str());
    bool found = false;
    for (auto& e : entries)
        if (e.key == key) {
            e.value = value;
            found = true;
        }
    if (!found) entries.push_back({key, value, 0});
    return materialize_config(entries);
}

}  // namespace nlslab

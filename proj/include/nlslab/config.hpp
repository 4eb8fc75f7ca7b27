#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlslab/integrator.hpp"
#include "nlslab/models.hpp"
#include "nlslab/scenarios.hpp"

namespace nlslab {

// Any failure to produce a valid ExperimentConfig: I/O, parse (with line
// numbers), or validation (naming the offending key).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class IcKind { soliton, gaussian, periodic, snapshot };

std::string to_string(IcKind k);
IcKind ic_kind_from_string(const std::string& s);

// Full run description. Defaults here are the materialized ones; fit_kmax
// carries the grid-dependent default 2 kx_max / 3 after load_config.
struct ExperimentConfig {
    ModelKind model_kind = ModelKind::nls_plus;
    ModelParams model_params;
    std::size_t nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    double dt = 0.0, tmax = 0.0;
    Scheme scheme = Scheme::dcrk;
    double split_threshold = 1.0;
    bool dealias = false;
    IcKind ic_kind = IcKind::soliton;
    SolitonParams soliton;
    GaussianPert gaussian;
    PeriodicPert periodic;
    std::string snapshot_path;
    std::size_t diag_stride = 10;
    double fit_kmin = 10.0;
    double fit_kmax = 0.0;
    std::vector<double> snapshot_times;
    std::string output_dir = "run";
    std::size_t post_detect_steps = 0;
};

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// Flat `key = value` lines, '#' comments, order preserved. Duplicate keys
// and malformed lines are rejected with their line number.
std::vector<ConfigEntry> parse_config_text(const std::string& text);

// Interpretation + validation of the flat key set. Unknown keys are errors.
ExperimentConfig materialize_config(const std::vector<ConfigEntry>& entries);

ExperimentConfig load_config(const std::string& path);

// Canonical flat-text form with every default materialized; load_config of
// the output reproduces the input config exactly.
std::string serialize_config(const ExperimentConfig& cfg);
void write_config(const std::string& path, const ExperimentConfig& cfg);

// One dotted-key override on top of a config file's raw text, for sweeps.
ExperimentConfig load_config_with_override(const std::string& path, const std::string& key,
                                           const std::string& value);

}  // namespace nlslab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/diagnostics.hpp"
#include "nlslab/singularity.hpp"

namespace nlslab {

enum class RunStatus { completed, blowup, failed };

std::string to_string(RunStatus s);

// Outcome of one experiment. `failed` means the state stopped being finite
// before the tracker reported anything; a failure after detection is normal
// blow-up termination, the tracker rather than the crash defines t*.
struct RunReport {
    RunStatus status = RunStatus::completed;
    double t_end = 0.0;       // time of the last valid state
    std::size_t steps = 0;    // successfully completed steps
    double m = 0.0;           // detection scale, smallest resolvable strip width
    bool under_resolved = false;
    std::optional<BlowupDetection> detection;
    std::optional<double> failure_t;
    std::string output_dir;
    std::vector<DiagnosticsRecord> rows;

    int exit_code() const { return status == RunStatus::failed ? 2 : 0; }
};

// Full pipeline: initial data, time loop, diagnostics CSV, snapshots at the
// requested times plus the last valid step, report.txt, config echo.
RunReport run_experiment(const ExperimentConfig& cfg);

void write_report(const std::string& path, const RunReport& r);

}  // namespace nlslab

#pragma once

#include <string>
#include <vector>

namespace nlslab {

// Renders the standard run pictures from a run directory: |u| heatmap and
// final-state spectrum slice (when a snapshot exists), strip width over time
// with the detection level, and sup norm over time. Every image gets a
// gnuplot-compatible .dat companion with the same series. Returns the image
// paths. Rasters are produced by a built-in P5 writer, so the output bytes
// are deterministic.
std::vector<std::string> emit_plots(const std::string& run_dir);

}  // namespace nlslab

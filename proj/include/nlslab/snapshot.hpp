#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "nlslab/common.hpp"

namespace nlslab {

// Fixed 64-byte little-endian preamble of a field snapshot:
//   offset  0  magic "NLSL"
//   offset  4  u32 format version (currently 1)
//   offset  8  u64 Nx
//   offset 16  u64 Ny
//   offset 24  f64 Lx
//   offset 32  f64 Ly
//   offset 40  f64 t
//   offset 48  u32 model tag
//   zero padding to 64 bytes, then Nx*Ny complex values as interleaved
//   (re, im) f64, row-major with y fastest.
struct SnapshotHeader {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double t = 0.0;
    unsigned model_tag = 0;
};

void write_snapshot(const std::string& path, const SnapshotHeader& h, const cplx* field);

SnapshotHeader read_snapshot_header(const std::string& path);
std::pair<SnapshotHeader, CplxArray> read_snapshot(const std::string& path);

}  // namespace nlslab

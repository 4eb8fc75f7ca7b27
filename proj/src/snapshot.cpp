#include "nlslab/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace nlslab {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian and this code writes memory images directly");
static_assert(sizeof(cplx) == 16, "payload layout requires complex<double> = two f64");

namespace {

constexpr std::size_t header_bytes = 64;
constexpr std::uint32_t format_version = 1;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

template <class T>
void put(unsigned char* buf, std::size_t off, T v) {
    std::memcpy(buf + off, &v, sizeof v);
}

template <class T>
T take(const unsigned char* buf, std::size_t off) {
    T v;
    std::memcpy(&v, buf + off, sizeof v);
    return v;
}

SnapshotHeader decode_header(const unsigned char* buf) {
    if (std::memcmp(buf, "NLSL", 4) != 0)
        throw std::runtime_error("snapshot magic mismatch: not a field snapshot");
    const auto version = take<std::uint32_t>(buf, 4);
    if (version != format_version)
        throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    SnapshotHeader h;
    h.nx = static_cast<std::size_t>(take<std::uint64_t>(buf, 8));
    h.ny = static_cast<std::size_t>(take<std::uint64_t>(buf, 16));
    h.lx = take<double>(buf, 24);
    h.ly = take<double>(buf, 32);
    h.t = take<double>(buf, 40);
    h.model_tag = take<std::uint32_t>(buf, 48);
    if (h.nx == 0 || h.ny == 0) throw std::runtime_error("snapshot header has empty grid");
    return h;
}

}  // namespace

void write_snapshot(const std::string& path, const SnapshotHeader& h, const cplx* field) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open snapshot for writing: " + path);
    unsigned char buf[header_bytes] = {};
    std::memcpy(buf, "NLSL", 4);
    put(buf, 4, format_version);
    put(buf, 8, static_cast<std::uint64_t>(h.nx));
    put(buf, 16, static_cast<std::uint64_t>(h.ny));
    put(buf, 24, h.lx);
    put(buf, 32, h.ly);
    put(buf, 40, h.t);
    put(buf, 48, static_cast<std::uint32_t>(h.model_tag));
    if (std::fwrite(buf, 1, header_bytes, f.get()) != header_bytes)
        throw std::runtime_error("short write on snapshot header: " + path);
    const std::size_t n = h.nx * h.ny;
    if (std::fwrite(field, sizeof(cplx), n, f.get()) != n)
        throw std::runtime_error("short write on snapshot payload: " + path);
    if (std::fflush(f.get()) != 0)
        throw std::runtime_error("short write on snapshot payload: " + path);
}

SnapshotHeader read_snapshot_header(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open snapshot: " + path);
    unsigned char buf[header_bytes];
    if (std::fread(buf, 1, header_bytes, f.get()) != header_bytes)
        throw std::runtime_error("truncated snapshot header: " + path);
    return decode_header(buf);
}

std::pair<SnapshotHeader, CplxArray> read_snapshot(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open snapshot: " + path);
    unsigned char buf[header_bytes];
    if (std::fread(buf, 1, header_bytes, f.get()) != header_bytes)
        throw std::runtime_error("truncated snapshot header: " + path);
    SnapshotHeader h = decode_header(buf);
    CplxArray field(h.nx * h.ny);
    if (std::fread(field.data(), sizeof(cplx), field.size(), f.get()) != field.size())
        throw std::runtime_error("truncated snapshot payload: " + path);
    return {h, std::move(field)};
}

}  // namespace nlslab

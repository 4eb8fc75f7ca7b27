#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/snapshot.hpp"

using namespace nlslab;

namespace {

void patch_byte(const std::string& path, long offset, char value) {
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(offset);
    f.put(value);
}

}  // namespace

TEST_CASE("snapshot roundtrip is bitwise") {
    Grid g(32, 16, 2.0, 3.0);
    CplxArray u(g.size());
    testutil::random_smooth_field(g, u.data(), 17);
    SnapshotHeader h;
    h.nx = g.nx();
    h.ny = g.ny();
    h.lx = g.lx();
    h.ly = g.ly();
    h.t = 1.375;
    h.model_tag = 2;
    const std::string path = "snap_test.bin";
    write_snapshot(path, h, u.data());

    CHECK(std::filesystem::file_size(path) == 64 + 32 * 16 * 16);

    auto hdr = read_snapshot_header(path);
    CHECK(hdr.nx == 32);
    CHECK(hdr.ny == 16);
    CHECK(hdr.lx == 2.0);
    CHECK(hdr.ly == 3.0);
    CHECK(hdr.t == 1.375);
    CHECK(hdr.model_tag == 2);

    auto [h2, field] = read_snapshot(path);
    CHECK(h2.t == h.t);
    REQUIRE(field.size() == g.size());
    CHECK(std::memcmp(field.data(), u.data(), g.size() * sizeof(cplx)) == 0);

    // writing the reread field reproduces the file byte for byte
    const std::string copy = "snap_copy.bin";
    write_snapshot(copy, h2, field.data());
    std::ifstream a(path, std::ios::binary), b(copy, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::remove(path.c_str());
    std::remove(copy.c_str());
}

TEST_CASE("the production state size is header plus 16 bytes per point") {
    // 512^2 complex doubles: 64 + 512*512*16 = 4194368
    SnapshotHeader h;
    h.nx = 512;
    h.ny = 512;
    h.lx = h.ly = 15.0;
    CplxArray u(h.nx * h.ny);
    u.fill(cplx(0.25, -0.5));
    const std::string path = "snap_big.bin";
    write_snapshot(path, h, u.data());
    CHECK(std::filesystem::file_size(path) == 4194368);
    std::remove(path.c_str());
}

TEST_CASE("corrupted files are rejected with a reason") {
    Grid g(8, 8, 1.0, 1.0);
    CplxArray u(g.size());
    u.fill(cplx(1.0, 0.0));
    SnapshotHeader h;
    h.nx = g.nx();
    h.ny = g.ny();
    h.lx = h.ly = 1.0;
    const std::string path = "snap_bad.bin";

    SUBCASE("wrong magic") {
        write_snapshot(path, h, u.data());
        patch_byte(path, 0, 'X');
        CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("magic"), std::runtime_error);
    }
    SUBCASE("unsupported version") {
        write_snapshot(path, h, u.data());
        patch_byte(path, 4, 9);
        CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("version"),
                             std::runtime_error);
    }
    SUBCASE("truncated payload") {
        write_snapshot(path, h, u.data());
        std::filesystem::resize_file(path, 64 + 100);
        CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("truncated"),
                             std::runtime_error);
    }
    SUBCASE("truncated header") {
        write_snapshot(path, h, u.data());
        std::filesystem::resize_file(path, 20);
        CHECK_THROWS_WITH_AS(read_snapshot_header(path), doctest::Contains("truncated"),
                             std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS(read_snapshot("snap_missing.bin"), doctest::Contains("cannot open"),
                             std::runtime_error);
    }
    std::remove(path.c_str());
}

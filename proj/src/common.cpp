#include "nlslab/common.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nlslab {

namespace {

int env_thread_cap() {
    const char* s = std::getenv("NLSLAB_MAX_THREADS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || v < 1) return 0;
    return static_cast<int>(std::min(v, 256L));
}

int g_requested_threads = 1;

}  // namespace

void set_max_threads(int n) {
    g_requested_threads = std::max(1, n);
}

int max_threads() {
    int n = g_requested_threads;
    int cap = env_thread_cap();
    if (cap > 0) n = std::min(n, cap);
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    std::size_t t = static_cast<std::size_t>(max_threads());
    if (t <= 1 || n < 2 * t) {
        fn(0, n);
        return;
    }
    std::size_t chunk = (n + t - 1) / t;
    std::vector<std::thread> workers;
    workers.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        std::size_t b = std::min(w * chunk, n);
        std::size_t e = std::min(b + chunk, n);
        if (b >= e) break;
        workers.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : workers) th.join();
}

CplxArray::CplxArray(std::size_t n) : n_(n) {
    if (n == 0) return;
    data_ = static_cast<cplx*>(fftw_malloc(n * sizeof(cplx)));
    if (!data_) throw std::bad_alloc();
    std::memset(static_cast<void*>(data_), 0, n * sizeof(cplx));
}

CplxArray::~CplxArray() {
    if (data_) fftw_free(data_);
}

CplxArray::CplxArray(CplxArray&& other) noexcept : data_(other.data_), n_(other.n_) {
    other.data_ = nullptr;
    other.n_ = 0;
}

CplxArray& CplxArray::operator=(CplxArray&& other) noexcept {
    if (this != &other) {
        if (data_) fftw_free(data_);
        data_ = other.data_;
        n_ = other.n_;
        other.data_ = nullptr;
        other.n_ = 0;
    }
    return *this;
}

void CplxArray::fill(const cplx& v) {
    for (std::size_t i = 0; i < n_; ++i) data_[i] = v;
}

void CplxArray::copy_from(const CplxArray& other) {
    if (other.n_ != n_) throw std::invalid_argument("CplxArray size mismatch in copy_from");
    if (n_) std::memcpy(static_cast<void*>(data_), other.data_, n_ * sizeof(cplx));
}

}  // namespace nlslab

#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace nlslab {

using cplx = std::complex<double>;

// Thread cap for pointwise loops. The effective value is the requested count
// clamped by the NLSLAB_MAX_THREADS environment variable when that is set.
void set_max_threads(int n);
int max_threads();

// Runs fn(begin, end) over a static contiguous partition of [0, n).
// The partition depends only on n and the thread cap, never on scheduling,
// so pointwise maps stay bitwise deterministic for a fixed thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Compensated accumulator. Reductions in this codebase run serially in index
// order; compensation keeps them accurate, the fixed order keeps them
// deterministic.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// fftw_malloc-backed complex array. FFTW's new-array execute requires every
// buffer to share the alignment of the buffers the plan was created on, so
// all field-sized storage goes through this type.
class CplxArray {
public:
    CplxArray() = default;
    explicit CplxArray(std::size_t n);
    ~CplxArray();
    CplxArray(CplxArray&& other) noexcept;
    CplxArray& operator=(CplxArray&& other) noexcept;
    CplxArray(const CplxArray&) = delete;
    CplxArray& operator=(const CplxArray&) = delete;

    cplx* data() { return data_; }
    const cplx* data() const { return data_; }
    std::size_t size() const { return n_; }
    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }
    void fill(const cplx& v);
    void copy_from(const CplxArray& other);

private:
    cplx* data_ = nullptr;
    std::size_t n_ = 0;
};

}  // namespace nlslab

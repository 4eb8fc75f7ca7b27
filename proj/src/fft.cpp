#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace nlslab {

namespace {

std::mutex g_plan_mutex;

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::string wisdom_path() {
    const char* s = std::getenv("NLSLAB_WISDOM");
    if (s && *s) return s;
    return "nlslab_wisdom";
}

SpectralTransform::SpectralTransform(const Grid& g)
    : grid_(g), work_in_(g.size()), work_out_(g.size()) {
    // Planning mutates global FFTW state; serialize it. Execution is
    // re-entrant and needs no lock.
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_import_wisdom_from_filename(wisdom_path().c_str());
    int nx = static_cast<int>(g.nx());
    int ny = static_cast<int>(g.ny());
    fwd_ = fftw_plan_dft_2d(nx, ny, as_fftw(work_in_.data()), as_fftw(work_out_.data()),
                            FFTW_FORWARD, FFTW_MEASURE);
    bwd_ = fftw_plan_dft_2d(nx, ny, as_fftw(work_in_.data()), as_fftw(work_out_.data()),
                            FFTW_BACKWARD, FFTW_MEASURE);
    if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    fftw_export_wisdom_to_filename(wisdom_path().c_str());
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void SpectralTransform::to_spectral(const cplx* phys, cplx* spec) {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(const_cast<cplx*>(phys)),
                     as_fftw(spec));
    const std::size_t ny = grid_.ny();
    const double scale = 1.0 / static_cast<double>(grid_.size());
    parallel_for(grid_.nx(), [&](std::size_t b, std::size_t e) {
        for (std::size_t ix = b; ix < e; ++ix) {
            cplx* row = spec + ix * ny;
            for (std::size_t iy = 0; iy < ny; ++iy) {
                double s = ((ix + iy) & 1u) ? -scale : scale;
                row[iy] *= s;
            }
        }
    });
}

void SpectralTransform::to_physical(const cplx* spec, cplx* phys) {
    const std::size_t ny = grid_.ny();
    cplx* w = work_in_.data();
    parallel_for(grid_.nx(), [&](std::size_t b, std::size_t e) {
        for (std::size_t ix = b; ix < e; ++ix) {
            const cplx* src = spec + ix * ny;
            cplx* dst = w + ix * ny;
            for (std::size_t iy = 0; iy < ny; ++iy) {
                double s = ((ix + iy) & 1u) ? -1.0 : 1.0;
                dst[iy] = s * src[iy];
            }
        }
    });
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(w), as_fftw(phys));
}

}  // namespace nlslab

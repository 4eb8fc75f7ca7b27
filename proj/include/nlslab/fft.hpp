#pragma once

#include <string>

#include "nlslab/common.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

// Transforms between physical samples and Fourier coefficients.
//
// Normalization contract: the pure mode exp(i(j*x/Lx + l*y/Ly)) maps to
// coefficient 1 at bins (j, l) and the inverse is exact. Because x starts at
// -Lx*pi rather than 0, the plain DFT picks up a factor (-1)^(ix+iy) per
// slot; it is folded into the normalization pass of to_spectral and applied
// symmetrically on the way back.
//
// Plans use FFTW_MEASURE backed by a wisdom file, so the chosen algorithm
// (and therefore the exact rounding of every transform) is reproducible
// across runs.
class SpectralTransform {
public:
    explicit SpectralTransform(const Grid& g);
    ~SpectralTransform();
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    const Grid& grid() const { return grid_; }

    // Out of place only: src and dst must be distinct fftw-aligned arrays of
    // grid().size() elements. Inputs are left untouched.
    void to_spectral(const cplx* phys, cplx* spec);
    void to_physical(const cplx* spec, cplx* phys);

private:
    Grid grid_;
    void* fwd_ = nullptr;  // fftw_plan, kept opaque so fftw3.h stays private
    void* bwd_ = nullptr;
    CplxArray work_in_;
    CplxArray work_out_;
};

// Wisdom file location: $NLSLAB_WISDOM if set, otherwise ./nlslab_wisdom.
std::string wisdom_path();

}  // namespace nlslab

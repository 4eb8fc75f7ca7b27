#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "nlslab/common.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/models.hpp"

namespace testutil {

inline constexpr double pi = 3.14159265358979323846;

inline std::shared_ptr<nlslab::SpectralTransform> make_fft(const nlslab::Grid& g) {
    return std::make_shared<nlslab::SpectralTransform>(g);
}

inline double sup_diff(const nlslab::cplx* a, const nlslab::cplx* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double sup_abs(const nlslab::cplx* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

// Reproducible smooth-ish random field: low-order Fourier modes only.
inline void random_smooth_field(const nlslab::Grid& g, nlslab::cplx* u, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const int mx = static_cast<int>(std::min<std::size_t>(g.nx() / 4, 5));
    const int my = static_cast<int>(std::min<std::size_t>(g.ny() / 4, 5));
    std::vector<std::pair<std::pair<int, int>, nlslab::cplx>> modes;
    for (int j = -mx; j <= mx; ++j)
        for (int l = -my; l <= my; ++l) modes.push_back({{j, l}, {amp(rng), amp(rng)}});
    for (std::size_t ix = 0; ix < g.nx(); ++ix)
        for (std::size_t iy = 0; iy < g.ny(); ++iy) {
            nlslab::cplx s = 0.0;
            for (const auto& [jl, a] : modes) {
                const double phase = jl.first * g.x(ix) / g.lx() + jl.second * g.y(iy) / g.ly();
                s += a * nlslab::cplx(std::cos(phase), std::sin(phase));
            }
            u[g.index(ix, iy)] = s / static_cast<double>(modes.size());
        }
}

}  // namespace testutil

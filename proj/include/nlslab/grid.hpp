#pragma once

#include <cstddef>

namespace nlslab {

// Periodic rectangle [-Lx*pi, Lx*pi) x [-Ly*pi, Ly*pi) sampled on Nx x Ny
// points, x ascending from -Lx*pi. Storage is row-major with y fastest:
// flat index = ix*Ny + iy.
class Grid {
public:
    Grid(std::size_t Nx, std::size_t Ny, double Lx, double Ly);

    std::size_t nx() const { return Nx_; }
    std::size_t ny() const { return Ny_; }
    double lx() const { return Lx_; }
    double ly() const { return Ly_; }
    std::size_t size() const { return Nx_ * Ny_; }
    std::size_t index(std::size_t ix, std::size_t iy) const { return ix * Ny_ + iy; }

    // Node coordinate x_n = 2*pi*n*Lx/Nx with n = ix - Nx/2.
    double x(std::size_t ix) const;
    double y(std::size_t iy) const;
    double dx() const;
    double dy() const;
    double cell_area() const;

    // Integer wavenumber index of a storage slot: 0..N/2-1 map to themselves,
    // N/2..N-1 wrap to negatives; the Nyquist slot counts as -N/2.
    long bin_x(std::size_t ix) const;
    long bin_y(std::size_t iy) const;
    double kx(std::size_t ix) const;  // bin_x(ix) / Lx
    double ky(std::size_t iy) const;
    bool is_nyquist_x(std::size_t ix) const { return 2 * ix == Nx_; }
    bool is_nyquist_y(std::size_t iy) const { return 2 * iy == Ny_; }

    // Largest wavenumber magnitude in each direction, (N/2)/L.
    double kx_max() const;
    double ky_max() const;

    // Smallest resolvable Fourier-space distance 2*pi*Lx/Nx. The blow-up
    // detector declares a singularity when the fitted strip width falls to
    // or below this value.
    double min_fourier_distance() const;

    bool operator==(const Grid&) const = default;

private:
    std::size_t Nx_, Ny_;
    double Lx_, Ly_;
};

}  // namespace nlslab

#include "nlslab/grid.hpp"

#include <bit>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlslab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_size(std::size_t n, const char* name) {
    if (n < 2 || !std::has_single_bit(n))
        throw std::invalid_argument(std::string(name) + " must be a power of two >= 2, got " +
                                    std::to_string(n));
}

}  // namespace

Grid::Grid(std::size_t Nx, std::size_t Ny, double Lx, double Ly)
    : Nx_(Nx), Ny_(Ny), Lx_(Lx), Ly_(Ly) {
    check_size(Nx, "grid.Nx");
    check_size(Ny, "grid.Ny");
    if (!(Lx > 0.0)) throw std::invalid_argument("grid.Lx must be positive");
    if (!(Ly > 0.0)) throw std::invalid_argument("grid.Ly must be positive");
}

double Grid::x(std::size_t ix) const {
    return two_pi * Lx_ * (static_cast<double>(ix) - static_cast<double>(Nx_ / 2)) /
           static_cast<double>(Nx_);
}

double Grid::y(std::size_t iy) const {
    return two_pi * Ly_ * (static_cast<double>(iy) - static_cast<double>(Ny_ / 2)) /
           static_cast<double>(Ny_);
}

double Grid::dx() const { return two_pi * Lx_ / static_cast<double>(Nx_); }
double Grid::dy() const { return two_pi * Ly_ / static_cast<double>(Ny_); }
double Grid::cell_area() const { return dx() * dy(); }

long Grid::bin_x(std::size_t ix) const {
    return ix < Nx_ / 2 ? static_cast<long>(ix) : static_cast<long>(ix) - static_cast<long>(Nx_);
}

long Grid::bin_y(std::size_t iy) const {
    return iy < Ny_ / 2 ? static_cast<long>(iy) : static_cast<long>(iy) - static_cast<long>(Ny_);
}

double Grid::kx(std::size_t ix) const { return static_cast<double>(bin_x(ix)) / Lx_; }
double Grid::ky(std::size_t iy) const { return static_cast<double>(bin_y(iy)) / Ly_; }

double Grid::kx_max() const { return static_cast<double>(Nx_ / 2) / Lx_; }
double Grid::ky_max() const { return static_cast<double>(Ny_ / 2) / Ly_; }

double Grid::min_fourier_distance() const { return two_pi * Lx_ / static_cast<double>(Nx_); }

}  // namespace nlslab

#include "nlslab/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlslab {

void validate(const SolitonParams& p) {
    if (!(p.lambda > 0.0))
        throw std::invalid_argument("ic.soliton.lambda must be positive, got " +
                                    std::to_string(p.lambda));
}

void validate(const GaussianPert& q, const Grid& g) {
    const double pi = std::acos(-1.0);
    const double hx = pi * g.lx(), hy = pi * g.ly();
    if (!(q.x1 >= -hx && q.x1 < hx))
        throw std::invalid_argument("ic.gaussian.x1 outside the periodic cell [-pi Lx, pi Lx)");
    if (!(q.y1 >= -hy && q.y1 < hy))
        throw std::invalid_argument("ic.gaussian.y1 outside the periodic cell [-pi Ly, pi Ly)");
}

void validate(const PeriodicPert& r) {
    if (!(std::abs(r.epsilon) < 1.0))
        throw std::invalid_argument("ic.periodic.epsilon must satisfy |epsilon| < 1, got " +
                                    std::to_string(r.epsilon));
    if (r.gamma_pert != std::round(r.gamma_pert))
        throw std::invalid_argument(
            "ic.periodic.gamma_pert must be an integer to keep the modulation periodic, got " +
            std::to_string(r.gamma_pert));
}

void soliton_field(const SolitonParams& p, const Grid& g, double t, cplx* out) {
    validate(p);
    const double com = 0.5 * (p.lambda * p.lambda - p.v * p.v) * t;
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const double x = g.x(ix);
        const double xi = x - p.x0 - p.v * t;
        const double theta = p.phi0 + p.v * x + com;
        const cplx val = p.lambda / std::cosh(p.lambda * xi) *
                         cplx(std::cos(theta), std::sin(theta));
        cplx* row = out + ix * g.ny();
        for (std::size_t iy = 0; iy < g.ny(); ++iy) row[iy] = val;
    }
}

void soliton_time_derivative(const SolitonParams& p, const Grid& g, double t, cplx* out) {
    validate(p);
    const double com = 0.5 * (p.lambda * p.lambda - p.v * p.v) * t;
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const double x = g.x(ix);
        const double xi = x - p.x0 - p.v * t;
        const double theta = p.phi0 + p.v * x + com;
        const cplx u = p.lambda / std::cosh(p.lambda * xi) *
                       cplx(std::cos(theta), std::sin(theta));
        // d/dt of both the carrier phase and the moving sech profile
        const cplx rate =
            cplx(p.v * p.lambda * std::tanh(p.lambda * xi),
                 0.5 * (p.lambda * p.lambda - p.v * p.v));
        const cplx val = rate * u;
        cplx* row = out + ix * g.ny();
        for (std::size_t iy = 0; iy < g.ny(); ++iy) row[iy] = val;
    }
}

void gaussian_perturbed(const SolitonParams& p, const GaussianPert& q, const Grid& g, cplx* out) {
    validate(q, g);
    soliton_field(p, g, 0.0, out);
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const double dx = g.x(ix) - q.x1;
        cplx* row = out + ix * g.ny();
        for (std::size_t iy = 0; iy < g.ny(); ++iy) {
            const double dy = g.y(iy) - q.y1;
            row[iy] += q.A * std::exp(-dx * dx - dy * dy);
        }
    }
}

void periodic_deformed(const SolitonParams& p, const PeriodicPert& r, const Grid& g, cplx* out) {
    validate(r);
    soliton_field(p, g, 0.0, out);
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        cplx* row = out + ix * g.ny();
        for (std::size_t iy = 0; iy < g.ny(); ++iy)
            row[iy] *= 1.0 + r.epsilon * std::cos(r.gamma_pert * g.y(iy) / g.ly());
    }
}

}  // namespace nlslab

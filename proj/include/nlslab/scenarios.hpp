#pragma once

#include "nlslab/common.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

// Traveling-wave parameters of the 1D cubic NLS soliton
// u = lambda exp(i(phi0 + v x + (lambda^2 - v^2) t / 2)) sech(lambda (x - x0 - v t)).
struct SolitonParams {
    double lambda = 1.0;
    double v = 0.0;
    double phi0 = 0.0;
    double x0 = 0.0;
};

struct GaussianPert {
    double A = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;
};

struct PeriodicPert {
    double epsilon = 0.0;
    double gamma_pert = 0.0;  // integer transverse wavenumber parameter
};

// y-independent soliton sampled at time t.
void soliton_field(const SolitonParams& p, const Grid& g, double t, cplx* out);

// Analytic u_t of the soliton, the oracle for right-hand-side exactness.
void soliton_time_derivative(const SolitonParams& p, const Grid& g, double t, cplx* out);

// t = 0 soliton plus the real bump A exp(-(x-x1)^2 - (y-y1)^2).
void gaussian_perturbed(const SolitonParams& p, const GaussianPert& q, const Grid& g, cplx* out);

// t = 0 soliton times (1 + epsilon cos(gamma y / Ly)). gamma must be an
// integer or the modulation breaks periodicity; non-integers are rejected.
void periodic_deformed(const SolitonParams& p, const PeriodicPert& r, const Grid& g, cplx* out);

void validate(const SolitonParams& p);
void validate(const GaussianPert& q, const Grid& g);
void validate(const PeriodicPert& r);

}  // namespace nlslab

#pragma once

#include <vector>

#include "nlslab/common.hpp"
#include "nlslab/models.hpp"

namespace nlslab {

enum class Scheme { dcrk, strang };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct IntegratorOptions {
    Scheme scheme = Scheme::dcrk;
    double dt = 0.0;
    double split_threshold = 1.0;  // a mode is stiff when |L| * dt > threshold
    bool dealias = false;          // 2/3-rule truncation of the nonlinear term
};

// Mask is true exactly where |L(k)| * dt > theta.
std::vector<unsigned char> split_frequencies(const std::vector<double>& symbol_im, double dt,
                                             double theta);

// Fixed-step time integration of v_t = L v + N(v) in coefficient space.
//
// The composite scheme advances the non-stiff part of L plus all of N with
// classical explicit RK4 and the stiff part of L with a companion
// linearly-implicit third-order RK bound to the same stage derivatives
// (per-stage solves are scalar divisions since L is diagonal). The stage
// coupling is third order, the purely linear path fourth order with
// |R(iy)| <= 1 on the whole imaginary axis, and the explicit path is exactly
// RK4, so on spectrally resolved data the observed order stays ~4.
//
// The splitting scheme is the cross-validation oracle: half-step exact
// linear flow, exact pointwise nonlinear phase flow, half-step linear flow.
class Integrator {
public:
    Integrator(Model& model, const IntegratorOptions& opt);

    // Advances v in place by dt; t is the state's time before the step (only
    // used to stamp failures). Throws SolverFailure when the state stops
    // being finite.
    void step(cplx* v, double t);

    double dt() const { return opt_.dt; }
    const IntegratorOptions& options() const { return opt_; }
    const std::vector<unsigned char>& stiff_mask() const { return mask_; }

private:
    void step_dcrk(cplx* v);
    void step_strang(cplx* v);

    Model& model_;
    IntegratorOptions opt_;
    std::vector<unsigned char> mask_;
    std::vector<double> lo_;      // Im L on explicit modes, 0 elsewhere
    std::vector<double> hi_;      // Im L on stiff modes, 0 elsewhere
    std::vector<double> keep_;    // dealias factor applied to N_hat (1 or 0)
    std::vector<cplx> exp_half_;  // exp(L dt / 2) for the splitting scheme
    CplxArray k1_, k2_, k3_, k4_, y_, u_;
};

}  // namespace nlslab

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nlslab/common.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

enum class ModelKind { nls_plus, nls_minus, ds_pp, ds_ii };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);
unsigned model_tag(ModelKind k);  // stable snapshot tag: 0, 1, 2, 3
ModelKind model_kind_from_tag(unsigned tag);

// Coefficients beyond the kind. mu is the NLS transverse sign and is fixed
// by the kind; chi, beta and gamma_ds enter the DS++ system; b and ds_alpha
// are carried for generality but unused by the four concrete models.
struct ModelParams {
    double mu = 1.0;
    double chi = -1.0;
    double beta = 1.0;
    double gamma_ds = 1.0;
    double b = 1.0;
    double ds_alpha = 1.0;
};

// Raised when a state stops being finite; carries the time of the failed step.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(double t, double sup);
    double t() const { return t_; }
    double sup() const { return sup_; }

private:
    double t_;
    double sup_;
};

// One of the four PDEs in the common form v_t = L v + N(v), with diagonal
// purely imaginary L in Fourier space and a physical-space nonlinearity of
// the shape N(u) = -i V(u) u for a real potential V.
class Model {
public:
    Model(ModelKind kind, const Grid& g, std::shared_ptr<SpectralTransform> fft,
          ModelParams params = {});

    ModelKind kind() const { return kind_; }
    const ModelParams& params() const { return params_; }
    const Grid& grid() const { return grid_; }
    SpectralTransform& transform() { return *fft_; }
    std::shared_ptr<SpectralTransform> transform_ptr() { return fft_; }

    // L at one wavenumber pair; purely imaginary for every model.
    cplx linear_symbol(double kx, double ky) const;
    // Imag(L) per storage slot.
    const std::vector<double>& symbol_im() const { return sym_im_; }

    // Fourier multiplier taking FFT(|u|^2) to the mean-field quantity in the
    // nonlinearity (Phi_x for ds++, Phi for dsii). At k = (0,0) the value
    // continues the ky = 0 line (-gamma_ds resp. -2): that is the unique
    // choice for which y-independent data reduces exactly to the 1D cubic
    // NLS on the periodic box. A mean-free zero mode would differ from it
    // only by a time-linear global phase, invisible in every |u|-based
    // observable but fatal to direct comparisons with the analytic soliton.
    double mean_field_multiplier(double kx, double ky) const;

    // N(u) in physical space. Validates finiteness of the input (cold path).
    void nonlinear_term(const cplx* u_phys, cplx* out_phys);
    // FFT(N(IFFT(v))): the nonlinear part of the right-hand side in
    // coefficient space. Hot path, no finiteness checks.
    void nonlinear_hat(const cplx* v_spec, cplx* out_spec);
    // Full right-hand side L v + N_hat(v).
    void rhs(const cplx* v_spec, cplx* out_spec);

    // The real potential with N(u) = -i V u. |u| is invariant under
    // u_t = N(u), so V is frozen along that subflow and u -> exp(-i V h) u
    // is its exact solution; the splitting integrator relies on this.
    void potential(const cplx* u_phys, std::vector<double>& v_out);
    void nonlinear_phase_flow(cplx* u_phys, double h);

    // Conserved functionals, cell-weighted quadrature with spectral
    // derivatives. The two-argument form avoids a redundant transform when
    // the caller already has the coefficients.
    double hamiltonian(const cplx* u_phys);
    double hamiltonian(const cplx* u_phys, const cplx* v_spec);

private:
    void mean_field(const cplx* u_phys, std::vector<double>& v_out);

    ModelKind kind_;
    Grid grid_;
    std::shared_ptr<SpectralTransform> fft_;
    ModelParams params_;
    std::vector<double> sym_im_;
    std::vector<double> mf_mult_;
    std::vector<double> pot_;
    CplxArray buf_phys_;
    CplxArray buf_spec_;
    CplxArray buf_w_;
};

// Cell-weighted sum of |u|^2.
double mass(const Grid& g, const cplx* u_phys);

}  // namespace nlslab

#include "nlslab/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlslab {

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::nls_plus: return "nls+";
        case ModelKind::nls_minus: return "nls-";
        case ModelKind::ds_pp: return "ds++";
        case ModelKind::ds_ii: return "dsii";
    }
    throw std::logic_error("bad ModelKind");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "nls+") return ModelKind::nls_plus;
    if (s == "nls-") return ModelKind::nls_minus;
    if (s == "ds++") return ModelKind::ds_pp;
    if (s == "dsii") return ModelKind::ds_ii;
    throw std::invalid_argument("unknown model kind '" + s +
                                "' (expected nls+, nls-, ds++ or dsii)");
}

unsigned model_tag(ModelKind k) { return static_cast<unsigned>(k); }

ModelKind model_kind_from_tag(unsigned tag) {
    if (tag > 3) throw std::invalid_argument("unknown model tag " + std::to_string(tag));
    return static_cast<ModelKind>(tag);
}

SolverFailure::SolverFailure(double t, double sup)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "solver state became non-finite at t = " << t << " (last sup-norm " << sup << ")";
          return os.str();
      }()),
      t_(t),
      sup_(sup) {}

Model::Model(ModelKind kind, const Grid& g, std::shared_ptr<SpectralTransform> fft,
             ModelParams params)
    : kind_(kind),
      grid_(g),
      fft_(std::move(fft)),
      params_(params),
      sym_im_(g.size()),
      mf_mult_(),
      pot_(g.size()),
      buf_phys_(g.size()),
      buf_spec_(g.size()),
      buf_w_(g.size()) {
    if (!fft_ || !(fft_->grid() == g))
        throw std::invalid_argument("Model requires a transform planned on its own grid");
    // mu is determined by the NLS kind; DS kinds ignore it.
    if (kind_ == ModelKind::nls_plus) params_.mu = 1.0;
    if (kind_ == ModelKind::nls_minus) params_.mu = -1.0;
    if (params_.chi != 1.0 && params_.chi != -1.0)
        throw std::invalid_argument("model.chi must be +1 or -1");
    if (kind_ == ModelKind::ds_pp && !(params_.beta > 0.0))
        throw std::invalid_argument("model.beta must be positive (elliptic mean-field equation)");
    if (params_.ds_alpha != 1.0 && params_.ds_alpha != -1.0)
        throw std::invalid_argument("model.ds_alpha must be +1 or -1");

    const std::size_t ny = g.ny();
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        double kx = g.kx(ix);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            sym_im_[ix * ny + iy] = linear_symbol(kx, g.ky(iy)).imag();
        }
    }
    if (kind_ == ModelKind::ds_pp || kind_ == ModelKind::ds_ii) {
        mf_mult_.resize(g.size());
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            double kx = g.kx(ix);
            for (std::size_t iy = 0; iy < ny; ++iy) {
                mf_mult_[ix * ny + iy] = mean_field_multiplier(kx, g.ky(iy));
            }
        }
    }
}

// Time units are fixed by the soliton convention: the carrier exp(ivx)
// travels at speed v and the stationary profile rotates at rate lambda^2/2.
// That is the normalization i u_t + (1/2)(u_xx +- u_yy) + ... = 0, so every
// symbol carries the 1/2.
cplx Model::linear_symbol(double kx, double ky) const {
    switch (kind_) {
        case ModelKind::nls_plus: return cplx(0.0, -0.5 * (kx * kx + ky * ky));
        case ModelKind::nls_minus: return cplx(0.0, -0.5 * (kx * kx - ky * ky));
        case ModelKind::ds_pp: return cplx(0.0, -0.5 * (kx * kx + ky * ky));
        case ModelKind::ds_ii: return cplx(0.0, -0.5 * (kx * kx - ky * ky));
    }
    throw std::logic_error("bad ModelKind");
}

double Model::mean_field_multiplier(double kx, double ky) const {
    if (kind_ == ModelKind::nls_plus || kind_ == ModelKind::nls_minus)
        throw std::logic_error("mean_field_multiplier is defined only for the DS models");
    double kx2 = kx * kx;
    if (kind_ == ModelKind::ds_pp) {
        if (kx == 0.0 && ky == 0.0) return -params_.gamma_ds;
        return -params_.gamma_ds * kx2 / (kx2 + params_.beta * ky * ky);
    }
    if (kx == 0.0 && ky == 0.0) return -2.0;
    return -2.0 * kx2 / (kx2 + ky * ky);
}

void Model::mean_field(const cplx* u_phys, std::vector<double>& v_out) {
    const std::size_t n = grid_.size();
    cplx* w = buf_w_.data();
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) w[i] = cplx(std::norm(u_phys[i]), 0.0);
    });
    fft_->to_spectral(w, buf_spec_.data());
    cplx* s = buf_spec_.data();
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) s[i] *= mf_mult_[i];
    });
    fft_->to_physical(s, w);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) v_out[i] = w[i].real();
    });
}

void Model::potential(const cplx* u_phys, std::vector<double>& v_out) {
    const std::size_t n = grid_.size();
    if (v_out.size() != n) v_out.resize(n);
    // V in the same half-dispersion time units as linear_symbol; for
    // y-independent data every branch collapses to V = -|u|^2.
    switch (kind_) {
        case ModelKind::nls_plus:
        case ModelKind::nls_minus:
            parallel_for(n, [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) v_out[i] = -std::norm(u_phys[i]);
            });
            break;
        case ModelKind::ds_pp:
            mean_field(u_phys, v_out);
            parallel_for(n, [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i)
                    v_out[i] = 0.5 * (v_out[i] + params_.chi * std::norm(u_phys[i]));
            });
            break;
        case ModelKind::ds_ii:
            mean_field(u_phys, v_out);
            parallel_for(n, [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) v_out[i] += std::norm(u_phys[i]);
            });
            break;
    }
}

void Model::nonlinear_term(const cplx* u_phys, cplx* out_phys) {
    const std::size_t n = grid_.size();
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(u_phys[i]);
        if (!std::isfinite(a))
            throw SolverFailure(std::numeric_limits<double>::quiet_NaN(), sup);
        if (a > sup) sup = a;
    }
    potential(u_phys, pot_);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            // -i V u
            out_phys[i] = cplx(pot_[i] * u_phys[i].imag(), -pot_[i] * u_phys[i].real());
        }
    });
}

void Model::nonlinear_hat(const cplx* v_spec, cplx* out_spec) {
    const std::size_t n = grid_.size();
    cplx* u = buf_phys_.data();
    fft_->to_physical(v_spec, u);
    potential(u, pot_);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            u[i] = cplx(pot_[i] * u[i].imag(), -pot_[i] * u[i].real());
        }
    });
    fft_->to_spectral(u, out_spec);
}

void Model::rhs(const cplx* v_spec, cplx* out_spec) {
    nonlinear_hat(v_spec, out_spec);
    const std::size_t n = grid_.size();
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double s = sym_im_[i];
            out_spec[i] += cplx(-s * v_spec[i].imag(), s * v_spec[i].real());
        }
    });
}

void Model::nonlinear_phase_flow(cplx* u_phys, double h) {
    const std::size_t n = grid_.size();
    potential(u_phys, pot_);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double th = pot_[i] * h;
            u_phys[i] *= cplx(std::cos(th), -std::sin(th));
        }
    });
}

double Model::hamiltonian(const cplx* u_phys) {
    fft_->to_spectral(u_phys, buf_spec_.data());
    return hamiltonian(u_phys, buf_spec_.data());
}

double Model::hamiltonian(const cplx* u_phys, const cplx* v_spec) {
    const std::size_t n = grid_.size();
    const double area = grid_.cell_area() * static_cast<double>(n);  // (2 pi Lx)(2 pi Ly)

    // The quadratic kinetic term must be proportional to the evolution
    // symbol or discrete conservation is lost; the factor -2 Im L restores
    // the conventional gradient form (kx^2 +- ky^2 per mode) so the energy
    // values keep their textbook scale.
    KahanSum kin;
    for (std::size_t i = 0; i < n; ++i) kin.add(-2.0 * sym_im_[i] * std::norm(v_spec[i]));

    KahanSum quart;
    for (std::size_t i = 0; i < n; ++i) {
        double w = std::norm(u_phys[i]);
        quart.add(w * w);
    }
    double kinetic = area * kin.value();
    double quartic = grid_.cell_area() * quart.value();

    switch (kind_) {
        case ModelKind::nls_plus:
        case ModelKind::nls_minus:
            return 0.5 * (kinetic - quartic);
        case ModelKind::ds_pp:
        case ModelKind::ds_ii: {
            // buf_spec_ may alias v_spec (one-arg overload); v_spec is not
            // read past this point.
            cplx* w = buf_w_.data();
            for (std::size_t i = 0; i < n; ++i) w[i] = cplx(std::norm(u_phys[i]), 0.0);
            fft_->to_spectral(w, buf_spec_.data());
            KahanSum coup;
            for (std::size_t i = 0; i < n; ++i)
                coup.add(mf_mult_[i] * std::norm(buf_spec_[i]));
            double coupling = area * coup.value();
            if (kind_ == ModelKind::ds_pp)
                return kinetic + 0.5 * params_.chi * quartic + 0.5 * coupling;
            return kinetic + quartic + coupling;
        }
    }
    throw std::logic_error("bad ModelKind");
}

double mass(const Grid& g, const cplx* u_phys) {
    KahanSum s;
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) s.add(std::norm(u_phys[i]));
    return g.cell_area() * s.value();
}

}  // namespace nlslab

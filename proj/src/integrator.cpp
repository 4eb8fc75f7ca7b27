#include "nlslab/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

std::string to_string(Scheme s) { return s == Scheme::dcrk ? "dcrk" : "strang"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "dcrk") return Scheme::dcrk;
    if (s == "strang") return Scheme::strang;
    throw std::invalid_argument("unknown integrator scheme '" + s +
                                "' (expected dcrk or strang)");
}

std::vector<unsigned char> split_frequencies(const std::vector<double>& symbol_im, double dt,
                                             double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("split threshold must be positive");
    std::vector<unsigned char> mask(symbol_im.size());
    for (std::size_t i = 0; i < symbol_im.size(); ++i)
        mask[i] = std::abs(symbol_im[i]) * dt > theta ? 1 : 0;
    return mask;
}

namespace {

// Implicit companion tableau. Shares the RK4 nodes c = (0, 1/2, 1/2, 1) and
// weights b = (1/6, 1/3, 1/3, 1/6); rows below are the strictly lower part
// and d the diagonal. Coupled order 3 (b A c = 1/6), linear order 4
// (b A^2 c = 1/24), R(inf) = -31/48 with |R(iy)| <= 1 for all real y.
constexpr double a21 = -3.0 / 8.0;
constexpr double a31 = 13.0 / 8.0, a32 = -17.0 / 8.0;
constexpr double a41 = 1.0 / 10.0, a42 = 3.0 / 40.0, a43 = -31.0 / 40.0;
constexpr double d2 = 7.0 / 8.0, d3 = 1.0, d4 = 8.0 / 5.0;

inline cplx mul_i(double s, const cplx& z) { return cplx(-s * z.imag(), s * z.real()); }

// (num) / (1 - i q): scalar solve of the implicit stage on one mode.
inline cplx div_1m_iq(const cplx& num, double q) {
    double den = 1.0 + q * q;
    // num * (1 + i q) / den
    return cplx((num.real() - q * num.imag()) / den, (num.imag() + q * num.real()) / den);
}

}  // namespace

Integrator::Integrator(Model& model, const IntegratorOptions& opt)
    : model_(model),
      opt_(opt),
      lo_(model.grid().size()),
      hi_(model.grid().size()),
      keep_(model.grid().size(), 1.0),
      k1_(model.grid().size()),
      k2_(model.grid().size()),
      k3_(model.grid().size()),
      k4_(model.grid().size()),
      y_(model.grid().size()),
      u_(opt.scheme == Scheme::strang ? model.grid().size() : 0) {
    if (!(opt_.dt > 0.0)) throw std::invalid_argument("integrator.dt must be positive");
    if (!(opt_.split_threshold > 0.0))
        throw std::invalid_argument("integrator.split_threshold must be positive");

    const Grid& g = model.grid();
    const std::vector<double>& sym = model.symbol_im();
    mask_ = split_frequencies(sym, opt_.dt, opt_.split_threshold);
    for (std::size_t i = 0; i < sym.size(); ++i) {
        hi_[i] = mask_[i] ? sym[i] : 0.0;
        lo_[i] = mask_[i] ? 0.0 : sym[i];
    }
    if (opt_.dealias) {
        const std::size_t ny = g.ny();
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            long jx = g.bin_x(ix);
            for (std::size_t iy = 0; iy < ny; ++iy) {
                long jy = g.bin_y(iy);
                bool cut = 3 * std::labs(jx) > static_cast<long>(g.nx()) ||
                           3 * std::labs(jy) > static_cast<long>(g.ny());
                keep_[ix * ny + iy] = cut ? 0.0 : 1.0;
            }
        }
    }
    if (opt_.scheme == Scheme::strang) {
        exp_half_.resize(sym.size());
        for (std::size_t i = 0; i < sym.size(); ++i) {
            double th = sym[i] * 0.5 * opt_.dt;
            exp_half_[i] = cplx(std::cos(th), std::sin(th));
        }
    }
}

void Integrator::step(cplx* v, double t) {
    if (opt_.scheme == Scheme::dcrk)
        step_dcrk(v);
    else
        step_strang(v);
    // One FFT spreads any non-finite value to every coefficient, so checking
    // a single slot catches a poisoned state within the step that made it.
    if (!std::isfinite(v[0].real()) || !std::isfinite(v[0].imag()))
        throw SolverFailure(t + opt_.dt, std::abs(v[0]));
}

void Integrator::step_dcrk(cplx* v) {
    const std::size_t n = model_.grid().size();
    const double h = opt_.dt;
    cplx* k1 = k1_.data();
    cplx* k2 = k2_.data();
    cplx* k3 = k3_.data();
    cplx* k4 = k4_.data();
    cplx* y = y_.data();

    // Stage 1 is fully explicit: k1 = L v + N_hat(v).
    model_.nonlinear_hat(v, k1);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            k1[i] = keep_[i] * k1[i] + mul_i(lo_[i] + hi_[i], v[i]);
    });

    // Stage 2: explicit value v + (h/2) k1, implicit value v + h a21 k1.
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) y[i] = v[i] + 0.5 * h * k1[i];
    });
    model_.nonlinear_hat(y, k2);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            cplx num = keep_[i] * k2[i] + mul_i(lo_[i], y[i]) +
                       mul_i(hi_[i], v[i] + h * a21 * k1[i]);
            k2[i] = div_1m_iq(num, h * d2 * hi_[i]);
        }
    });

    // Stage 3.
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) y[i] = v[i] + 0.5 * h * k2[i];
    });
    model_.nonlinear_hat(y, k3);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            cplx num = keep_[i] * k3[i] + mul_i(lo_[i], y[i]) +
                       mul_i(hi_[i], v[i] + h * (a31 * k1[i] + a32 * k2[i]));
            k3[i] = div_1m_iq(num, h * d3 * hi_[i]);
        }
    });

    // Stage 4.
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) y[i] = v[i] + h * k3[i];
    });
    model_.nonlinear_hat(y, k4);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            cplx num = keep_[i] * k4[i] + mul_i(lo_[i], y[i]) +
                       mul_i(hi_[i], v[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]));
            k4[i] = div_1m_iq(num, h * d4 * hi_[i]);
        }
    });

    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    });
}

void Integrator::step_strang(cplx* v) {
    const std::size_t n = model_.grid().size();
    cplx* u = u_.data();
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) v[i] *= exp_half_[i];
    });
    model_.transform().to_physical(v, u);
    model_.nonlinear_phase_flow(u, opt_.dt);
    model_.transform().to_spectral(u, v);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) v[i] = keep_[i] * (v[i] * exp_half_[i]);
    });
}

}  // namespace nlslab

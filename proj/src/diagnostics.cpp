#include "nlslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nlslab {

double delta_E(double E_t, double E_0) {
    if (E_0 == 0.0)
        throw std::invalid_argument("energy drift indicator undefined: reference energy is zero");
    return std::abs(E_t / E_0 - 1.0);
}

double validate_against(const Grid& g, const cplx* a, const cplx* b) {
    KahanSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(std::norm(a[i] - b[i]));
    return std::sqrt(g.cell_area() * s.value());
}

double sup_modulus(const Grid& g, const cplx* u_phys) {
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(u_phys[i]));
    return m;
}

double coeff_floor(const Grid& g, const cplx* v_spec) {
    const auto nx = static_cast<long>(g.nx()), ny = static_cast<long>(g.ny());
    double m = 0.0;
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const bool hix = 3 * std::labs(g.bin_x(ix)) >= nx;
        const cplx* row = v_spec + ix * g.ny();
        for (std::size_t iy = 0; iy < g.ny(); ++iy) {
            if (!hix && 3 * std::labs(g.bin_y(iy)) < ny) continue;
            m = std::max(m, std::abs(row[iy]));
        }
    }
    return m;
}

namespace {

// Topographic prominence of peak i on ext[0..n]: descend on each side until
// terrain rises above the peak or an edge cuts the walk off; the reference
// level is the higher of the two side minima, an absent side does not bind.
double prominence(const std::vector<double>& ext, std::size_t i) {
    const double h = ext[i];
    double ref = -std::numeric_limits<double>::infinity();
    if (i > 0) {
        double lo = h;
        for (std::size_t j = i; j-- > 0;) {
            if (ext[j] > h) break;
            lo = std::min(lo, ext[j]);
        }
        ref = std::max(ref, lo);
    }
    if (i + 1 < ext.size()) {
        double lo = h;
        for (std::size_t j = i + 1; j < ext.size(); ++j) {
            if (ext[j] > h) break;
            lo = std::min(lo, ext[j]);
        }
        ref = std::max(ref, lo);
    }
    return h - ref;
}

}  // namespace

int count_local_maxima_y(const Grid& g, const cplx* u_phys, double threshold) {
    const std::size_t ny = g.ny();
    std::vector<double> ext(ny + 1, 0.0);
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const cplx* row = u_phys + ix * ny;
        for (std::size_t iy = 0; iy < ny; ++iy) ext[iy] = std::max(ext[iy], std::abs(row[iy]));
    }
    ext[ny] = ext[0];

    int count = 0;
    for (std::size_t i = 0; i <= ny; ++i) {
        bool peak;
        if (i == 0)
            peak = ext[0] > ext[1];
        else if (i == ny)
            peak = ext[ny] > ext[ny - 1];
        else
            peak = ext[i] > ext[i - 1] && ext[i] >= ext[i + 1];
        if (peak && prominence(ext, i) > threshold) ++count;
    }
    return count == 0 ? 1 : count;
}

int count_local_maxima_y(const Grid& g, const cplx* u_phys) {
    return count_local_maxima_y(g, u_phys, 0.1 * sup_modulus(g, u_phys));
}

CsvWriter::CsvWriter(const std::string& path) : f_(std::fopen(path.c_str(), "wb")) {
    if (!f_) throw std::runtime_error("cannot open diagnostics file: " + path);
    std::fputs("t,mass,energy,delta_E,linf_u,linf_ux,coeff_floor,fit_A,fit_B,fit_delta,fit_p,fit_alpha\n",
               f_);
    std::fflush(f_);
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::write_row(const DiagnosticsRecord& r) {
    char buf[64];
    auto put = [&](double x, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g%c", x, sep);
        std::fputs(buf, f_);
    };
    put(r.t, ',');
    put(r.mass, ',');
    put(r.energy, ',');
    if (r.delta_E)
        put(*r.delta_E, ',');
    else
        std::fputc(',', f_);
    put(r.linf_u, ',');
    put(r.linf_ux, ',');
    if (r.fit) {
        put(r.coeff_floor, ',');
        put(r.fit->A, ',');
        put(r.fit->B, ',');
        put(r.fit->delta, ',');
        put(r.fit->p, ',');
        put(r.fit->alpha, '\n');
    } else {
        put(r.coeff_floor, ',');
        std::fputs(",,,,\n", f_);
    }
    std::fflush(f_);
}

DiagnosticsEngine::DiagnosticsEngine(Model& model, double fit_kmin, double fit_kmax)
    : model_(model),
      grid_(model.grid()),
      fit_kmin_(fit_kmin),
      fit_kmax_(fit_kmax),
      u_(grid_.size()),
      dx_spec_(grid_.size()),
      dx_phys_(grid_.size()) {}

void DiagnosticsEngine::reset_reference() { e0_.reset(); }

DiagnosticsRecord DiagnosticsEngine::compute(double t, const cplx* v_spec) {
    DiagnosticsRecord r;
    r.t = t;
    auto& T = model_.transform();
    T.to_physical(v_spec, u_.data());

    r.mass = mass(grid_, u_.data());
    r.energy = model_.hamiltonian(u_.data(), v_spec);
    if (!e0_) e0_ = r.energy;
    if (*e0_ != 0.0) r.delta_E = delta_E(r.energy, *e0_);

    r.linf_u = sup_modulus(grid_, u_.data());

    // spectral x derivative; the odd unmatched Nyquist column carries no
    // usable derivative information and is dropped
    for (std::size_t ix = 0; ix < grid_.nx(); ++ix) {
        const cplx fac = grid_.is_nyquist_x(ix) ? cplx(0.0, 0.0) : cplx(0.0, grid_.kx(ix));
        const cplx* src = v_spec + ix * grid_.ny();
        cplx* dst = dx_spec_.data() + ix * grid_.ny();
        for (std::size_t iy = 0; iy < grid_.ny(); ++iy) dst[iy] = fac * src[iy];
    }
    T.to_physical(dx_spec_.data(), dx_phys_.data());
    r.linf_ux = sup_modulus(grid_, dx_phys_.data());

    r.coeff_floor = coeff_floor(grid_, v_spec);

    try {
        r.fit = fit_spectrum(grid_, v_spec, fit_kmin_, fit_kmax_, t);
    } catch (const std::invalid_argument&) {
        r.fit.reset();
    }
    return r;
}

}  // namespace nlslab

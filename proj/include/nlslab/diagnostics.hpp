#pragma once

#include <cstdio>
#include <optional>
#include <string>

#include "nlslab/common.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/models.hpp"
#include "nlslab/singularity.hpp"

namespace nlslab {

// One diagnostic row. delta_E is absent when the reference energy vanishes,
// fit when the spectrum has too few usable samples in the window.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    std::optional<double> delta_E;
    double linf_u = 0.0;
    double linf_ux = 0.0;
    double coeff_floor = 0.0;
    std::optional<FitResult> fit;
};

// |E_t/E_0 - 1|. The indicator is undefined for E_0 = 0.
double delta_E(double E_t, double E_0);

// Cell-weighted discrete L2 norm of a - b on grid g.
double validate_against(const Grid& g, const cplx* a, const cplx* b);

double sup_modulus(const Grid& g, const cplx* u_phys);

// Max coefficient modulus over the highest-third shell 3|jx| >= Nx or
// 3|jy| >= Ny. Above 1e-6 the run is under-resolved; at or below 1e-12 the
// resolution is certified.
double coeff_floor(const Grid& g, const cplx* v_spec);

// Count of distinct local maxima of P(y) = max_x |u(x, y)| with topographic
// prominence above `threshold`. P is laid out on the closed interval
// [-pi Ly, pi Ly] with the wrap sample repeated at the right edge and
// one-sided comparisons at the two edges, so a modulation with gamma full
// periods yields gamma + 1 maxima. A profile with no prominent peak (the
// y-independent degenerate case) counts as 1.
int count_local_maxima_y(const Grid& g, const cplx* u_phys, double threshold);
// Same with the default threshold, 10% of the global max of P.
int count_local_maxima_y(const Grid& g, const cplx* u_phys);

// Streams DiagnosticsRecord rows in the fixed column order
// t,mass,energy,delta_E,linf_u,linf_ux,coeff_floor,fit_A,fit_B,fit_delta,fit_p,fit_alpha
// as decimal text with 17 significant digits, blanks for absent values,
// flushed after every row.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void write_row(const DiagnosticsRecord& r);

private:
    std::FILE* f_;
};

// Computes full rows from coefficient-space states; owns the scratch fields.
// The first computed row pins the reference energy for delta_E.
class DiagnosticsEngine {
public:
    DiagnosticsEngine(Model& model, double fit_kmin, double fit_kmax);

    DiagnosticsRecord compute(double t, const cplx* v_spec);
    void reset_reference();
    std::optional<double> reference_energy() const { return e0_; }
    // Physical-space field of the last computed row.
    const cplx* last_field() const { return u_.data(); }

private:
    Model& model_;
    Grid grid_;
    double fit_kmin_;
    double fit_kmax_;
    std::optional<double> e0_;
    CplxArray u_;
    CplxArray dx_spec_;
    CplxArray dx_phys_;
};

}  // namespace nlslab

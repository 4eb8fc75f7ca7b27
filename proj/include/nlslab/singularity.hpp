#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nlslab/common.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

// Fit of the Fourier-coefficient asymptotics ln|v| ~ A - B ln k - delta k
// (and phase ~ C - alpha k) over one spectrum slice. delta is the
// analyticity-strip width, B the singularity-type exponent, alpha the real
// singularity location; p is the sup-norm residual of the decay fit. delta
// is reported as fitted, even slightly negative: clamping is a detection
// decision, not a fitting one.
struct FitResult {
    double A = 0.0;
    double B = 0.0;
    double delta = 0.0;
    double p = 0.0;
    double C = 0.0;
    double alpha = 0.0;
    double t = 0.0;
    double kmin = 0.0;
    double kmax = 0.0;
    std::size_t samples = 0;
};

struct SpectrumSlice {
    std::vector<double> k;        // strictly increasing
    std::vector<double> modulus;  // |v| on the slice
    std::vector<double> phase;    // arg v, raw branch
};

// Positive-kx slice at ky = 0 (bins 1 .. Nx/2-1). One direction suffices for
// the tracker; the x axis is where the soliton dynamics lives.
SpectrumSlice extract_slice(const Grid& g, const cplx* v_spec);

// Least squares for ln(modulus) ~ A - B ln k - delta k on samples with
// kmin < k < kmax and modulus above the 1e-14 noise floor. Throws
// std::invalid_argument ("insufficient spectrum") with fewer than 8 usable
// samples.
FitResult fit_decay(const std::vector<double>& k, const std::vector<double>& modulus,
                    double kmin, double kmax);

// Branch alignment for phases ordered by decreasing k: each value is pulled
// onto its predecessor's branch by an integer multiple of pi. Log branch
// jumps are 2 pi; the pi rule is the tracker's own convention and is kept
// deliberately.
std::vector<double> unwrap_phase(const std::vector<double>& phi);

// Phase fit C - alpha k on the same usable-sample set as fit_decay (window
// and noise floor applied to the modulus), after unwrapping from the largest
// k downward. Fills C and alpha of `into`.
void fit_location(const std::vector<double>& k, const std::vector<double>& modulus,
                  const std::vector<double>& phase, double kmin, double kmax, FitResult& into);

// Slice + decay fit + location fit at one diagnostic time.
FitResult fit_spectrum(const Grid& g, const cplx* v_spec, double kmin, double kmax, double t);

struct BlowupDetection {
    double t_star = 0.0;  // interpolated delta = m crossing
    double B = 0.0;       // type exponent at the crossing, interpolated like t_star
    double alpha = 0.0;   // singularity location at the crossing
    double p = 0.0;       // fit residual at the crossing
    bool reliable = false;  // p <= 0.5
    double t_row = 0.0;   // diagnostic time of the detection row
};

// Feeds delta(t) rows one at a time; returns a detection when delta first
// reaches m, with t* linearly interpolated between the bracketing rows.
class BlowupMonitor {
public:
    explicit BlowupMonitor(double m);
    std::optional<BlowupDetection> update(double t, const FitResult& fit);
    double m() const { return m_; }

private:
    double m_;
    bool has_prev_ = false;
    double t_prev_ = 0.0;
    double delta_prev_ = 0.0;
    double B_prev_ = 0.0;
    double alpha_prev_ = 0.0;
    double p_prev_ = 0.0;
};

// Batch form over an ordered (t, fit) series.
std::optional<BlowupDetection> detect_blowup(
    const std::vector<std::pair<double, FitResult>>& series, double m);

}  // namespace nlslab

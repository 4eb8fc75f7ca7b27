#include "nlslab/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlslab {

namespace {

constexpr double noise_floor = 1e-14;
constexpr std::size_t min_samples = 8;

// Dense least squares min ||X b - y|| by Householder QR; X is n x m,
// column-major, destroyed. Numerically safer than normal equations on the
// nearly collinear [1, ln k, k] design.
void qr_solve(std::vector<double>& X, std::vector<double>& y, std::size_t n, std::size_t m,
              double* beta) {
    for (std::size_t j = 0; j < m; ++j) {
        double* col = X.data() + j * n;
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::invalid_argument("rank-deficient fit design");
        double alpha = col[j] > 0.0 ? -norm : norm;
        double v0 = col[j] - alpha;
        double vnorm2 = v0 * v0;
        for (std::size_t i = j + 1; i < n; ++i) vnorm2 += col[i] * col[i];
        if (vnorm2 == 0.0) continue;
        // Apply H = I - 2 v v^T / (v^T v) to the later columns and to y; the
        // j-th column itself becomes (alpha, 0, ..) by construction, so it is
        // kept intact as the reflector until the end of the sweep.
        for (std::size_t c = j + 1; c < m; ++c) {
            double* cc = X.data() + c * n;
            double dot = v0 * cc[j];
            for (std::size_t i = j + 1; i < n; ++i) dot += col[i] * cc[i];
            double f = 2.0 * dot / vnorm2;
            cc[j] -= f * v0;
            for (std::size_t i = j + 1; i < n; ++i) cc[i] -= f * col[i];
        }
        {
            double dot = v0 * y[j];
            for (std::size_t i = j + 1; i < n; ++i) dot += col[i] * y[i];
            double f = 2.0 * dot / vnorm2;
            y[j] -= f * v0;
            for (std::size_t i = j + 1; i < n; ++i) y[i] -= f * col[i];
        }
        col[j] = alpha;  // R diagonal; the sub-diagonal reflector is no longer needed
    }
    for (std::size_t j = m; j-- > 0;) {
        double s = y[j];
        for (std::size_t c = j + 1; c < m; ++c) s -= X[c * n + j] * beta[c];
        beta[j] = s / X[j * n + j];
    }
}

struct UsableSamples {
    std::vector<double> k;
    std::vector<double> logm;
    std::vector<std::size_t> idx;  // positions in the input arrays
};

UsableSamples usable(const std::vector<double>& k, const std::vector<double>& modulus,
                     double kmin, double kmax) {
    if (k.size() != modulus.size())
        throw std::invalid_argument("slice arrays must have equal length");
    UsableSamples s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] > kmin && k[i] < kmax && modulus[i] > noise_floor) {
            s.k.push_back(k[i]);
            s.logm.push_back(std::log(modulus[i]));
            s.idx.push_back(i);
        }
    }
    if (s.k.size() < min_samples)
        throw std::invalid_argument("insufficient spectrum: " + std::to_string(s.k.size()) +
                                    " usable samples in the fit window, need 8");
    return s;
}

}  // namespace

SpectrumSlice extract_slice(const Grid& g, const cplx* v_spec) {
    SpectrumSlice s;
    std::size_t n = g.nx() / 2;
    s.k.reserve(n - 1);
    s.modulus.reserve(n - 1);
    s.phase.reserve(n - 1);
    for (std::size_t ix = 1; ix < n; ++ix) {
        const cplx& c = v_spec[g.index(ix, 0)];
        s.k.push_back(static_cast<double>(ix) / g.lx());
        s.modulus.push_back(std::abs(c));
        s.phase.push_back(std::arg(c));
    }
    return s;
}

FitResult fit_decay(const std::vector<double>& k, const std::vector<double>& modulus,
                    double kmin, double kmax) {
    UsableSamples s = usable(k, modulus, kmin, kmax);
    const std::size_t n = s.k.size();

    std::vector<double> X(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        X[i] = 1.0;
        X[n + i] = std::log(s.k[i]);
        X[2 * n + i] = s.k[i];
    }
    std::vector<double> y = s.logm;
    double beta[3];
    qr_solve(X, y, n, 3, beta);

    FitResult r;
    r.A = beta[0];
    r.B = -beta[1];
    r.delta = -beta[2];
    r.kmin = kmin;
    r.kmax = kmax;
    r.samples = n;
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double model = r.A - r.B * std::log(s.k[i]) - r.delta * s.k[i];
        p = std::max(p, std::abs(s.logm[i] - model));
    }
    r.p = p;
    return r;
}

std::vector<double> unwrap_phase(const std::vector<double>& phi) {
    std::vector<double> out(phi.size());
    if (phi.empty()) return out;
    constexpr double pi = 3.14159265358979323846;
    out[0] = phi[0];
    for (std::size_t i = 1; i < phi.size(); ++i) {
        double d = phi[i] - out[i - 1];
        out[i] = phi[i] - std::round(d / pi) * pi;
    }
    return out;
}

void fit_location(const std::vector<double>& k, const std::vector<double>& modulus,
                  const std::vector<double>& phase, double kmin, double kmax, FitResult& into) {
    if (phase.size() != k.size())
        throw std::invalid_argument("slice arrays must have equal length");
    UsableSamples s = usable(k, modulus, kmin, kmax);
    const std::size_t n = s.idx.size();

    // Unwrap from the largest k downward, then restore ascending order.
    std::vector<double> desc(n);
    for (std::size_t i = 0; i < n; ++i) desc[i] = phase[s.idx[n - 1 - i]];
    std::vector<double> un = unwrap_phase(desc);
    std::reverse(un.begin(), un.end());

    std::vector<double> X(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        X[i] = 1.0;
        X[n + i] = s.k[i];
    }
    double beta[2];
    qr_solve(X, un, n, 2, beta);
    into.C = beta[0];
    into.alpha = -beta[1];
}

FitResult fit_spectrum(const Grid& g, const cplx* v_spec, double kmin, double kmax, double t) {
    SpectrumSlice s = extract_slice(g, v_spec);
    FitResult r = fit_decay(s.k, s.modulus, kmin, kmax);
    fit_location(s.k, s.modulus, s.phase, kmin, kmax, r);
    r.t = t;
    return r;
}

BlowupMonitor::BlowupMonitor(double m) : m_(m) {
    if (!(m > 0.0)) throw std::invalid_argument("resolution threshold m must be positive");
}

std::optional<BlowupDetection> BlowupMonitor::update(double t, const FitResult& fit) {
    if (fit.delta <= m_) {
        BlowupDetection d;
        d.t_row = t;
        d.B = fit.B;
        d.alpha = fit.alpha;
        d.p = fit.p;
        if (has_prev_ && delta_prev_ > m_ && delta_prev_ > fit.delta) {
            // classification is read off at the crossing itself; the row past
            // it is the least resolved fit of the whole run
            double frac = (delta_prev_ - m_) / (delta_prev_ - fit.delta);
            d.t_star = t_prev_ + frac * (t - t_prev_);
            d.B = B_prev_ + frac * (fit.B - B_prev_);
            d.alpha = alpha_prev_ + frac * (fit.alpha - alpha_prev_);
            d.p = p_prev_ + frac * (fit.p - p_prev_);
        } else {
            d.t_star = t;  // crossed before the first usable row
        }
        d.reliable = d.p <= 0.5;
        return d;
    }
    has_prev_ = true;
    t_prev_ = t;
    delta_prev_ = fit.delta;
    B_prev_ = fit.B;
    alpha_prev_ = fit.alpha;
    p_prev_ = fit.p;
    return std::nullopt;
}

std::optional<BlowupDetection> detect_blowup(
    const std::vector<std::pair<double, FitResult>>& series, double m) {
    BlowupMonitor mon(m);
    for (const auto& [t, fit] : series) {
        if (auto d = mon.update(t, fit)) return d;
    }
    return std::nullopt;
}

}  // namespace nlslab

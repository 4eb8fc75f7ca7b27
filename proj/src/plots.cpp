#include "nlslab/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/snapshot.hpp"

namespace nlslab {

namespace {

constexpr int canvas_w = 800;
constexpr int canvas_h = 600;
constexpr int margin = 40;

struct Canvas {
    int w, h;
    std::vector<unsigned char> px;
    Canvas(int w_, int h_) : w(w_), h(h_), px(static_cast<std::size_t>(w_) * h_, 255) {}

    void set(int x, int y, unsigned char v) {
        if (x >= 0 && x < w && y >= 0 && y < h) px[static_cast<std::size_t>(y) * w + x] = v;
    }

    void line(int x0, int y0, int x1, int y1, unsigned char v) {
        int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            set(x0, y0, v);
            if (x0 == x1 && y0 == y1) break;
            int e2 = 2 * err;
            if (e2 >= dy) { err += dy; x0 += sx; }
            if (e2 <= dx) { err += dx; y0 += sy; }
        }
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write image: " + path);
        out << "P5\n" << w << ' ' << h << "\n255\n";
        out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    }
};

struct Series {
    std::vector<double> x, y;
    unsigned char gray = 0;
};

void render_series(const std::string& path, const std::vector<Series>& series) {
    Canvas c(canvas_w, canvas_h);
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool any = false;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!any) {
                xlo = xhi = s.x[i];
                ylo = yhi = s.y[i];
                any = true;
            }
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    if (xhi - xlo <= 0) { xlo -= 1; xhi += 1; }
    if (yhi - ylo <= 0) { ylo -= 1; yhi += 1; }

    c.line(margin, margin, canvas_w - margin, margin, 0);
    c.line(margin, canvas_h - margin, canvas_w - margin, canvas_h - margin, 0);
    c.line(margin, margin, margin, canvas_h - margin, 0);
    c.line(canvas_w - margin, margin, canvas_w - margin, canvas_h - margin, 0);

    auto px = [&](double x) {
        return margin + static_cast<int>(std::lround((x - xlo) / (xhi - xlo) * (canvas_w - 2 * margin)));
    };
    auto py = [&](double y) {
        return canvas_h - margin -
               static_cast<int>(std::lround((y - ylo) / (yhi - ylo) * (canvas_h - 2 * margin)));
    };
    for (const auto& s : series) {
        bool have_prev = false;
        int px0 = 0, py0 = 0;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                have_prev = false;
                continue;
            }
            int x1 = px(s.x[i]), y1 = py(s.y[i]);
            if (have_prev)
                c.line(px0, py0, x1, y1, s.gray);
            else
                c.set(x1, y1, s.gray);
            px0 = x1;
            py0 = y1;
            have_prev = true;
        }
    }
    c.save(path);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct CsvData {
    std::vector<double> t, linf_u;
    std::vector<double> fit_t, fit_delta;
};

CsvData read_diag_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing inputs: " + path);
    CsvData d;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty diagnostics file: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::string item;
        std::istringstream ls(line);
        while (std::getline(ls, item, ',')) cols.push_back(item);
        cols.resize(12);
        const double t = std::stod(cols[0]);
        d.t.push_back(t);
        d.linf_u.push_back(std::stod(cols[4]));
        if (!cols[9].empty()) {
            d.fit_t.push_back(t);
            d.fit_delta.push_back(std::stod(cols[9]));
        }
    }
    return d;
}

std::string pick_snapshot(const std::string& dir) {
    namespace fs = std::filesystem;
    if (fs::exists(dir + "/state_final.bin")) return dir + "/state_final.bin";
    std::vector<std::string> cands;
    if (fs::is_directory(dir))
        for (const auto& e : fs::directory_iterator(dir)) {
            const std::string name = e.path().filename().string();
            if (name.rfind("state_t", 0) == 0 && name.size() > 4 &&
                name.compare(name.size() - 4, 4, ".bin") == 0)
                cands.push_back(e.path().string());
        }
    std::sort(cands.begin(), cands.end());
    return cands.empty() ? std::string() : cands.front();
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& run_dir) {
    const CsvData d = read_diag_csv(run_dir + "/diagnostics.csv");
    const ExperimentConfig cfg = load_config(run_dir + "/config_used.cfg");
    const Grid g(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
    const double m = g.min_fourier_distance();

    std::vector<std::string> images;
    const std::string snap = pick_snapshot(run_dir);
    if (!snap.empty()) {
        auto [h, field] = read_snapshot(snap);
        const Grid sg(h.nx, h.ny, h.lx, h.ly);

        {
            double vmax = 0;
            for (std::size_t i = 0; i < field.size(); ++i)
                vmax = std::max(vmax, std::abs(field[i]));
            Canvas c(canvas_w, canvas_h);
            for (int row = 0; row < canvas_h; ++row) {
                const std::size_t iy =
                    static_cast<std::size_t>(canvas_h - 1 - row) * sg.ny() / canvas_h;
                for (int col = 0; col < canvas_w; ++col) {
                    const std::size_t ix = static_cast<std::size_t>(col) * sg.nx() / canvas_w;
                    const double val = vmax > 0 ? std::abs(field[sg.index(ix, iy)]) / vmax : 0.0;
                    c.px[static_cast<std::size_t>(row) * canvas_w + col] =
                        static_cast<unsigned char>(std::lround(255.0 * (1.0 - val)));
                }
            }
            c.save(run_dir + "/u_surface.pgm");
            images.push_back(run_dir + "/u_surface.pgm");

            std::ofstream dat(run_dir + "/u_surface.dat", std::ios::binary);
            const std::size_t sx = (sg.nx() + 255) / 256, sy = (sg.ny() + 255) / 256;
            for (std::size_t ix = 0; ix < sg.nx(); ix += sx) {
                for (std::size_t iy = 0; iy < sg.ny(); iy += sy)
                    dat << fmt(sg.x(ix)) << ' ' << fmt(sg.y(iy)) << ' '
                        << fmt(std::abs(field[sg.index(ix, iy)])) << '\n';
                dat << '\n';
            }
        }

        {
            auto fft = std::make_shared<SpectralTransform>(sg);
            CplxArray spec(sg.size());
            fft->to_spectral(field.data(), spec.data());
            Series s;
            std::ofstream dat(run_dir + "/spectrum_slice.dat", std::ios::binary);
            for (std::size_t ix = 1; 2 * ix < sg.nx(); ++ix) {
                const double k = sg.kx(ix);
                const cplx v = spec[sg.index(ix, 0)];
                const double mod = std::abs(v);
                dat << fmt(k) << ' ' << fmt(mod) << ' ' << fmt(std::arg(v)) << '\n';
                s.x.push_back(k);
                s.y.push_back(std::log(std::max(mod, 1e-300)));
            }
            render_series(run_dir + "/spectrum_slice.pgm", {s});
            images.push_back(run_dir + "/spectrum_slice.pgm");
        }
    }

    {
        std::ofstream dat(run_dir + "/delta_t.dat", std::ios::binary);
        for (std::size_t i = 0; i < d.fit_t.size(); ++i)
            dat << fmt(d.fit_t[i]) << ' ' << fmt(d.fit_delta[i]) << ' ' << fmt(m) << '\n';
        Series sd{d.fit_t, d.fit_delta, 0};
        Series sm;
        if (!d.t.empty()) {
            sm.x = {d.t.front(), d.t.back()};
            sm.y = {m, m};
            sm.gray = 128;
        }
        render_series(run_dir + "/delta_t.pgm", {sd, sm});
        images.push_back(run_dir + "/delta_t.pgm");
    }

    {
        std::ofstream dat(run_dir + "/linf_t.dat", std::ios::binary);
        for (std::size_t i = 0; i < d.t.size(); ++i)
            dat << fmt(d.t[i]) << ' ' << fmt(d.linf_u[i]) << '\n';
        render_series(run_dir + "/linf_t.pgm", {Series{d.t, d.linf_u, 0}});
        images.push_back(run_dir + "/linf_t.pgm");
    }

    return images;
}

}  // namespace nlslab

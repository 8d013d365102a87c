#include "mesodefect/grid_solver.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <unsupported/Eigen/FFT>

namespace mesodefect {

namespace {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;
using TensorSpectrum = std::array<Spectrum, 6>;

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

void fft2(Spectrum& a, int n, bool inverse) {
    Eigen::FFT<double> fft;
    std::vector<cplx> in(n), out(n);
    for (int pass = 0; pass < 2; ++pass) {
        for (int line = 0; line < n; ++line) {
            for (int i = 0; i < n; ++i) in[i] = pass == 0 ? a[line * n + i] : a[i * n + line];
            if (inverse)
                fft.inv(out, in);
            else
                fft.fwd(out, in);
            for (int i = 0; i < n; ++i) (pass == 0 ? a[line * n + i] : a[i * n + line]) = out[i];
        }
    }
}

TensorSpectrum forward(const GridField& g) {
    const int n = g.n();
    TensorSpectrum s;
    for (int c = 0; c < 6; ++c) {
        s[c].resize(static_cast<std::size_t>(n) * n);
        for (std::size_t i = 0; i < s[c].size(); ++i) s[c][i] = g.values()[i].components()[c];
        fft2(s[c], n, false);
    }
    return s;
}

GridField inverse(TensorSpectrum s, const GridField& like) {
    const int n = like.n();
    std::vector<Strain> v(static_cast<std::size_t>(n) * n);
    for (int c = 0; c < 6; ++c) {
        fft2(s[c], n, true);
        for (std::size_t i = 0; i < v.size(); ++i) v[i].components()[c] = s[c][i].real();
    }
    return GridField(n, like.cell(), std::move(v), like.origin());
}

double wavenumber(int j, int n, double cell) {
    const int k = j < n / 2 ? j : (j == n / 2 ? 0 : j - n);
    return 2.0 * std::numbers::pi * k / cell;
}

// -eps_kpm eps_lqn xi_p xi_q X_mn at one mode
void inc_mode(const TensorSpectrum& in, TensorSpectrum& out, std::size_t idx, const Vec2& xi) {
    cplx x[3][3];
    for (int m = 0; m < 3; ++m)
        for (int nn = 0; nn < 3; ++nn) x[m][nn] = in[Strain::index(m, nn)][idx];
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            cplx acc = 0.0;
            for (int p = 0; p < 2; ++p)
                for (int m = 0; m < 3; ++m) {
                    const int e1 = levi_civita(k, p, m);
                    if (e1 == 0) continue;
                    for (int q = 0; q < 2; ++q)
                        for (int nn = 0; nn < 3; ++nn) {
                            const int e2 = levi_civita(l, q, nn);
                            if (e2 != 0) acc -= double(e1 * e2) * xi[p] * xi[q] * x[m][nn];
                        }
                }
            out[Strain::index(k, l)][idx] = acc;
        }
}

TensorSpectrum inc_spectrum(const TensorSpectrum& in, int n, double cell) {
    TensorSpectrum out;
    for (auto& c : out) c.assign(in[0].size(), 0.0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
            inc_mode(in, out, idx, Vec2(wavenumber(ix, n, cell), wavenumber(iy, n, cell)));
        }
    return out;
}

} // namespace

GridField::GridField(int n, double cell, std::vector<Strain> values, const Vec2& origin)
    : n_(n), cell_(cell), origin_(origin), values_(std::move(values)) {
    if (!power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
    if (!(cell > 0.0) || !std::isfinite(cell)) throw std::invalid_argument("cell size must be positive");
    if (values_.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("grid value count mismatch");
}

GridField GridField::zeros(int n, double cell, const Vec2& origin) {
    if (!power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
    return GridField(n, cell, std::vector<Strain>(static_cast<std::size_t>(n) * n), origin);
}

GridField GridField::sample(int n, double cell, const std::function<Strain(const Vec2&)>& f, const Vec2& origin) {
    GridField g = zeros(n, cell, origin);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) g.at(ix, iy) = f(g.node(ix, iy));
    return g;
}

GridField GridField::from_matrices(int n, double cell, const std::vector<Mat3>& values, const Vec2& origin) {
    std::vector<Strain> v;
    v.reserve(values.size());
    for (const auto& m : values) {
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("grid input is not symmetric");
        v.push_back(Strain::from_matrix(m));
    }
    return GridField(n, cell, std::move(v), origin);
}

double GridField::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, v.max_abs());
    return m;
}

GridField GridField::operator-(const GridField& o) const {
    if (o.n_ != n_) throw std::invalid_argument("grid size mismatch");
    GridField out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] -= o.values_[i];
    return out;
}

GridField grid_incompatibility(const GridField& E) {
    return inverse(inc_spectrum(forward(E), E.n(), E.cell()), E);
}

std::vector<Vec3> grid_divergence(const GridField& F) {
    const int n = F.n();
    const TensorSpectrum s = forward(F);
    std::array<Spectrum, 3> d;
    for (auto& c : d) c.assign(s[0].size(), 0.0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
            const Vec2 xi(wavenumber(ix, n, F.cell()), wavenumber(iy, n, F.cell()));
            for (int l = 0; l < 3; ++l)
                d[l][idx] = cplx(0.0, xi[0]) * s[Strain::index(X, l)][idx] + cplx(0.0, xi[1]) * s[Strain::index(Y, l)][idx];
        }
    std::vector<Vec3> out(s[0].size());
    for (int l = 0; l < 3; ++l) {
        fft2(d[l], n, true);
        for (std::size_t i = 0; i < out.size(); ++i) out[i][l] = d[l][i].real();
    }
    return out;
}

GridDecomposition decompose_grid(const GridField& E) {
    const int n = E.n();
    const TensorSpectrum eta = inc_spectrum(forward(E), n, E.cell());
    TensorSpectrum f;
    for (auto& c : f) c.assign(eta[0].size(), 0.0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
            const double k2 = std::pow(wavenumber(ix, n, E.cell()), 2) + std::pow(wavenumber(iy, n, E.cell()), 2);
            if (k2 == 0.0) continue;
            for (int c = 0; c < 6; ++c) f[c][idx] = eta[c][idx] / (k2 * k2);
        }
    const TensorSpectrum es = inc_spectrum(f, n, E.cell());
    GridDecomposition out{inverse(f, E), E, inverse(es, E), 0.0};
    out.compatible = E - out.solenoidal;
    const double fmax = out.F.max_abs();
    if (fmax > 0.0) {
        double dmax = 0.0;
        for (const auto& d : grid_divergence(out.F)) dmax = std::max(dmax, d.cwiseAbs().maxCoeff());
        out.gauge_residual = dmax / (fmax * 2.0 * std::numbers::pi / E.cell());
    }
    return out;
}

void write_grid_csv(std::ostream& os, const GridField& g) {
    os << std::setprecision(17);
    os << "# mesodefect-grid n=" << g.n() << " cell=" << g.cell() << " origin=" << g.origin().x() << ','
       << g.origin().y() << '\n';
    os << "ix,iy,x,y,xx,xy,xz,yy,yz,zz\n";
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            const Vec2 p = g.node(ix, iy);
            os << ix << ',' << iy << ',' << p.x() << ',' << p.y();
            for (int c = 0; c < 6; ++c) os << ',' << g.at(ix, iy).components()[c];
            os << '\n';
        }
}

GridField read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# mesodefect-grid", 0) != 0)
        throw std::invalid_argument("missing grid header");
    int n = 0;
    double cell = 0.0;
    Vec2 origin = Vec2::Zero();
    {
        std::istringstream h(line.substr(17));
        std::string tok;
        while (h >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("malformed grid header");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "n")
                n = std::stoi(val);
            else if (key == "cell")
                cell = std::stod(val);
            else if (key == "origin") {
                const auto comma = val.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("malformed grid origin");
                origin = Vec2(std::stod(val.substr(0, comma)), std::stod(val.substr(comma + 1)));
            } else
                throw std::invalid_argument("unknown grid header key: " + key);
        }
    }
    if (!power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
    if (!std::getline(is, line) || line != "ix,iy,x,y,xx,xy,xz,yy,yz,zz")
        throw std::invalid_argument("missing grid column header");
    GridField g = GridField::zeros(n, cell, origin);
    std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream r(line);
        std::string cellv;
        std::vector<double> v;
        while (std::getline(r, cellv, ',')) v.push_back(std::stod(cellv));
        if (v.size() != 10) throw std::invalid_argument("grid row must have 10 columns");
        const int ix = static_cast<int>(v[0]), iy = static_cast<int>(v[1]);
        if (ix < 0 || iy < 0 || ix >= n || iy >= n) throw std::invalid_argument("grid index out of range");
        for (int c = 0; c < 6; ++c) g.at(ix, iy).components()[c] = v[4 + c];
        seen[static_cast<std::size_t>(iy) * n + ix] = true;
        ++rows;
    }
    if (rows != seen.size()) throw std::invalid_argument("grid row count mismatch");
    for (bool s : seen)
        if (!s) throw std::invalid_argument("grid node missing");
    return g;
}

} // namespace mesodefect

#include "mesodefect/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "mesodefect/summation.hpp"

namespace mesodefect {

namespace {

constexpr double pi = std::numbers::pi;

// 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1].
struct Rule15 {
    std::array<double, 15> x{}, wk{}, wg{};
};

Rule15 make_rule() {
    constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                               0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                               0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                               0.207784955007898467600689403773245, 0.0};
    constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                               0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                               0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                               0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    Rule15 r;
    for (int i = 0; i < 7; ++i) {
        r.x[i] = -xgk[i];
        r.x[14 - i] = xgk[i];
        r.wk[i] = r.wk[14 - i] = wgk[i];
        r.wg[i] = r.wg[14 - i] = (i % 2 == 1) ? wg[(i - 1) / 2] : 0.0;
    }
    r.x[7] = 0.0;
    r.wk[7] = wgk[7];
    r.wg[7] = wg[3];
    return r;
}

const Rule15& rule() {
    static const Rule15 r = make_rule();
    return r;
}

// 1 on [0, s/2], 0 on [s, inf), C-infinity in between.
double cutoff(double r, double s) {
    if (r <= 0.5 * s) return 1.0;
    if (r >= s) return 0.0;
    const double t = (r - 0.5 * s) / (0.5 * s);
    const double a = std::exp(-1.0 / (1.0 - t));
    const double b = std::exp(-1.0 / t);
    return a / (a + b);
}

template <int N>
class RegionIntegrator {
public:
    using Value = Eigen::Matrix<double, N, 1>;

    RegionIntegrator(const RegionIntegrand<N>& f, const Disc& disc, std::span<const SingularPoint> sp,
                     const QuadratureOptions& opts)
        : f_(f), disc_(disc), opts_(opts) {
        if (!(disc.radius > 0.0)) throw std::invalid_argument("integration disc must have positive radius");
        build_cores(sp);
    }

    RegionResult<N> run() {
        seed_panels();
        Value total = Value::Zero();
        double total_err = 0.0;
        Value total_abs = Value::Zero();
        for (const auto& p : panels_) {
            total += p.value;
            total_err += p.err;
            total_abs += p.abs;
        }
        std::priority_queue<std::pair<double, std::size_t>> heap;
        for (std::size_t i = 0; i < panels_.size(); ++i) heap.push({panels_[i].err, i});

        std::size_t splits = 0;
        double frozen_err = 0.0;
        while (total_err > target(total, total_abs)) {
            if (heap.empty()) fail(total, total_err, "panels cannot be refined further");
            if (evaluations_ > opts_.max_evaluations) fail(total, total_err, "evaluation budget exhausted");
            const std::size_t idx = heap.top().second;
            heap.pop();
            Panel parent = panels_[idx];
            const double hr = 0.5 * (parent.r1 - parent.r0);
            const double ht = 0.5 * (parent.t1 - parent.t0);
            if (hr < 1e-14 * disc_.radius || ht < 1e-12) {
                frozen_err += parent.err;
                if (frozen_err > target(total, total_abs))
                    fail(total, total_err, "error concentrated in unrefinable panels");
                continue;
            }
            panels_[idx].active = false;
            total -= parent.value;
            total_err -= parent.err;
            total_abs -= parent.abs;
            const double rm = parent.r0 + hr, tm = parent.t0 + ht;
            const double rs[3] = {parent.r0, rm, parent.r1};
            const double ts[3] = {parent.t0, tm, parent.t1};
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    Panel c{parent.chart, rs[a], rs[a + 1], ts[b], ts[b + 1]};
                    evaluate(c);
                    total += c.value;
                    total_err += c.err;
                    total_abs += c.abs;
                    panels_.push_back(c);
                    heap.push({c.err, panels_.size() - 1});
                }
            }
            if (++splits % 512 == 0) {
                total_err = 0.0;
                for (const auto& p : panels_)
                    if (p.active) total_err += p.err;
            }
        }

        CompensatedVectorSum<N> sum;
        double err = 0.0;
        for (const auto& p : panels_) {
            if (!p.active) continue;
            sum.add(p.value);
            err += p.err;
        }
        RegionResult<N> out;
        out.value = sum.value();
        out.error = err;
        out.evaluations = evaluations_;
        return out;
    }

private:
    struct Core {
        Vec2 p;
        double s;
        double inner;
    };

    struct Panel {
        int chart;  // -1 for the disc remainder, otherwise a core index
        double r0, r1, t0, t1;
        Value value = Value::Zero();
        double err = 0.0;
        Value abs = Value::Zero();
        bool active = true;
    };

    void build_cores(std::span<const SingularPoint> sp) {
        const double rho = disc_.radius;
        for (std::size_t i = 0; i < sp.size(); ++i) {
            const Vec2& p = sp[i].position;
            const double eps = sp[i].excluded_radius;
            const double dc = (p - disc_.center).norm();
            if (dc >= rho) {
                if (eps > 0.0 && dc < rho + eps)
                    throw std::invalid_argument("excluded disc crosses the integration boundary");
                continue;
            }
            double d_other = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < sp.size(); ++j)
                if (j != i) d_other = std::min(d_other, (p - sp[j].position).norm());
            const double d_boundary = rho - dc;
            double s = std::min({0.1 * rho, 0.5 * d_other, 0.5 * d_boundary});
            if (eps > 0.0) {
                const double s_max = std::min(d_boundary, 0.5 * d_other);
                if (2.0 * eps > s_max)
                    throw std::invalid_argument("excluded disc too close to the boundary or another point");
                s = std::max(s, 2.0 * eps);
            } else if (s < 1e-8 * rho) {
                continue;
            }
            const double inner = eps > 0.0 ? eps : std::max(1e-10 * s, 1e-11);
            if (inner >= s) continue;
            cores_.push_back({p, s, inner});
        }
    }

    void seed_panels() {
        const double rho = disc_.radius;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 8; ++b)
                add_panel({-1, rho * a / 4.0, rho * (a + 1) / 4.0, 2 * pi * b / 8.0, 2 * pi * (b + 1) / 8.0});
        for (std::size_t c = 0; c < cores_.size(); ++c) {
            const auto& core = cores_[c];
            std::vector<double> edges{core.s};
            while (edges.back() * 0.5 > core.inner) edges.push_back(edges.back() * 0.5);
            if (edges.back() > core.inner) edges.push_back(core.inner);
            for (std::size_t k = 0; k + 1 < edges.size(); ++k)
                for (int b = 0; b < 2; ++b)
                    add_panel({static_cast<int>(c), edges[k + 1], edges[k], pi * b, pi * (b + 1)});
        }
    }

    void add_panel(Panel p) {
        evaluate(p);
        panels_.push_back(p);
    }

    double remainder_weight(const Vec2& x) const {
        double w = 1.0;
        for (const auto& c : cores_) {
            const double d = (x - c.p).norm();
            if (d < c.s) w -= cutoff(d, c.s);
        }
        return std::max(w, 0.0);
    }

    void evaluate(Panel& p) {
        const auto& q = rule();
        const double hr = 0.5 * (p.r1 - p.r0), mr = 0.5 * (p.r1 + p.r0);
        const double ht = 0.5 * (p.t1 - p.t0), mt = 0.5 * (p.t1 + p.t0);
        const Vec2 origin = p.chart < 0 ? disc_.center : cores_[p.chart].p;
        std::array<double, 15> cs, sn;
        for (int j = 0; j < 15; ++j) {
            const double t = mt + ht * q.x[j];
            cs[j] = std::cos(t);
            sn[j] = std::sin(t);
        }
        Value k = Value::Zero(), g = Value::Zero(), a = Value::Zero();
        for (int i = 0; i < 15; ++i) {
            const double r = mr + hr * q.x[i];
            const double wc = p.chart < 0 ? 1.0 : cutoff(r, cores_[p.chart].s);
            if (wc == 0.0) continue;
            for (int j = 0; j < 15; ++j) {
                const Vec2 x(origin.x() + r * cs[j], origin.y() + r * sn[j]);
                const double w = p.chart < 0 ? remainder_weight(x) : wc;
                if (w == 0.0) continue;
                const Value v = f_(x) * (w * r);
                ++evaluations_;
                const double kw = q.wk[i] * q.wk[j];
                k += kw * v;
                a += kw * v.cwiseAbs();
                if (q.wg[i] != 0.0 && q.wg[j] != 0.0) g += (q.wg[i] * q.wg[j]) * v;
            }
        }
        const double scale = hr * ht;
        p.value = k * scale;
        p.abs = a * scale;
        p.err = (k - g).cwiseAbs().maxCoeff() * scale;
        if (!std::isfinite(p.err) || !p.value.allFinite())
            throw QuadratureError("non-finite integrand value", 0.0, std::numeric_limits<double>::infinity());
    }

    double target(const Value& total, const Value& total_abs) const {
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * total_abs.cwiseAbs().maxCoeff();
        return std::max({opts_.rel_tol * total.cwiseAbs().maxCoeff(), opts_.abs_tol, floor});
    }

    [[noreturn]] void fail(const Value& total, double err, const char* why) const {
        std::ostringstream os;
        const Eigen::IOFormat fmt(Eigen::StreamPrecision, Eigen::DontAlignCols, ", ", ", ", "", "", "(", ")");
        os << "region quadrature did not converge (" << why << "): estimate " << total.transpose().format(fmt)
           << ", error " << err;
        throw QuadratureError(os.str(), total.cwiseAbs().maxCoeff(), err);
    }

    const RegionIntegrand<N>& f_;
    Disc disc_;
    QuadratureOptions opts_;
    std::vector<Core> cores_;
    std::vector<Panel> panels_;
    std::size_t evaluations_ = 0;
};

} // namespace

BumpTestFunction::BumpTestFunction(const Vec2& center, double radius, double amplitude)
    : center_(center), radius_(radius), amplitude_(amplitude) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("bump radius must be positive");
}

double BumpTestFunction::value(const Vec2& x) const {
    const double s = (x - center_).squaredNorm() / (radius_ * radius_);
    if (s >= 1.0) return 0.0;
    return amplitude_ * std::exp(1.0 - 1.0 / (1.0 - s));
}

Vec2 BumpTestFunction::gradient(const Vec2& x) const {
    const Vec2 d = x - center_;
    const double rho2 = radius_ * radius_;
    const double s = d.squaredNorm() / rho2;
    if (s >= 1.0) return Vec2::Zero();
    const double phi = amplitude_ * std::exp(1.0 - 1.0 / (1.0 - s));
    const double g = -1.0 / ((1.0 - s) * (1.0 - s));
    return phi * g * 2.0 / rho2 * d;
}

Eigen::Matrix2d BumpTestFunction::hessian(const Vec2& x) const {
    const Vec2 d = x - center_;
    const double rho2 = radius_ * radius_;
    const double s = d.squaredNorm() / rho2;
    if (s >= 1.0) return Eigen::Matrix2d::Zero();
    const double phi = amplitude_ * std::exp(1.0 - 1.0 / (1.0 - s));
    const double u = 1.0 - s;
    const double g = -1.0 / (u * u);
    const double dg = -2.0 / (u * u * u);
    return phi * ((g * g + dg) * 4.0 / (rho2 * rho2) * (d * d.transpose()) +
                  (2.0 * g / rho2) * Eigen::Matrix2d::Identity());
}

template <int N>
RegionResult<N> integrate_region(const RegionIntegrand<N>& f, const Disc& support,
                                 std::span<const SingularPoint> singular, const QuadratureOptions& opts) {
    return RegionIntegrator<N>(f, support, singular, opts).run();
}

template RegionResult<1> integrate_region<1>(const RegionIntegrand<1>&, const Disc&,
                                             std::span<const SingularPoint>, const QuadratureOptions&);
template RegionResult<2> integrate_region<2>(const RegionIntegrand<2>&, const Disc&,
                                             std::span<const SingularPoint>, const QuadratureOptions&);
template RegionResult<3> integrate_region<3>(const RegionIntegrand<3>&, const Disc&,
                                             std::span<const SingularPoint>, const QuadratureOptions&);
template RegionResult<6> integrate_region<6>(const RegionIntegrand<6>&, const Disc&,
                                             std::span<const SingularPoint>, const QuadratureOptions&);
template RegionResult<9> integrate_region<9>(const RegionIntegrand<9>&, const Disc&,
                                             std::span<const SingularPoint>, const QuadratureOptions&);

ScalarRegionResult integrate_region(const std::function<double(const Vec2&)>& f, const Disc& support,
                                    std::span<const Vec2> singular_points, const QuadratureOptions& opts) {
    std::vector<SingularPoint> sp;
    for (const auto& p : singular_points) sp.push_back({p, 0.0});
    const RegionIntegrand<1> g = [&f](const Vec2& x) { return Eigen::Matrix<double, 1, 1>(f(x)); };
    const auto r = integrate_region<1>(g, support, sp, opts);
    return {r.value[0], r.error};
}

template <int N>
Eigen::Matrix<double, N, 1> integrate_segment(const FormIntegrand<N>& g, const Vec2& a, const Vec2& b,
                                              const ContourOptions& opts) {
    using Value = Eigen::Matrix<double, N, 1>;
    const auto& q = rule();
    const Vec2 dx = b - a;
    auto panel = [&](double t0, double t1, Value& k, double& err) {
        const double h = 0.5 * (t1 - t0), m = 0.5 * (t1 + t0);
        Value kk = Value::Zero(), gg = Value::Zero();
        for (int i = 0; i < 15; ++i) {
            const double t = m + h * q.x[i];
            const Value v = g(a + t * dx) * dx;
            kk += q.wk[i] * v;
            if (q.wg[i] != 0.0) gg += q.wg[i] * v;
        }
        k = kk * h;
        err = (kk - gg).cwiseAbs().maxCoeff() * h;
    };

    struct Item {
        double t0, t1, tol;
        int depth;
    };
    CompensatedVectorSum<N> sum;
    std::vector<Item> stack{{0.0, 1.0, opts.abs_tol, 0}};
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        Value k;
        double err;
        panel(it.t0, it.t1, k, err);
        if (!k.allFinite()) throw QuadratureError("non-finite contour integrand", 0.0, err);
        if (err <= std::max(it.tol, opts.rel_tol * k.cwiseAbs().maxCoeff()) || err == 0.0) {
            sum.add(k);
            continue;
        }
        if (it.depth >= 60) throw QuadratureError("segment quadrature did not converge", k.cwiseAbs().maxCoeff(), err);
        const double tm = 0.5 * (it.t0 + it.t1);
        // right half pushed first so the left half is integrated first
        stack.push_back({tm, it.t1, 0.5 * it.tol, it.depth + 1});
        stack.push_back({it.t0, tm, 0.5 * it.tol, it.depth + 1});
    }
    return sum.value();
}

namespace {

template <int N>
Eigen::Matrix<double, N, 1> integrate_circle(const FormIntegrand<N>& g, const CircleLoop& c,
                                             const ContourOptions& opts) {
    using Value = Eigen::Matrix<double, N, 1>;
    if (!(c.radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
    const double sign = c.counterclockwise ? 1.0 : -1.0;
    auto h = [&](double t) -> Value {
        const Vec2 x = c.center + c.radius * Vec2(std::cos(t), std::sin(t));
        const Vec2 dx = sign * c.radius * Vec2(-std::sin(t), std::cos(t));
        return g(x) * dx;
    };
    std::size_t n = 64;
    CompensatedVectorSum<N> s;
    for (std::size_t j = 0; j < n; ++j) s.add(h(2 * pi * j / n));
    Value q = s.value() * (2 * pi / n);
    while (true) {
        for (std::size_t j = 0; j < n; ++j) s.add(h(2 * pi * (2 * j + 1) / (2 * n)));
        n *= 2;
        const Value q2 = s.value() * (2 * pi / n);
        if (!q2.allFinite()) throw QuadratureError("non-finite contour integrand", 0.0, 0.0);
        const double diff = (q2 - q).cwiseAbs().maxCoeff();
        if (diff <= std::max(opts.abs_tol, opts.rel_tol * q2.cwiseAbs().maxCoeff())) return q2;
        if (n >= (std::size_t(1) << 22)) throw QuadratureError("circle quadrature did not converge", q2.cwiseAbs().maxCoeff(), diff);
        q = q2;
    }
}

std::size_t canonical_start(const PolylinePath& p) {
    if (!p.closed) return 0;
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        const Vec2& a = p.vertices[i];
        const Vec2& b = p.vertices[best];
        if (a.x() < b.x() || (a.x() == b.x() && a.y() < b.y())) best = i;
    }
    return best;
}

} // namespace

template <int N>
Eigen::Matrix<double, N, 1> integrate_contour(const FormIntegrand<N>& g, const Loop& loop,
                                              const ContourOptions& opts) {
    if (const auto* c = std::get_if<CircleLoop>(&loop)) return integrate_circle<N>(g, *c, opts);
    const auto& p = std::get<PolylinePath>(loop);
    const std::size_t n = p.segment_count();
    Eigen::Matrix<double, N, 1> total = Eigen::Matrix<double, N, 1>::Zero();
    if (n == 0) return total;
    ContourOptions seg = opts;
    seg.abs_tol = opts.abs_tol / static_cast<double>(n);
    CompensatedVectorSum<N> sum;
    const std::size_t start = canonical_start(p);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = (start + k) % n;
        sum.add(integrate_segment<N>(g, p.segment_start(i), p.segment_end(i), seg));
    }
    return sum.value();
}

#define MESODEFECT_CONTOUR(N)                                                                              \
    template Eigen::Matrix<double, N, 1> integrate_segment<N>(const FormIntegrand<N>&, const Vec2&,       \
                                                              const Vec2&, const ContourOptions&);         \
    template Eigen::Matrix<double, N, 1> integrate_contour<N>(const FormIntegrand<N>&, const Loop&,       \
                                                              const ContourOptions&);
MESODEFECT_CONTOUR(1)
MESODEFECT_CONTOUR(3)
MESODEFECT_CONTOUR(6)
#undef MESODEFECT_CONTOUR

double integrate_contour(const std::function<Vec2(const Vec2&)>& g, const Loop& loop, const ContourOptions& opts) {
    const FormIntegrand<1> form = [&g](const Vec2& x) { return Eigen::Matrix<double, 1, 2>(g(x).transpose()); };
    return integrate_contour<1>(form, loop, opts)[0];
}

namespace {

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 d = b - a;
    const double l2 = d.squaredNorm();
    double t = l2 > 0.0 ? (p - a).dot(d) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (a + t * d - p).norm();
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double subtended_angle(const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 u = a - p, v = b - p;
    return std::atan2(cross(u, v), u.dot(v));
}

} // namespace

std::vector<double> swept_angles(const PolylinePath& path, std::span<const Vec2> points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        CompensatedSum s;
        for (std::size_t i = 0; i < path.segment_count(); ++i) {
            const Vec2 a = path.segment_start(i), b = path.segment_end(i);
            if (segment_distance(a, b, p) < 1e-12) throw std::invalid_argument("path passes through a point");
            s.add(subtended_angle(a, b, p));
        }
        out.push_back(s.value());
    }
    return out;
}

std::vector<int> winding_numbers(const Loop& loop, std::span<const Vec2> points) {
    std::vector<int> out;
    out.reserve(points.size());
    if (const auto* c = std::get_if<CircleLoop>(&loop)) {
        for (const auto& p : points) {
            const double d = (p - c->center).norm();
            if (std::abs(d - c->radius) < 1e-12) throw std::invalid_argument("loop passes through a point");
            out.push_back(d < c->radius ? (c->counterclockwise ? 1 : -1) : 0);
        }
        return out;
    }
    const auto& path = std::get<PolylinePath>(loop);
    if (!path.closed) throw std::invalid_argument("winding numbers need a closed loop");
    for (double a : swept_angles(path, points)) {
        const double w = a / (2 * pi);
        const double r = std::round(w);
        if (std::abs(w - r) > 1e-6) throw std::runtime_error("non-integer winding number");
        out.push_back(static_cast<int>(r));
    }
    return out;
}

double distance_to_loop(const Loop& loop, const Vec2& p) {
    if (const auto* c = std::get_if<CircleLoop>(&loop)) return std::abs((p - c->center).norm() - c->radius);
    const auto& path = std::get<PolylinePath>(loop);
    if (path.vertices.size() == 1) return (path.vertices[0] - p).norm();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < path.segment_count(); ++i)
        d = std::min(d, segment_distance(path.segment_start(i), path.segment_end(i), p));
    return d;
}

double signed_area(const Loop& loop) {
    if (const auto* c = std::get_if<CircleLoop>(&loop))
        return (c->counterclockwise ? 1.0 : -1.0) * pi * c->radius * c->radius;
    const auto& path = std::get<PolylinePath>(loop);
    CompensatedSum s;
    const std::size_t n = path.vertices.size();
    for (std::size_t i = 0; i < n; ++i) s.add(cross(path.vertices[i], path.vertices[(i + 1) % n]));
    return 0.5 * s.value();
}

bool is_closed(const Loop& loop) {
    if (std::holds_alternative<CircleLoop>(loop)) return true;
    return std::get<PolylinePath>(loop).closed;
}

namespace {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
           p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

} // namespace

bool is_simple(const PolylinePath& path) {
    const std::size_t n = path.segment_count();
    for (std::size_t i = 0; i < n; ++i)
        if (path.segment_start(i) == path.segment_end(i)) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (path.closed && i == 0 && j == n - 1);
            const Vec2 a = path.segment_start(i), b = path.segment_end(i);
            const Vec2 c = path.segment_start(j), d = path.segment_end(j);
            if (adjacent) {
                // adjacent segments may only share their common vertex
                const Vec2 far_i = (j == i + 1) ? a : b;
                const Vec2 far_j = (j == i + 1) ? d : c;
                if (orient(a, b, far_j) == 0 && on_segment(a, b, far_j)) return false;
                if (orient(c, d, far_i) == 0 && on_segment(c, d, far_i)) return false;
                continue;
            }
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

} // namespace mesodefect

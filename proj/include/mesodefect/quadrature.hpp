#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "mesodefect/types.hpp"

namespace mesodefect {

struct Disc {
    Vec2 center = Vec2::Zero();
    double radius = 1.0;
};

// phi(x) = A exp(1 - 1/(1 - s)), s = |x - c|^2 / rho^2, zero for s >= 1.
class BumpTestFunction {
public:
    BumpTestFunction(const Vec2& center, double radius, double amplitude = 1.0);

    const Vec2& center() const { return center_; }
    double radius() const { return radius_; }
    double amplitude() const { return amplitude_; }
    Disc support() const { return {center_, radius_}; }

    double value(const Vec2& x) const;
    Vec2 gradient(const Vec2& x) const;
    Eigen::Matrix2d hessian(const Vec2& x) const;

private:
    Vec2 center_;
    double radius_;
    double amplitude_;
};

struct SingularPoint {
    Vec2 position = Vec2::Zero();
    // When positive, the disc of this radius around the point is left out of the domain.
    double excluded_radius = 0.0;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    std::size_t max_evaluations = 60'000'000;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double error)
        : std::runtime_error(what), value_(value), error_(error) {}
    double achieved_value() const { return value_; }
    double achieved_error() const { return error_; }

private:
    double value_;
    double error_;
};

template <int N>
struct RegionResult {
    Eigen::Matrix<double, N, 1> value;
    double error = 0.0;
    std::size_t evaluations = 0;
};

template <int N>
using RegionIntegrand = std::function<Eigen::Matrix<double, N, 1>(const Vec2&)>;

// Integral over a disc of an integrand that may be singular (up to 1/r^2 outside an
// excluded disc) at the listed points. Graded polar annuli around each singular point,
// adaptive Gauss-Kronrod product panels elsewhere, joined by a smooth partition of unity.
template <int N>
RegionResult<N> integrate_region(const RegionIntegrand<N>& f, const Disc& support,
                                 std::span<const SingularPoint> singular,
                                 const QuadratureOptions& opts = {});

struct ScalarRegionResult {
    double value = 0.0;
    double error = 0.0;
};

ScalarRegionResult integrate_region(const std::function<double(const Vec2&)>& f, const Disc& support,
                                    std::span<const Vec2> singular_points,
                                    const QuadratureOptions& opts = {});

struct PolylinePath {
    std::vector<Vec2> vertices;
    bool closed = false;

    std::size_t segment_count() const {
        if (vertices.size() < 2) return 0;
        return closed ? vertices.size() : vertices.size() - 1;
    }
    Vec2 segment_start(std::size_t i) const { return vertices[i]; }
    Vec2 segment_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
};

struct CircleLoop {
    Vec2 center = Vec2::Zero();
    double radius = 1.0;
    bool counterclockwise = true;
};

using Loop = std::variant<PolylinePath, CircleLoop>;

struct ContourOptions {
    double rel_tol = 1e-13;
    double abs_tol = 1e-13;
};

// One-form integrand: row i of G(x) is the covector of component i, so the
// integral is the sum of G(x) dx along the path.
template <int N>
using FormIntegrand = std::function<Eigen::Matrix<double, N, 2>(const Vec2&)>;

template <int N>
Eigen::Matrix<double, N, 1> integrate_segment(const FormIntegrand<N>& g, const Vec2& a, const Vec2& b,
                                              const ContourOptions& opts = {});

// Segment contributions are summed starting from the lexicographically smallest
// vertex, so cyclic relabelling of a closed polyline gives identical results.
template <int N>
Eigen::Matrix<double, N, 1> integrate_contour(const FormIntegrand<N>& g, const Loop& loop,
                                              const ContourOptions& opts = {});

double integrate_contour(const std::function<Vec2(const Vec2&)>& g, const Loop& loop,
                         const ContourOptions& opts = {});

// Signed number of turns of a closed loop around each point.
std::vector<int> winding_numbers(const Loop& loop, std::span<const Vec2> points);

// Total angle swept around each point along a polyline (closed or open).
std::vector<double> swept_angles(const PolylinePath& path, std::span<const Vec2> points);

double distance_to_loop(const Loop& loop, const Vec2& p);
double signed_area(const Loop& loop);
bool is_simple(const PolylinePath& path);
bool is_closed(const Loop& loop);

} // namespace mesodefect

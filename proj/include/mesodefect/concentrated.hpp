#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mesodefect/types.hpp"

namespace mesodefect {

// w0 * delta(x - point) + w1_a * d_a delta(x - point)
struct DiracTerm {
    Vec2 point = Vec2::Zero();
    double w0 = 0.0;
    Vec2 w1 = Vec2::Zero();
};

// Finite sum of Dirac masses and Dirac gradients on the plane.
class ConcentratedDistribution2D {
public:
    ConcentratedDistribution2D() = default;
    explicit ConcentratedDistribution2D(std::vector<DiracTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<DiracTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    bool has_gradient_terms() const {
        for (const auto& t : terms_)
            if (t.w1 != Vec2::Zero()) return true;
        return false;
    }

    // <T, phi> = sum w0 phi(p) - w1 . grad phi(p)
    template <typename TestFunction>
    double action(const TestFunction& phi) const {
        double s = 0.0;
        for (const auto& t : terms_) {
            if (t.w0 != 0.0) s += t.w0 * phi.value(t.point);
            if (t.w1 != Vec2::Zero()) s -= t.w1.dot(phi.gradient(t.point));
        }
        return s;
    }

    ConcentratedDistribution2D scaled(double f) const {
        auto out = *this;
        for (auto& t : out.terms_) {
            t.w0 *= f;
            t.w1 *= f;
        }
        return out;
    }

    // d_a of a pure-mass distribution; masses turn into gradient terms.
    ConcentratedDistribution2D derivative(int a) const {
        std::vector<DiracTerm> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (t.w1 != Vec2::Zero())
                throw std::invalid_argument("second derivatives of Dirac masses are not representable");
            DiracTerm d;
            d.point = t.point;
            d.w1[a] = t.w0;
            out.push_back(d);
        }
        return ConcentratedDistribution2D(std::move(out));
    }

    // Term-wise sum; both operands must list the same points in the same order.
    friend ConcentratedDistribution2D operator+(const ConcentratedDistribution2D& a,
                                                const ConcentratedDistribution2D& b) {
        if (a.terms_.empty()) return b;
        if (b.terms_.empty()) return a;
        if (a.terms_.size() != b.terms_.size())
            throw std::invalid_argument("concentrated distributions with different supports");
        auto out = a;
        for (std::size_t i = 0; i < out.terms_.size(); ++i) {
            if (out.terms_[i].point != b.terms_[i].point)
                throw std::invalid_argument("concentrated distributions with different supports");
            out.terms_[i].w0 += b.terms_[i].w0;
            out.terms_[i].w1 += b.terms_[i].w1;
        }
        return out;
    }

    // Largest coefficient difference against a distribution on the same points.
    double max_coefficient_difference(const ConcentratedDistribution2D& o) const;

private:
    std::vector<DiracTerm> terms_;
};

inline double ConcentratedDistribution2D::max_coefficient_difference(
    const ConcentratedDistribution2D& o) const {
    if (terms_.size() != o.terms_.size()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].point != o.terms_[i].point) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(terms_[i].w0 - o.terms_[i].w0));
        m = std::max(m, (terms_[i].w1 - o.terms_[i].w1).cwiseAbs().maxCoeff());
    }
    return m;
}

} // namespace mesodefect

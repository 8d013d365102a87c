#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mesodefect {

template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec2 = Vector2<double>;
using Vec3 = Vector3<double>;
using Mat3 = Matrix3<double>;

enum Axis : int { X = 0, Y = 1, Z = 2 };

// Permutation symbol on {0,1,2}.
constexpr int levi_civita(int i, int j, int k) {
    return (i - j) * (j - k) * (k - i) / 2;
}

// Planar symbol eps_ab = eps_zab, eps_xy = +1.
constexpr int planar_levi_civita(int a, int b) { return levi_civita(Z, a, b); }

// Symmetric 3x3 tensor stored as (xx, xy, xz, yy, yz, zz).
template <typename Scalar>
class SymTensor3 {
public:
    using Storage = Eigen::Matrix<Scalar, 6, 1>;

    SymTensor3() : v_(Storage::Zero()) {}
    explicit SymTensor3(const Storage& v) : v_(v) {}

    static SymTensor3 Zero() { return SymTensor3(); }

    static SymTensor3 from_matrix(const Matrix3<Scalar>& m) {
        SymTensor3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) t(i, j) = Scalar(0.5) * (m(i, j) + m(j, i));
        return t;
    }

    Scalar operator()(int i, int j) const { return v_[index(i, j)]; }
    Scalar& operator()(int i, int j) { return v_[index(i, j)]; }

    const Storage& components() const { return v_; }
    Storage& components() { return v_; }

    Matrix3<Scalar> matrix() const {
        Matrix3<Scalar> m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    Scalar trace() const { return v_[0] + v_[3] + v_[5]; }
    Scalar max_abs() const { return v_.cwiseAbs().maxCoeff(); }

    SymTensor3& operator+=(const SymTensor3& o) { v_ += o.v_; return *this; }
    SymTensor3& operator-=(const SymTensor3& o) { v_ -= o.v_; return *this; }
    SymTensor3& operator*=(Scalar s) { v_ *= s; return *this; }

    friend SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
    friend SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
    friend SymTensor3 operator*(Scalar s, SymTensor3 a) { return a *= s; }
    friend SymTensor3 operator*(SymTensor3 a, Scalar s) { return a *= s; }

    static constexpr int index(int i, int j) {
        constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return table[i][j];
    }

private:
    Storage v_;
};

using Strain = SymTensor3<double>;

// Value and in-plane gradient (d/dx, d/dy) of a z-independent symmetric field.
template <typename Scalar>
struct StrainJet {
    SymTensor3<Scalar> value;
    std::array<SymTensor3<Scalar>, 2> gradient;

    StrainJet& operator+=(const StrainJet& o) {
        value += o.value;
        gradient[0] += o.gradient[0];
        gradient[1] += o.gradient[1];
        return *this;
    }
};

// Frank tensor layout: row m is the derivative direction, column k the rotation component.
using FrankTensor = Mat3;

struct SingularPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidEnsembleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InconsistentFieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mesodefect

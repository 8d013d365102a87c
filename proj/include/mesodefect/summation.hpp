#pragma once

#include <cmath>

#include <Eigen/Core>

namespace mesodefect {

// Neumaier compensated accumulator for scalars.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Component-wise Neumaier accumulator for fixed-size Eigen vectors.
template <int N>
class CompensatedVectorSum {
public:
    using Value = Eigen::Matrix<double, N, 1>;

    void add(const Value& v) {
        for (int i = 0; i < N; ++i) parts_[i].add(v[i]);
    }
    Value value() const {
        Value out;
        for (int i = 0; i < N; ++i) out[i] = parts_[i].value();
        return out;
    }

private:
    CompensatedSum parts_[N];
};

} // namespace mesodefect

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace ratelab {

/// Dense state vector for low-dimensional dynamical systems (dimension 1-4).
/// Value type with inline storage; no heap allocation on the integration path.
class StateVec {
public:
    static constexpr int kMaxDim = 4;

    StateVec() = default;

    StateVec(std::initializer_list<double> values) {
        if (values.size() == 0 || values.size() > kMaxDim)
            throw std::invalid_argument("StateVec: dimension must be 1.." + std::to_string(kMaxDim));
        dim_ = static_cast<int>(values.size());
        int i = 0;
        for (double v : values) data_[i++] = v;
    }

    [[nodiscard]] static StateVec zeros(int dim) {
        if (dim < 1 || dim > kMaxDim)
            throw std::invalid_argument("StateVec: dimension must be 1.." + std::to_string(kMaxDim));
        StateVec v;
        v.dim_ = dim;
        return v;
    }

    [[nodiscard]] int dim() const noexcept { return dim_; }

    [[nodiscard]] double operator[](int i) const noexcept { return data_[i]; }
    [[nodiscard]] double& operator[](int i) noexcept { return data_[i]; }

    [[nodiscard]] const double* data() const noexcept { return data_.data(); }

    StateVec& operator+=(const StateVec& o) noexcept {
        for (int i = 0; i < dim_; ++i) data_[i] += o.data_[i];
        return *this;
    }

    StateVec& operator-=(const StateVec& o) noexcept {
        for (int i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
        return *this;
    }

    StateVec& operator*=(double s) noexcept {
        for (int i = 0; i < dim_; ++i) data_[i] *= s;
        return *this;
    }

    [[nodiscard]] friend StateVec operator+(StateVec a, const StateVec& b) noexcept { return a += b; }
    [[nodiscard]] friend StateVec operator-(StateVec a, const StateVec& b) noexcept { return a -= b; }
    [[nodiscard]] friend StateVec operator*(double s, StateVec a) noexcept { return a *= s; }
    [[nodiscard]] friend StateVec operator*(StateVec a, double s) noexcept { return a *= s; }

    [[nodiscard]] bool operator==(const StateVec& o) const noexcept {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (data_[i] != o.data_[i]) return false;
        return true;
    }

    [[nodiscard]] double norm() const noexcept {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += data_[i] * data_[i];
        return std::sqrt(s);
    }

    [[nodiscard]] bool all_finite() const noexcept {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(data_[i])) return false;
        return true;
    }

private:
    std::array<double, kMaxDim> data_{};
    int dim_ = 0;
};

/// Uniform time grid [t0, t1] with fixed step dt.
/// step_count() = ceil((t1-t0)/dt); the final grid point may land slightly
/// past t1 when the span is not an integer multiple of dt.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-3;

    TimeGrid() = default;

    TimeGrid(double t_start, double t_end, double step) : t0(t_start), t1(t_end), dt(step) {
        if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t1 must exceed t0");
        if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
        if (dt > (t1 - t0)) throw std::invalid_argument("TimeGrid: dt must not exceed the span");
    }

    [[nodiscard]] long step_count() const noexcept {
        return static_cast<long>(std::ceil((t1 - t0) / dt - 1e-12));
    }

    [[nodiscard]] double time_at(long i) const noexcept { return t0 + static_cast<double>(i) * dt; }
};

}  // namespace ratelab

#pragma once

#include <array>
#include <complex>

#include "ratelab/state.hpp"

namespace ratelab {

/// Small real matrix of dimension 1 or 2 (row-major), with the spectral
/// helpers the tipping-radius analysis needs: operator 2-norm, eigenvalues,
/// and a closed-form matrix exponential.
class Mat2 {
public:
    /// 1x1 matrix.
    explicit Mat2(double m) : dim_(1), e_{m, 0.0, 0.0, 0.0} {}

    /// 2x2 matrix from rows (a b; c d).
    Mat2(double a, double b, double c, double d) : dim_(2), e_{a, b, c, d} {}

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double at(int r, int c) const noexcept { return e_[static_cast<std::size_t>(2 * r + c)]; }

    [[nodiscard]] double trace() const noexcept { return dim_ == 1 ? e_[0] : e_[0] + e_[3]; }
    [[nodiscard]] double det() const noexcept { return dim_ == 1 ? e_[0] : e_[0] * e_[3] - e_[1] * e_[2]; }

    /// Both eigenvalues (conjugate pair or two reals; equal entries for 1x1).
    [[nodiscard]] std::array<std::complex<double>, 2> eigenvalues() const;

    /// All eigenvalues have strictly negative real part.
    [[nodiscard]] bool is_stable() const;

    [[nodiscard]] Mat2 inverse() const;

    /// Largest and smallest singular values; operator_norm() is sigma_max.
    [[nodiscard]] double sigma_max() const;
    [[nodiscard]] double sigma_min() const;
    [[nodiscard]] double operator_norm() const { return sigma_max(); }

    /// exp(M u) in closed form from the eigenstructure.
    [[nodiscard]] Mat2 exp(double u) const;

    /// 2-norm condition number of the (unit-column) eigenvector matrix.
    /// Equals 1 exactly when the matrix is normal. Infinite (huge) values
    /// signal a defective matrix.
    [[nodiscard]] double eigenvector_condition() const;

    [[nodiscard]] StateVec apply(const StateVec& v) const;

    [[nodiscard]] friend Mat2 operator*(double s, Mat2 m) {
        for (auto& x : m.e_) x *= s;
        return m;
    }

private:
    int dim_;
    std::array<double, 4> e_;
};

}  // namespace ratelab

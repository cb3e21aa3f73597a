#include "ratelab/matrix2.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ratelab {

namespace {
constexpr double kDegenerateTol = 1e-9;
}

std::array<std::complex<double>, 2> Mat2::eigenvalues() const {
    if (dim_ == 1) return {std::complex<double>(e_[0]), std::complex<double>(e_[0])};
    const double tr = trace();
    const double disc = tr * tr - 4.0 * det();
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return {std::complex<double>((tr + s) / 2.0), std::complex<double>((tr - s) / 2.0)};
    }
    const double beta = std::sqrt(-disc) / 2.0;
    return {std::complex<double>(tr / 2.0, beta), std::complex<double>(tr / 2.0, -beta)};
}

bool Mat2::is_stable() const {
    if (dim_ == 1) return e_[0] < 0.0;
    return trace() < 0.0 && det() > 0.0;
}

Mat2 Mat2::inverse() const {
    const double d = det();
    if (d == 0.0) throw std::domain_error("Mat2::inverse: singular matrix");
    if (dim_ == 1) return Mat2(1.0 / e_[0]);
    return Mat2(e_[3] / d, -e_[1] / d, -e_[2] / d, e_[0] / d);
}

double Mat2::sigma_max() const {
    if (dim_ == 1) return std::abs(e_[0]);
    const double p = e_[0] * e_[0] + e_[2] * e_[2];
    const double s = e_[1] * e_[1] + e_[3] * e_[3];
    const double q = e_[0] * e_[1] + e_[2] * e_[3];
    const double mid = 0.5 * (p + s);
    const double off = std::sqrt(0.25 * (p - s) * (p - s) + q * q);
    return std::sqrt(mid + off);
}

double Mat2::sigma_min() const {
    if (dim_ == 1) return std::abs(e_[0]);
    const double p = e_[0] * e_[0] + e_[2] * e_[2];
    const double s = e_[1] * e_[1] + e_[3] * e_[3];
    const double q = e_[0] * e_[1] + e_[2] * e_[3];
    const double mid = 0.5 * (p + s);
    const double off = std::sqrt(0.25 * (p - s) * (p - s) + q * q);
    return std::sqrt(std::max(mid - off, 0.0));
}

Mat2 Mat2::exp(double u) const {
    if (dim_ == 1) return Mat2(std::exp(e_[0] * u));

    const auto [l1, l2] = eigenvalues();
    const double a = e_[0], b = e_[1], c = e_[2], d = e_[3];
    const double scale = std::max(1.0, std::abs(l1) + std::abs(l2));

    if (l1.imag() != 0.0) {
        // Conjugate pair alpha +- i beta: exp = e^{alpha u}(cos(beta u) I + sin(beta u)(M - alpha I)/beta).
        const double alpha = l1.real(), beta = l1.imag();
        const double ea = std::exp(alpha * u);
        const double cs = std::cos(beta * u), sn = std::sin(beta * u) / beta;
        return Mat2(ea * (cs + sn * (a - alpha)), ea * sn * b,
                    ea * sn * c, ea * (cs + sn * (d - alpha)));
    }

    const double r1 = l1.real(), r2 = l2.real();
    if (std::abs(r1 - r2) > kDegenerateTol * scale) {
        // Two real eigenvalues: exp = (e^{r1 u}(M - r2 I) - e^{r2 u}(M - r1 I)) / (r1 - r2).
        const double e1 = std::exp(r1 * u), e2 = std::exp(r2 * u);
        const double inv = 1.0 / (r1 - r2);
        return Mat2(inv * (e1 * (a - r2) - e2 * (a - r1)), inv * (e1 - e2) * b,
                    inv * (e1 - e2) * c, inv * (e1 * (d - r2) - e2 * (d - r1)));
    }

    // Repeated eigenvalue: exp = e^{r u}(I + u (M - r I)).
    const double r = 0.5 * (r1 + r2);
    const double er = std::exp(r * u);
    return Mat2(er * (1.0 + u * (a - r)), er * u * b, er * u * c, er * (1.0 + u * (d - r)));
}

double Mat2::eigenvector_condition() const {
    if (dim_ == 1) return 1.0;

    const double a = e_[0], b = e_[1], c = e_[2], d = e_[3];
    const auto [l1, l2] = eigenvalues();
    const double scale = std::max(1.0, std::abs(l1) + std::abs(l2));

    if (b == 0.0 && c == 0.0) {
        return 1.0;  // diagonal, eigenvectors are the axes
    }

    if (l1.imag() == 0.0 && std::abs(l1.real() - l2.real()) <= kDegenerateTol * scale) {
        return std::numeric_limits<double>::infinity();  // defective (repeated, non-scalar)
    }

    auto eigvec = [&](std::complex<double> l) -> std::array<std::complex<double>, 2> {
        if (b != 0.0) return {std::complex<double>(b), l - a};
        return {l - d, std::complex<double>(c)};
    };

    const auto v1 = eigvec(l1);
    const auto v2 = eigvec(l2);
    const double n1 = std::sqrt(std::norm(v1[0]) + std::norm(v1[1]));
    const double n2 = std::sqrt(std::norm(v2[0]) + std::norm(v2[1]));
    // With unit columns, V*V = [[1, h], [conj(h), 1]]; singular values sqrt(1 +- |h|).
    const std::complex<double> h =
        (std::conj(v1[0]) * v2[0] + std::conj(v1[1]) * v2[1]) / (n1 * n2);
    const double m = std::min(std::abs(h), 1.0);
    if (m >= 1.0) return std::numeric_limits<double>::infinity();
    return std::sqrt((1.0 + m) / (1.0 - m));
}

StateVec Mat2::apply(const StateVec& v) const {
    if (v.dim() != dim_) throw std::invalid_argument("Mat2::apply: dimension mismatch");
    if (dim_ == 1) return StateVec{e_[0] * v[0]};
    return StateVec{e_[0] * v[0] + e_[1] * v[1], e_[2] * v[0] + e_[3] * v[1]};
}

}  // namespace ratelab

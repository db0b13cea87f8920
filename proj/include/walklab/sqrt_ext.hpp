#pragma once

#include <cmath>
#include <complex>

#include "walklab/common.hpp"

namespace walklab {

// Element reg + sing * s of C[s]/(s^2 - sigma0), used with sigma0 = 1 - z/rho
// so that s plays the role of sqrt(1 - z/rho). Tracking the two components
// separately through the generating-function algebra is what splits a value
// into its analytic part and its sqrt prefactor without any numerical fitting.
struct SqrtExt {
    std::complex<double> reg{0.0, 0.0};
    std::complex<double> sing{0.0, 0.0};
    double sigma0 = 0.0;

    // Numeric value under the embedding s -> +sqrt(sigma0) (sigma0 >= 0).
    std::complex<double> embed() const {
        return reg + sing * std::sqrt(sigma0);
    }
};

namespace detail {
inline void check_same_frame(const SqrtExt& a, const SqrtExt& b) {
    const double scale = std::abs(a.sigma0) + std::abs(b.sigma0);
    if (std::abs(a.sigma0 - b.sigma0) > 1e-12 * (1.0 + scale))
        throw DomainError("sqrt-extension elements built over different base points");
}
}  // namespace detail

inline SqrtExt identity_like(const SqrtExt& like) { return {{1.0, 0.0}, {0.0, 0.0}, like.sigma0}; }

inline SqrtExt operator+(const SqrtExt& a, const SqrtExt& b) {
    detail::check_same_frame(a, b);
    return {a.reg + b.reg, a.sing + b.sing, a.sigma0};
}

inline SqrtExt operator-(const SqrtExt& a, const SqrtExt& b) {
    detail::check_same_frame(a, b);
    return {a.reg - b.reg, a.sing - b.sing, a.sigma0};
}

inline SqrtExt operator-(const SqrtExt& a) { return {-a.reg, -a.sing, a.sigma0}; }

// (x + y s)(x' + y' s) = (x x' + y y' sigma0) + (x y' + x' y) s
inline SqrtExt operator*(const SqrtExt& a, const SqrtExt& b) {
    detail::check_same_frame(a, b);
    return {a.reg * b.reg + a.sing * b.sing * a.sigma0, a.reg * b.sing + a.sing * b.reg, a.sigma0};
}

inline SqrtExt operator*(const SqrtExt& a, double c) { return {a.reg * c, a.sing * c, a.sigma0}; }
inline SqrtExt operator*(double c, const SqrtExt& a) { return a * c; }
inline SqrtExt operator*(const SqrtExt& a, std::complex<double> c) { return {a.reg * c, a.sing * c, a.sigma0}; }
inline SqrtExt operator*(std::complex<double> c, const SqrtExt& a) { return a * c; }

// Inverse via the conjugate: 1/(x + y s) = (x - y s)/(x^2 - y^2 sigma0).
// The norm x^2 - y^2 sigma0 vanishing means the element is a zero divisor.
inline SqrtExt inverse(const SqrtExt& a) {
    const std::complex<double> norm = a.reg * a.reg - a.sing * a.sing * a.sigma0;
    const double scale = std::norm(a.reg) + std::norm(a.sing) * std::abs(a.sigma0);
    if (std::abs(norm) <= 1e-14 * scale || scale == 0.0)
        throw SingularityError("sqrt-extension element is not invertible (zero norm)");
    return {a.reg / norm, -a.sing / norm, a.sigma0};
}

inline SqrtExt operator/(const SqrtExt& a, const SqrtExt& b) { return a * inverse(b); }
inline SqrtExt operator/(const SqrtExt& a, double c) { return {a.reg / c, a.sing / c, a.sigma0}; }
inline SqrtExt operator/(const SqrtExt& a, std::complex<double> c) { return {a.reg / c, a.sing / c, a.sigma0}; }

inline SqrtExt sqrt_ext_scalar(std::complex<double> x, double sigma0) { return {x, {0.0, 0.0}, sigma0}; }

}  // namespace walklab

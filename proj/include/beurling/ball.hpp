#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace beurling {

using complex = std::complex<double>;

/// Dense coordinate vector in C^d. All entries finite.
class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t dim) : coords_(dim) {}
    explicit CVector(std::vector<complex> coords) : coords_(std::move(coords)) { check_finite(); }
    CVector(std::initializer_list<complex> coords) : coords_(coords) { check_finite(); }

    /// Unit basis vector e_i (0-based).
    static CVector basis(std::size_t dim, std::size_t i) {
        CVector e(dim);
        e.coords_.at(i) = 1.0;
        return e;
    }

    std::size_t dim() const noexcept { return coords_.size(); }
    std::span<const complex> coords() const noexcept { return coords_; }
    const complex& operator[](std::size_t i) const { return coords_[i]; }
    complex& operator[](std::size_t i) { return coords_[i]; }

    friend bool operator==(const CVector&, const CVector&) = default;

private:
    void check_finite() const {
        for (const auto& c : coords_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw DomainError("CVector: non-finite coordinate");
    }

    std::vector<complex> coords_;
};

inline void require_same_dim(const CVector& x, const CVector& y) {
    if (x.dim() != y.dim())
        throw DomainError("dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                          std::to_string(y.dim()));
}

/// <x, y>, linear in x and conjugate-linear in y. Written out in real
/// arithmetic so that inner(x, y) == conj(inner(y, x)) holds bit for bit.
inline complex inner(const CVector& x, const CVector& y) {
    require_same_dim(x, y);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xi * yr - xr * yi;
    }
    return {re, im};
}

/// ||x||^2, equal to inner(x, x).real() bit for bit.
inline double norm_sq(const CVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        s += xr * xr + xi * xi;
    }
    return s;
}

inline double norm(const CVector& x) { return std::sqrt(norm_sq(x)); }

inline CVector operator+(const CVector& x, const CVector& y) {
    require_same_dim(x, y);
    CVector r(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline CVector operator-(const CVector& x, const CVector& y) {
    require_same_dim(x, y);
    CVector r(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline CVector operator-(const CVector& x) {
    CVector r(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) r[i] = -x[i];
    return r;
}

inline CVector operator*(complex s, const CVector& x) {
    CVector r(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) r[i] = s * x[i];
    return r;
}

inline CVector operator*(double s, const CVector& x) {
    CVector r(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) r[i] = s * x[i];
    return r;
}

/// A point of the open unit ball: ||v|| < 1.
class BallPoint {
public:
    explicit BallPoint(CVector v) : v_(std::move(v)), norm_sq_(beurling::norm_sq(v_)) {
        if (v_.dim() == 0) throw DomainError("BallPoint: dimension must be at least 1");
        if (!(norm_sq_ < 1.0))
            throw DomainError("BallPoint: norm " + std::to_string(std::sqrt(norm_sq_)) +
                              " is not below 1");
    }

    static BallPoint origin(std::size_t dim) { return BallPoint(CVector(dim)); }

    const CVector& vec() const noexcept { return v_; }
    std::size_t dim() const noexcept { return v_.dim(); }
    double norm_sq() const noexcept { return norm_sq_; }
    double norm() const noexcept { return std::sqrt(norm_sq_); }

    friend bool operator==(const BallPoint& a, const BallPoint& b) { return a.v_ == b.v_; }

private:
    CVector v_;
    double norm_sq_;
};

inline complex inner(const BallPoint& x, const BallPoint& y) { return inner(x.vec(), y.vec()); }

/// s_a = sqrt(1 - ||a||^2), in (0, 1].
inline double s_factor(const BallPoint& a) { return std::sqrt(1.0 - a.norm_sq()); }

/// Orthogonal projection onto span{a}; the zero map when a = 0.
inline CVector proj_P(const BallPoint& a, const CVector& x) {
    require_same_dim(a.vec(), x);
    if (a.norm_sq() == 0.0) return CVector(x.dim());
    return (inner(x, a.vec()) / a.norm_sq()) * a.vec();
}

/// Id - P_a; the identity when a = 0.
inline CVector proj_Q(const BallPoint& a, const CVector& x) { return x - proj_P(a, x); }

/// m_a(x) = (a - x) / (1 - <x, a>).
inline CVector mobius_m(const BallPoint& a, const BallPoint& x) {
    const complex denom = 1.0 - inner(x.vec(), a.vec());
    return (1.0 / denom) * (a.vec() - x.vec());
}

/// (s_a Q_a + P_a)(m_a(x)) as a raw vector, with no check on the result norm.
inline CVector automorphism_vec(const BallPoint& a, const BallPoint& x) {
    const CVector m = mobius_m(a, x);
    const CVector p = proj_P(a, m);
    return s_factor(a) * (m - p) + p;
}

/// The ball automorphism phi_a exchanging a and 0. It is an involution.
/// Throws ConditioningError if rounding pushes the image onto the sphere.
inline BallPoint automorphism_phi(const BallPoint& a, const BallPoint& x) {
    CVector r = automorphism_vec(a, x);
    if (!(beurling::norm_sq(r) < 1.0))
        throw ConditioningError("automorphism_phi: image left the open ball");
    return BallPoint(std::move(r));
}

} // namespace beurling

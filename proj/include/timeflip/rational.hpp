#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace timeflip::certify {

/// Arbitrary-precision rational, reduced form, positive denominator.
using Rational = mpq_class;

Rational rational_of(long num, long den = 1);
Rational rational_from_string(const std::string& s);  // "num/den" or "num"
std::string to_string(const Rational& q);
Rational pow2(int k);                       // 2^k, k may be negative
Rational dyadic_round(double x, int k);     // nearest multiple of 2^{-k}

/// Gaussian rational re + i*im.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(int v) : re(v), im(0) {}  // NOLINT: deliberate implicit
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    GaussianRational conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
bool operator==(const GaussianRational& a, const GaussianRational& b);

/// Element of Q[sqrt(2)]: a + b*sqrt(2). The canonical gates live here; every
/// ensemble-average operator must come back down to plain rationals.
struct Root2 {
    Rational a, b;

    Root2() : a(0), b(0) {}
    Root2(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

    bool is_rational() const { return b == 0; }
};

Root2 operator+(const Root2& x, const Root2& y);
Root2 operator-(const Root2& x, const Root2& y);
Root2 operator*(const Root2& x, const Root2& y);

/// Complex number with Root2 components.
struct Root2Gaussian {
    Root2 re, im;

    Root2Gaussian() = default;
    Root2Gaussian(Root2 r, Root2 i) : re(std::move(r)), im(std::move(i)) {}

    Root2Gaussian conj() const { return {re, Root2{} - im}; }
    bool is_rational() const { return re.is_rational() && im.is_rational(); }
};

Root2Gaussian operator+(const Root2Gaussian& x, const Root2Gaussian& y);
Root2Gaussian operator-(const Root2Gaussian& x, const Root2Gaussian& y);
Root2Gaussian operator*(const Root2Gaussian& x, const Root2Gaussian& y);

/// Dense matrix over the Gaussian rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GaussianRational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const GaussianRational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    std::vector<GaussianRational>& data() { return a_; }
    const std::vector<GaussianRational>& data() const { return a_; }

    GaussianRational trace() const;

    RationalMatrix& operator+=(const RationalMatrix& o);
    RationalMatrix& operator-=(const RationalMatrix& o);
    RationalMatrix& operator*=(const GaussianRational& s);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<GaussianRational> a_;
};

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b);
bool operator==(const RationalMatrix& a, const RationalMatrix& b);

/// Hermitian matrix with exact entries; only the upper triangle is stored and
/// diagonal imaginary parts are identically zero, so A = A^dag by construction.
class RationalHermitian {
public:
    explicit RationalHermitian(int n = 0);

    /// Exact Hermiticity check; throws std::invalid_argument on violation.
    static RationalHermitian from_matrix(const RationalMatrix& m);
    RationalMatrix to_matrix() const;

    int dim() const { return n_; }
    GaussianRational at(int i, int j) const;
    void set(int i, int j, GaussianRational v);  // requires i <= j
    Rational trace() const;

    bool operator==(const RationalHermitian& o) const { return n_ == o.n_ && upper_ == o.upper_; }

private:
    size_t idx(int i, int j) const {  // i <= j
        return static_cast<size_t>(i) * n_ - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
    }
    int n_ = 0;
    std::vector<GaussianRational> upper_;
};

/// Exact positive-semidefiniteness, decided via the real symmetric embedding
/// [[A, -B], [B, A]] followed by LDL^T elimination with diagonal pivoting.
bool rational_psd(const RationalHermitian& m);

}  // namespace timeflip::certify

#include "timeflip/rational.hpp"

#include <cmath>

namespace timeflip::certify {

Rational rational_of(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow2(int k) {
    mpz_class z = 1;
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned>(k >= 0 ? k : -k));
    Rational q = k >= 0 ? Rational(z) : Rational(1, z);
    q.canonicalize();
    return q;
}

Rational dyadic_round(double x, int k) {
    if (k < 0 || k > 48) throw std::invalid_argument("dyadic_round: k out of range [0, 48]");
    if (!std::isfinite(x)) throw std::invalid_argument("dyadic_round: non-finite input");
    const double scaled = std::ldexp(x, k);
    if (std::abs(scaled) > 9e15) throw std::invalid_argument("dyadic_round: value too large");
    const long long n = std::llround(scaled);
    Rational q(static_cast<long>(n));
    q /= pow2(k);
    q.canonicalize();
    return q;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw std::invalid_argument("GaussianRational: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
}

Root2 operator+(const Root2& x, const Root2& y) { return {x.a + y.a, x.b + y.b}; }
Root2 operator-(const Root2& x, const Root2& y) { return {x.a - y.a, x.b - y.b}; }
Root2 operator*(const Root2& x, const Root2& y) {
    return {x.a * y.a + 2 * (x.b * y.b), x.a * y.b + x.b * y.a};
}

Root2Gaussian operator+(const Root2Gaussian& x, const Root2Gaussian& y) {
    return {x.re + y.re, x.im + y.im};
}
Root2Gaussian operator-(const Root2Gaussian& x, const Root2Gaussian& y) {
    return {x.re - y.re, x.im - y.im};
}
Root2Gaussian operator*(const Root2Gaussian& x, const Root2Gaussian& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

GaussianRational RationalMatrix::trace() const {
    GaussianRational t;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RationalMatrix: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RationalMatrix: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator*=(const GaussianRational& s) {
    for (auto& v : a_) v = v * s;
    return *this;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.data() == b.data();
}

RationalHermitian::RationalHermitian(int n) : n_(n), upper_(static_cast<size_t>(n) * (n + 1) / 2) {}

RationalHermitian RationalHermitian::from_matrix(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("RationalHermitian: non-square");
    RationalHermitian h(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        if (!(m.at(i, i).im == 0))
            throw std::invalid_argument("RationalHermitian: nonzero imaginary diagonal");
        for (int j = i; j < m.cols(); ++j) {
            if (!(m.at(j, i) == m.at(i, j).conj()))
                throw std::invalid_argument("RationalHermitian: matrix is not exactly Hermitian");
            h.upper_[h.idx(i, j)] = m.at(i, j);
        }
    }
    return h;
}

RationalMatrix RationalHermitian::to_matrix() const {
    RationalMatrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            m.at(i, j) = upper_[idx(i, j)];
            if (i != j) m.at(j, i) = upper_[idx(i, j)].conj();
        }
    return m;
}

GaussianRational RationalHermitian::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("RationalHermitian::at");
    return i <= j ? upper_[idx(i, j)] : upper_[idx(j, i)].conj();
}

void RationalHermitian::set(int i, int j, GaussianRational v) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i > j)
        throw std::out_of_range("RationalHermitian::set expects i <= j");
    if (i == j && !(v.im == 0))
        throw std::invalid_argument("RationalHermitian: diagonal must be real");
    upper_[idx(i, j)] = std::move(v);
}

Rational RationalHermitian::trace() const {
    Rational t = 0;
    for (int i = 0; i < n_; ++i) t += at(i, i).re;
    return t;
}

bool rational_psd(const RationalHermitian& m) {
    const int n = m.dim();
    const int d = 2 * n;
    // Real symmetric embedding of A + iB: [[A, -B], [B, A]].
    std::vector<Rational> e(static_cast<size_t>(d) * d);
    auto E = [&](int i, int j) -> Rational& { return e[static_cast<size_t>(i) * d + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const GaussianRational v = m.at(i, j);
            E(i, j) = v.re;
            E(i + n, j + n) = v.re;
            E(i, j + n) = -v.im;
            E(i + n, j) = v.im;
        }

    // LDL^T with diagonal pivoting. PSD iff every pivot is nonnegative and a
    // zero pivot only ever occurs on an all-zero trailing row/column.
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int i = k + 1; i < d; ++i)
            if (E(i, i) > E(piv, piv)) piv = i;
        if (E(piv, piv) < 0) return false;
        if (E(piv, piv) == 0) {
            // Largest remaining diagonal is zero: PSD iff the whole trailing
            // block vanishes.
            for (int i = k; i < d; ++i)
                for (int j = k; j < d; ++j)
                    if (E(i, j) != 0) return false;
            return true;
        }
        if (piv != k) {
            for (int j = 0; j < d; ++j) std::swap(E(k, j), E(piv, j));
            for (int i = 0; i < d; ++i) std::swap(E(i, k), E(i, piv));
        }
        for (int i = k + 1; i < d; ++i) {
            if (E(i, k) == 0) continue;
            const Rational f = E(i, k) / E(k, k);
            for (int j = k + 1; j < d; ++j) E(i, j) -= f * E(k, j);
            E(i, k) = 0;
        }
    }
    return true;
}

}  // namespace timeflip::certify

#include "timeflip/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace timeflip::la {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::col_vector(std::vector<cplx> entries) {
    Mat m(static_cast<int>(entries.size()), 1);
    m.a_ = std::move(entries);
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    Mat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged initializer");
        int j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Mat& Mat::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Mat Mat::transpose() const {
    Mat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Mat Mat::conjugate() const {
    Mat m(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
    return m;
}

Mat Mat::dagger() const {
    Mat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx Mat::trace() const {
    if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Mat::frob_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

bool Mat::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool Mat::is_unitary(double tol) const {
    if (!is_square()) return false;
    return (dagger() * (*this) - identity(rows_)).max_abs() <= tol;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
    Mat m(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

Mat operator*(cplx s, Mat a) { return a *= s; }
Mat operator*(Mat a, cplx s) { return a *= s; }

Mat kron(const Mat& a, const Mat& b) {
    Mat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const cplx v = a(ia, ja);
            if (v == cplx{}) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    m(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
        }
    return m;
}

Mat choi_vector(const Mat& m) {
    if (!m.is_square()) throw std::invalid_argument("choi_vector needs a square matrix");
    const int d = m.rows();
    Mat v(d * d, 1);
    for (int l = 0; l < d; ++l)
        for (int r = 0; r < d; ++r) v(l * d + r, 0) = m(r, l);
    return v;
}

Mat outer(const Mat& a, const Mat& b) {
    if (a.cols() != 1 || b.cols() != 1) throw std::invalid_argument("outer expects column vectors");
    Mat m(a.rows(), b.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.rows(); ++j) m(i, j) = a(i, 0) * std::conj(b(j, 0));
    return m;
}

cplx hs_inner(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch in hs_inner");
    cplx s = 0.0;
    for (size_t k = 0; k < a.data().size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
    return s;
}

namespace {

double off_diag_norm(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

EigH eig_hermitian(const Mat& m, double herm_tol) {
    if (!m.is_square()) throw std::invalid_argument("eig_hermitian: non-square input");
    if (!m.is_hermitian(herm_tol)) throw std::invalid_argument("eig_hermitian: input not Hermitian");
    const int n = m.rows();

    Mat a = m;
    // Symmetrize exactly so rounding in the input cannot bias the sweep.
    for (int i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    Mat vec = Mat::identity(n);

    const double scale = std::max(1.0, a.frob_norm());
    const double stop = 1e-12 * scale;
    const int max_sweeps = 80;

    for (int sweep = 0; sweep < max_sweeps && off_diag_norm(a) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= stop / (n * n)) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / r;  // e^{i phi}

                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J = [[c, -s e^{i phi}], [s e^{-i phi}, c]] on coordinates (p, q); A <- J^dag A J.
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * c + akq * s * std::conj(phase);
                    a(k, q) = -akp * s * phase + akq * c;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = apk * c + aqk * s * phase;
                    a(q, k) = -apk * s * std::conj(phase) + aqk * c;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = vec(k, p);
                    const cplx vkq = vec(k, q);
                    vec(k, p) = vkp * c + vkq * s * std::conj(phase);
                    vec(k, q) = -vkp * s * phase + vkq * c;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigH out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = vec(i, order[j]);
    }
    return out;
}

double lambda_min(const Mat& m) { return eig_hermitian(m).values.front(); }
double lambda_max(const Mat& m) { return eig_hermitian(m).values.back(); }

bool is_psd(const Mat& m, double tol) { return lambda_min(m) >= -tol; }

Mat psd_projection(const Mat& m) {
    const EigH e = eig_hermitian(m);
    const int n = m.rows();
    Mat out(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = e.values[k];
        if (lam <= 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const cplx vik = e.vectors(i, k);
            if (vik == cplx{}) continue;
            for (int j = 0; j < n; ++j) out(i, j) += lam * vik * std::conj(e.vectors(j, k));
        }
    }
    return out;
}

}  // namespace timeflip::la

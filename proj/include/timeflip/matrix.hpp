#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace timeflip::la {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Column vectors are n x 1 matrices.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat zero(int rows, int cols) { return Mat(rows, cols); }
    static Mat identity(int n);
    static Mat col_vector(std::vector<cplx> entries);
    static Mat from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<cplx>& data() { return a_; }
    const std::vector<cplx>& data() const { return a_; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(cplx s);

    Mat transpose() const;
    Mat conjugate() const;
    Mat dagger() const;

    cplx trace() const;
    double frob_norm() const;
    double max_abs() const;

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-12) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cplx s, Mat a);
Mat operator*(Mat a, cplx s);

/// Kronecker product; dimensions multiply.
Mat kron(const Mat& a, const Mat& b);

/// Choi vector |M>> = sum_l |l> (x) M|l>, a d^2 column vector with <<M|M>> = tr(M^dag M).
Mat choi_vector(const Mat& m);

/// Outer product a b^dag.
Mat outer(const Mat& a, const Mat& b);

/// Hilbert-Schmidt inner product tr(a^dag b).
cplx hs_inner(const Mat& a, const Mat& b);

struct EigH {
    std::vector<double> values;  // ascending
    Mat vectors;                 // columns, same order
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Deterministic sweep order; off-diagonal norm driven below 1e-12 * scale.
/// Throws std::invalid_argument when the input is not Hermitian within `herm_tol`.
EigH eig_hermitian(const Mat& m, double herm_tol = 1e-10);

double lambda_min(const Mat& m);
double lambda_max(const Mat& m);
bool is_psd(const Mat& m, double tol = 1e-9);

/// Nearest PSD matrix: clip negative eigenvalues to zero.
Mat psd_projection(const Mat& m);

}  // namespace timeflip::la

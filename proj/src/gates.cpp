#include "timeflip/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace timeflip::gates {

using la::cplx;
using la::Mat;

const char* to_string(SetLabel l) {
    switch (l) {
        case SetLabel::Plus: return "plus";
        case SetLabel::Minus: return "minus";
        case SetLabel::Neither: return "neither";
    }
    return "?";
}

const Mat& pauli_id() {
    static const Mat m = Mat::identity(2);
    return m;
}
const Mat& pauli_x() {
    static const Mat m = Mat::from_rows({{0, 1}, {1, 0}});
    return m;
}
const Mat& pauli_y() {
    static const Mat m = Mat::from_rows({{0, cplx(0, -1)}, {cplx(0, 1), 0}});
    return m;
}
const Mat& pauli_z() {
    static const Mat m = Mat::from_rows({{1, 0}, {0, -1}});
    return m;
}

cplx ExactEntry::value() const {
    const double den = sqrt2_den ? std::sqrt(2.0) : 1.0;
    return cplx(re / den, im / den);
}

Mat exact_to_mat(const ExactGate& g) {
    Mat m(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = g[i][j].value();
    return m;
}

const GatePair& GameEnsemble::pair(int i) const {
    const int np = static_cast<int>(plus_pairs.size());
    if (i < 0 || i >= size()) throw std::out_of_range("GameEnsemble::pair");
    return i < np ? plus_pairs[i] : minus_pairs[i - np];
}

namespace {

// r = sqrt2 denominator flag
ExactGate eg(int re00, int im00, int re01, int im01, int re10, int im10, int re11, int im11,
             bool r = false) {
    return ExactGate{{{{{re00, im00, r}, {re01, im01, r}}}, {{{re10, im10, r}, {re11, im11, r}}}}};
}

const ExactGate kI = eg(1, 0, 0, 0, 0, 0, 1, 0);
const ExactGate kX = eg(0, 0, 1, 0, 1, 0, 0, 0);
const ExactGate kY = eg(0, 0, 0, -1, 0, 1, 0, 0);
const ExactGate kZ = eg(1, 0, 0, 0, 0, 0, -1, 0);
// (X-Y)/sqrt2 = [[0, 1+i], [1-i, 0]]/sqrt2
const ExactGate kXmY = eg(0, 0, 1, 1, 1, -1, 0, 0, true);
// (X+Y)/sqrt2 = [[0, 1-i], [1+i, 0]]/sqrt2
const ExactGate kXpY = eg(0, 0, 1, -1, 1, 1, 0, 0, true);
// (Z-Y)/sqrt2 = [[1, i], [-i, -1]]/sqrt2
const ExactGate kZmY = eg(1, 0, 0, 1, 0, -1, -1, 0, true);
// (Z+Y)/sqrt2 = [[1, -i], [i, -1]]/sqrt2
const ExactGate kZpY = eg(1, 0, 0, -1, 0, 1, -1, 0, true);
// (I+iY)/sqrt2 = [[1, 1], [-1, 1]]/sqrt2
const ExactGate kIpiY = eg(1, 0, 1, 0, -1, 0, 1, 0, true);
// (I-iY)/sqrt2 = [[1, -1], [1, 1]]/sqrt2
const ExactGate kImiY = eg(1, 0, -1, 0, 1, 0, 1, 0, true);

GatePair make_pair(const std::string& name, const ExactGate& u, const ExactGate& v, SetLabel label) {
    GatePair p;
    p.name = name;
    p.u = exact_to_mat(u);
    p.v = exact_to_mat(v);
    p.label = label;
    p.has_exact = true;
    p.exact_u = u;
    p.exact_v = v;
    return p;
}

}  // namespace

GameEnsemble canonical_ensemble() {
    GameEnsemble e;
    const SetLabel P = SetLabel::Plus;
    const SetLabel M = SetLabel::Minus;
    e.plus_pairs = {
        make_pair("(I,I)", kI, kI, P),
        make_pair("(I,X)", kI, kX, P),
        make_pair("(I,Z)", kI, kZ, P),
        make_pair("(X,I)", kX, kI, P),
        make_pair("(X,X)", kX, kX, P),
        make_pair("(X,Z)", kX, kZ, P),
        make_pair("(Z,I)", kZ, kI, P),
        make_pair("(Z,X)", kZ, kX, P),
        make_pair("(Z,Z)", kZ, kZ, P),
        make_pair("((X-Y)/sqrt2,(X+Y)/sqrt2)", kXmY, kXpY, P),
        make_pair("((X+Y)/sqrt2,(X-Y)/sqrt2)", kXpY, kXmY, P),
        make_pair("((Z-Y)/sqrt2,(Z+Y)/sqrt2)", kZmY, kZpY, P),
        make_pair("((Z+Y)/sqrt2,(Z-Y)/sqrt2)", kZpY, kZmY, P),
    };
    e.minus_pairs = {
        make_pair("(Y,I)", kY, kI, M),
        make_pair("(Y,X)", kY, kX, M),
        make_pair("(Y,Z)", kY, kZ, M),
        make_pair("(I,Y)", kI, kY, M),
        make_pair("(X,Y)", kX, kY, M),
        make_pair("(Z,Y)", kZ, kY, M),
        make_pair("((I+iY)/sqrt2,(I-iY)/sqrt2)", kIpiY, kImiY, M),
        make_pair("((I-iY)/sqrt2,(I+iY)/sqrt2)", kImiY, kIpiY, M),
    };
    return e;
}

ClassifyResiduals classify_residuals(const Mat& u, const Mat& v) {
    const Mat uvt = u * v.transpose();
    const Mat utv = u.transpose() * v;
    return ClassifyResiduals{(uvt - utv).frob_norm(), (uvt + utv).frob_norm()};
}

SetLabel classify_pair(const Mat& u, const Mat& v, double tol) {
    if (!u.is_unitary(std::max(tol, 1e-12)) || !v.is_unitary(std::max(tol, 1e-12)))
        throw std::invalid_argument("classify_pair: inputs must be unitary");
    const auto r = classify_residuals(u, v);
    if (r.plus < tol) return SetLabel::Plus;
    if (r.minus < tol) return SetLabel::Minus;
    return SetLabel::Neither;
}

double su2_transpose_inverse_residual(const Mat& u) {
    if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("su2 residual: need a 2x2 matrix");
    if (!u.is_unitary(1e-10)) throw std::invalid_argument("su2 residual: input not unitary");
    const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    if (std::abs(det - cplx(1.0)) > 1e-10)
        throw std::invalid_argument("su2 residual: det(u) must equal 1");
    const Mat& y = pauli_y();
    return (y * u.transpose() * y - u.dagger()).frob_norm();
}

}  // namespace timeflip::gates

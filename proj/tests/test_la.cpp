#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "timeflip/gates.hpp"
#include "timeflip/matrix.hpp"
#include "timeflip/rng.hpp"
#include "timeflip/space.hpp"

using namespace timeflip;
using la::cplx;
using la::Label;
using la::LabeledSpace;
using la::Mat;

namespace {

Mat random_hermitian(int n, la::RngStream& rng) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = rng.next_gaussian();
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

// Independent oracle: trace-and-replace on I1,O1,I2,O2 qubits by explicit
// 4-digit index contraction, no shared code with the library kernels.
Mat brute_force_trace_replace(const Mat& w, const std::vector<int>& replaced) {
    auto digits = [](int idx, int d[4]) {
        d[0] = (idx >> 3) & 1;
        d[1] = (idx >> 2) & 1;
        d[2] = (idx >> 1) & 1;
        d[3] = idx & 1;
    };
    int dim_replaced = 1;
    for (int k : replaced) {
        (void)k;
        dim_replaced *= 2;
    }
    Mat out(16, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            int rd[4], cd[4];
            digits(r, rd);
            digits(c, cd);
            bool kron_delta = true;
            for (int k : replaced)
                if (rd[k] != cd[k]) kron_delta = false;
            if (!kron_delta) continue;
            cplx acc = 0.0;
            // sum over the traced digits of the source
            for (int s = 0; s < 16; ++s)
                for (int t = 0; t < 16; ++t) {
                    int sd[4], td[4];
                    digits(s, sd);
                    digits(t, td);
                    bool match = true;
                    for (int k = 0; k < 4; ++k) {
                        const bool rep = std::find(replaced.begin(), replaced.end(), k) != replaced.end();
                        if (rep) {
                            if (sd[k] != td[k]) match = false;  // trace: equal digits
                        } else {
                            if (sd[k] != rd[k] || td[k] != cd[k]) match = false;
                        }
                    }
                    if (match) acc += w(s, t);
                }
            out(r, c) = acc / static_cast<double>(dim_replaced);
        }
    return out;
}

}  // namespace

TEST_CASE("kron basics") {
    CHECK((la::kron(Mat::identity(2), Mat::identity(2)) - Mat::identity(4)).max_abs() == 0.0);

    // kron(X, 1) |00> = |10>
    const Mat v = Mat::col_vector({1, 0, 0, 0});
    const Mat w = la::kron(gates::pauli_x(), Mat::identity(2)) * v;
    CHECK(std::abs(w(2, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(w(0, 0)) + std::abs(w(1, 0)) + std::abs(w(3, 0)) < 1e-15);

    const Mat zz = la::kron(gates::pauli_z(), gates::pauli_z());
    const Mat expected = Mat::from_rows({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}});
    CHECK((zz - expected).max_abs() == 0.0);
}

TEST_CASE("partial trace") {
    // tr_B of the Bell state is maximally mixed
    const double s = 1.0 / std::sqrt(2.0);
    const Mat bell = Mat::col_vector({s, 0, 0, s});
    const Mat rho = la::outer(bell, bell);
    const LabeledSpace ab{{{Label::I, 2}, {Label::O, 2}}};
    const Mat red = la::partial_trace(rho, ab, {Label::O});
    CHECK((red - Mat::identity(2) * cplx(0.5)).max_abs() < 1e-15);

    // full trace equals scalar trace
    const LabeledSpace io{{{Label::I, 4}, {Label::O, 4}}};
    const Mat all = la::partial_trace(Mat::identity(16), io, {Label::I, Label::O});
    CHECK(all.rows() == 1);
    CHECK(std::abs(all(0, 0) - cplx(16.0)) < 1e-12);

    const Mat part = la::partial_trace(Mat::identity(16) * cplx(0.7), io, {Label::O});
    CHECK((part - Mat::identity(4) * cplx(4 * 0.7)).max_abs() < 1e-12);

    CHECK_THROWS_AS(la::partial_trace(Mat::identity(16), io, {Label::C}), std::invalid_argument);

    // trace preservation on random input
    la::SplitRng rng(7);
    auto st = rng.stream(0);
    const Mat h = random_hermitian(16, st);
    const Mat r2 = la::partial_trace(h, io, {Label::I});
    CHECK(std::abs(r2.trace() - h.trace()) < 1e-12);
}

TEST_CASE("trace replace") {
    const LabeledSpace game = LabeledSpace::game_space();

    // identity is a fixed point
    const Mat id16 = Mat::identity(16);
    CHECK((la::trace_replace(id16, game, {Label::O1, Label::O2}) - id16).max_abs() < 1e-15);

    la::SplitRng rng(13);
    auto st = rng.stream(1);
    const Mat w = random_hermitian(16, st);

    // idempotence, linearity of the projection
    const Mat once = la::trace_replace(w, game, {Label::O1});
    const Mat twice = la::trace_replace(once, game, {Label::O1});
    CHECK((once - twice).max_abs() < 1e-13);

    // commutes across disjoint label sets and composes
    const Mat a = la::trace_replace(la::trace_replace(w, game, {Label::O1}), game, {Label::O2});
    const Mat b = la::trace_replace(la::trace_replace(w, game, {Label::O2}), game, {Label::O1});
    const Mat c = la::trace_replace(w, game, {Label::O1, Label::O2});
    CHECK((a - b).max_abs() < 1e-13);
    CHECK((a - c).max_abs() < 1e-13);

    // trace preserved
    CHECK(std::abs(c.trace() - w.trace()) < 1e-12);

    // brute-force contraction oracle on random input and a Bell-pair product state
    const Mat oracle = brute_force_trace_replace(w, {1, 3});
    CHECK((oracle - c).max_abs() < 1e-12);

    const double s = 1.0 / std::sqrt(2.0);
    const Mat bell = Mat::col_vector({s, 0, 0, s});
    const Mat w2 = la::kron(la::outer(bell, bell), Mat::identity(4) * cplx(0.5));
    const Mat got = la::trace_replace(w2, game, {Label::O1, Label::O2});
    CHECK((got - Mat::identity(16) * cplx(1.0 / 8.0)).max_abs() < 1e-14);
    CHECK((brute_force_trace_replace(w2, {1, 3}) - got).max_abs() < 1e-14);
}

TEST_CASE("factor permutation") {
    const LabeledSpace ab{{{Label::I, 2}, {Label::O, 3}}};
    la::SplitRng rng(99);
    auto st = rng.stream(0);
    const Mat x = random_hermitian(2, st);
    const Mat y = random_hermitian(3, st);
    const Mat xy = la::kron(x, y);
    const Mat yx = la::permute_factors(xy, ab, {Label::O, Label::I});
    CHECK((yx - la::kron(y, x)).max_abs() < 1e-13);
}

TEST_CASE("choi vector") {
    const Mat ci = la::choi_vector(Mat::identity(2));
    CHECK(std::abs(ci(0, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(ci(3, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(ci(1, 0)) + std::abs(ci(2, 0)) < 1e-15);
    CHECK(std::abs(ci.frob_norm() * ci.frob_norm() - 2.0) < 1e-14);

    const Mat cx = la::choi_vector(gates::pauli_x());
    CHECK(std::abs(cx(1, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(cx(2, 0) - cplx(1.0)) < 1e-15);

    // squared norm of a 4x4 unitary's Choi vector is 4
    const Mat u4 = la::kron(gates::pauli_x(), gates::pauli_y());
    const Mat c4 = la::choi_vector(u4);
    CHECK(std::abs(c4.frob_norm() * c4.frob_norm() - 4.0) < 1e-13);

    // linearity
    la::SplitRng rng(3);
    auto st = rng.stream(0);
    const Mat a = random_hermitian(4, st);
    const Mat b = random_hermitian(4, st);
    CHECK((la::choi_vector(a + b) - (la::choi_vector(a) + la::choi_vector(b))).max_abs() < 1e-14);
}

TEST_CASE("hermitian eigendecomposition") {
    auto check_reconstruct = [](const Mat& m) {
        const auto e = la::eig_hermitian(m);
        Mat lam(m.rows(), m.rows());
        for (int i = 0; i < m.rows(); ++i) lam(i, i) = e.values[i];
        const Mat rec = e.vectors * lam * e.vectors.dagger();
        CHECK((rec - m).frob_norm() < 1e-9);
        for (size_t i = 1; i < e.values.size(); ++i) CHECK(e.values[i] >= e.values[i - 1]);
    };

    const auto ez = la::eig_hermitian(gates::pauli_z());
    CHECK(ez.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ez.values[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto exz = la::eig_hermitian(gates::pauli_x() + gates::pauli_z());
    CHECK(exz.values[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(exz.values[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const auto e4 = la::eig_hermitian(Mat::identity(4));
    for (double v : e4.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    la::SplitRng rng(17);
    for (int t = 0; t < 20; ++t) {
        auto st = rng.stream(t);
        check_reconstruct(random_hermitian(16, st));
    }

    CHECK_THROWS_AS(la::eig_hermitian(Mat::from_rows({{0, 1}, {0, 0}})), std::invalid_argument);
}

TEST_CASE("psd test agrees with exact minors on small matrices") {
    la::SplitRng rng(23);
    for (int t = 0; t < 200; ++t) {
        auto st = rng.stream(t);
        Mat m = random_hermitian(2, st);
        // 2x2 PSD iff trace >= 0 and det >= 0
        const double tr = m.trace().real();
        const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
        const bool psd_minors = tr >= 0.0 && det >= -1e-12;
        if (std::abs(det) > 1e-6 && std::abs(tr) > 1e-6)  // stay away from the boundary
            CHECK(la::is_psd(m) == psd_minors);
    }
}

TEST_CASE("haar states") {
    la::SplitRng rng(5);
    auto st = rng.stream(0);
    for (int t = 0; t < 50; ++t) {
        const Mat psi = la::haar_state(1 + t % 8, st);
        CHECK(std::abs(psi.frob_norm() - 1.0) < 1e-12);
    }

    // mean |<0|psi>|^2 = 1/2 for qubits
    const int n = 100000;
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
        const Mat psi = la::haar_state(2, st);
        acc += std::norm(psi(0, 0));
    }
    CHECK(std::abs(acc / n - 0.5) < 0.005);

    // rotation invariance: mean |<psi|A|psi>| invariant under A -> U A U^dag
    auto st2 = rng.stream(1);
    const Mat a = random_hermitian(2, st2);
    const Mat u = la::haar_su2(st2);
    const Mat a_rot = u * a * u.dagger();
    double m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0;
    const int ns = 20000;
    for (int t = 0; t < ns; ++t) {
        const Mat p1 = la::haar_state(2, st2);
        const Mat p2 = la::haar_state(2, st2);
        const double x1 = std::abs(la::hs_inner(p1, a * p1));
        const double x2 = std::abs(la::hs_inner(p2, a_rot * p2));
        m1 += x1;
        m2 += x2;
        v1 += x1 * x1;
        v2 += x2 * x2;
    }
    m1 /= ns;
    m2 /= ns;
    const double se = std::sqrt((v1 / ns - m1 * m1) / ns + (v2 / ns - m2 * m2) / ns);
    CHECK(std::abs(m1 - m2) < 3.0 * se + 1e-9);
}

TEST_CASE("rng streams are reproducible and independent of order") {
    la::SplitRng master(42);
    auto a0 = master.stream(0);
    auto a5 = master.stream(5);
    const double x0 = a0.next_double();
    const double x5 = a5.next_double();
    auto b5 = master.stream(5);
    auto b0 = master.stream(0);
    CHECK(b0.next_double() == x0);
    CHECK(b5.next_double() == x5);
}

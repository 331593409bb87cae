#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "timeflip/flip.hpp"
#include "timeflip/gates.hpp"
#include "timeflip/optics.hpp"
#include "timeflip/rng.hpp"

using namespace timeflip;
using la::cplx;
using la::Mat;

TEST_CASE("time flip channel structure") {
    CHECK((flip::time_flip(Mat::identity(2)) - Mat::identity(4)).max_abs() == 0.0);

    // Y^T = -Y: the two control blocks differ by a sign
    const Mat fy = flip::time_flip(gates::pauli_y());
    const Mat expect = la::kron(gates::pauli_y(), Mat::from_rows({{1, 0}, {0, -1}}) * cplx(1.0));
    Mat expect2(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            expect2(2 * i, 2 * j) = gates::pauli_y()(i, j);
            expect2(2 * i + 1, 2 * j + 1) = -gates::pauli_y()(i, j);
        }
    CHECK((fy - expect2).max_abs() < 1e-15);
    CHECK((fy - expect).max_abs() < 1e-15);

    // symmetric gate: X (x) 1_C
    const Mat fx = flip::time_flip(gates::pauli_x());
    CHECK((fx - la::kron(gates::pauli_x(), Mat::identity(2))).max_abs() < 1e-15);

    CHECK_THROWS_AS(flip::time_flip(Mat::from_rows({{1, 1}, {0, 1}})), std::invalid_argument);
}

TEST_CASE("composed flip") {
    const Mat fxz = flip::composed_flip(gates::pauli_x(), gates::pauli_z());
    CHECK((fxz - la::kron(gates::pauli_x() * gates::pauli_z(), Mat::identity(2))).max_abs() <
          1e-15);

    CHECK((flip::composed_flip(gates::pauli_id(), gates::pauli_id()) - Mat::identity(4)).max_abs() ==
          0.0);

    Mat expect(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            expect(2 * i, 2 * j) = gates::pauli_y()(i, j);
            expect(2 * i + 1, 2 * j + 1) = -gates::pauli_y()(i, j);
        }
    CHECK((flip::composed_flip(gates::pauli_y(), gates::pauli_id()) - expect).max_abs() < 1e-15);

    // composed_flip(u, v) equals time_flip(u) composed with the flipped-version
    // channel of v: F_u * (V^T (x) P0 + V (x) P1)
    la::SplitRng rng(1);
    auto st = rng.stream(0);
    for (int t = 0; t < 20; ++t) {
        const Mat u = la::haar_su2(st);
        const Mat v = la::haar_su2(st);
        Mat flipped_v(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                flipped_v(2 * i, 2 * j) = v.transpose()(i, j);
                flipped_v(2 * i + 1, 2 * j + 1) = v(i, j);
            }
        CHECK((flip::composed_flip(u, v) - flip::time_flip(u) * flipped_v).max_abs() < 1e-13);
    }
}

TEST_CASE("noiseless strategy wins every canonical setting") {
    const auto ens = gates::canonical_ensemble();
    const Mat psi = flip::default_input_state();
    for (int i = 0; i < ens.size(); ++i) {
        const auto& p = ens.pair(i);
        const auto o = flip::play_setting(p, psi);
        CHECK(std::abs(o.p_plus + o.p_minus - 1.0) < 1e-14);
        CHECK(flip::win_probability(p, psi) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // any input state works
    la::SplitRng rng(2);
    auto st = rng.stream(0);
    for (int t = 0; t < 10; ++t) {
        const Mat psi_r = la::haar_state(2, st);
        for (int i = 0; i < ens.size(); ++i)
            CHECK(flip::win_probability(ens.pair(i), psi_r) ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("analytic noise formula matches the density-matrix evolution") {
    const auto ens = gates::canonical_ensemble();
    const Mat psi = flip::default_input_state();
    for (double vis : {0.0, 0.5, 0.989, 1.0}) {
        for (double phi : {0.0, 0.1, std::numbers::pi / 2}) {
            for (double dark : {0.0, 0.02}) {
                const flip::NoiseModel nm{vis, phi, dark};
                const double expect = flip::analytic_win_probability(nm);
                for (int i = 0; i < ens.size(); ++i) {
                    const double got = flip::win_probability(ens.pair(i), psi, nm);
                    CHECK(std::abs(got - expect) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("win probability is nondecreasing in the visibility at zero phase") {
    const auto& pair = gates::canonical_ensemble().pair(4);
    const Mat psi = flip::default_input_state();
    double prev = -1.0;
    for (double vis = 0.0; vis <= 1.0; vis += 0.1) {
        const double p = flip::win_probability(pair, psi, flip::NoiseModel{vis, 0.0, 0.0});
        CHECK(p >= prev - 1e-15);
        prev = p;
    }
}

TEST_CASE("the calibrated visibility reproduces the average winning probability") {
    const flip::NoiseModel nm{0.989, 0.0, 0.0};
    const auto ens = gates::canonical_ensemble();
    const Mat psi = flip::default_input_state();
    for (int i = 0; i < ens.size(); ++i)
        CHECK(flip::win_probability(ens.pair(i), psi, nm) ==
              doctest::Approx(0.9945).epsilon(1e-12));
}

TEST_CASE("gadget-built gates reproduce the exact probabilities") {
    // Replace U, V by Simon-Mukunda forward unitaries; backward propagation is
    // the transpose, so the flip probabilities are unchanged (global phases
    // cancel between the two interferometer arms).
    const auto ens = gates::canonical_ensemble();
    const Mat psi = flip::default_input_state();
    const flip::NoiseModel nm{0.97, 0.05, 0.0};
    for (int i = 0; i < ens.size(); ++i) {
        const auto& p = ens.pair(i);
        const auto gu = optics::simon_mukunda_decompose(p.u, optics::StokesConvention::Transpose);
        const auto gv = optics::simon_mukunda_decompose(p.v, optics::StokesConvention::Transpose);
        const auto exact = flip::play_setting(p.u, p.v, psi, nm);
        const auto viaGadget =
            flip::play_setting(gu.forward_unitary(), gv.forward_unitary(), psi, nm);
        CHECK(std::abs(exact.p_plus - viaGadget.p_plus) < 1e-12);
        CHECK(std::abs(exact.p_minus - viaGadget.p_minus) < 1e-12);
    }
}

TEST_CASE("noise model validation") {
    const flip::NoiseModel bad_vis{-0.1, 0.0, 0.0};
    const flip::NoiseModel bad_dark{0.5, 0.0, 1.5};
    CHECK_THROWS_AS(bad_vis.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad_dark.validate(), std::invalid_argument);
}

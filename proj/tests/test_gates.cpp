#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "timeflip/gates.hpp"
#include "timeflip/rng.hpp"

using namespace timeflip;
using gates::SetLabel;
using la::cplx;
using la::Mat;

TEST_CASE("canonical ensemble shape") {
    const auto ens = gates::canonical_ensemble();
    REQUIRE(ens.plus_pairs.size() == 13);
    REQUIRE(ens.minus_pairs.size() == 8);
    CHECK(ens.size() == 21);
    CHECK(ens.prior() == doctest::Approx(1.0 / 21));

    for (int i = 0; i < ens.size(); ++i) {
        const auto& p = ens.pair(i);
        CHECK(p.u.is_unitary(1e-14));
        CHECK(p.v.is_unitary(1e-14));
        CHECK(p.has_exact);
        CHECK((gates::exact_to_mat(p.exact_u) - p.u).max_abs() == 0.0);
    }

    auto contains = [&](const std::vector<gates::GatePair>& v, const std::string& n) {
        for (const auto& p : v)
            if (p.name == n) return true;
        return false;
    };
    CHECK(contains(ens.plus_pairs, "(I,I)"));
    CHECK(contains(ens.plus_pairs, "(Z,X)"));
    CHECK(contains(ens.minus_pairs, "(Y,I)"));
    CHECK(contains(ens.minus_pairs, "(X,Y)"));
}

TEST_CASE("classification of canonical pairs") {
    const auto ens = gates::canonical_ensemble();
    for (int i = 0; i < ens.size(); ++i) {
        const auto& p = ens.pair(i);
        CHECK(gates::classify_pair(p.u, p.v, 1e-10) == p.label);
    }
}

TEST_CASE("classification basics and edge cases") {
    CHECK(gates::classify_pair(gates::pauli_id(), gates::pauli_id()) == SetLabel::Plus);
    CHECK(gates::classify_pair(gates::pauli_y(), gates::pauli_id()) == SetLabel::Minus);

    // e^{i pi Y / 16} paired with the identity is in neither set
    const double t = std::numbers::pi / 16.0;
    const Mat u = Mat::from_rows({{std::cos(t), std::sin(t)}, {-std::sin(t), std::cos(t)}});
    CHECK(gates::classify_pair(u, gates::pauli_id()) == SetLabel::Neither);

    CHECK_THROWS_AS(gates::classify_pair(Mat::from_rows({{2, 0}, {0, 1}}), gates::pauli_id()),
                    std::invalid_argument);
}

TEST_CASE("classification symmetry under swap and transpose") {
    const auto ens = gates::canonical_ensemble();
    for (int i = 0; i < ens.size(); ++i) {
        const auto& p = ens.pair(i);
        CHECK(gates::classify_pair(p.v, p.u, 1e-10) == p.label);
        CHECK(gates::classify_pair(p.u.transpose(), p.v.transpose(), 1e-10) == p.label);
        CHECK(gates::classify_pair(p.u, p.v, 1e-10) != SetLabel::Neither);
    }
}

TEST_CASE("su2 transpose-inverse equivalence") {
    CHECK(gates::su2_transpose_inverse_residual(Mat::identity(2)) < 1e-14);

    const double t = 0.3;
    const Mat ry = Mat::from_rows({{std::cos(t), std::sin(t)}, {-std::sin(t), std::cos(t)}});
    CHECK(gates::su2_transpose_inverse_residual(ry) < 1e-12);

    la::SplitRng rng(11);
    auto st = rng.stream(0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
        worst = std::max(worst, gates::su2_transpose_inverse_residual(la::haar_su2(st)));
    CHECK(worst < 1e-12);

    // det != 1 is rejected: the identity only holds up to phase otherwise
    const Mat not_su2 = gates::pauli_id() * std::polar(1.0, 0.4);
    CHECK_THROWS_AS(gates::su2_transpose_inverse_residual(not_su2), std::invalid_argument);
}

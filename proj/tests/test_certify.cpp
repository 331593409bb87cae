#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "timeflip/certify.hpp"
#include "timeflip/rng.hpp"
#include "timeflip/testers.hpp"

using namespace timeflip;
using certify::GaussianRational;
using certify::Rational;
using certify::RationalHermitian;
using certify::RationalMatrix;
using la::cplx;
using la::Mat;
using testers::TesterClass;

namespace {

const gates::GameEnsemble& ens() {
    static const gates::GameEnsemble e = gates::canonical_ensemble();
    return e;
}

RationalHermitian scaled_identity(const Rational& q) {
    RationalMatrix m = RationalMatrix::identity(16);
    m *= GaussianRational(q, Rational(0));
    return RationalHermitian::from_matrix(m);
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(certify::to_string(certify::rational_of(52, 21)) == "52/21");
    CHECK(certify::rational_from_string("89/100") == certify::rational_of(89, 100));
    CHECK(certify::rational_from_string("-3") == certify::rational_of(-3));
    CHECK(certify::pow2(-3) == certify::rational_of(1, 8));
    CHECK(certify::dyadic_round(0.3, 4) == certify::rational_of(5, 16));
    CHECK_THROWS_AS(certify::rational_from_string("not-a-number"), std::invalid_argument);
}

TEST_CASE("rational hermitian storage") {
    RationalMatrix m(2, 2);
    m.at(0, 0) = GaussianRational(1);
    m.at(0, 1) = GaussianRational(Rational(1, 2), Rational(1, 3));
    m.at(1, 0) = m.at(0, 1).conj();
    m.at(1, 1) = GaussianRational(2);
    const auto h = RationalHermitian::from_matrix(m);
    CHECK(h.trace() == 3);
    CHECK(h.at(1, 0) == m.at(0, 1).conj());

    // non-Hermitian input rejected
    m.at(1, 0) = GaussianRational(0);
    CHECK_THROWS_AS(RationalHermitian::from_matrix(m), std::invalid_argument);
}

TEST_CASE("exact psd test") {
    auto herm2 = [](long a, long b_re, long b_im, long d) {
        RationalMatrix m(2, 2);
        m.at(0, 0) = GaussianRational(Rational(a), Rational(0));
        m.at(0, 1) = GaussianRational(Rational(b_re), Rational(b_im));
        m.at(1, 0) = m.at(0, 1).conj();
        m.at(1, 1) = GaussianRational(Rational(d), Rational(0));
        return RationalHermitian::from_matrix(m);
    };
    CHECK_FALSE(certify::rational_psd(herm2(1, 0, 0, -1)));   // diag(1, -1)
    CHECK(certify::rational_psd(herm2(2, 1, 0, 2)));          // eigenvalues 1, 3
    CHECK(certify::rational_psd(herm2(1, 1, 0, 1)));          // singular PSD, zero pivot
    CHECK_FALSE(certify::rational_psd(herm2(0, 1, 0, 0)));    // zero diagonal, nonzero off-diag
    CHECK(certify::rational_psd(herm2(1, 0, 1, 2)));          // complex entries
    CHECK_FALSE(certify::rational_psd(herm2(1, 0, 2, 2)));    // |i 2| too large

    // agreement with floating eigenvalues on random well-separated matrices
    la::SplitRng rng(31);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        auto st = rng.stream(t);
        // random rational Hermitian with entries k/8
        const int n = 3;
        RationalMatrix m(n, n);
        Mat f(n, n);
        for (int i = 0; i < n; ++i) {
            const long d = st.next_below(17) - 8;
            m.at(i, i) = GaussianRational(Rational(d, 8), Rational(0));
            f(i, i) = d / 8.0;
            for (int j = i + 1; j < n; ++j) {
                const long re = st.next_below(17) - 8;
                const long im = st.next_below(17) - 8;
                m.at(i, j) = GaussianRational(Rational(re, 8), Rational(im, 8));
                m.at(j, i) = m.at(i, j).conj();
                f(i, j) = cplx(re / 8.0, im / 8.0);
                f(j, i) = std::conj(f(i, j));
            }
        }
        const double lmin = la::lambda_min(f);
        if (std::abs(lmin) < 1e-3) continue;  // spectra bounded away from zero
        ++checked;
        CHECK(certify::rational_psd(RationalHermitian::from_matrix(m)) == (lmin > 0));
    }
    CHECK(checked > 500);
}

TEST_CASE("exact ensemble averages") {
    const auto avgs = certify::exact_ensemble_averages(ens(), testers::ChoiOrder::UFirst);
    CHECK(avgs.avg_plus.trace() == certify::rational_of(52, 21));   // 13 * 4 / 21
    CHECK(avgs.avg_minus.trace() == certify::rational_of(32, 21));  // 8 * 4 / 21

    // matches the floating construction entrywise
    const auto ec = testers::ensemble_choi(ens(), testers::ChoiOrder::UFirst);
    const RationalMatrix mp = avgs.avg_plus.to_matrix();
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            worst = std::max(worst, std::abs(cplx(mp.at(i, j).re.get_d(), mp.at(i, j).im.get_d()) -
                                             ec.avg_plus(i, j)));
        }
    CHECK(worst < 1e-14);
}

TEST_CASE("exact dual projection agrees with the floating one") {
    la::SplitRng rng(32);
    auto st = rng.stream(0);
    for (auto cls : {TesterClass::Parallel, TesterClass::SequentialUV, TesterClass::General}) {
        RationalMatrix m(16, 16);
        Mat f(16, 16);
        for (int i = 0; i < 16; ++i) {
            const long d = st.next_below(33) - 16;
            m.at(i, i) = GaussianRational(Rational(d, 16), Rational(0));
            f(i, i) = d / 16.0;
            for (int j = i + 1; j < 16; ++j) {
                const long re = st.next_below(33) - 16;
                const long im = st.next_below(33) - 16;
                m.at(i, j) = GaussianRational(Rational(re, 16), Rational(im, 16));
                m.at(j, i) = m.at(i, j).conj();
                f(i, j) = cplx(re / 16.0, im / 16.0);
                f(j, i) = std::conj(f(i, j));
            }
        }
        const RationalMatrix pe = certify::project_dual_subspace_exact(cls, m);
        const Mat pf = testers::project_dual_subspace(cls, f);
        double worst = 0.0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j)
                worst = std::max(worst,
                                 std::abs(cplx(pe.at(i, j).re.get_d(), pe.at(i, j).im.get_d()) -
                                          pf(i, j)));
        CHECK(worst < 1e-13);

        // exact idempotence
        CHECK(certify::project_dual_subspace_exact(cls, pe) == pe);
    }
}

TEST_CASE("vacuous identity certificate") {
    certify::Certificate cert;
    cert.cls = TesterClass::Parallel;
    cert.k = 0;
    cert.c = scaled_identity(certify::rational_of(52, 21));
    cert.bound = cert.c.trace() / 4;
    cert.epsilon = Rational(0);
    const auto res = certify::verify_certificate(cert, ens());
    CHECK(res.ok);
    CHECK(res.bound == certify::rational_of(208, 21));

    // C = 0 fails domination
    certify::Certificate zero;
    zero.cls = TesterClass::Parallel;
    zero.c = RationalHermitian(16);
    zero.bound = Rational(0);
    const auto res0 = certify::verify_certificate(zero, ens());
    CHECK_FALSE(res0.ok);
    CHECK(res0.violation.find("dominate") != std::string::npos);
}

TEST_CASE("already-feasible float input passes through without repair") {
    const Mat c = Mat::identity(16) * cplx(52.0 / 21.0);
    const auto cert = certify::truncate_and_repair(c, TesterClass::Parallel, 20);
    CHECK(cert.epsilon == 0);
    // value within the dyadic rounding error of the input's tr/4 = 208/21
    const Rational diff = cert.bound - certify::rational_of(208, 21);
    CHECK(abs(diff) <= certify::pow2(-17));
    CHECK(certify::verify_certificate(cert, ens()).ok);
}

TEST_CASE("parallel dual certifies below 89/100") {
    testers::SolveOptions opt;
    opt.tol = 1e-6;
    const auto res = testers::solve(TesterClass::Parallel, ens(), opt);
    const auto cert = certify::truncate_and_repair(res.dual.c, TesterClass::Parallel, 20,
                                                   certify::rational_of(89, 100));
    const auto check = certify::verify_certificate(cert, ens());
    CHECK(check.ok);
    CHECK(check.bound <= certify::rational_of(89, 100));
    CHECK(check.bound.get_d() == doctest::Approx(res.dual_value).epsilon(1e-3));

    // certified bound decreases monotonically in k toward the float value
    Rational prev(-1);
    for (int k : {12, 16, 20, 24}) {
        const auto c = certify::truncate_and_repair(res.dual.c, TesterClass::Parallel, k);
        if (prev >= 0) CHECK(c.bound <= prev);
        prev = c.bound;
        CHECK(c.bound.get_d() >= res.dual_value - 1e-9);
    }

    // soundness: feasible testers never exceed the certified bound
    la::SplitRng rng(33);
    const double bound = check.bound.get_d();
    const auto ec = testers::ensemble_choi(ens(), testers::ChoiOrder::UFirst);
    int n_checked = 0;
    for (int t = 0; t < 10000; ++t) {
        auto st = rng.stream(t);
        // product tester: T_+ = rho^T (x) M, T_- = rho^T (x) (1 - M)
        Mat rho(4, 4);
        for (int r = 0; r < 3; ++r) {
            const Mat psi = la::haar_state(4, st);
            rho += la::outer(psi, psi) * cplx(st.next_double());
        }
        rho *= cplx(1.0 / rho.trace().real());
        Mat mplus(4, 4);
        {
            const Mat psi = la::haar_state(4, st);
            mplus = la::outer(psi, psi) * cplx(st.next_double());
        }
        const auto game = la::LabeledSpace::game_space();
        auto interleave = [&](const Mat& a, const Mat& b) {
            // a on (I1,I2), b on (O1,O2) -> operator on I1,O1,I2,O2
            const la::LabeledSpace grouped{
                {{la::Label::I1, 2}, {la::Label::I2, 2}, {la::Label::O1, 2}, {la::Label::O2, 2}}};
            return la::permute_factors(
                la::kron(a, b), grouped,
                {la::Label::I1, la::Label::O1, la::Label::I2, la::Label::O2});
        };
        testers::Tester t1{TesterClass::Parallel, interleave(rho.transpose(), mplus),
                           interleave(rho.transpose(), Mat::identity(4) - mplus)};
        const double v = testers::win_probability(t1, ens());
        CHECK(v <= bound + 1e-9);
        ++n_checked;
    }
    CHECK(n_checked == 10000);
}

TEST_CASE("certification error paths") {
    // target fraction below what the dual value allows -> too-loose error
    const Mat c = Mat::identity(16) * cplx(52.0 / 21.0);
    CHECK_THROWS_AS(
        certify::truncate_and_repair(c, TesterClass::Parallel, 20, certify::rational_of(1, 2)),
        certify::CertifyError);

    // affine violation is reported before domination
    certify::Certificate cert;
    cert.cls = TesterClass::Parallel;
    RationalMatrix m = RationalMatrix::identity(16);
    m *= GaussianRational(certify::rational_of(52, 21), Rational(0));
    m.at(0, 0) += GaussianRational(1);
    cert.c = RationalHermitian::from_matrix(m);
    cert.bound = cert.c.trace() / 4;
    const auto res = certify::verify_certificate(cert, ens());
    CHECK_FALSE(res.ok);
    CHECK(res.violation.find("affine") != std::string::npos);

    // pairs without exact entries cannot be certified against
    gates::GameEnsemble no_exact = ens();
    for (auto& p : no_exact.plus_pairs) p.has_exact = false;
    CHECK_THROWS_AS(certify::exact_ensemble_averages(no_exact, testers::ChoiOrder::UFirst),
                    certify::CertifyError);

    // k outside the supported range
    CHECK_THROWS_AS(certify::truncate_and_repair(c, TesterClass::Parallel, 2),
                    std::invalid_argument);
}

TEST_CASE("certificate json round trip") {
    certify::Certificate cert;
    cert.cls = TesterClass::General;
    cert.k = 7;
    cert.c = scaled_identity(certify::rational_of(5, 2));
    cert.bound = cert.c.trace() / 4;
    cert.epsilon = certify::rational_of(1, 128);
    const std::string text = certify::certificate_to_json(cert);
    const auto back = certify::certificate_from_json(text);
    CHECK(back.cls == cert.cls);
    CHECK(back.k == cert.k);
    CHECK(back.bound == cert.bound);
    CHECK(back.c == cert.c);

    // tampered bound claims are rejected
    const std::string bad = text.substr(0, text.find("\"bound\"")) + "\"bound\": \"1/1\"," +
                            text.substr(text.find("\"dimension\""));
    CHECK_THROWS_AS(certify::certificate_from_json(bad), certify::CertifyError);
}

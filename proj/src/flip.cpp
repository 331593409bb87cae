#include "timeflip/flip.hpp"

#include <cmath>
#include <stdexcept>

namespace timeflip::flip {

using la::cplx;
using la::Mat;

namespace {

void check_unitary_2x2(const Mat& u, const char* who) {
    if (u.rows() != 2 || u.cols() != 2 || !u.is_unitary(1e-10))
        throw std::invalid_argument(std::string(who) + ": input must be a 2x2 unitary");
}

// target (x) control, control blocks on the diagonal
Mat controlled_blocks(const Mat& on_c0, const Mat& on_c1) {
    Mat m(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m(2 * i, 2 * j) = on_c0(i, j);
            m(2 * i + 1, 2 * j + 1) = on_c1(i, j);
        }
    return m;
}

}  // namespace

Mat time_flip(const Mat& u) {
    check_unitary_2x2(u, "time_flip");
    return controlled_blocks(u, u.transpose());
}

Mat composed_flip(const Mat& u, const Mat& v) {
    check_unitary_2x2(u, "composed_flip");
    check_unitary_2x2(v, "composed_flip");
    return controlled_blocks(u * v.transpose(), u.transpose() * v);
}

void NoiseModel::validate() const {
    if (visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("NoiseModel: visibility must be in [0,1]");
    if (dark_rate < 0.0 || dark_rate > 1.0)
        throw std::invalid_argument("NoiseModel: dark_rate must be in [0,1]");
    if (!std::isfinite(phase_offset)) throw std::invalid_argument("NoiseModel: phase_offset");
}

SettingOutcome play_setting(const Mat& u, const Mat& v, const Mat& psi, const NoiseModel& noise) {
    noise.validate();
    if (psi.rows() != 2 || psi.cols() != 1) throw std::invalid_argument("play_setting: psi must be a qubit ket");
    if (std::abs(psi.frob_norm() - 1.0) > 1e-10) throw std::invalid_argument("play_setting: psi must be normalized");

    // a = U V^T |psi> on control |0>, b = U^T V |psi> on control |1>.
    const Mat a = u * v.transpose() * psi;
    const Mat b = u.transpose() * v * psi;

    // rho = 1/2 (aa^dag (x) P00 + e^{-i phi} V ab^dag (x) P01 + h.c. + bb^dag (x) P11),
    // the control off-diagonals carrying the dephasing factor and phase offset.
    const cplx coh = noise.visibility * std::polar(1.0, -noise.phase_offset);
    const Mat aa = la::outer(a, a);
    const Mat ab = la::outer(a, b);
    const Mat ba = la::outer(b, a);
    const Mat bb = la::outer(b, b);

    Mat rho(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            rho(2 * i, 2 * j) = 0.5 * aa(i, j);
            rho(2 * i, 2 * j + 1) = 0.5 * coh * ab(i, j);
            rho(2 * i + 1, 2 * j) = 0.5 * std::conj(coh) * ba(i, j);
            rho(2 * i + 1, 2 * j + 1) = 0.5 * bb(i, j);
        }

    // Hadamard on the control, then measure the control.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Mat h2(2, 2);
    h2(0, 0) = inv_sqrt2;
    h2(0, 1) = inv_sqrt2;
    h2(1, 0) = inv_sqrt2;
    h2(1, 1) = -inv_sqrt2;
    const Mat hc = la::kron(la::Mat::identity(2), h2);
    const Mat out = hc * rho * hc.dagger();

    double p0 = 0.0, p1 = 0.0;
    for (int t = 0; t < 2; ++t) {
        p0 += out(2 * t, 2 * t).real();
        p1 += out(2 * t + 1, 2 * t + 1).real();
    }

    // Dark counts replace the outcome by a fair coin.
    const double d = noise.dark_rate;
    SettingOutcome o;
    o.p_plus = p0 * (1.0 - d) + d / 2.0;
    o.p_minus = p1 * (1.0 - d) + d / 2.0;
    return o;
}

SettingOutcome play_setting(const gates::GatePair& pair, const Mat& psi, const NoiseModel& noise) {
    return play_setting(pair.u, pair.v, psi, noise);
}

double analytic_win_probability(const NoiseModel& noise) {
    noise.validate();
    const double p = (1.0 + noise.visibility * std::cos(noise.phase_offset)) / 2.0;
    return p * (1.0 - noise.dark_rate) + noise.dark_rate / 2.0;
}

double win_probability(const gates::GatePair& pair, const Mat& psi, const NoiseModel& noise) {
    const SettingOutcome o = play_setting(pair, psi, noise);
    switch (pair.label) {
        case gates::SetLabel::Plus: return o.p_plus;
        case gates::SetLabel::Minus: return o.p_minus;
        case gates::SetLabel::Neither: break;
    }
    throw std::invalid_argument("win_probability: pair must be labeled Plus or Minus");
}

Mat default_input_state() { return Mat::col_vector({1.0, 0.0}); }

}  // namespace timeflip::flip

#include "timeflip/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "timeflip/gates.hpp"

namespace timeflip::optics {

using la::cplx;
using la::Mat;

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(StokesConvention c) {
    return c == StokesConvention::Standard ? "standard" : "transpose";
}

Mat frame_change(StokesConvention c) {
    return c == StokesConvention::Standard ? gates::pauli_z() : gates::pauli_id();
}

Mat retarder_unitary(const Retarder& r, StokesConvention conv) {
    // exp(i (r/2) n.sigma) with n = (cos 2theta) Z + (sin 2theta) A,
    // A = X for the standard convention and A = Y for the transpose one.
    // The two conventions describe the same element in frames related by a
    // fixed basis change, exp(-i pi/4 Z).
    const double ch = std::cos(r.retardance / 2.0);
    const double sh = std::sin(r.retardance / 2.0);
    const double c2 = std::cos(2.0 * r.theta);
    const double s2 = std::sin(2.0 * r.theta);
    Mat u(2, 2);
    if (conv == StokesConvention::Standard) {
        u(0, 0) = cplx(ch, sh * c2);
        u(0, 1) = cplx(0.0, sh * s2);
        u(1, 0) = cplx(0.0, sh * s2);
        u(1, 1) = cplx(ch, -sh * c2);
    } else {
        u(0, 0) = cplx(ch, sh * c2);
        u(0, 1) = cplx(sh * s2, 0.0);
        u(1, 0) = cplx(-sh * s2, 0.0);
        u(1, 1) = cplx(ch, -sh * c2);
    }
    return u;
}

Mat Gadget::forward_unitary() const {
    Mat u = Mat::identity(2);
    // Light meets element 0 first, so it is the rightmost factor.
    for (const auto& e : elements) u = retarder_unitary(e, convention) * u;
    return u;
}

Mat Gadget::backward_unitary() const {
    Mat u = Mat::identity(2);
    for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
        Retarder flipped{-it->theta, it->retardance};
        u = retarder_unitary(flipped, convention) * u;
    }
    return u;
}

namespace {

// Reduce to [-pi/2, pi/2); retarders are invariant under theta -> theta + pi.
double normalize_angle(double theta) {
    double t = std::fmod(theta + kPi / 2.0, kPi);
    if (t < 0) t += kPi;
    return t - kPi / 2.0;
}

// YXY Euler angles of an SU(2) matrix: u = Ry(a) Rx(b) Ry(c) with
// Ry(x) = exp(-i x Y / 2), Rx(x) = exp(-i x X / 2).
struct EulerYXY {
    double a, b, c;
};

EulerYXY euler_yxy(const Mat& su) {
    const double x0 = su(0, 0).real(), y0 = su(0, 0).imag();
    const double x1 = su(0, 1).real(), y1 = su(0, 1).imag();
    const double cb = std::hypot(x0, x1);  // cos(b/2) >= 0
    const double sb = std::hypot(y0, y1);  // sin(b/2) >= 0
    const double b = 2.0 * std::atan2(sb, cb);
    // Degenerate axes (pure Y rotation, or b = pi) leave one angle free; any
    // choice reconstructs exactly, so pin it to zero.
    const double s = cb > 0.0 ? std::atan2(-x1, x0) : 0.0;  // (a+c)/2
    const double d = sb > 0.0 ? std::atan2(-y0, -y1) : 0.0;  // (c-a)/2
    return EulerYXY{s - d, b, s + d};
}

}  // namespace

Gadget simon_mukunda_decompose(const Mat& target, StokesConvention conv) {
    if (target.rows() != 2 || target.cols() != 2 || !target.is_unitary(1e-10))
        throw std::invalid_argument("simon_mukunda_decompose: target must be a 2x2 unitary");

    // Strip the global phase to land in SU(2).
    const cplx det = target(0, 0) * target(1, 1) - target(0, 1) * target(1, 0);
    const cplx phase = std::sqrt(det);
    Mat su = target;
    su *= cplx(1.0) / phase;

    // Work in the standard frame; the transpose convention is the fixed basis
    // change exp(-i pi/4 Z), under which identical angles reproduce the
    // conjugated target.
    if (conv == StokesConvention::Transpose) {
        const cplx e = std::polar(1.0, kPi / 4.0);
        Mat q(2, 2);
        q(0, 0) = std::conj(e);
        q(1, 1) = e;
        su = q.dagger() * su * q;
    }

    // With psi = 2 theta, the QWP(psi1)-HWP(psi2)-QWP(psi3) stack equals
    // -Ry(psi3) Rx(2 psi2 - psi1 - psi3) Ry(-psi1).
    const EulerYXY e = euler_yxy(su);
    const double psi1 = -e.c;
    const double psi3 = e.a;
    const double psi2 = (e.b + psi1 + psi3) / 2.0;

    Gadget g;
    g.convention = conv;
    g.elements = {
        Retarder{normalize_angle(psi1 / 2.0), kPi / 2.0},
        Retarder{normalize_angle(psi2 / 2.0), kPi},
        Retarder{normalize_angle(psi3 / 2.0), kPi / 2.0},
    };

    const Mat f = g.forward_unitary();
    const cplx z = la::hs_inner(f, target);
    const double resid = (std::abs(z) > 0 ? f * (z / std::abs(z)) - target : f - target).frob_norm();
    if (resid > 1e-10) {
        std::ostringstream msg;
        msg << "simon_mukunda_decompose: reconstruction residual " << resid;
        throw DecompositionError(msg.str());
    }
    return g;
}

Gadget with_angle_jitter(const Gadget& g, double sigma, la::RngStream& rng) {
    Gadget out = g;
    for (auto& e : out.elements) e.theta += sigma * rng.next_gaussian();
    return out;
}

double closed_form_agf(const Mat& a, const Mat& b) {
    const Mat m = a.dagger() * b.transpose();
    const int d = m.rows();
    return (d + std::norm(m.trace())) / static_cast<double>(d * (d + 1));
}

FidelityReport average_gate_fidelity(const Mat& a, const Mat& b, int n_samples,
                                     la::RngStream& rng, FidelityKind kind) {
    if (!a.is_unitary(1e-10) || !b.is_unitary(1e-10))
        throw std::invalid_argument("average_gate_fidelity: inputs must be unitary");
    if (n_samples < 1) throw std::invalid_argument("average_gate_fidelity: n_samples >= 1");

    const Mat m = a.dagger() * b.transpose();
    const int d = m.rows();

    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const Mat psi = haar_state(d, rng);
        const cplx amp = la::hs_inner(psi, m * psi);
        double v = 0.0;
        switch (kind) {
            case FidelityKind::SquaredOverlap: v = std::norm(amp); break;
            case FidelityKind::RealAmplitude: v = amp.real(); break;
            case FidelityKind::AbsAmplitude: v = std::abs(amp); break;
        }
        sum += v;
        sum2 += v * v;
    }
    FidelityReport r;
    r.n_samples = n_samples;
    r.mean = sum / n_samples;
    const double var = std::max(0.0, sum2 / n_samples - r.mean * r.mean);
    r.std_err = std::sqrt(var / n_samples);
    r.closed_form = closed_form_agf(a, b);
    return r;
}

}  // namespace timeflip::optics

#pragma once

#include <stdexcept>
#include <vector>

#include "timeflip/matrix.hpp"
#include "timeflip/rng.hpp"

namespace timeflip::optics {

/// Stokes-parameter convention. It fixes which Pauli plane the retarder
/// rotation axes live in, and thereby the frame change P relating the two
/// propagation directions: backward = P * forward^T * P^dag.
///   Standard -> P = Z;  Transpose -> P = identity (backward IS the transpose).
enum class StokesConvention { Standard, Transpose };

const char* to_string(StokesConvention c);

/// Frame change P of the convention.
la::Mat frame_change(StokesConvention c);

/// Linear retarder: optic-axis angle to the vertical (radians) and retardance.
struct Retarder {
    double theta = 0.0;
    double retardance = 0.0;
};

/// Jones matrix of a single retarder.
/// Standard: symmetric, with ZU(theta)Z = U(-theta).
/// Transpose: U(-theta) = U(theta)^T.
la::Mat retarder_unitary(const Retarder& r, StokesConvention conv);

/// Ordered retarder stack; light meets element 0 first in forward propagation.
struct Gadget {
    std::vector<Retarder> elements;
    StokesConvention convention = StokesConvention::Transpose;

    la::Mat forward_unitary() const;
    /// Reverse element order, negate angles: the counterpropagated device.
    la::Mat backward_unitary() const;
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// QWP-HWP-QWP gadget realizing `target` up to a global phase.
/// Accepts any 2x2 unitary (the phase is stripped internally); angles are
/// reported in [-pi/2, pi/2). Throws DecompositionError if the reconstruction
/// residual exceeds 1e-10.
Gadget simon_mukunda_decompose(const la::Mat& target, StokesConvention conv);

/// Copy of `g` with each element angle perturbed by N(0, sigma).
Gadget with_angle_jitter(const Gadget& g, double sigma, la::RngStream& rng);

enum class FidelityKind {
    SquaredOverlap,  // mean |<psi| a^dag b^T |psi>|^2  (has the closed form)
    RealAmplitude,   // mean Re <psi| a^dag b^T |psi>
    AbsAmplitude,    // mean |<psi| a^dag b^T |psi>|
};

struct FidelityReport {
    double mean = 0.0;
    double std_err = 0.0;
    double closed_form = 0.0;  // (d + |tr M|^2)/(d(d+1)) for SquaredOverlap
    int n_samples = 0;
};

/// (d + |tr(a^dag b^T)|^2) / (d (d+1)), the Haar average of the squared overlap.
double closed_form_agf(const la::Mat& a, const la::Mat& b);

/// Monte Carlo average gate fidelity between `a` (forward) and the transpose
/// of `b` (backward reconstruction), over Haar-random pure states.
FidelityReport average_gate_fidelity(const la::Mat& a, const la::Mat& b, int n_samples,
                                     la::RngStream& rng,
                                     FidelityKind kind = FidelityKind::SquaredOverlap);

}  // namespace timeflip::optics

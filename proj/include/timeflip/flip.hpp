#pragma once

#include "timeflip/gates.hpp"
#include "timeflip/matrix.hpp"

namespace timeflip::flip {

/// U (x) |0><0|_C + U^T (x) |1><1|_C on target (x) control.
la::Mat time_flip(const la::Mat& u);

/// U V^T (x) |0><0|_C + U^T V (x) |1><1|_C: two time flips back to back,
/// the second applied to the flipped version of V.
la::Mat composed_flip(const la::Mat& u, const la::Mat& v);

/// Interferometric imperfections, all acting on the control qubit:
/// dephasing with visibility V, a phase offset, and a dark-count rate that
/// replaces a round's outcome with a fair coin.
struct NoiseModel {
    double visibility = 1.0;
    double phase_offset = 0.0;
    double dark_rate = 0.0;

    void validate() const;
    bool is_trivial() const {
        return visibility == 1.0 && phase_offset == 0.0 && dark_rate == 0.0;
    }
};

struct SettingOutcome {
    double p_plus;   // probability of the '+' port
    double p_minus;  // probability of the '-' port; sums to 1 with p_plus
};

/// Full density-matrix evolution of |psi>_T |+>_C through the composed flip,
/// control dephasing and phase offset, Hadamard on the control, measurement.
SettingOutcome play_setting(const la::Mat& u, const la::Mat& v, const la::Mat& psi,
                            const NoiseModel& noise = {});

SettingOutcome play_setting(const gates::GatePair& pair, const la::Mat& psi,
                            const NoiseModel& noise = {});

/// Probability of answering correctly for a canonical (Plus or Minus) pair:
/// (1 + V cos phi)/2 * (1 - dark) + dark/2.
double analytic_win_probability(const NoiseModel& noise);

/// Correct-port probability for this pair (pair label decides the port).
double win_probability(const gates::GatePair& pair, const la::Mat& psi,
                       const NoiseModel& noise = {});

/// |0> target state used by default in the game.
la::Mat default_input_state();

}  // namespace timeflip::flip

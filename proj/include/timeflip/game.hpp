#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "timeflip/flip.hpp"
#include "timeflip/gates.hpp"

namespace timeflip::game {

struct SettingRecord {
    std::string name;
    gates::SetLabel label = gates::SetLabel::Neither;
    long rounds = 0;
    long wins = 0;
    double p_win_model = 0.0;  // correct-port probability under the noise model
};

struct GameRecord {
    long n_rounds = 0;
    long wins = 0;
    std::uint64_t seed = 0;
    std::vector<SettingRecord> per_setting;
};

struct GameOptions {
    long n_rounds = 1;
    std::uint64_t seed = 12345;
    flip::NoiseModel noise;
    /// Consume outcomes from pre-ordered per-setting event streams instead of
    /// round-local draws ("first unused detection event" replay).
    bool replay_mode = false;
    /// Post-process: truncate every setting's event list to the shortest one
    /// (dropping the latest events) and recount.
    bool truncate_to_min = false;
};

/// Referee draws one of the 21 pairs uniformly each round; the player's
/// outcome is sampled from the noisy interferometer probabilities.
/// Bit-reproducible for a given seed.
GameRecord run_game(const gates::GameEnsemble& ens, const GameOptions& opt);

/// Binary relative entropy D(q || p) in nats; requires q, p in (0, 1).
double relative_entropy(double q, double p);

/// log of the Chernoff bound on P[X >= v], X ~ Binomial(n, p): -n D(v/n || p).
/// Requires v/n > p; v = n is handled analytically.
double chernoff_log_pvalue_bound(long v, long n, double p);

/// log P[X >= v] computed exactly (log-domain summation).
double exact_binomial_tail_log(long v, long n, double p);

}  // namespace timeflip::game

#include "timeflip/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "timeflip/rng.hpp"

namespace timeflip::game {

GameRecord run_game(const gates::GameEnsemble& ens, const GameOptions& opt) {
    if (opt.n_rounds < 1) throw std::invalid_argument("run_game: n_rounds must be >= 1");
    opt.noise.validate();

    const int n_settings = ens.size();
    const la::Mat psi = flip::default_input_state();

    GameRecord rec;
    rec.seed = opt.seed;
    rec.per_setting.resize(n_settings);
    for (int s = 0; s < n_settings; ++s) {
        const auto& pair = ens.pair(s);
        rec.per_setting[s].name = pair.name;
        rec.per_setting[s].label = pair.label;
        rec.per_setting[s].p_win_model = flip::win_probability(pair, psi, opt.noise);
    }

    const la::SplitRng master(opt.seed);
    // Event streams for replay mode live in a disjoint index range.
    std::vector<la::RngStream> event_streams;
    if (opt.replay_mode)
        for (int s = 0; s < n_settings; ++s)
            event_streams.push_back(master.stream((1ULL << 32) + static_cast<std::uint64_t>(s)));

    std::vector<std::vector<std::uint8_t>> outcome_lists;
    if (opt.truncate_to_min) outcome_lists.resize(n_settings);

    for (long r = 0; r < opt.n_rounds; ++r) {
        la::RngStream round = master.stream(static_cast<std::uint64_t>(r));
        const int s = round.next_below(n_settings);
        const double u = opt.replay_mode ? event_streams[s].next_double() : round.next_double();
        const bool win = u < rec.per_setting[s].p_win_model;
        rec.per_setting[s].rounds += 1;
        rec.per_setting[s].wins += win ? 1 : 0;
        if (opt.truncate_to_min) outcome_lists[s].push_back(win ? 1 : 0);
    }

    if (opt.truncate_to_min) {
        size_t keep = SIZE_MAX;
        for (const auto& lst : outcome_lists) keep = std::min(keep, lst.size());
        for (int s = 0; s < n_settings; ++s) {
            auto& st = rec.per_setting[s];
            st.rounds = static_cast<long>(keep);
            st.wins = 0;
            for (size_t k = 0; k < keep; ++k) st.wins += outcome_lists[s][k];
        }
    }

    for (const auto& st : rec.per_setting) {
        rec.n_rounds += st.rounds;
        rec.wins += st.wins;
    }
    return rec;
}

double relative_entropy(double q, double p) {
    if (!(q > 0.0 && q < 1.0 && p > 0.0 && p < 1.0))
        throw std::domain_error("relative_entropy: arguments must lie in (0, 1)");
    return q * std::log(q / p) + (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
}

double chernoff_log_pvalue_bound(long v, long n, double p) {
    if (n < 1 || v < 0 || v > n) throw std::invalid_argument("chernoff bound: need 0 <= v <= n");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("chernoff bound: p must lie in (0, 1)");
    const double q = static_cast<double>(v) / static_cast<double>(n);
    if (q <= p)
        throw std::domain_error("chernoff bound inapplicable: v/n must exceed p");
    // q = 1 limit: D(1||p) = ln(1/p).
    const double d = v == n ? -std::log(p) : relative_entropy(q, p);
    return -static_cast<double>(n) * d;
}

double exact_binomial_tail_log(long v, long n, double p) {
    if (n < 1 || v < 0 || v > n) throw std::invalid_argument("binomial tail: need 0 <= v <= n");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("binomial tail: p must lie in (0, 1)");
    if (v == 0) return 0.0;  // certain event

    const double logp = std::log(p);
    const double log1p_ = std::log1p(-p);
    const double lgn = std::lgamma(n + 1.0);

    // Log-domain sum: find the max term first, then accumulate.
    std::vector<double> terms;
    terms.reserve(n - v + 1);
    double max_t = -HUGE_VAL;
    for (long k = v; k <= n; ++k) {
        const double t = lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                         static_cast<double>(k) * logp + static_cast<double>(n - k) * log1p_;
        terms.push_back(t);
        max_t = std::max(max_t, t);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_t);
    return max_t + std::log(acc);
}

}  // namespace timeflip::game

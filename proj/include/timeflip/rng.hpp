#pragma once

#include <cstdint>

#include "timeflip/matrix.hpp"

namespace timeflip::la {

/// SplitMix64 stream. Cheap, full-period, platform independent.
class RngStream {
public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64();
    double next_double();    // uniform in [0, 1)
    double next_gaussian();  // standard normal (Box-Muller)
    int next_below(int n);   // uniform in [0, n)

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Master seed from which per-index streams are derived, so Monte Carlo
/// rounds are reproducible independent of execution order.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : seed_(seed) {}
    RngStream stream(std::uint64_t index) const;
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

/// Haar-random unit column vector of the given dimension.
Mat haar_state(int dim, RngStream& rng);

/// Haar-random SU(2) element.
Mat haar_su2(RngStream& rng);

}  // namespace timeflip::la

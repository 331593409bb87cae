#include "timeflip/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace timeflip::la {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

int RngStream::next_below(int n) {
    if (n <= 0) throw std::invalid_argument("next_below: n must be positive");
    // Rejection-free is fine here: 2^64 % n bias is negligible for small n,
    // but stay exact with rejection sampling anyway.
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return static_cast<int>(v % un);
}

RngStream SplitRng::stream(std::uint64_t index) const {
    std::uint64_t x = seed_;
    std::uint64_t a = splitmix64(x);
    x ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(x);
    return RngStream(a ^ (b + index));
}

Mat haar_state(int dim, RngStream& rng) {
    if (dim < 1) throw std::invalid_argument("haar_state: dim must be >= 1");
    std::vector<cplx> v(dim);
    double norm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double re = rng.next_gaussian();
        const double im = rng.next_gaussian();
        v[i] = cplx(re, im);
        norm2 += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return Mat::col_vector(std::move(v));
}

Mat haar_su2(RngStream& rng) {
    // Unit quaternion -> SU(2).
    double q[4], n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& x : q) {
            x = rng.next_gaussian();
            n2 += x * x;
        }
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : q) x *= inv;
    const cplx a(q[0], q[1]);
    const cplx b(q[2], q[3]);
    return Mat::from_rows({{a, b}, {-std::conj(b), std::conj(a)}});
}

}  // namespace timeflip::la

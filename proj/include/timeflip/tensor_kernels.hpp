#pragma once

#include <stdexcept>
#include <vector>

namespace timeflip::la::detail {

// Index arithmetic shared by the floating and exact-rational matrix types.
// A square operator on factors of dimensions dims[0..m) is stored row-major
// over the composite index i = sum_k digit_k * stride_k, digit order matching
// the factor order (leftmost factor most significant).

inline std::vector<int> strides_of(const std::vector<int>& dims) {
    std::vector<int> s(dims.size());
    int acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[k] = acc;
        acc *= dims[k];
    }
    return s;
}

inline int total_dim(const std::vector<int>& dims) {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
}

inline void decompose(int index, const std::vector<int>& dims, const std::vector<int>& strides,
                      std::vector<int>& digits) {
    digits.resize(dims.size());
    for (size_t k = 0; k < dims.size(); ++k) {
        digits[k] = (index / strides[k]) % dims[k];
    }
}

/// Partial trace over the factor positions in `traced` (sorted, unique).
/// Kept factors stay in their original order.
template <typename Scalar>
std::vector<Scalar> partial_trace_kernel(const std::vector<Scalar>& a, const std::vector<int>& dims,
                                         const std::vector<bool>& traced) {
    const int m = static_cast<int>(dims.size());
    const auto strides = strides_of(dims);
    const int d = total_dim(dims);
    if (static_cast<int>(a.size()) != d * d) throw std::invalid_argument("partial_trace: size mismatch");

    std::vector<int> kept_dims;
    for (int k = 0; k < m; ++k)
        if (!traced[k]) kept_dims.push_back(dims[k]);
    const int dk = total_dim(kept_dims);
    const auto kept_strides = strides_of(kept_dims);

    std::vector<Scalar> out(static_cast<size_t>(dk) * dk, Scalar{});
    std::vector<int> ri, ci;
    for (int r = 0; r < d; ++r) {
        decompose(r, dims, strides, ri);
        for (int c = 0; c < d; ++c) {
            decompose(c, dims, strides, ci);
            bool diag = true;
            for (int k = 0; k < m; ++k)
                if (traced[k] && ri[k] != ci[k]) { diag = false; break; }
            if (!diag) continue;
            int ro = 0, co = 0, kk = 0;
            for (int k = 0; k < m; ++k) {
                if (traced[k]) continue;
                ro += ri[k] * kept_strides[kk];
                co += ci[k] * kept_strides[kk];
                ++kk;
            }
            out[static_cast<size_t>(ro) * dk + co] += a[static_cast<size_t>(r) * d + c];
        }
    }
    return out;
}

/// Trace-and-replace: trace out the flagged factors and reinsert the
/// normalized identity on them at their original positions.
/// Linear, trace preserving, idempotent, self-adjoint.
template <typename Scalar>
std::vector<Scalar> trace_replace_kernel(const std::vector<Scalar>& a, const std::vector<int>& dims,
                                         const std::vector<bool>& replaced) {
    const int m = static_cast<int>(dims.size());
    const auto strides = strides_of(dims);
    const int d = total_dim(dims);

    int d_replaced = 1;
    for (int k = 0; k < m; ++k)
        if (replaced[k]) d_replaced *= dims[k];

    const auto reduced = partial_trace_kernel(a, dims, replaced);

    std::vector<int> kept_dims;
    for (int k = 0; k < m; ++k)
        if (!replaced[k]) kept_dims.push_back(dims[k]);
    const int dk = total_dim(kept_dims);
    const auto kept_strides = strides_of(kept_dims);

    std::vector<Scalar> out(static_cast<size_t>(d) * d, Scalar{});
    std::vector<int> ri, ci;
    for (int r = 0; r < d; ++r) {
        decompose(r, dims, strides, ri);
        for (int c = 0; c < d; ++c) {
            decompose(c, dims, strides, ci);
            bool diag = true;
            for (int k = 0; k < m; ++k)
                if (replaced[k] && ri[k] != ci[k]) { diag = false; break; }
            if (!diag) continue;
            int ro = 0, co = 0, kk = 0;
            for (int k = 0; k < m; ++k) {
                if (replaced[k]) continue;
                ro += ri[k] * kept_strides[kk];
                co += ci[k] * kept_strides[kk];
                ++kk;
            }
            out[static_cast<size_t>(r) * d + c] =
                reduced[static_cast<size_t>(ro) * dk + co] / Scalar(d_replaced);
        }
    }
    return out;
}

/// Reorder tensor factors; perm[k] is the old position of the new k-th factor.
template <typename Scalar>
std::vector<Scalar> permute_kernel(const std::vector<Scalar>& a, const std::vector<int>& dims,
                                   const std::vector<int>& perm) {
    const int m = static_cast<int>(dims.size());
    const auto strides = strides_of(dims);
    const int d = total_dim(dims);

    std::vector<int> new_dims(m);
    for (int k = 0; k < m; ++k) new_dims[k] = dims[perm[k]];
    const auto new_strides = strides_of(new_dims);

    // map[i] = index of basis vector i (old order) in the new order
    std::vector<int> map(d);
    std::vector<int> digits;
    for (int i = 0; i < d; ++i) {
        decompose(i, dims, strides, digits);
        int ni = 0;
        for (int k = 0; k < m; ++k) ni += digits[perm[k]] * new_strides[k];
        map[i] = ni;
    }

    std::vector<Scalar> out(static_cast<size_t>(d) * d, Scalar{});
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            out[static_cast<size_t>(map[r]) * d + map[c]] = a[static_cast<size_t>(r) * d + c];
    return out;
}

}  // namespace timeflip::la::detail

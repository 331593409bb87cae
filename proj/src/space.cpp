#include "timeflip/space.hpp"

#include <stdexcept>

#include "timeflip/tensor_kernels.hpp"

namespace timeflip::la {

const char* to_string(Label l) {
    switch (l) {
        case Label::I1: return "I1";
        case Label::O1: return "O1";
        case Label::I2: return "I2";
        case Label::O2: return "O2";
        case Label::I: return "I";
        case Label::O: return "O";
        case Label::C: return "C";
        case Label::T: return "T";
    }
    return "?";
}

int LabeledSpace::total_dim() const {
    int d = 1;
    for (const auto& [l, dim] : factors) d *= dim;
    return d;
}

bool LabeledSpace::has(Label l) const {
    for (const auto& [lab, dim] : factors)
        if (lab == l) return true;
    return false;
}

int LabeledSpace::position(Label l) const {
    for (size_t k = 0; k < factors.size(); ++k)
        if (factors[k].first == l) return static_cast<int>(k);
    throw std::invalid_argument(std::string("unknown label ") + to_string(l) + " in labeled space");
}

std::vector<int> LabeledSpace::dims() const {
    std::vector<int> d;
    d.reserve(factors.size());
    for (const auto& [l, dim] : factors) d.push_back(dim);
    return d;
}

LabeledSpace LabeledSpace::game_space() {
    return LabeledSpace{{{Label::I1, 2}, {Label::O1, 2}, {Label::I2, 2}, {Label::O2, 2}}};
}

namespace {

std::vector<bool> flags_for(const LabeledSpace& space, const std::vector<Label>& labels) {
    std::vector<bool> f(space.factors.size(), false);
    for (Label l : labels) f[space.position(l)] = true;
    return f;
}

void check_square(const Mat& m, const LabeledSpace& space, const char* op) {
    if (!m.is_square() || m.rows() != space.total_dim())
        throw std::invalid_argument(std::string(op) + ": matrix does not match space dimension");
}

}  // namespace

Mat partial_trace(const Mat& m, const LabeledSpace& space, const std::vector<Label>& traced) {
    check_square(m, space, "partial_trace");
    auto out = detail::partial_trace_kernel(m.data(), space.dims(), flags_for(space, traced));
    int d = 1;
    for (const auto& [l, dim] : space.factors) {
        bool t = false;
        for (Label x : traced) t = t || (x == l);
        if (!t) d *= dim;
    }
    Mat r(d, d);
    r.data() = std::move(out);
    return r;
}

Mat trace_replace(const Mat& m, const LabeledSpace& space, const std::vector<Label>& labels) {
    check_square(m, space, "trace_replace");
    Mat r(m.rows(), m.cols());
    r.data() = detail::trace_replace_kernel(m.data(), space.dims(), flags_for(space, labels));
    return r;
}

Mat permute_factors(const Mat& m, const LabeledSpace& space, const std::vector<Label>& new_order) {
    check_square(m, space, "permute_factors");
    if (new_order.size() != space.factors.size())
        throw std::invalid_argument("permute_factors: order must list every label exactly once");
    std::vector<int> perm;
    perm.reserve(new_order.size());
    for (Label l : new_order) perm.push_back(space.position(l));
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (seen[p]) throw std::invalid_argument("permute_factors: repeated label");
        seen[p] = true;
    }
    Mat r(m.rows(), m.cols());
    r.data() = detail::permute_kernel(m.data(), space.dims(), perm);
    return r;
}

}  // namespace timeflip::la

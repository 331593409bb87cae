#pragma once

#include <string>
#include <vector>

#include "timeflip/matrix.hpp"

namespace timeflip::la {

enum class Label { I1, O1, I2, O2, I, O, C, T };

const char* to_string(Label l);

/// Ordered list of labeled tensor factors; labels unique within one space.
struct LabeledSpace {
    std::vector<std::pair<Label, int>> factors;

    int total_dim() const;
    bool has(Label l) const;
    int position(Label l) const;  // throws on unknown label
    std::vector<int> dims() const;

    /// I1 (x) O1 (x) I2 (x) O2, qubits each: the 16-dimensional game space.
    static LabeledSpace game_space();
};

Mat partial_trace(const Mat& m, const LabeledSpace& space, const std::vector<Label>& traced);
Mat trace_replace(const Mat& m, const LabeledSpace& space, const std::vector<Label>& labels);

/// Reorder factors into `new_order` (a permutation of the space's labels);
/// returns the conjugated operator in the new basis ordering.
Mat permute_factors(const Mat& m, const LabeledSpace& space, const std::vector<Label>& new_order);

}  // namespace timeflip::la

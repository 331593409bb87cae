#pragma once

#include <vector>

#include "timeflip/space.hpp"
#include "timeflip/testers.hpp"

namespace timeflip::testers::detail {

/// Projector onto the class's primal subspace, shared between the floating
/// solver and the exact-rational certifier so the two can never drift apart.
/// `tr` applies a normalized trace-and-replace over a label list.
template <typename M, typename TrRep>
M primal_subspace_impl(TesterClass cls, const M& s, TrRep tr) {
    using la::Label;
    switch (cls) {
        case TesterClass::Parallel:
            // S = sigma_{I1 I2} (x) 1_{O1 O2}
            return tr(s, {Label::O1, Label::O2});
        case TesterClass::SequentialUV:
        case TesterClass::SequentialVU: {
            // S = W_{I1 O1 I2} (x) 1_{O2} with tr_{I2} W = sigma_{I1} (x) 1_{O1};
            // slot 1 always holds the first gate, so both orders share the map.
            const M a = tr(s, {Label::O2});
            return a - (tr(a, {Label::I2, Label::O2}) - tr(a, {Label::O1, Label::I2, Label::O2}));
        }
        case TesterClass::General: {
            // Bipartite process-matrix conditions.
            M w = s - (tr(s, {Label::I2, Label::O2}) - tr(s, {Label::O1, Label::I2, Label::O2}));
            w = w - (tr(w, {Label::I1, Label::O1}) - tr(w, {Label::O2, Label::I1, Label::O1}));
            w = tr(w, {Label::O1}) + tr(w, {Label::O2}) - tr(w, {Label::O1, Label::O2});
            return w;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace timeflip::testers::detail

#pragma once

#include <optional>
#include <string>

#include "timeflip/gates.hpp"
#include "timeflip/matrix.hpp"
#include "timeflip/rational.hpp"
#include "timeflip/testers.hpp"

namespace timeflip::certify {

struct CertifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ensemble averages (1/N) sum of the Choi operators, in exact arithmetic.
/// The gates contain 1/sqrt(2) entries, but those only ever appear squared or
/// paired inside the Choi outer products, so every operator entry is a plain
/// Gaussian rational; construction aborts if a sqrt(2) coefficient survives.
struct ExactEnsembleAverages {
    RationalHermitian avg_plus;   // (1/N) sum over the 13 Plus operators
    RationalHermitian avg_minus;  // (1/N) sum over the 8 Minus operators
};

ExactEnsembleAverages exact_ensemble_averages(const gates::GameEnsemble& ens,
                                              testers::ChoiOrder order);

/// Exact orthogonal projection onto the dual affine subspace of the class.
RationalMatrix project_dual_subspace_exact(testers::TesterClass cls, const RationalMatrix& c);

/// Certified dual feasible point with exact entries; tr(C)/4 upper-bounds
/// every strategy in the class.
struct Certificate {
    testers::TesterClass cls = testers::TesterClass::Parallel;
    int k = 0;                // entries have denominators dividing 2^k (pre-projection)
    RationalHermitian c;      // 16 x 16
    Rational bound;           // tr(C)/4
    Rational epsilon;         // identity shift applied by the repair step (0 if none)
};

/// Truncate a floating dual solution to denominator 2^k, restore the affine
/// constraints by exact projection, and restore domination (when needed) by
/// adding eps*I with eps = 16 * 2^{1-k}. Throws CertifyError when even the
/// repaired operator fails, or when `target` is given and the certified bound
/// exceeds it (truncation too coarse: increase k).
Certificate truncate_and_repair(const la::Mat& c_float, testers::TesterClass cls, int k,
                                const std::optional<Rational>& target = std::nullopt);

struct VerifyOutcome {
    bool ok = false;
    Rational bound;         // tr(C)/4, exact
    std::string violation;  // first violated constraint when !ok
};

/// Re-check a certificate from scratch in exact arithmetic: class affine
/// constraints, then domination of both ensemble averages.
VerifyOutcome verify_certificate(const Certificate& cert, const gates::GameEnsemble& ens);

/// Certificate file round-trip (JSON with exact "num/den" entry strings).
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

}  // namespace timeflip::certify

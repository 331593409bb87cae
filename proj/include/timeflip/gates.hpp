#pragma once

#include <array>
#include <string>
#include <vector>

#include "timeflip/matrix.hpp"

namespace timeflip::gates {

enum class SetLabel { Plus, Minus, Neither };
const char* to_string(SetLabel l);

const la::Mat& pauli_id();
const la::Mat& pauli_x();
const la::Mat& pauli_y();
const la::Mat& pauli_z();

/// One gate entry in exact form: (re + im*i) / (sqrt2_den ? sqrt(2) : 1).
/// Every gate in the canonical sets is representable this way, which is what
/// makes exact rational certification of the ensemble averages possible.
struct ExactEntry {
    int re = 0;
    int im = 0;
    bool sqrt2_den = false;
    la::cplx value() const;
};

using ExactGate = std::array<std::array<ExactEntry, 2>, 2>;

la::Mat exact_to_mat(const ExactGate& g);

struct GatePair {
    std::string name;
    la::Mat u, v;  // 2x2 unitaries
    SetLabel label = SetLabel::Neither;
    bool has_exact = false;
    ExactGate exact_u{}, exact_v{};
};

/// The 21-pair discrimination game: 13 Plus pairs, 8 Minus pairs, uniform prior.
struct GameEnsemble {
    std::vector<GatePair> plus_pairs;
    std::vector<GatePair> minus_pairs;

    int size() const { return static_cast<int>(plus_pairs.size() + minus_pairs.size()); }
    double prior() const { return 1.0 / size(); }
    /// Pairs indexed 0..size), Plus block first.
    const GatePair& pair(int i) const;
};

GameEnsemble canonical_ensemble();

struct ClassifyResiduals {
    double plus;   // ||U V^T - U^T V||_F
    double minus;  // ||U V^T + U^T V||_F
};

ClassifyResiduals classify_residuals(const la::Mat& u, const la::Mat& v);

/// Plus iff U V^T = +U^T V within tol (Frobenius), Minus iff U V^T = -U^T V.
/// Phase sensitive: the defining relations are equalities of matrices, so
/// callers supplying their own pairs must fix global phases themselves.
SetLabel classify_pair(const la::Mat& u, const la::Mat& v, double tol = 1e-9);

/// || sigma_Y U^T sigma_Y - U^{-1} ||_F; zero on all of SU(2).
/// Throws when det(u) != 1 (the identity only holds up to phase otherwise).
double su2_transpose_inverse_residual(const la::Mat& u);

}  // namespace timeflip::gates

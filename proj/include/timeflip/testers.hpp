#pragma once

#include <stdexcept>
#include <vector>

#include "timeflip/gates.hpp"
#include "timeflip/matrix.hpp"
#include "timeflip/space.hpp"

namespace timeflip::testers {

/// Strategy classes, ordered by strictly increasing power on the canonical
/// ensemble: Parallel < Sequential (either order) < General.
enum class TesterClass { Parallel, SequentialUV, SequentialVU, General };

const char* to_string(TesterClass c);
TesterClass tester_class_from_string(const std::string& s);

enum class ChoiOrder { UFirst, VFirst, UVParallel };

/// Rank-1 Choi operators |U (x) V>><<U (x) V| of the ensemble, trace 4 each,
/// on I1 (x) O1 (x) I2 (x) O2 (UFirst puts U in slot 1, VFirst puts V there;
/// UVParallel regroups factors to I1,I2,O1,O2 by the fixed permutation).
struct EnsembleChoi {
    la::LabeledSpace space;
    std::vector<la::Mat> plus_ops;
    std::vector<la::Mat> minus_ops;
    la::Mat avg_plus;   // (1/N) sum over the Plus set
    la::Mat avg_minus;  // (1/N) sum over the Minus set
};

EnsembleChoi ensemble_choi(const gates::GameEnsemble& ens, ChoiOrder order);

/// Orthogonal projector onto the class's primal subspace L, the set of valid
/// T+ + T- sums up to trace normalization. Built from commuting
/// trace-and-replace projections, so no linear solve is involved.
la::Mat project_primal_subspace(TesterClass cls, const la::Mat& s);

/// Orthogonal projection onto {S in L : tr S = 4}.
la::Mat project_primal_affine(TesterClass cls, const la::Mat& s);

/// Orthogonal projector onto the dual affine subspace
/// span(1) + range(I - Pi_L); equals the dual constraint set of the class.
la::Mat project_dual_subspace(TesterClass cls, const la::Mat& c);

/// || s - Pi_L(s) ||_F + |tr s - 4|.
double primal_residual(TesterClass cls, const la::Mat& s);
/// || c - P_dual(c) ||_F.
double dual_residual(TesterClass cls, const la::Mat& c);

struct Tester {
    TesterClass cls = TesterClass::Parallel;
    la::Mat t_plus, t_minus;
};

struct DualSolution {
    TesterClass cls = TesterClass::Parallel;
    la::Mat c;
    double value = 0.0;  // tr(C)/d_I, d_I = 4
};

struct SolveOptions {
    double tol = 1e-8;          // duality-gap target
    double feas_tol = 1e-9;     // affine-feasibility target for the tester
    int max_iterations = 200000;
    int check_every = 100;
    double rho = 1.0;           // ADMM penalty; rebalanced deterministically
    double relaxation = 1.7;    // over-relaxation
    bool throw_on_failure = true;
};

struct SolveResult {
    TesterClass cls = TesterClass::Parallel;
    bool converged = false;
    int iterations = 0;
    double primal_value = 0.0;  // win probability of the returned tester
    double dual_value = 0.0;    // certified-in-float upper bound tr(C)/4
    double gap = 0.0;
    double primal_affine_residual = 0.0;
    double primal_psd_floor = 0.0;       // min eigenvalue across T+-, >= -1e-9
    double dual_affine_residual = 0.0;
    double dual_domination_floor = 0.0;  // min eig of C - avg (should be >= ~0)
    Tester tester;
    DualSolution dual;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solve primal and dual together by over-relaxed ADMM: PSD cone projection
/// via eigendecomposition, affine projection via the class projector; a dual
/// feasible point is extracted from the running multiplier, so dual_value is
/// a valid upper bound at every checkpoint regardless of convergence.
SolveResult solve(TesterClass cls, const gates::GameEnsemble& ens, const SolveOptions& opt = {});

std::pair<double, Tester> solve_primal(TesterClass cls, const gates::GameEnsemble& ens,
                                       double tol = 1e-8);
DualSolution solve_dual(TesterClass cls, const gates::GameEnsemble& ens, double tol = 1e-8);

/// Winning probability of an explicit tester; throws when the tester violates
/// its class constraints beyond 1e-7 or is not PSD within 1e-9.
double win_probability(const Tester& t, const gates::GameEnsemble& ens);

}  // namespace timeflip::testers

#include "timeflip/testers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "timeflip/class_projectors.hpp"

namespace timeflip::testers {

using la::cplx;
using la::Label;
using la::LabeledSpace;
using la::Mat;

const char* to_string(TesterClass c) {
    switch (c) {
        case TesterClass::Parallel: return "parallel";
        case TesterClass::SequentialUV: return "sequential-uv";
        case TesterClass::SequentialVU: return "sequential-vu";
        case TesterClass::General: return "general";
    }
    return "?";
}

TesterClass tester_class_from_string(const std::string& s) {
    if (s == "parallel") return TesterClass::Parallel;
    if (s == "sequential-uv" || s == "seq-uv") return TesterClass::SequentialUV;
    if (s == "sequential-vu" || s == "seq-vu") return TesterClass::SequentialVU;
    if (s == "general") return TesterClass::General;
    throw std::invalid_argument("unknown tester class: " + s);
}

namespace {

const LabeledSpace& game_space() {
    static const LabeledSpace s = LabeledSpace::game_space();
    return s;
}

Mat tr_rep(const Mat& m, const std::vector<Label>& labels) {
    return la::trace_replace(m, game_space(), labels);
}

Mat hermitize(const Mat& m) {
    Mat h = m;
    for (int i = 0; i < m.rows(); ++i) {
        h(i, i) = m(i, i).real();
        for (int j = i + 1; j < m.cols(); ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

ChoiOrder order_for(TesterClass cls) {
    return cls == TesterClass::SequentialVU ? ChoiOrder::VFirst : ChoiOrder::UFirst;
}

}  // namespace

EnsembleChoi ensemble_choi(const gates::GameEnsemble& ens, ChoiOrder order) {
    EnsembleChoi out;
    out.space = game_space();
    const double inv_n = 1.0 / ens.size();
    out.avg_plus = Mat(16, 16);
    out.avg_minus = Mat(16, 16);

    auto make_op = [&](const gates::GatePair& p) {
        const Mat cu = la::choi_vector(p.u);
        const Mat cv = la::choi_vector(p.v);
        const Mat joint = order == ChoiOrder::VFirst ? la::kron(cv, cu) : la::kron(cu, cv);
        Mat op = la::outer(joint, joint);
        if (order == ChoiOrder::UVParallel)
            op = la::permute_factors(op, game_space(), {Label::I1, Label::I2, Label::O1, Label::O2});
        return op;
    };

    for (const auto& p : ens.plus_pairs) {
        out.plus_ops.push_back(make_op(p));
        out.avg_plus += out.plus_ops.back();
    }
    for (const auto& p : ens.minus_pairs) {
        out.minus_ops.push_back(make_op(p));
        out.avg_minus += out.minus_ops.back();
    }
    out.avg_plus *= cplx(inv_n);
    out.avg_minus *= cplx(inv_n);
    if (order == ChoiOrder::UVParallel)
        out.space.factors = {{Label::I1, 2}, {Label::I2, 2}, {Label::O1, 2}, {Label::O2, 2}};
    return out;
}

Mat project_primal_subspace(TesterClass cls, const Mat& s) {
    return detail::primal_subspace_impl(cls, s, [](const Mat& m, const std::vector<Label>& l) {
        return tr_rep(m, l);
    });
}

Mat project_primal_affine(TesterClass cls, const Mat& s) {
    Mat p = project_primal_subspace(cls, s);
    const double shift = (4.0 - p.trace().real()) / 16.0;
    for (int i = 0; i < 16; ++i) p(i, i) += shift;
    return p;
}

Mat project_dual_subspace(TesterClass cls, const Mat& c) {
    Mat out = c - project_primal_subspace(cls, c);
    const double shift = c.trace().real() / 16.0;
    for (int i = 0; i < 16; ++i) out(i, i) += shift;
    return out;
}

double primal_residual(TesterClass cls, const Mat& s) {
    return (s - project_primal_subspace(cls, s)).frob_norm() + std::abs(s.trace().real() - 4.0);
}

double dual_residual(TesterClass cls, const Mat& c) {
    return (c - project_dual_subspace(cls, c)).frob_norm();
}

namespace {

struct Pair {
    Mat p, m;
    Pair() : p(16, 16), m(16, 16) {}
    Pair(Mat a, Mat b) : p(std::move(a)), m(std::move(b)) {}
};

Pair operator+(const Pair& a, const Pair& b) { return {a.p + b.p, a.m + b.m}; }
Pair operator-(const Pair& a, const Pair& b) { return {a.p - b.p, a.m - b.m}; }
Pair scale(const Pair& a, double t) { return {a.p * cplx(t), a.m * cplx(t)}; }
double norm(const Pair& a) { return std::hypot(a.p.frob_norm(), a.m.frob_norm()); }
double inner_real(const Pair& a, const Pair& b) {
    return (la::hs_inner(a.p, b.p) + la::hs_inner(a.m, b.m)).real();
}

Pair project_psd(const Pair& a) {
    return {la::psd_projection(hermitize(a.p)), la::psd_projection(hermitize(a.m))};
}

Pair project_affine(TesterClass cls, const Pair& a) {
    const Mat s = project_primal_affine(cls, hermitize(a.p + a.m));
    const Mat d = hermitize(a.p - a.m);
    return {(s + d) * cplx(0.5), (s - d) * cplx(0.5)};
}

struct DualCandidate {
    Mat c;
    double value;
    double domination_floor;
};

DualCandidate dual_candidate(TesterClass cls, const Pair& lambda, const Mat& rp, const Mat& rm) {
    Mat c0 = hermitize((lambda.p + rp + lambda.m + rm) * cplx(0.5));
    Mat c = project_dual_subspace(cls, c0);
    const double lp = la::lambda_max(hermitize(rp - c));
    const double lm = la::lambda_max(hermitize(rm - c));
    const double s = std::max({0.0, lp, lm});
    if (s > 0.0)
        for (int i = 0; i < 16; ++i) c(i, i) += s;
    DualCandidate out;
    out.c = hermitize(c);
    out.value = out.c.trace().real() / 4.0;
    out.domination_floor =
        std::min(la::lambda_min(hermitize(out.c - rp)), la::lambda_min(hermitize(out.c - rm)));
    return out;
}

}  // namespace

SolveResult solve(TesterClass cls, const gates::GameEnsemble& ens, const SolveOptions& opt) {
    const EnsembleChoi ec = ensemble_choi(ens, order_for(cls));
    const Pair g(ec.avg_plus, ec.avg_minus);

    double rho = opt.rho;
    const double alpha = opt.relaxation;

    // Start from the trivial feasible point T+- = 1/8.
    Pair y(Mat::identity(16) * cplx(2.0 / 16.0), Mat::identity(16) * cplx(2.0 / 16.0));
    Pair u;  // scaled multiplier
    Pair x = y;

    SolveResult res;
    res.cls = cls;

    DualCandidate best_dual{Mat::identity(16) * cplx(52.0 / 21.0), 208.0 / 21.0, 0.0};
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        x = project_psd(y - u);
        const Pair xr = scale(x, alpha) + scale(y, 1.0 - alpha);
        const Pair y_new = project_affine(cls, xr + u + scale(g, 1.0 / rho));
        const double dual_shift = rho * norm(y_new - y);
        y = y_new;
        u = u + xr - y;

        if ((it + 1) % opt.check_every != 0) continue;

        const double primal_res = norm(x - y);
        const DualCandidate cand = dual_candidate(cls, scale(u, rho), ec.avg_plus, ec.avg_minus);
        if (cand.value < best_dual.value) best_dual = cand;
        const double p_val = inner_real(g, x);
        const double gap = best_dual.value - p_val;

        if (primal_res < opt.feas_tol * 16.0 && std::abs(gap) < opt.tol && dual_shift < opt.tol) {
            res.converged = true;
            break;
        }
        // Deterministic penalty rebalancing, frozen after the early phase.
        if (it < opt.max_iterations / 4 && (it + 1) % (opt.check_every * 10) == 0) {
            if (primal_res > 10.0 * dual_shift) {
                rho *= 1.5;
                u = scale(u, 1.0 / 1.5);
            } else if (dual_shift > 10.0 * primal_res) {
                rho /= 1.5;
                u = scale(u, 1.5);
            }
        }
    }
    res.iterations = std::min(it + 1, opt.max_iterations);

    // Polish the primal point onto the intersection with Dykstra so the
    // returned tester passes strict feasibility checks.
    {
        Pair z = x, pc, qc;
        for (int k = 0; k < 4000; ++k) {
            const Pair w = project_affine(cls, z + pc);
            pc = pc + (z - w);
            const Pair z_new = project_psd(w + qc);
            qc = qc + (w - z_new);
            z = z_new;
            if (norm(z - w) < 1e-11 * 16.0) break;
        }
        x = z;
    }

    res.tester = Tester{cls, hermitize(x.p), hermitize(x.m)};
    res.primal_value = inner_real(g, x);
    res.primal_affine_residual = primal_residual(cls, res.tester.t_plus + res.tester.t_minus);
    res.primal_psd_floor = std::min(la::lambda_min(res.tester.t_plus), la::lambda_min(res.tester.t_minus));

    const DualCandidate cand = dual_candidate(cls, scale(u, rho), ec.avg_plus, ec.avg_minus);
    if (cand.value < best_dual.value) best_dual = cand;
    res.dual = DualSolution{cls, best_dual.c, best_dual.value};
    res.dual_value = best_dual.value;
    res.dual_affine_residual = dual_residual(cls, best_dual.c);
    res.dual_domination_floor = best_dual.domination_floor;
    res.gap = res.dual_value - res.primal_value;

    if (!res.converged && opt.throw_on_failure) {
        std::ostringstream msg;
        msg << "SDP solve (" << to_string(cls) << ") did not reach tol " << opt.tol << " in "
            << res.iterations << " iterations; gap " << res.gap << ", affine residual "
            << res.primal_affine_residual;
        throw SolverError(msg.str());
    }
    return res;
}

std::pair<double, Tester> solve_primal(TesterClass cls, const gates::GameEnsemble& ens, double tol) {
    SolveOptions opt;
    opt.tol = tol;
    SolveResult r = solve(cls, ens, opt);
    return {r.primal_value, r.tester};
}

DualSolution solve_dual(TesterClass cls, const gates::GameEnsemble& ens, double tol) {
    SolveOptions opt;
    opt.tol = tol;
    return solve(cls, ens, opt).dual;
}

double win_probability(const Tester& t, const gates::GameEnsemble& ens) {
    if (t.t_plus.rows() != 16 || t.t_minus.rows() != 16)
        throw std::invalid_argument("win_probability: tester must live on the 16-dim space");
    if (!t.t_plus.is_hermitian(1e-8) || !t.t_minus.is_hermitian(1e-8))
        throw std::invalid_argument("win_probability: tester elements must be Hermitian");
    if (la::lambda_min(t.t_plus) < -1e-9 * 16 || la::lambda_min(t.t_minus) < -1e-9 * 16)
        throw std::invalid_argument("win_probability: tester elements must be PSD");
    const double res = primal_residual(t.cls, t.t_plus + t.t_minus);
    if (res > 1e-7)
        throw std::invalid_argument("win_probability: tester violates class constraints");

    const EnsembleChoi ec = ensemble_choi(ens, order_for(t.cls));
    double acc = 0.0;
    for (const auto& op : ec.plus_ops) acc += la::hs_inner(t.t_plus, op).real();
    for (const auto& op : ec.minus_ops) acc += la::hs_inner(t.t_minus, op).real();
    return acc / ens.size();
}

}  // namespace timeflip::testers

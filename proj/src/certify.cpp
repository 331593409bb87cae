#include "timeflip/certify.hpp"

#include <array>

#include <nlohmann/json.hpp>

#include "timeflip/class_projectors.hpp"
#include "timeflip/tensor_kernels.hpp"

namespace timeflip::certify {

using gates::ExactGate;
using la::Label;
using testers::TesterClass;
using json = nlohmann::ordered_json;

namespace {

Root2Gaussian entry_value(const gates::ExactEntry& e) {
    if (e.sqrt2_den) {
        // (re + i im)/sqrt2 = (re/2) sqrt2 + i (im/2) sqrt2
        return {Root2{0, rational_of(e.re, 2)}, Root2{0, rational_of(e.im, 2)}};
    }
    return {Root2{rational_of(e.re), 0}, Root2{rational_of(e.im), 0}};
}

// Choi vector |U>>[l*2 + r] = U[r][l], matching la::choi_vector.
std::array<Root2Gaussian, 4> exact_choi(const ExactGate& g) {
    std::array<Root2Gaussian, 4> v;
    for (int l = 0; l < 2; ++l)
        for (int r = 0; r < 2; ++r) v[l * 2 + r] = entry_value(g[r][l]);
    return v;
}

// |U>>(x)|V>> (or |V>>(x)|U>>), then the rank-1 outer product.
std::vector<Root2Gaussian> exact_choi_op(const ExactGate& first, const ExactGate& second) {
    const auto a = exact_choi(first);
    const auto b = exact_choi(second);
    std::array<Root2Gaussian, 16> vec;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) vec[i * 4 + j] = a[i] * b[j];
    std::vector<Root2Gaussian> op(256);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) op[static_cast<size_t>(i) * 16 + j] = vec[i] * vec[j].conj();
    return op;
}

const std::vector<int>& game_dims() {
    static const std::vector<int> d{2, 2, 2, 2};
    return d;
}

std::vector<bool> label_flags(const std::vector<Label>& labels) {
    // Global factor order I1, O1, I2, O2.
    std::vector<bool> f(4, false);
    for (Label l : labels) {
        switch (l) {
            case Label::I1: f[0] = true; break;
            case Label::O1: f[1] = true; break;
            case Label::I2: f[2] = true; break;
            case Label::O2: f[3] = true; break;
            default: throw std::invalid_argument("label outside the game space");
        }
    }
    return f;
}

RationalMatrix tr_rep_exact(const RationalMatrix& m, const std::vector<Label>& labels) {
    RationalMatrix out(16, 16);
    out.data() = la::detail::trace_replace_kernel(m.data(), game_dims(), label_flags(labels));
    return out;
}

}  // namespace

ExactEnsembleAverages exact_ensemble_averages(const gates::GameEnsemble& ens,
                                              testers::ChoiOrder order) {
    if (order == testers::ChoiOrder::UVParallel)
        throw std::invalid_argument("exact averages are built on the global I1,O1,I2,O2 order");
    const GaussianRational inv_n(rational_of(1, ens.size()), Rational(0));

    auto accumulate = [&](const std::vector<gates::GatePair>& pairs) {
        std::vector<Root2Gaussian> acc(256);
        for (const auto& p : pairs) {
            if (!p.has_exact)
                throw CertifyError("pair '" + p.name + "' carries no exact entries");
            const auto op = order == testers::ChoiOrder::VFirst
                                ? exact_choi_op(p.exact_v, p.exact_u)
                                : exact_choi_op(p.exact_u, p.exact_v);
            for (size_t k = 0; k < acc.size(); ++k) acc[k] = acc[k] + op[k];
        }
        RationalMatrix m(16, 16);
        for (size_t k = 0; k < acc.size(); ++k) {
            if (!acc[k].is_rational())
                throw CertifyError("sqrt(2) coefficient failed to cancel in an ensemble average");
            m.data()[k] = GaussianRational(acc[k].re.a, acc[k].im.a) * inv_n;
        }
        return RationalHermitian::from_matrix(m);
    };

    ExactEnsembleAverages out{accumulate(ens.plus_pairs), accumulate(ens.minus_pairs)};
    return out;
}

RationalMatrix project_dual_subspace_exact(TesterClass cls, const RationalMatrix& c) {
    const RationalMatrix pi = testers::detail::primal_subspace_impl(
        cls, c, [](const RationalMatrix& m, const std::vector<Label>& l) {
            return tr_rep_exact(m, l);
        });
    RationalMatrix out = c - pi;
    const Rational shift = c.trace().re / 16;
    for (int i = 0; i < 16; ++i) out.at(i, i) += GaussianRational(shift, Rational(0));
    return out;
}

namespace {

bool dominates(const RationalHermitian& c, const RationalHermitian& r) {
    RationalMatrix d = c.to_matrix() - r.to_matrix();
    return rational_psd(RationalHermitian::from_matrix(d));
}

testers::ChoiOrder order_for(TesterClass cls) {
    return cls == TesterClass::SequentialVU ? testers::ChoiOrder::VFirst
                                            : testers::ChoiOrder::UFirst;
}

}  // namespace

Certificate truncate_and_repair(const la::Mat& c_float, TesterClass cls, int k,
                                const std::optional<Rational>& target) {
    if (c_float.rows() != 16 || c_float.cols() != 16)
        throw std::invalid_argument("truncate_and_repair: need a 16x16 dual solution");
    if (k < 4 || k > 48) throw std::invalid_argument("truncate_and_repair: k in [4, 48]");

    // Truncate to the dyadic grid, Hermitian by construction.
    RationalMatrix m(16, 16);
    for (int i = 0; i < 16; ++i) {
        m.at(i, i) = GaussianRational(dyadic_round(c_float(i, i).real(), k), Rational(0));
        for (int j = i + 1; j < 16; ++j) {
            const GaussianRational v(dyadic_round(c_float(i, j).real(), k),
                                     dyadic_round(c_float(i, j).imag(), k));
            m.at(i, j) = v;
            m.at(j, i) = v.conj();
        }
    }

    // Exact projection restores the affine constraints (their maps have
    // rational coefficients, so the projected entries stay rational).
    m = project_dual_subspace_exact(cls, m);

    const auto avgs = exact_ensemble_averages(gates::canonical_ensemble(), order_for(cls));

    Certificate cert;
    cert.cls = cls;
    cert.k = k;
    cert.epsilon = Rational(0);
    cert.c = RationalHermitian::from_matrix(m);

    if (!dominates(cert.c, avgs.avg_plus) || !dominates(cert.c, avgs.avg_minus)) {
        // Rigorous rounding bound: entrywise error <= 2^{-k} gives a spectral
        // shift of at most 16 * 2^{-k}; repair with twice that.
        const Rational eps = 16 * pow2(1 - k);
        for (int i = 0; i < 16; ++i) m.at(i, i) += GaussianRational(eps, Rational(0));
        cert.c = RationalHermitian::from_matrix(m);
        cert.epsilon = eps;
        if (!dominates(cert.c, avgs.avg_plus) || !dominates(cert.c, avgs.avg_minus))
            throw CertifyError("repair failed to restore domination; increase k");
    }

    cert.bound = cert.c.trace() / 4;
    if (target && cert.bound > *target)
        throw CertifyError("certified bound " + to_string(cert.bound) + " exceeds target " +
                           to_string(*target) + "; increase k");
    return cert;
}

VerifyOutcome verify_certificate(const Certificate& cert, const gates::GameEnsemble& ens) {
    VerifyOutcome out;
    out.bound = cert.c.trace() / 4;

    const RationalMatrix cm = cert.c.to_matrix();
    if (!(project_dual_subspace_exact(cert.cls, cm) == cm)) {
        out.violation = "class affine constraints violated";
        return out;
    }
    const auto avgs = exact_ensemble_averages(ens, order_for(cert.cls));
    if (!dominates(cert.c, avgs.avg_plus)) {
        out.violation = "C does not dominate the Plus-set average";
        return out;
    }
    if (!dominates(cert.c, avgs.avg_minus)) {
        out.violation = "C does not dominate the Minus-set average";
        return out;
    }
    out.ok = true;
    return out;
}

std::string certificate_to_json(const Certificate& cert) {
    json j;
    j["format"] = "timeflip-certificate-v1";
    j["class"] = testers::to_string(cert.cls);
    j["k"] = cert.k;
    j["epsilon"] = to_string(cert.epsilon);
    j["bound"] = to_string(cert.bound);
    j["dimension"] = cert.c.dim();
    json rows = json::array();
    const RationalMatrix m = cert.c.to_matrix();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int jj = 0; jj < m.cols(); ++jj)
            row.push_back(json::array({to_string(m.at(i, jj).re), to_string(m.at(i, jj).im)}));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("format", "") != "timeflip-certificate-v1")
        throw CertifyError("unrecognized certificate format");
    Certificate cert;
    cert.cls = testers::tester_class_from_string(j.at("class").get<std::string>());
    cert.k = j.at("k").get<int>();
    cert.epsilon = rational_from_string(j.value("epsilon", "0"));
    cert.bound = rational_from_string(j.at("bound").get<std::string>());
    const int n = j.at("dimension").get<int>();
    const auto& rows = j.at("entries");
    if (static_cast<int>(rows.size()) != n) throw CertifyError("entry row count mismatch");
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (static_cast<int>(row.size()) != n) throw CertifyError("entry column count mismatch");
        for (int jj = 0; jj < n; ++jj) {
            m.at(i, jj) = GaussianRational(rational_from_string(row[jj][0].get<std::string>()),
                                           rational_from_string(row[jj][1].get<std::string>()));
        }
    }
    // from_matrix enforces exact Hermiticity of the file contents.
    cert.c = RationalHermitian::from_matrix(m);
    if (cert.c.trace() / 4 != cert.bound)
        throw CertifyError("claimed bound does not match tr(C)/4");
    return cert;
}

}  // namespace timeflip::certify

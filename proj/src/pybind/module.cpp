#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "timeflip/certify.hpp"
#include "timeflip/flip.hpp"
#include "timeflip/game.hpp"
#include "timeflip/gates.hpp"
#include "timeflip/optics.hpp"
#include "timeflip/rng.hpp"
#include "timeflip/testers.hpp"

namespace py = pybind11;
using namespace timeflip;

namespace {

using PyMat = std::vector<std::vector<std::complex<double>>>;

la::Mat mat_from_py(const PyMat& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    la::Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

PyMat mat_to_py(const la::Mat& m) {
    PyMat rows(m.rows(), std::vector<std::complex<double>>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum time-flip game: simulation, tester SDP bounds, exact certificates";

    m.def("canonical_sets", []() {
        const auto ens = gates::canonical_ensemble();
        py::list out;
        for (int i = 0; i < ens.size(); ++i) {
            const auto& p = ens.pair(i);
            py::dict d;
            d["name"] = p.name;
            d["label"] = gates::to_string(p.label);
            d["u"] = mat_to_py(p.u);
            d["v"] = mat_to_py(p.v);
            out.append(std::move(d));
        }
        return out;
    }, "The canonical 13 Plus + 8 Minus gate pairs");

    m.def("classify_pair", [](const PyMat& u, const PyMat& v, double tol) {
        return std::string(gates::to_string(gates::classify_pair(mat_from_py(u), mat_from_py(v), tol)));
    }, py::arg("u"), py::arg("v"), py::arg("tol") = 1e-9,
       "Classify a pair as 'plus', 'minus' or 'neither'");

    m.def("play_setting", [](const PyMat& u, const PyMat& v, double visibility, double phase,
                             double dark) {
        const auto o = flip::play_setting(mat_from_py(u), mat_from_py(v),
                                          flip::default_input_state(),
                                          flip::NoiseModel{visibility, phase, dark});
        return py::make_tuple(o.p_plus, o.p_minus);
    }, py::arg("u"), py::arg("v"), py::arg("visibility") = 1.0, py::arg("phase") = 0.0,
       py::arg("dark") = 0.0, "(p_plus, p_minus) ports of the composed time flip");

    m.def("analytic_win_probability", [](double visibility, double phase, double dark) {
        return flip::analytic_win_probability(flip::NoiseModel{visibility, phase, dark});
    }, py::arg("visibility") = 1.0, py::arg("phase") = 0.0, py::arg("dark") = 0.0);

    m.def("solve_bounds", [](const std::string& cls, double tol) {
        testers::SolveOptions opt;
        opt.tol = tol;
        const auto r = testers::solve(testers::tester_class_from_string(cls),
                                      gates::canonical_ensemble(), opt);
        py::dict d;
        d["class"] = testers::to_string(r.cls);
        d["value"] = r.primal_value;
        d["dual_value"] = r.dual_value;
        d["gap"] = r.gap;
        d["iterations"] = r.iterations;
        return d;
    }, py::arg("tester_class"), py::arg("tol") = 1e-6,
       "Solve the primal/dual SDP for 'parallel', 'seq-uv', 'seq-vu' or 'general'");

    m.def("certify_bound", [](const std::string& cls, int k, double tol) {
        const auto tc = testers::tester_class_from_string(cls);
        testers::SolveOptions opt;
        opt.tol = tol;
        const auto r = testers::solve(tc, gates::canonical_ensemble(), opt);
        const auto cert = certify::truncate_and_repair(r.dual.c, tc, k);
        const auto check = certify::verify_certificate(cert, gates::canonical_ensemble());
        py::dict d;
        d["bound"] = certify::to_string(cert.bound);
        d["bound_float"] = cert.bound.get_d();
        d["verified"] = check.ok;
        return d;
    }, py::arg("tester_class"), py::arg("k") = 20, py::arg("tol") = 1e-6,
       "Exact-rational certificate for the class's dual bound");

    m.def("run_game", [](long rounds, double visibility, double phase, double dark,
                         std::uint64_t seed) {
        game::GameOptions opt;
        opt.n_rounds = rounds;
        opt.seed = seed;
        opt.noise = flip::NoiseModel{visibility, phase, dark};
        const auto rec = game::run_game(gates::canonical_ensemble(), opt);
        py::dict d;
        d["n_rounds"] = rec.n_rounds;
        d["wins"] = rec.wins;
        d["win_rate"] = static_cast<double>(rec.wins) / rec.n_rounds;
        return d;
    }, py::arg("rounds"), py::arg("visibility") = 1.0, py::arg("phase") = 0.0,
       py::arg("dark") = 0.0, py::arg("seed") = 12345);

    m.def("relative_entropy", &game::relative_entropy, py::arg("q"), py::arg("p"));
    m.def("chernoff_log_pvalue_bound", &game::chernoff_log_pvalue_bound, py::arg("v"),
          py::arg("n"), py::arg("p"));
    m.def("exact_binomial_tail_log", &game::exact_binomial_tail_log, py::arg("v"), py::arg("n"),
          py::arg("p"));

    m.def("decompose_gadget", [](const PyMat& target, const std::string& convention) {
        const auto conv = convention == "standard" ? optics::StokesConvention::Standard
                                                   : optics::StokesConvention::Transpose;
        const auto g = optics::simon_mukunda_decompose(mat_from_py(target), conv);
        py::list elems;
        for (const auto& e : g.elements) {
            py::dict d;
            d["theta"] = e.theta;
            d["retardance"] = e.retardance;
            elems.append(std::move(d));
        }
        return elems;
    }, py::arg("target"), py::arg("convention") = "transpose",
       "QWP-HWP-QWP angles (radians) realizing the target up to a phase");

    m.def("gadget_unitaries", [](const std::vector<std::pair<double, double>>& elements,
                                 const std::string& convention) {
        optics::Gadget g;
        g.convention = convention == "standard" ? optics::StokesConvention::Standard
                                                : optics::StokesConvention::Transpose;
        for (const auto& [theta, ret] : elements) g.elements.push_back(optics::Retarder{theta, ret});
        return py::make_tuple(mat_to_py(g.forward_unitary()), mat_to_py(g.backward_unitary()));
    }, py::arg("elements"), py::arg("convention") = "transpose",
       "(forward, backward) unitaries of a retarder stack given (theta, retardance) pairs");

    m.def("average_gate_fidelity", [](const PyMat& a, const PyMat& b, int samples,
                                      std::uint64_t seed) {
        la::SplitRng master(seed);
        auto rng = master.stream(0);
        const auto rep = optics::average_gate_fidelity(mat_from_py(a), mat_from_py(b), samples, rng);
        py::dict d;
        d["mean"] = rep.mean;
        d["std_err"] = rep.std_err;
        d["closed_form"] = rep.closed_form;
        d["n_samples"] = rep.n_samples;
        return d;
    }, py::arg("a"), py::arg("b"), py::arg("samples") = 1000, py::arg("seed") = 12345);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}

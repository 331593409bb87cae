#include "timeflip/io_json.hpp"

#include <cmath>
#include <numbers>

namespace timeflip::io {

json mat_to_json(const la::Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

la::Mat mat_from_json(const json& j) {
    const int rows = static_cast<int>(j.size());
    const int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
    la::Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw std::invalid_argument("mat_from_json: ragged rows");
        for (int c = 0; c < cols; ++c)
            m(i, c) = la::cplx(j[i][c][0].get<double>(), j[i][c][1].get<double>());
    }
    return m;
}

json pair_to_json(const gates::GatePair& p) {
    json j;
    j["name"] = p.name;
    j["u"] = mat_to_json(p.u);
    j["v"] = mat_to_json(p.v);
    j["label"] = gates::to_string(p.label);
    return j;
}

gates::GatePair pair_from_json(const json& j) {
    gates::GatePair p;
    p.name = j.value("name", "(unnamed)");
    p.u = mat_from_json(j.at("u"));
    p.v = mat_from_json(j.at("v"));
    const std::string label = j.value("label", "neither");
    if (label == "plus") p.label = gates::SetLabel::Plus;
    else if (label == "minus") p.label = gates::SetLabel::Minus;
    else if (label == "neither") p.label = gates::SetLabel::Neither;
    else throw std::invalid_argument("pair_from_json: unknown label " + label);
    return p;
}

json ensemble_to_json(const gates::GameEnsemble& e) {
    json j;
    j["n"] = e.size();
    j["prior"] = e.prior();
    json pairs = json::array();
    for (int i = 0; i < e.size(); ++i) pairs.push_back(pair_to_json(e.pair(i)));
    j["pairs"] = std::move(pairs);
    return j;
}

json gadget_to_json(const optics::Gadget& g) {
    constexpr double rad2deg = 180.0 / std::numbers::pi;
    json j;
    j["convention"] = optics::to_string(g.convention);
    json elems = json::array();
    for (const auto& e : g.elements)
        elems.push_back(json{{"theta_deg", e.theta * rad2deg},
                             {"retardance_deg", e.retardance * rad2deg}});
    j["elements"] = std::move(elems);
    return j;
}

optics::Gadget gadget_from_json(const json& j) {
    constexpr double deg2rad = std::numbers::pi / 180.0;
    optics::Gadget g;
    const std::string conv = j.value("convention", "transpose");
    if (conv == "transpose") g.convention = optics::StokesConvention::Transpose;
    else if (conv == "standard") g.convention = optics::StokesConvention::Standard;
    else throw std::invalid_argument("gadget_from_json: unknown convention " + conv);
    for (const auto& e : j.at("elements"))
        g.elements.push_back(optics::Retarder{e.at("theta_deg").get<double>() * deg2rad,
                                              e.at("retardance_deg").get<double>() * deg2rad});
    return g;
}

json fidelity_to_json(const optics::FidelityReport& r) {
    return json{{"mean", r.mean},
                {"std_err", r.std_err},
                {"closed_form", r.closed_form},
                {"n_samples", r.n_samples}};
}

json solve_result_to_json(const testers::SolveResult& r) {
    json j;
    j["class"] = testers::to_string(r.cls);
    j["value"] = r.primal_value;
    j["dual_value"] = r.dual_value;
    j["gap"] = r.gap;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["residuals"] = json{{"primal_affine", r.primal_affine_residual},
                          {"primal_psd_floor", r.primal_psd_floor},
                          {"dual_affine", r.dual_affine_residual},
                          {"dual_domination_floor", r.dual_domination_floor}};
    j["T_plus"] = mat_to_json(r.tester.t_plus);
    j["T_minus"] = mat_to_json(r.tester.t_minus);
    j["C"] = mat_to_json(r.dual.c);
    return j;
}

json game_record_to_json(const game::GameRecord& rec) {
    json j;
    j["n_rounds"] = rec.n_rounds;
    j["wins"] = rec.wins;
    j["win_rate"] = rec.n_rounds > 0 ? static_cast<double>(rec.wins) / rec.n_rounds : 0.0;
    j["seed"] = rec.seed;
    json settings = json::array();
    for (const auto& s : rec.per_setting) {
        settings.push_back(json{{"setting_name", s.name},
                                {"set_label", gates::to_string(s.label)},
                                {"rounds", s.rounds},
                                {"wins", s.wins},
                                {"p_correct_port", s.p_win_model},
                                {"p_wrong_port", 1.0 - s.p_win_model}});
    }
    j["per_setting"] = std::move(settings);
    return j;
}

}  // namespace timeflip::io

#pragma once

#include <nlohmann/json.hpp>

#include "timeflip/game.hpp"
#include "timeflip/gates.hpp"
#include "timeflip/matrix.hpp"
#include "timeflip/optics.hpp"
#include "timeflip/testers.hpp"

namespace timeflip::io {

using json = nlohmann::ordered_json;

/// Complex entries serialize as [re, im] arrays.
json mat_to_json(const la::Mat& m);
la::Mat mat_from_json(const json& j);

json pair_to_json(const gates::GatePair& p);
/// {name, u, v, label?}; label defaults to "neither" when absent.
gates::GatePair pair_from_json(const json& j);
json ensemble_to_json(const gates::GameEnsemble& e);

json gadget_to_json(const optics::Gadget& g);
optics::Gadget gadget_from_json(const json& j);

json fidelity_to_json(const optics::FidelityReport& r);

json solve_result_to_json(const testers::SolveResult& r);

json game_record_to_json(const game::GameRecord& rec);

}  // namespace timeflip::io

// Stable JSON form of a character: {"m": int, "exponents": [int], "order": int}.
#pragma once

#include <json.hpp>

#include "residua/characters.hpp"

namespace residua {

inline nlohmann::ordered_json character_to_json(const DirichletCharacter& chi) {
  nlohmann::ordered_json j;
  j["m"] = chi.modulus();
  j["exponents"] = chi.exponents();
  j["order"] = chi.order();
  return j;
}

inline DirichletCharacter character_from_json(const nlohmann::json& j) {
  u64 m = j.at("m").get<u64>();
  std::vector<u64> exps = j.at("exponents").get<std::vector<u64>>();
  DirichletCharacter chi(unit_group(m), std::move(exps));
  if (j.contains("order") && j.at("order").get<u64>() != chi.order())
    throw std::invalid_argument("character_from_json: order field inconsistent");
  return chi;
}

}  // namespace residua

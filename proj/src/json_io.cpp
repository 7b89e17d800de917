// SPDX-License-Identifier: Apache-2.0
#include "incomedist/json_io.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "incomedist/errors.hpp"

namespace incomedist {

namespace {

using nlohmann::json;

std::vector<double> doubles_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw InputError(std::string("json: missing array field \"") + key +
                     "\"");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number())
      throw InputError(std::string("json: field \"") + key +
                       "\" must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json grid_to_json(const IncomeGrid& grid) {
  json j;
  j["levels"] = grid.levels();
  j["degeneracies"] = grid.degeneracies();
  if (grid.has_bins()) j["bin_width"] = grid.bin_width();
  return j;
}

IncomeGrid grid_from_json(const json& j) {
  const auto levels = doubles_field(j, "levels");
  if (!j.contains("degeneracies") || !j.at("degeneracies").is_array())
    throw InputError("json: missing array field \"degeneracies\"");
  std::vector<long long> degs;
  for (const auto& v : j.at("degeneracies")) {
    if (!v.is_number_integer())
      throw InputError("json: degeneracies must be integers");
    degs.push_back(v.get<long long>());
  }
  double width = 0.0;
  if (j.contains("bin_width")) {
    if (!j.at("bin_width").is_number())
      throw InputError("json: bin_width must be a number");
    width = j.at("bin_width").get<double>();
  }
  return IncomeGrid(levels, std::move(degs), width);
}

IncomeGrid grid_from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("json: malformed grid document");
  return grid_from_json(j);
}

json occupancy_to_json(const Occupancy& occ) {
  json j;
  j["counts"] = occ.counts;
  return j;
}

Occupancy occupancy_from_json(const json& j) {
  Occupancy occ;
  occ.counts = doubles_field(j, "counts");
  if (occ.counts.empty()) throw InputError("json: empty occupancy");
  return occ;
}

json solution_to_json(const EquilibriumSolution& sol,
                      const IncomeGrid& grid) {
  json j;
  j["alpha"] = sol.alpha;
  j["beta"] = sol.beta;
  j["mu"] = sol.mu;
  j["temperature"] = sol.temperature;
  j["regime"] =
      sol.regime == Regime::Perfect ? "perfect" : "monopolistic";
  j["occupancy"] = occupancy_to_json(sol.occupancy);
  j["condensate_fraction"] = sol.condensate_fraction;
  j["degenerate"] = sol.degenerate;
  j["levels"] = grid.levels();
  j["count_residual"] = sol.count_residual;
  j["income_residual"] = sol.income_residual;
  if (!sol.note.empty()) j["note"] = sol.note;
  return j;
}

json histogram_to_json(const std::map<MacrostateKey, std::uint64_t>& hist) {
  std::vector<std::pair<MacrostateKey, std::uint64_t>> rows(hist.begin(),
                                                            hist.end());
  // Descending count; the map already yields keys in ascending lex order,
  // and stable_sort keeps that order inside each count class.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  json j = json::array();
  for (const auto& [key, count] : rows) {
    json row;
    row["occupancy"] = key;
    row["count"] = count;
    j.push_back(std::move(row));
  }
  return j;
}

json tail_fit_to_json(const TailFit& fit) {
  json j;
  j["gamma"] = fit.gamma;
  j["density_exponent"] = fit.density_exponent;
  j["xmin"] = fit.xmin;
  j["ks"] = fit.ks;
  j["n_tail"] = fit.n_tail;
  return j;
}

json two_class_to_json(const TwoClassFit& fit) {
  json j;
  j["body_kind"] =
      fit.body_kind == BodyKind::Boltzmann ? "boltzmann" : "bose_einstein";
  j["crossover"] = fit.crossover;
  j["body_temperature"] = fit.body_temperature;
  if (fit.body_kind == BodyKind::BoseEinstein) {
    j["body_mu"] = fit.body_mu;
    j["body_scale"] = fit.body_scale;
  }
  j["body_boundary"] = fit.body_boundary;
  j["tail"] = tail_fit_to_json(fit.tail);
  j["body_ks"] = fit.body_ks;
  j["tail_ks"] = fit.tail_ks;
  j["n_body"] = fit.n_body;
  j["n_tail"] = fit.n_tail;
  j["body_ks_band"] = fit.body_ks_band;
  j["tail_ks_band"] = fit.tail_ks_band;
  j["weak_body"] = fit.weak_body;
  j["weak_tail"] = fit.weak_tail;
  return j;
}

}  // namespace incomedist

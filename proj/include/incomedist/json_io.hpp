// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "incomedist/empirical.hpp"
#include "incomedist/ensemble.hpp"
#include "incomedist/grid.hpp"
#include "incomedist/maxent.hpp"
#include "incomedist/pareto.hpp"

namespace incomedist {

// Grid <-> {"levels":[...],"degeneracies":[...]} with optional "bin_width".
nlohmann::json grid_to_json(const IncomeGrid& grid);
IncomeGrid grid_from_json(const nlohmann::json& j);
IncomeGrid grid_from_json_text(const std::string& text);

// Occupancy <-> {"counts":[...]}.
nlohmann::json occupancy_to_json(const Occupancy& occ);
Occupancy occupancy_from_json(const nlohmann::json& j);

// {"alpha","beta","mu","temperature","occupancy","condensate_fraction",
//  "degenerate"} plus grid levels and residuals for downstream plotting.
nlohmann::json solution_to_json(const EquilibriumSolution& sol,
                                const IncomeGrid& grid);

// [{"occupancy":[...],"count":n}, ...] sorted by descending count,
// ties in lexicographic occupancy order.
nlohmann::json histogram_to_json(
    const std::map<MacrostateKey, std::uint64_t>& hist);

nlohmann::json tail_fit_to_json(const TailFit& fit);
nlohmann::json two_class_to_json(const TwoClassFit& fit);

}  // namespace incomedist

#pragma once

#include <nlohmann/json_fwd.hpp>

#include "mechlab/dist.hpp"
#include "mechlab/harness.hpp"
#include "mechlab/mcestimate.hpp"
#include "mechlab/optmech.hpp"

namespace mechlab {

// Rationals serialize as "p/q" strings (or "p" for integers); parsing also
// accepts JSON numbers and decimal strings.  All parse failures throw
// Error(ParseError).
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json dist_to_json(const DiscreteDist& d);
DiscreteDist dist_from_json(const nlohmann::json& j);

nlohmann::json product_to_json(const ProductDist& p);
// Accepts {"items":[...]} or a bare single-item distribution object.
ProductDist product_from_json(const nlohmann::json& j);

// {"value","alloc","pay","residuals","mode"}; exact mode keeps "p/q"
// strings, float mode emits doubles.
nlohmann::json lp_solution_to_json(const LPSolution& s);

nlohmann::json menu_to_json(const std::vector<MenuEntry>& menu);
std::vector<MenuEntry> menu_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const RevenueReport& r);

nlohmann::json growth_rows_to_json(const std::vector<GrowthRow>& rows);

}  // namespace mechlab

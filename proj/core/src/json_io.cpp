#include "mechlab/json_io.hpp"

#include <nlohmann/json.hpp>

namespace mechlab {

using nlohmann::json;

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    throw Error(ErrorKind::ParseError, "expected a number or a \"p/q\" string, got " + j.dump());
}

namespace {

std::vector<Rational> rational_array(const json& j, const char* what) {
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, std::string("expected an array for ") + what);
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

json rational_array_to_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(rational_to_json(r));
    return out;
}

const json& require_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

json dist_to_json(const DiscreteDist& d) {
    return json{{"support", rational_array_to_json(d.support())},
                {"probs", rational_array_to_json(d.probs())}};
}

DiscreteDist dist_from_json(const json& j) {
    return DiscreteDist::make(rational_array(require_field(j, "support"), "support"),
                              rational_array(require_field(j, "probs"), "probs"));
}

json product_to_json(const ProductDist& p) {
    json items = json::array();
    for (const auto& d : p.items) items.push_back(dist_to_json(d));
    return json{{"items", items}};
}

ProductDist product_from_json(const json& j) {
    if (j.is_object() && j.contains("items")) {
        const json& items = j.at("items");
        if (!items.is_array() || items.empty())
            throw Error(ErrorKind::ParseError, "\"items\" must be a nonempty array");
        std::vector<DiscreteDist> ds;
        ds.reserve(items.size());
        for (const auto& e : items) ds.push_back(dist_from_json(e));
        return ProductDist(std::move(ds));
    }
    return ProductDist({dist_from_json(j)});
}

namespace {

json value_to_json(const Rational& r, SolveMode mode) {
    if (mode == SolveMode::Exact) return rational_to_json(r);
    return to_double(r);
}

}  // namespace

json lp_solution_to_json(const LPSolution& s) {
    json alloc = json::array();
    for (const auto& row : s.table.alloc) {
        json r = json::array();
        for (const auto& q : row) r.push_back(value_to_json(q, s.mode));
        alloc.push_back(std::move(r));
    }
    json pay = json::array();
    for (const auto& p : s.table.pay) pay.push_back(value_to_json(p, s.mode));
    json residuals{{"max_ic_violation", to_double(s.residuals.max_ic_violation)},
                   {"max_ir_violation", to_double(s.residuals.max_ir_violation)},
                   {"max_npt_violation", to_double(s.residuals.max_npt_violation)},
                   {"max_monotone_violation", to_double(s.residuals.max_monotone_violation)},
                   {"passes", s.residuals.passes}};
    return json{{"value", value_to_json(s.value, s.mode)},
                {"alloc", std::move(alloc)},
                {"pay", std::move(pay)},
                {"residuals", std::move(residuals)},
                {"mode", s.mode == SolveMode::Exact ? "exact" : "float"}};
}

json menu_to_json(const std::vector<MenuEntry>& menu) {
    json out = json::array();
    for (const auto& e : menu)
        out.push_back(json{{"alloc", rational_array_to_json(e.alloc)},
                           {"price", rational_to_json(e.price)}});
    return out;
}

std::vector<MenuEntry> menu_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of menu entries");
    std::vector<MenuEntry> menu;
    menu.reserve(j.size());
    for (const auto& e : j)
        menu.push_back({rational_array(require_field(e, "alloc"), "alloc"),
                        rational_from_json(require_field(e, "price"))});
    return menu;
}

json report_to_json(const RevenueReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name},
                              {"applicable", c.applicable},
                              {"asserted", c.asserted},
                              {"passed", c.passed},
                              {"slack", c.slack}});
    json out{{"name", r.name},
             {"k", r.k},
             {"srev", rational_to_json(r.srev)},
             {"brev", rational_to_json(r.brev)},
             {"val", rational_to_json(r.value)},
             {"identical_items", r.identical_items},
             {"checks", std::move(checks)}};
    if (r.rev_opt) out["rev_opt"] = rational_to_json(*r.rev_opt);
    if (r.identical_items) out["item_rev1"] = rational_to_json(r.item_rev1);
    return out;
}

json growth_rows_to_json(const std::vector<GrowthRow>& rows) {
    json out = json::array();
    for (const auto& row : rows)
        out.push_back(json{{"k", row.k},
                           {"estimate", row.estimate},
                           {"std_error", row.std_error},
                           {"normalized", row.normalized}});
    return out;
}

}  // namespace mechlab

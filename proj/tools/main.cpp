#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mechlab/eranalytics.hpp"
#include "mechlab/harness.hpp"
#include "mechlab/json_io.hpp"
#include "mechlab/mcestimate.hpp"
#include "mechlab/myerson.hpp"
#include "mechlab/optmech.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw mechlab::Error(mechlab::ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw mechlab::Error(mechlab::ErrorKind::ParseError, "cannot open " + path);
    f << text;
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw mechlab::Error(mechlab::ErrorKind::ParseError, "input is not valid JSON");
    return j;
}

std::size_t max_types_default() {
    if (const char* env = std::getenv("MECHLAB_MAX_TYPES")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return mechlab::kDefaultMaxTypes;
}

mechlab::SolveMode parse_mode(const std::string& mode) {
    if (mode == "exact") return mechlab::SolveMode::Exact;
    if (mode == "float") return mechlab::SolveMode::Float;
    throw mechlab::Error(mechlab::ErrorKind::ParseError, "mode must be exact or float");
}

json price_result_to_json(const mechlab::PriceResult& r) {
    json prices = json::array();
    for (const auto& p : r.optimal_prices) prices.push_back(mechlab::rational_to_json(p));
    return json{{"revenue", mechlab::rational_to_json(r.revenue)},
                {"chosen_price", mechlab::rational_to_json(r.chosen_price)},
                {"optimal_prices", std::move(prices)}};
}

struct CommonOpts {
    std::string input;
    std::string output;
};

void add_io(CLI::App* cmd, CommonOpts& io) {
    cmd->add_option("--input", io.input, "input JSON file, - for stdin");
    cmd->add_option("--output", io.output, "output file, - for stdout");
}

int run(int argc, char** argv) {
    CLI::App app{"revenue bounds for selling independent items to one additive buyer"};
    app.require_subcommand(1);

    CommonOpts io;
    std::string mode = "exact";
    std::string format = "json";
    std::string name = "instance";
    std::size_t max_types = max_types_default();
    std::uint64_t seed = 1;
    std::size_t samples = 200000;
    std::vector<std::size_t> ks;
    double tol = 1e-12;

    auto* rev = app.add_subcommand("rev", "optimal posted price for one item");
    add_io(rev, io);

    auto* srev_cmd = app.add_subcommand("srev", "sum of per-item optimal revenues");
    add_io(srev_cmd, io);

    auto* brev_cmd = app.add_subcommand("brev", "optimal single price for the grand bundle");
    add_io(brev_cmd, io);

    auto* solve = app.add_subcommand("solve", "optimal mechanism by linear programming");
    add_io(solve, io);
    solve->add_option("--mode", mode, "exact or float");
    solve->add_option("--max-types", max_types, "type space size cap");

    auto* report = app.add_subcommand("report", "revenues plus every applicable bound check");
    add_io(report, io);
    report->add_option("--mode", mode, "exact or float");
    report->add_option("--max-types", max_types, "type space size cap");
    report->add_option("--format", format, "json or csv");
    report->add_option("--name", name, "instance name for the report");
    auto* no_lp = report->add_flag("--no-lp", "skip the optimal-mechanism LP");

    auto* verify = app.add_subcommand("verify", "run the bound checks, one line each");
    add_io(verify, io);
    verify->add_option("--mode", mode, "exact or float");
    verify->add_option("--max-types", max_types, "type space size cap");
    auto* verify_no_lp = verify->add_flag("--no-lp", "skip the optimal-mechanism LP");

    auto* er_constants = app.add_subcommand("er-constants", "equal-revenue closed-form constants");
    er_constants->add_option("--tol", tol, "root-finding tolerance");
    er_constants->add_option("--output", io.output, "output file, - for stdout");

    auto* er_growth =
        app.add_subcommand("er-growth", "Monte Carlo bundle revenue growth for i.i.d. ER items");
    er_growth->add_option("--k", ks, "item counts")->required();
    er_growth->add_option("--seed", seed, "RNG seed");
    er_growth->add_option("--samples", samples, "Monte Carlo samples per k");
    er_growth->add_option("--output", io.output, "output file, - for stdout");

    auto* limit = app.add_subcommand("limit", "exact brev(F^k)/k against the expectation");
    add_io(limit, io);
    limit->add_option("--k", ks, "item counts")->required();

    auto* menu = app.add_subcommand("menu", "expected revenue of a posted lottery menu");
    add_io(menu, io);
    menu->add_option("--max-types", max_types, "type space size cap");

    CLI11_PARSE(app, argc, argv);

    if (rev->parsed()) {
        const auto d = mechlab::dist_from_json(parse_json(read_input(io.input)));
        write_output(io.output, price_result_to_json(mechlab::rev1(d)).dump(2));
    } else if (srev_cmd->parsed()) {
        const auto p = mechlab::product_from_json(parse_json(read_input(io.input)));
        write_output(io.output,
                     json{{"srev", mechlab::rational_to_json(mechlab::srev(p))}}.dump(2));
    } else if (brev_cmd->parsed()) {
        const auto p = mechlab::product_from_json(parse_json(read_input(io.input)));
        write_output(io.output, price_result_to_json(mechlab::brev(p)).dump(2));
    } else if (solve->parsed()) {
        const auto p = mechlab::product_from_json(parse_json(read_input(io.input)));
        const auto sol = mechlab::solve_optimal(p, parse_mode(mode), max_types);
        write_output(io.output, mechlab::lp_solution_to_json(sol).dump(2));
    } else if (report->parsed()) {
        const auto p = mechlab::product_from_json(parse_json(read_input(io.input)));
        mechlab::ReportOptions opts;
        opts.run_lp = !no_lp->count();
        opts.mode = parse_mode(mode);
        opts.max_types = max_types;
        const auto r = mechlab::report(p, name, opts);
        if (format == "csv")
            write_output(io.output, mechlab::reports_to_csv({r}));
        else if (format == "json")
            write_output(io.output, mechlab::report_to_json(r).dump(2));
        else
            throw mechlab::Error(mechlab::ErrorKind::ParseError, "format must be json or csv");
    } else if (verify->parsed()) {
        const auto p = mechlab::product_from_json(parse_json(read_input(io.input)));
        mechlab::ReportOptions opts;
        opts.run_lp = !verify_no_lp->count();
        opts.mode = parse_mode(mode);
        opts.max_types = max_types;
        const auto r = mechlab::report(p, name, opts);
        std::ostringstream out;
        bool all_pass = true;
        for (const auto& c : r.checks) {
            std::string status = "n/a ";
            if (c.applicable && !c.asserted) status = "info";
            if (c.applicable && c.asserted) status = c.passed ? "pass" : "FAIL";
            if (c.applicable && c.asserted && !c.passed) all_pass = false;
            out << "[" << status << "] " << c.name << " slack=" << c.slack << "\n";
        }
        out << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
        write_output(io.output, out.str());
        if (!all_pass) return kExitInternal;
    } else if (er_constants->parsed()) {
        const auto c = mechlab::solve_constants(tol);
        const auto sweep = mechlab::brev_er2_via_price_sweep(1000);
        write_output(io.output, json{{"w", c.w},
                                     {"brev_er2", c.brev_er2},
                                     {"sep_bun_ratio", c.sep_bun_ratio},
                                     {"iid_bound", c.iid_bound},
                                     {"c57", c.c57},
                                     {"sweep_price", sweep.first},
                                     {"sweep_revenue", sweep.second}}
                                   .dump(2));
    } else if (er_growth->parsed()) {
        mechlab::McConfig cfg;
        cfg.seed = seed;
        cfg.samples = samples;
        write_output(io.output,
                     mechlab::growth_rows_to_json(mechlab::growth_table(ks, cfg)).dump(2));
    } else if (limit->parsed()) {
        const auto d = mechlab::dist_from_json(parse_json(read_input(io.input)));
        json rows = json::array();
        for (const auto& row : mechlab::limit_check(d, ks))
            rows.push_back(json{{"k", row.k},
                                {"brev_over_k", mechlab::rational_to_json(row.brev_over_k)},
                                {"expectation", mechlab::rational_to_json(row.expectation)}});
        write_output(io.output, rows.dump(2));
    } else if (menu->parsed()) {
        const json j = parse_json(read_input(io.input));
        const auto p = mechlab::product_from_json(
            j.contains("dist") ? j.at("dist") : j);
        if (!j.contains("menu"))
            throw mechlab::Error(mechlab::ErrorKind::ParseError, "missing field \"menu\"");
        const auto entries = mechlab::menu_from_json(j.at("menu"));
        const auto r = mechlab::menu_revenue(p, entries, max_types);
        write_output(io.output, json{{"revenue", mechlab::rational_to_json(r)}}.dump(2));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mechlab::Error& e) {
        std::cerr << json{{"error", {{"kind", mechlab::error_kind_name(e.kind())},
                                     {"detail", e.detail()}}}}
                         .dump()
                  << "\n";
        return mechlab::is_input_error(e.kind()) ? kExitInput : kExitLimit;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"kind", "internal"}, {"detail", e.what()}}}}.dump() << "\n";
        return kExitInternal;
    }
}

// Command-line harness: instance generation, single solves, oracles, and the
// experiment grids and sweeps.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snp/aon.hpp"
#include "snp/errors.hpp"
#include "snp/experiment.hpp"
#include "snp/generator.hpp"
#include "snp/instance_io.hpp"
#include "snp/oracle.hpp"
#include "snp/search.hpp"

namespace {

using nlohmann::json;

struct Shared {
    std::uint64_t seed = 7;
    double step = 0.5;
    std::string qub_mode = "effective";
    std::string out;
    std::string format = "csv";
};

void add_shared(CLI::App* cmd, Shared& s) {
    cmd->add_option("--seed", s.seed, "Generator seed")->capture_default_str();
    cmd->add_option("--step", s.step, "Price step of the search")->capture_default_str();
    cmd->add_option("--qub-mode", s.qub_mode, "Lead-time bound used by the search")
        ->check(CLI::IsMember({"global", "effective"}))
        ->capture_default_str();
    cmd->add_option("--out", s.out, "Output file (stdout when omitted)");
    cmd->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

snp::SearchConfig search_config(const Shared& s) {
    snp::SearchConfig cfg;
    cfg.step_size = s.step;
    cfg.q_bound_mode = snp::parse_qbound_mode(s.qub_mode);
    return cfg;
}

json cell_json(const snp::Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return nullptr;
}

json table_json(const snp::Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json obj = json::object();
        for (std::size_t k = 0; k < t.header.size(); ++k) obj[t.header[k]] = cell_json(r[k]);
        rows.push_back(std::move(obj));
    }
    return rows;
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw snp::Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw snp::Error("write to '" + path + "' failed");
}

void write_table(const snp::Table& t, const Shared& s) {
    if (s.format == "json") {
        write_text(table_json(t).dump(2) + "\n", s.out);
        return;
    }
    std::ostringstream os;
    snp::emit_csv(t, os);
    write_text(os.str(), s.out);
}

json assignment_json(const snp::Assignment& x) {
    json a = json::array();
    for (int agent : x.agents()) a.push_back(agent == snp::Assignment::kNone ? json(nullptr) : json(agent));
    return a;
}

json fixed_json(const snp::FixedRSolution& s) {
    return {{"price", s.price},
            {"profit", s.profit.total},
            {"quantity", s.quantity},
            {"demand", s.demand.total},
            {"regime", std::string(snp::to_string(s.regime))},
            {"selected", s.selected},
            {"assignment", assignment_json(s.assignment)}};
}

void report_failures(const std::vector<snp::ResultRow>& rows) {
    for (const auto& r : rows) {
        if (!r.ok) std::cerr << json{{"row", r.id}, {"error", r.error}}.dump() << '\n';
    }
}

std::string error_kind(const snp::Error& err) {
    if (dynamic_cast<const snp::InfeasibleError*>(&err)) return "infeasible";
    if (dynamic_cast<const snp::ParseError*>(&err)) return "parse";
    if (dynamic_cast<const snp::ValidationError*>(&err)) return "validation";
    if (dynamic_cast<const snp::SizeGuardError*>(&err)) return "size_guard";
    if (dynamic_cast<const snp::ConfigError*>(&err)) return "config";
    if (dynamic_cast<const snp::PreconditionError*>(&err)) return "precondition";
    if (dynamic_cast<const snp::NegativeDemandError*>(&err)) return "negative_demand";
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selective newsvendor solvers and experiments"};
    app.require_subcommand(1);

    Shared shared;
    std::string instance_path;
    std::string size = "small";
    int agents = 4;
    int customers = 50;
    std::vector<double> mean_range, wait_range, cap_range;

    auto* gen = app.add_subcommand("generate", "Generate a seeded instance file");
    add_shared(gen, shared);
    gen->add_option("--size", size)->check(CLI::IsMember({"small", "large"}))->capture_default_str();
    gen->add_option("--agents,-I", agents)->capture_default_str();
    gen->add_option("--customers,-J", customers)->capture_default_str();
    gen->add_option("--mean-range", mean_range)->expected(2);
    gen->add_option("--wait-range", wait_range)->expected(2);
    gen->add_option("--capacity-range", cap_range)->expected(2);

    auto* aon = app.add_subcommand("solve-aon", "Solve the all-or-nothing model");
    add_shared(aon, shared);
    aon->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);

    std::string balanced = "step";
    std::optional<double> r_lb;
    bool serial = false;
    bool printed_only = false;
    auto* dl = app.add_subcommand("solve-dl", "Run the R-search on the price-dependent model");
    add_shared(dl, shared);
    dl->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
    dl->add_option("--r-lb", r_lb, "Lower end of the price range (default s)");
    dl->add_option("--balanced-at-bound", balanced)->check(CLI::IsMember({"step", "jump"}))->capture_default_str();
    dl->add_flag("--serial", serial, "Use the serial fixed-price kernel");
    dl->add_flag("--printed-only", printed_only, "Skip grid certification and price polishing");
    dl->add_flag("--trace", "Emit the per-price trace instead of the solution");

    std::string kind = "dl";
    std::optional<double> price;
    auto* orc = app.add_subcommand("oracle", "Brute-force reference solution for tiny instances");
    add_shared(orc, shared);
    orc->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
    orc->add_option("--kind", kind)->check(CLI::IsMember({"fixed", "dl", "aon"}))->capture_default_str();
    orc->add_option("--price", price, "Selling price for --kind fixed");

    auto* table = app.add_subcommand("table", "Run the size-class grid");
    add_shared(table, shared);
    table->add_option("--size", size)->check(CLI::IsMember({"small", "large"}))->capture_default_str();
    bool serial_rows = false;
    table->add_flag("--serial-rows", serial_rows, "Run rows one at a time");

    std::string param;
    auto* sweep = app.add_subcommand("sweep", "Run a one-parameter sensitivity sweep");
    add_shared(sweep, shared);
    sweep->add_option("--param", param)->required()->check(CLI::IsMember(
        {"market_size", "agent_capacity", "price_scale", "base_price", "prod_cost", "unit_prod_time", "service_level",
         "waiting_time"}));
    sweep->add_flag("--serial-rows", serial_rows, "Run rows one at a time");

    std::string trace_out;
    auto* cmp = app.add_subcommand("compare", "Compare R-search with the sequential search");
    add_shared(cmp, shared);
    cmp->add_option("--instance", instance_path)->check(CLI::ExistingFile);
    cmp->add_option("--agents,-I", agents)->capture_default_str();
    cmp->add_option("--customers,-J", customers)->capture_default_str();
    cmp->add_option("--trace-out", trace_out, "Write both traces as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen) {
            snp::GenSpec spec;
            spec.size_class = snp::parse_size_class(size);
            spec.seed = shared.seed;
            spec.num_agents = agents;
            spec.num_customers = customers;
            if (!mean_range.empty()) spec.overrides.mean = snp::Range{mean_range[0], mean_range[1]};
            if (!wait_range.empty()) spec.overrides.wait = snp::Range{wait_range[0], wait_range[1]};
            if (!cap_range.empty()) spec.overrides.capacity = snp::Range{cap_range[0], cap_range[1]};
            write_text(snp::dump_instance(snp::generate_instance(spec)), shared.out);
        } else if (*aon) {
            const auto inst = snp::load_instance(instance_path);
            const auto sol = snp::solve_aon(inst);
            snp::Table t{{"profit", "Q_star", "selected"},
                         {{sol.profit.total, sol.quantity, static_cast<long long>(sol.assignment.selected_count())}}};
            if (shared.format == "json") {
                json doc = {{"profit", sol.profit.total},
                            {"quantity", sol.quantity},
                            {"assignment", assignment_json(sol.assignment)}};
                write_text(doc.dump(2) + "\n", shared.out);
            } else {
                write_table(t, shared);
            }
        } else if (*dl) {
            const auto inst = snp::load_instance(instance_path);
            auto cfg = search_config(shared);
            cfg.r_lb = r_lb;
            cfg.balanced_at_bound = balanced == "jump" ? snp::BalancedAtBound::Jump : snp::BalancedAtBound::Step;
            cfg.execution = serial ? snp::Execution::Serial : snp::Execution::Parallel;
            if (printed_only) cfg.certify = cfg.polish = false;
            const auto t0 = std::chrono::steady_clock::now();
            const auto sol = snp::run_r_search(inst, cfg);
            const std::chrono::duration<double> took = std::chrono::steady_clock::now() - t0;
            if (dl->count("--trace")) {
                snp::Comparison c;
                c.r_search = sol;
                auto t = snp::trace_table(c);
                write_table(t, shared);
            } else if (shared.format == "json") {
                json doc = fixed_json(sol.best);
                doc["r_upper"] = sol.r_upper;
                doc["subproblems"] = sol.trace.subproblems_solved;
                doc["jumps"] = sol.trace.jumps_taken;
                doc["terminal_reason"] = std::string(snp::to_string(sol.trace.reason));
                if (sol.metrics) doc["metrics"] = {{"M1", sol.metrics->m1}, {"M2", sol.metrics->m2}, {"M3", sol.metrics->m3}};
                write_text(doc.dump(2) + "\n", shared.out);
            } else {
                write_table(snp::result_table({snp::make_row(1, inst, sol, took.count())}), shared);
            }
        } else if (*orc) {
            const auto inst = snp::load_instance(instance_path);
            json doc;
            if (kind == "fixed") {
                if (!price) throw snp::ConfigError("--price is required for --kind fixed");
                const auto rep = snp::oracle_fixed_r(inst, *price);
                if (!rep.best) throw snp::InfeasibleError("no feasible assignment at R=" + std::to_string(*price));
                doc = fixed_json(*rep.best);
                doc["maps_enumerated"] = rep.maps_enumerated;
                doc["candidates"] = rep.candidates;
            } else if (kind == "dl") {
                const auto rep = snp::oracle_dl(inst, shared.step);
                if (!rep.best) throw snp::InfeasibleError("no feasible assignment in the price range");
                doc = fixed_json(*rep.best);
                doc["maps_enumerated"] = rep.maps_enumerated;
                doc["candidates"] = rep.candidates;
                doc["analytic_profit"] = rep.analytic_profit;
                doc["grid_profit"] = rep.grid_profit;
            } else {
                const auto rep = snp::oracle_aon(inst);
                doc = {{"profit", rep.best.profit.total},
                       {"quantity", rep.best.quantity},
                       {"assignment", assignment_json(rep.best.assignment)},
                       {"maps_enumerated", rep.maps_enumerated},
                       {"candidates", rep.candidates}};
            }
            write_text(doc.dump(2) + "\n", shared.out);
        } else if (*table) {
            snp::ExperimentConfig cfg;
            cfg.size_class = snp::parse_size_class(size);
            cfg.seed = shared.seed;
            cfg.search = search_config(shared);
            cfg.parallel_rows = !serial_rows;
            const auto rows = snp::run_table_experiment(cfg);
            report_failures(rows);
            write_table(snp::result_table(rows), shared);
        } else if (*sweep) {
            snp::ExperimentConfig cfg;
            cfg.seed = shared.seed;
            cfg.search = search_config(shared);
            cfg.sweep_param = snp::parse_sweep_param(param);
            cfg.parallel_rows = !serial_rows;
            const auto rows = snp::run_sweep(cfg);
            report_failures(rows);
            write_table(snp::sweep_table(cfg.sweep_param, rows), shared);
        } else if (*cmp) {
            snp::Instance inst;
            if (!instance_path.empty()) {
                inst = snp::load_instance(instance_path);
            } else {
                snp::GenSpec spec;
                spec.seed = shared.seed;
                spec.num_agents = agents;
                spec.num_customers = customers;
                inst = snp::generate_instance(spec);
            }
            const auto c = snp::compare_search_methods(inst, search_config(shared));
            write_table(snp::comparison_summary(c), shared);
            if (!trace_out.empty()) snp::emit_csv(snp::trace_table(c), trace_out);
        }
    } catch (const snp::Error& err) {
        std::cerr << json{{"error", error_kind(err)}, {"message", err.what()}}.dump() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << json{{"error", "internal"}, {"message", err.what()}}.dump() << '\n';
        return 3;
    }
    return 0;
}

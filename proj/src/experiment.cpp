#include "snp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "snp/errors.hpp"

namespace snp {

namespace {

constexpr std::pair<SweepParam, std::string_view> kSweepNames[] = {
    {SweepParam::MarketSize, "market_size"},       {SweepParam::AgentCapacity, "agent_capacity"},
    {SweepParam::PriceScale, "price_scale"},       {SweepParam::BasePrice, "base_price"},
    {SweepParam::ProdCost, "prod_cost"},           {SweepParam::UnitProdTime, "unit_prod_time"},
    {SweepParam::ServiceLevel, "service_level"},   {SweepParam::WaitingTime, "waiting_time"},
};

// lo + k * step, rounded to 1e-9 so 0.1 + 2 * 0.1 prints and compares as 0.3.
std::vector<SweepValue> scalar_grid(double lo, double hi, double step) {
    std::vector<SweepValue> out;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int k = 0; k <= n; ++k) {
        const double v = std::round((lo + k * step) * 1e9) / 1e9;
        out.push_back({v, std::nullopt});
    }
    return out;
}

std::vector<SweepValue> range_list(std::initializer_list<Range> ranges) {
    std::vector<SweepValue> out;
    for (const auto& r : ranges) out.push_back({0.0, r});
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ResultRow failed_row(int id, int agents, int customers, std::string error) {
    ResultRow row;
    row.id = id;
    row.agents = agents;
    row.customers = customers;
    row.error = std::move(error);
    return row;
}

ResultRow run_row(int id, const GenSpec& spec, const SearchConfig& search) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto inst = generate_instance(spec);
        const auto sol = run_r_search(inst, search);
        return make_row(id, inst, sol, seconds_since(t0));
    } catch (const Error& err) {
        return failed_row(id, spec.num_agents, spec.num_customers, err.what());
    }
}

std::vector<ResultRow> run_rows(const std::vector<GenSpec>& specs, const ExperimentConfig& cfg,
                                const std::vector<std::string>& labels) {
    const int n = static_cast<int>(specs.size());
    std::vector<ResultRow> rows(n);
#pragma omp parallel for schedule(dynamic, 1) if (cfg.parallel_rows)
    for (int k = 0; k < n; ++k) {
        rows[k] = run_row(k + 1, specs[k], cfg.search);
        if (!labels.empty()) rows[k].sweep_label = labels[k];
    }
    return rows;
}

std::vector<Cell> row_cells(const ResultRow& r) {
    std::vector<Cell> cells{static_cast<long long>(r.agents), static_cast<long long>(r.customers)};
    if (!r.ok) {
        cells.resize(cells.size() + 10);
        return cells;
    }
    const double nums[] = {r.profit, r.r_star, r.q_star, r.seconds, r.r_upper, r.demand,
                           r.delta,  r.metrics.m1, r.metrics.m2, r.metrics.m3};
    for (double v : nums) cells.emplace_back(v);
    return cells;
}

const std::vector<std::string> kResultColumns = {"I",   "J", "profit",   "R_star", "Q_star", "T",
                                                 "R_ub", "D", "delta_QD", "M1",     "M2",     "M3"};

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string_view to_string(SweepParam p) {
    for (const auto& [param, name] : kSweepNames) {
        if (param == p) return name;
    }
    return "unknown";
}

SweepParam parse_sweep_param(std::string_view text) {
    for (const auto& [param, name] : kSweepNames) {
        if (name == text) return param;
    }
    throw ConfigError("unknown sweep parameter '" + std::string(text) + "'");
}

std::string SweepValue::label() const {
    if (range) return "U[" + format_cell(range->lo) + ";" + format_cell(range->hi) + "]";
    return format_cell(scalar);
}

std::vector<SweepValue> default_sweep_values(SweepParam p) {
    switch (p) {
        case SweepParam::MarketSize: return range_list({{8, 12}, {10, 20}, {15, 25}, {30, 50}});
        case SweepParam::AgentCapacity: return range_list({{5, 10}, {10, 15}, {15, 20}, {20, 30}});
        case SweepParam::PriceScale: return scalar_grid(0.1, 1.4, 0.1);
        case SweepParam::BasePrice: return scalar_grid(95, 150, 5);
        case SweepParam::ProdCost: return scalar_grid(50, 80, 5);
        case SweepParam::UnitProdTime: return scalar_grid(0.1, 0.5, 0.1);
        case SweepParam::ServiceLevel: return scalar_grid(0.0, 1.0, 0.01);
        case SweepParam::WaitingTime: return range_list({{10, 20}, {10, 30}, {10, 40}, {10, 50}});
    }
    return {};
}

std::vector<std::pair<int, int>> default_grid(SizeClass size) {
    std::vector<std::pair<int, int>> grid;
    if (size == SizeClass::Large) {
        for (int i = 12; i <= 18; i += 2)
            for (int j = 200; j <= 300; j += 20) grid.emplace_back(i, j);
    } else {
        for (int i = 4; i <= 10; i += 2)
            for (int j = 50; j <= 100; j += 10) grid.emplace_back(i, j);
    }
    return grid;
}

ResultRow make_row(int id, const Instance& inst, const DlSolution& sol, double seconds) {
    ResultRow row;
    row.id = id;
    row.agents = inst.num_agents();
    row.customers = inst.num_customers();
    row.ok = true;
    row.profit = sol.best.profit.total;
    row.r_star = sol.best.price;
    row.q_star = sol.best.quantity;
    row.seconds = seconds;
    row.r_upper = sol.r_upper;
    row.demand = sol.best.demand.total;
    row.delta = sol.delta;
    if (sol.metrics) row.metrics = *sol.metrics;
    row.selected = sol.best.selected;
    row.subproblems = sol.trace.subproblems_solved;
    return row;
}

std::vector<ResultRow> run_table_experiment(const ExperimentConfig& cfg) {
    const auto grid = cfg.grid.value_or(default_grid(cfg.size_class));
    if (grid.empty()) throw ConfigError("experiment grid is empty");
    std::vector<GenSpec> specs;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        GenSpec spec;
        spec.size_class = cfg.size_class;
        spec.seed = row_seed(cfg.seed, k);
        spec.num_agents = grid[k].first;
        spec.num_customers = grid[k].second;
        specs.push_back(spec);
    }
    return run_rows(specs, cfg, {});
}

GenSpec sweep_base_spec(const ExperimentConfig& cfg) {
    GenSpec spec;
    spec.size_class = SizeClass::Small;
    spec.seed = cfg.seed;
    const bool wide = cfg.sweep_param == SweepParam::AgentCapacity || cfg.sweep_param == SweepParam::ProdCost;
    spec.num_agents = cfg.sweep_agents.value_or(4);
    spec.num_customers = cfg.sweep_customers.value_or(wide ? 100 : 50);
    if (cfg.sweep_param == SweepParam::AgentCapacity || cfg.sweep_param == SweepParam::WaitingTime) {
        spec.overrides.service_level = 0.0;
    }
    return spec;
}

GenSpec sweep_spec(const ExperimentConfig& cfg, const SweepValue& v) {
    auto spec = sweep_base_spec(cfg);
    auto& o = spec.overrides;
    auto need_range = [&] {
        if (!v.range) throw ConfigError(std::string(to_string(cfg.sweep_param)) + " sweep values must be ranges");
        return *v.range;
    };
    switch (cfg.sweep_param) {
        case SweepParam::MarketSize: o.mean = need_range(); break;
        case SweepParam::AgentCapacity: o.capacity = need_range(); break;
        case SweepParam::WaitingTime:
            o.mean = need_range();
            o.wait_per_mean = 2.0;
            break;
        case SweepParam::PriceScale: o.price_scale = v.scalar; break;
        case SweepParam::BasePrice: o.base_price = v.scalar; break;
        case SweepParam::ProdCost: o.prod_cost = v.scalar; break;
        case SweepParam::UnitProdTime: o.unit_prod_time = v.scalar; break;
        case SweepParam::ServiceLevel: o.service_level = v.scalar; break;
    }
    return spec;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
    const auto values = cfg.sweep_values.value_or(default_sweep_values(cfg.sweep_param));
    if (values.empty()) throw ConfigError("sweep value list is empty");
    std::vector<GenSpec> specs;
    std::vector<std::string> labels;
    for (const auto& v : values) {
        specs.push_back(sweep_spec(cfg, v));
        labels.push_back(v.label());
    }
    return run_rows(specs, cfg, labels);
}

Comparison compare_search_methods(const Instance& inst, const SearchConfig& cfg) {
    Comparison cmp;
    cmp.r_search = run_r_search(inst, cfg);
    cmp.sequential = run_sequential_search(inst, cfg);
    const int seq = cmp.sequential.trace.subproblems_solved;
    cmp.reduction = seq > 0 ? 1.0 - static_cast<double>(cmp.r_search.trace.subproblems_solved) / seq : 0.0;
    return cmp;
}

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            if (v == 0.0) v = 0.0;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            std::string s = buf;
            if (s == "-0") s = "0";
            return s;
        }
        std::string operator()(const std::string& s) const { return quote(s); }
    };
    return std::visit(Visitor{}, c);
}

void emit_csv(const Table& table, std::ostream& out) {
    auto line = [&](const auto& cells, auto fmt) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out << ',';
            out << fmt(cells[k]);
        }
        out << '\n';
    };
    line(table.header, [](const std::string& s) { return quote(s); });
    for (const auto& row : table.rows) line(row, [](const Cell& c) { return format_cell(c); });
}

void emit_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    emit_csv(table, out);
    if (!out) throw Error("write to '" + path + "' failed");
}

Table result_table(const std::vector<ResultRow>& rows) {
    Table t;
    t.header.push_back("id");
    t.header.insert(t.header.end(), kResultColumns.begin(), kResultColumns.end());
    for (const auto& r : rows) {
        std::vector<Cell> cells{static_cast<long long>(r.id)};
        for (auto& c : row_cells(r)) cells.push_back(std::move(c));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table sweep_table(SweepParam p, const std::vector<ResultRow>& rows) {
    Table t;
    t.header = {"id", "param", "value"};
    t.header.insert(t.header.end(), kResultColumns.begin(), kResultColumns.end());
    for (const auto& r : rows) {
        std::vector<Cell> cells{static_cast<long long>(r.id), std::string(to_string(p)), r.sweep_label};
        for (auto& c : row_cells(r)) cells.push_back(std::move(c));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table trace_table(const Comparison& cmp) {
    Table t;
    t.header = {"method", "k", "R", "feasible", "profit", "Q_minus_D", "selected", "jumped"};
    auto add = [&](const char* method, const SearchTrace& trace) {
        long long k = 0;
        for (const auto& rec : trace.records) {
            std::vector<Cell> cells{std::string(method), k++, rec.price, static_cast<long long>(rec.feasible)};
            if (rec.feasible) {
                cells.emplace_back(rec.profit);
                cells.emplace_back(rec.quantity - rec.demand);
                cells.emplace_back(static_cast<long long>(rec.selected));
            } else {
                cells.resize(cells.size() + 3);
            }
            cells.emplace_back(static_cast<long long>(rec.jumped));
            t.rows.push_back(std::move(cells));
        }
    };
    add("r_search", cmp.r_search.trace);
    add("sequential", cmp.sequential.trace);
    return t;
}

Table comparison_summary(const Comparison& cmp) {
    Table t;
    t.header = {"method", "profit", "R_star", "Q_star", "D", "subproblems", "reduction"};
    auto add = [&](const char* method, const DlSolution& s, Cell reduction) {
        t.rows.push_back({std::string(method), s.best.profit.total, s.best.price, s.best.quantity,
                          s.best.demand.total, static_cast<long long>(s.trace.subproblems_solved),
                          std::move(reduction)});
    };
    add("r_search", cmp.r_search, cmp.reduction);
    add("sequential", cmp.sequential, Cell{});
    return t;
}

}  // namespace snp

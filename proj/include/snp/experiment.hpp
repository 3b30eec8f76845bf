#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "snp/generator.hpp"
#include "snp/search.hpp"

namespace snp {

enum class SweepParam {
    MarketSize,
    AgentCapacity,
    PriceScale,
    BasePrice,
    ProdCost,
    UnitProdTime,
    ServiceLevel,
    WaitingTime,
};

std::string_view to_string(SweepParam p);
SweepParam parse_sweep_param(std::string_view text);

/// One sweep setting: a scalar for numeric parameters, a range for distribution parameters.
struct SweepValue {
    double scalar = 0.0;
    std::optional<Range> range;
    std::string label() const;
};

/// Default value list of a sweep, in emission order.
std::vector<SweepValue> default_sweep_values(SweepParam p);

struct ExperimentConfig {
    SizeClass size_class = SizeClass::Small;
    std::uint64_t seed = 7;
    /// (I, J) pairs; defaults to the size-class grid when unset.
    std::optional<std::vector<std::pair<int, int>>> grid;
    SearchConfig search;
    /// Run grid or sweep rows concurrently.
    bool parallel_rows = true;

    SweepParam sweep_param = SweepParam::PriceScale;
    std::optional<std::vector<SweepValue>> sweep_values;
    /// Base instance size for sweeps; defaults depend on the parameter.
    std::optional<int> sweep_agents;
    std::optional<int> sweep_customers;
};

/// Small: I in {4,6,8,10}, J in {50..100 by 10}. Large: I in {12..18 by 2}, J in {200..300 by 20}.
std::vector<std::pair<int, int>> default_grid(SizeClass size);

struct ResultRow {
    int id = 0;
    int agents = 0;
    int customers = 0;
    std::string sweep_label;  // empty outside sweeps
    bool ok = false;
    std::string error;        // set when !ok
    double profit = 0.0;
    double r_star = 0.0;
    double q_star = 0.0;
    double seconds = 0.0;
    double r_upper = 0.0;
    double demand = 0.0;
    double delta = 0.0;
    Metrics metrics;
    int selected = 0;
    int subproblems = 0;
};

/// Builds a result row from a finished search.
ResultRow make_row(int id, const Instance& inst, const DlSolution& sol, double seconds);

std::vector<ResultRow> run_table_experiment(const ExperimentConfig& cfg);
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);

/// Base instance spec of a sweep and the spec for one of its values.
GenSpec sweep_base_spec(const ExperimentConfig& cfg);
GenSpec sweep_spec(const ExperimentConfig& cfg, const SweepValue& v);

struct Comparison {
    DlSolution r_search;
    DlSolution sequential;
    double reduction = 0.0;  // 1 - r_search subproblems / sequential subproblems
};

Comparison compare_search_methods(const Instance& inst, const SearchConfig& cfg);

// ---- CSV ----

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Reals as %.6g with -0 printed as 0; strings quoted when they hold ',', '"' or a newline.
std::string format_cell(const Cell& c);
void emit_csv(const Table& table, std::ostream& out);
void emit_csv(const Table& table, const std::string& path);

/// Table-2 schema: id,I,J,profit,R_star,Q_star,T,R_ub,D,delta_QD,M1,M2,M3.
Table result_table(const std::vector<ResultRow>& rows);
/// Sweep schema: id,param,value followed by the Table-2 columns after id.
Table sweep_table(SweepParam p, const std::vector<ResultRow>& rows);
/// One line per visited price of either search: method,k,R,feasible,profit,Q_minus_D,selected,jumped.
Table trace_table(const Comparison& cmp);
/// Headline numbers of a comparison.
Table comparison_summary(const Comparison& cmp);

}  // namespace snp

#pragma once

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "snp/instance.hpp"

namespace snp {

/// Absolute tolerance for general real comparisons.
inline constexpr double kEps = 1e-9;
/// Tolerance for regime detection (Q vs D, Q vs bound).
inline constexpr double kRegimeTol = 1e-6;
/// Returned by q_effective for an empty selection.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Customer -> agent map; a customer is served by at most one agent.
class Assignment {
public:
    static constexpr int kNone = -1;

    Assignment() = default;
    explicit Assignment(int num_customers) : agent_of_(num_customers, kNone) {}
    explicit Assignment(std::vector<int> agent_of) : agent_of_(std::move(agent_of)) {}

    int num_customers() const noexcept { return static_cast<int>(agent_of_.size()); }
    int agent(int j) const { return agent_of_[j]; }
    bool selected(int j) const { return agent_of_[j] != kNone; }
    void assign(int j, int i) { agent_of_[j] = i; }
    void unassign(int j) { agent_of_[j] = kNone; }

    int selected_count() const noexcept;
    /// Per-agent number of assigned customers.
    std::vector<int> loads(int num_agents) const;
    std::span<const int> agents() const noexcept { return agent_of_; }

    bool operator==(const Assignment&) const = default;

private:
    std::vector<int> agent_of_;
};

/// True when X fits the instance shape, every agent index is valid and loads respect g_i.
bool respects_capacity(const Instance& inst, const Assignment& x);

struct DemandVector {
    std::vector<double> sold;  // Y_j
    double total = 0.0;        // D
};

struct ProfitBreakdown {
    double revenue = 0.0;
    double production_cost = 0.0;
    double salvage_credit = 0.0;
    double shortage_penalty = 0.0;
    double total = 0.0;
};

enum class Regime { Balanced, Shortage, Salvage };

std::string_view to_string(Regime r);

/// Regime of an order quantity against total demand at kRegimeTol.
Regime classify_regime(double demand, double quantity);

/// Fulfilment ratios, stored as fractions (1.0 == 100%).
struct Metrics {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
};

/// F_ij = p_ij mu_j - lambda (R - r).
double effort_value(const Instance& inst, int agent, int customer, double price);

/// Y_j under assignment X at price R. Throws NegativeDemandError if any Y_j < 0.
DemandVector compute_demands(const Instance& inst, const Assignment& x, double price);

/// Newsvendor profit from totals: R D - c Q + e (Q - D)+ - s (D - Q)+.
ProfitBreakdown profit_from_totals(const Economics& econ, double price, double demand, double quantity);

ProfitBreakdown profit_dl(const Instance& inst, const Assignment& x, double quantity, double price);

/// All-or-nothing profit at the base price; requires sold <= Q and Q > 0.
ProfitBreakdown profit_aon(const Instance& inst, const Assignment& x, double quantity);

/// Total expected units sold under X at the base price, sum of p_ij mu_j.
double aon_sold(const Instance& inst, const Assignment& x);

/// Largest Q compatible with every customer's waiting time, clamped at 0.
double q_upper_global(const Instance& inst);

/// Largest Q compatible with the selected customers' waiting times; kUnbounded when none selected.
double q_effective(const Instance& inst, const Assignment& x);

/// Lead-time cap implied by a waiting-time threshold t: (t - b)/a, clamped at 0.
double lead_time_cap(const Economics& econ, double wait);

Metrics compute_metrics(const Instance& inst, const Assignment& x, double quantity,
                        const DemandVector& demand);

}  // namespace snp

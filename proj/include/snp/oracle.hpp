#pragma once

#include <optional>

#include "snp/aon.hpp"
#include "snp/fixed_price.hpp"
#include "snp/instance.hpp"

namespace snp {

/// Hard limit on (I + 1)^J for every brute-force routine.
inline constexpr double kOracleMaxMaps = 1e7;

/// Number of customer -> (agent or none) maps, (I + 1)^J; throws SizeGuardError above the limit.
long long oracle_map_count(const Instance& inst);

struct FixedOracleReport {
    std::optional<FixedRSolution> best;  // empty: infeasible
    long long maps_enumerated = 0;       // always (I + 1)^J
    long long candidates = 0;            // maps within agent capacities
};

struct DlOracleReport {
    std::optional<FixedRSolution> best;  // price field holds R*
    long long maps_enumerated = 0;
    long long candidates = 0;
    double price_low = 0.0;              // search floor (s unless overridden)
    double grid_step = 0.0;
    double analytic_profit = 0.0;        // best over closed-form candidate prices
    double grid_profit = 0.0;            // best over the safety grid
};

struct AonOracleReport {
    AonSolution best;
    long long maps_enumerated = 0;
    long long candidates = 0;
};

/// Exhaustive fixed-price optimum with the same tie-break as solve_fixed_r.
/// `q_cap` limits Q on top of each selection's lead-time bound, as in solve_fixed_r.
FixedOracleReport oracle_fixed_r(const Instance& inst, double price, Execution exec = Execution::Parallel,
                                 double q_cap = kUnbounded);

/// Exhaustive joint optimum over assignments and prices in [price_low, R_max(X)].
/// Each assignment's profit is maximised in closed form per regime, then checked on a
/// grid of `price_step`.
DlOracleReport oracle_dl(const Instance& inst, double price_step, std::optional<double> price_low = std::nullopt,
                         Execution exec = Execution::Parallel, double q_cap = kUnbounded);

/// Exhaustive all-or-nothing optimum with Q = total sold. Throws InfeasibleError when no
/// customer can be served.
AonOracleReport oracle_aon(const Instance& inst);

}  // namespace snp

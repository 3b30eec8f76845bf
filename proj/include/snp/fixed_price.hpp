#pragma once

#include <optional>

#include "snp/instance.hpp"
#include "snp/model.hpp"

namespace snp {

/// Serial is the reference loop; Parallel runs the same per-threshold kernel under OpenMP
/// with upper-bound pruning. Both return the same optimum.
enum class Execution { Serial, Parallel };

/// Optimal (X, Q) for one selling price.
struct FixedRSolution {
    double price = 0.0;
    Assignment assignment;
    double quantity = 0.0;
    DemandVector demand;
    ProfitBreakdown profit;
    Regime regime = Regime::Balanced;
    double q_bound = kUnbounded;  // min(q_effective(assignment), q_cap)
    int selected = 0;
};

/// min(D(X, R), q_effective(X), q_cap), clamped at 0: the best order quantity for a fixed X and R.
/// `q_cap` is an optional supplier-wide limit on Q on top of the per-selection lead-time bound.
double optimal_q_for_assignment(const Instance& inst, const Assignment& x, double price, double q_cap = kUnbounded);

/// Evaluates X at price R with the optimal order quantity.
FixedRSolution evaluate_assignment(const Instance& inst, const Assignment& x, double price,
                                   double q_cap = kUnbounded);

/// Strict preference used to pick among optimal solutions of one fixed-price problem:
/// higher profit, then higher total demand, then fewer selected customers, then the
/// lexicographically smaller agent vector (unassigned sorts last).
bool preferred(const FixedRSolution& a, const FixedRSolution& b);

/// Exact optimum for fixed R. Throws InfeasibleError when the service level cannot be met,
/// and SizeGuardError when R < s and the instance is too large for the exhaustive fallback.
FixedRSolution solve_fixed_r(const Instance& inst, double price, Execution exec = Execution::Parallel,
                             double q_cap = kUnbounded);

/// As solve_fixed_r, but infeasibility is reported as nullopt.
std::optional<FixedRSolution> try_solve_fixed_r(const Instance& inst, double price,
                                                Execution exec = Execution::Parallel, double q_cap = kUnbounded);

/// Upper bound on the fixed-price optimum that ignores per-agent capacities and the
/// service level. Valid for R >= s; returns +inf below s. -inf when nothing is selectable
/// and the service level demands a nonempty selection.
double fixed_r_upper_bound(const Instance& inst, double price, double q_cap = kUnbounded);

/// Largest J for which prices below s fall back to exhaustive search.
inline constexpr int kFallbackMaxCustomers = 12;

}  // namespace snp

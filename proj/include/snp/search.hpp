#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "snp/fixed_price.hpp"
#include "snp/instance.hpp"
#include "snp/model.hpp"

namespace snp {

/// Which lead-time bound limits Q and triggers the stationary-price step.
enum class QBoundMode {
    Global,     // (min over all w_j - b)/a caps Q for every selection, as printed in the search procedure
    Effective,  // each selection is capped by its own q_effective
};

/// What to do when Q sits at its bound with no shortage.
enum class BalancedAtBound {
    Step,  // keep stepping; jumps fire only once a shortage appears
    Jump,  // jump to the fixed-Q stationary price r/2 + sum(p mu)/(2 lambda n)
};

std::string_view to_string(QBoundMode m);

/// Supplier-wide Q limit implied by a bound mode: q_upper_global in Global mode, unbounded otherwise.
double mode_q_cap(const Instance& inst, QBoundMode m);
QBoundMode parse_qbound_mode(std::string_view text);

struct SearchConfig {
    double step_size = 0.5;
    std::optional<double> r_lb;          // defaults to the shortage cost s
    QBoundMode q_bound_mode = QBoundMode::Effective;
    std::optional<int> max_iterations;   // defaults to 10 (R_ub - R_lb) / step_size
    BalancedAtBound balanced_at_bound = BalancedAtBound::Step;
    Execution execution = Execution::Parallel;
    /// After the descending pass, solve the remaining grid prices whose relaxation bound
    /// beats the incumbent. Off reproduces the printed procedure alone.
    bool certify = true;
    /// Finally move to the exact best price of the incumbent's selection and re-solve there.
    bool polish = true;
};

enum class TerminalReason {
    PriceAbove,       // refined price not below the current one
    StopFlag,         // stop flag set by an earlier jump
    BelowLowerBound,  // R fell to R_lb
    IterationCap,
    GridExhausted,    // sequential search visited every grid point
};

std::string_view to_string(TerminalReason r);

struct IterationRecord {
    double price = 0.0;
    bool feasible = false;
    double profit = 0.0;
    double quantity = 0.0;
    double demand = 0.0;
    int selected = 0;
    Regime regime = Regime::Balanced;
    bool jumped = false;  // a stationary-price jump was taken after this record
    Assignment assignment;
};

struct SearchTrace {
    std::vector<IterationRecord> records;        // descending pass, strictly decreasing R
    std::vector<IterationRecord> certification;  // later solves: pruned grid prices, then polish steps
    int subproblems_solved = 0;                  // feasible solves over both lists
    int jumps_taken = 0;
    TerminalReason reason = TerminalReason::BelowLowerBound;
};

struct DlSolution {
    FixedRSolution best;
    double r_upper = 0.0;
    double delta = 0.0;                // Q* - D
    std::optional<Metrics> metrics;    // absent when nothing is selected
    SearchTrace trace;
};

/// Price above which the service level cannot be met: K_sorted[J - ceil(J alpha) + 1]/lambda + r,
/// K_j = max_i p_ij mu_j sorted ascending, 1-based index clamped to [1, J].
double r_upper_bound(const Instance& inst);

/// Price in [lo, hi] maximising the profit of selection X when Q = min(D, cap); the profit is
/// concave piecewise quadratic in R with a kink where D = cap. hi is clipped so every Y_j >= 0.
double best_price_for_selection(const Instance& inst, const Assignment& x, double cap, double lo, double hi);

/// Stationary price of the concave profit for a fixed selection with Q held at its bound.
/// Balanced: sum(p mu)/(2 lambda n) + r/2. Shortage: sum(p mu)/(2 lambda n) + (r + s)/2.
double refine_price(const Instance& inst, const Assignment& x, Regime regime);

/// Descending price search with stationary-price jumps once Q hits its lead-time bound,
/// followed (when cfg.certify) by bound-pruned solves of the untouched grid prices.
DlSolution run_r_search(const Instance& inst, const SearchConfig& cfg = {});

/// Exhaustive grid from R_ub down to R_lb, both endpoints included when on the grid.
DlSolution run_sequential_search(const Instance& inst, const SearchConfig& cfg = {});

}  // namespace snp

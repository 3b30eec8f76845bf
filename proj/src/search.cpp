#include "snp/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "snp/errors.hpp"

namespace snp {

std::string_view to_string(QBoundMode m) {
    return m == QBoundMode::Global ? "global" : "effective";
}

QBoundMode parse_qbound_mode(std::string_view text) {
    if (text == "global") return QBoundMode::Global;
    if (text == "effective") return QBoundMode::Effective;
    throw ConfigError("unknown q-bound mode '" + std::string(text) + "'");
}

double mode_q_cap(const Instance& inst, QBoundMode m) {
    return m == QBoundMode::Global ? q_upper_global(inst) : kUnbounded;
}

std::string_view to_string(TerminalReason r) {
    switch (r) {
        case TerminalReason::PriceAbove: return "refined_price_above";
        case TerminalReason::StopFlag: return "stop_flag";
        case TerminalReason::BelowLowerBound: return "below_lower_bound";
        case TerminalReason::IterationCap: return "iteration_cap";
        case TerminalReason::GridExhausted: return "grid_exhausted";
    }
    return "unknown";
}

double r_upper_bound(const Instance& inst) {
    const int I = inst.num_agents();
    const int J = inst.num_customers();
    if (!(inst.econ.price_scale > 0.0)) throw PreconditionError("price scale must be positive");
    if (J == 0 || I == 0) throw PreconditionError("upper price bound needs agents and customers");

    std::vector<double> k_max(J, 0.0);
    for (int j = 0; j < J; ++j) {
        for (int i = 0; i < I; ++i) k_max[j] = std::max(k_max[j], inst.base_demand(i, j));
    }
    std::sort(k_max.begin(), k_max.end());
    const int index = std::clamp(J - min_selected(inst) + 1, 1, J);
    return k_max[index - 1] / inst.econ.price_scale + inst.econ.base_price;
}

double refine_price(const Instance& inst, const Assignment& x, Regime regime) {
    double potential = 0.0;
    int n = 0;
    for (int j = 0; j < x.num_customers(); ++j) {
        if (!x.selected(j)) continue;
        potential += inst.base_demand(x.agent(j), j);
        ++n;
    }
    if (n == 0) throw PreconditionError("stationary price needs a nonempty selection");
    const auto& e = inst.econ;
    const double slope_term = potential / (2.0 * e.price_scale * n);
    switch (regime) {
        case Regime::Balanced: return slope_term + e.base_price / 2.0;
        case Regime::Shortage: return slope_term + (e.base_price + e.shortage) / 2.0;
        case Regime::Salvage: break;
    }
    throw PreconditionError("stationary price is defined for balanced and shortage regimes only");
}

double best_price_for_selection(const Instance& inst, const Assignment& x, double cap, double lo, double hi) {
    const auto& e = inst.econ;
    double potential = 0.0;
    double min_k = std::numeric_limits<double>::infinity();
    int n = 0;
    for (int j = 0; j < x.num_customers(); ++j) {
        if (!x.selected(j)) continue;
        const double k = inst.base_demand(x.agent(j), j);
        potential += k;
        min_k = std::min(min_k, k);
        ++n;
    }
    if (n == 0) throw PreconditionError("best price needs a nonempty selection");
    hi = std::min(hi, min_k / e.price_scale + e.base_price);
    if (hi < lo) return hi;

    const double slope = e.price_scale * n;
    const double kink = e.base_price + (potential - cap) / slope;
    const double common = potential / (2.0 * slope);
    auto profit = [&](double price) {
        const double d = std::max(potential - slope * (price - e.base_price), 0.0);
        return profit_from_totals(e, price, d, std::min(d, cap)).total;
    };

    std::vector<double> prices{hi, lo};
    if (kink > lo && kink < hi) prices.push_back(kink);
    if (std::max(lo, kink) <= hi) prices.push_back(std::clamp(common + (e.base_price + e.prod_cost) / 2.0, std::max(lo, kink), hi));
    if (lo <= std::min(hi, kink)) prices.push_back(std::clamp(common + (e.base_price + e.shortage) / 2.0, lo, std::min(hi, kink)));
    double best = prices.front();
    for (double p : prices) {
        if (profit(p) > profit(best) + kEps) best = p;
    }
    return best;
}

namespace {

struct Range {
    double upper;
    double lower;
};

Range search_range(const Instance& inst, const SearchConfig& cfg) {
    if (!(cfg.step_size > 0.0) || !std::isfinite(cfg.step_size)) throw ConfigError("step size must be positive");
    if (cfg.r_lb && !(*cfg.r_lb >= 0.0)) throw ConfigError("price lower bound must be nonnegative");
    require_valid(inst);
    const Range range{r_upper_bound(inst), cfg.r_lb.value_or(inst.econ.shortage)};
    if (!(range.upper > range.lower)) {
        throw ConfigError("empty search range: R_ub=" + std::to_string(range.upper) +
                          " <= R_lb=" + std::to_string(range.lower));
    }
    return range;
}

IterationRecord make_record(double price, const std::optional<FixedRSolution>& sol) {
    IterationRecord rec;
    rec.price = price;
    if (!sol) return rec;
    rec.feasible = true;
    rec.profit = sol->profit.total;
    rec.quantity = sol->quantity;
    rec.demand = sol->demand.total;
    rec.selected = sol->selected;
    rec.regime = sol->regime;
    rec.assignment = sol->assignment;
    return rec;
}

bool all_agents_full(const Instance& inst, const Assignment& x) {
    const auto load = x.loads(inst.num_agents());
    for (int i = 0; i < inst.num_agents(); ++i) {
        if (load[i] < inst.capacities[i]) return false;
    }
    return true;
}

DlSolution finish(const Instance& inst, double r_upper, SearchTrace trace, std::optional<FixedRSolution> best) {
    if (!best) throw InfeasibleError("every fixed-price subproblem in the search range was infeasible");
    DlSolution out;
    out.r_upper = r_upper;
    out.delta = best->quantity - best->demand.total;
    if (best->selected > 0) out.metrics = compute_metrics(inst, best->assignment, best->quantity, best->demand);
    out.best = std::move(*best);
    out.trace = std::move(trace);
    return out;
}

void keep_best(std::optional<FixedRSolution>& best, const std::optional<FixedRSolution>& sol) {
    if (sol && (!best || sol->profit.total > best->profit.total + kEps)) best = sol;
}

// Solves every grid price R_ub - k step in [R_lb, R_ub] that the descending pass did not
// visit and whose relaxation bound exceeds the incumbent, highest bound first.
void certify_grid(const Instance& inst, const SearchConfig& cfg, const Range& range, double q_cap, SearchTrace& trace,
                  std::optional<FixedRSolution>& best) {
    std::vector<double> visited;
    for (const auto& rec : trace.records) visited.push_back(rec.price);
    std::sort(visited.begin(), visited.end());
    auto seen = [&](double price) {
        const auto it = std::lower_bound(visited.begin(), visited.end(), price - kEps);
        return it != visited.end() && *it <= price + kEps;
    };

    struct Candidate {
        double price;
        double bound;
    };
    std::vector<Candidate> todo;
    for (long k = 0;; ++k) {
        const double price = range.upper - static_cast<double>(k) * cfg.step_size;
        if (price < range.lower - kEps) break;
        if (!(price > 0.0) || seen(price)) continue;
        todo.push_back({price, fixed_r_upper_bound(inst, price, q_cap)});
    }
    std::stable_sort(todo.begin(), todo.end(), [](const Candidate& a, const Candidate& b) { return a.bound > b.bound; });

    for (const auto& c : todo) {
        const double incumbent = best ? best->profit.total : -std::numeric_limits<double>::infinity();
        if (c.bound <= incumbent + kEps) break;
        const auto sol = try_solve_fixed_r(inst, c.price, cfg.execution, q_cap);
        trace.certification.push_back(make_record(c.price, sol));
        if (!sol) continue;
        ++trace.subproblems_solved;
        keep_best(best, sol);
    }
}

// Re-solves at the exact best price of the incumbent's selection until that stops paying.
void polish_best(const Instance& inst, const SearchConfig& cfg, const Range& range, double q_cap, SearchTrace& trace,
                 std::optional<FixedRSolution>& best) {
    for (int round = 0; round < 8 && best && best->selected > 0; ++round) {
        const double lo = std::max(range.lower, inst.econ.shortage);
        const double price = best_price_for_selection(inst, best->assignment, best->q_bound, lo, range.upper);
        if (std::abs(price - best->price) <= kEps || !(price > 0.0)) return;
        const auto moved = evaluate_assignment(inst, best->assignment, price, q_cap);
        if (moved.profit.total <= best->profit.total + kEps) return;
        const auto sol = try_solve_fixed_r(inst, price, cfg.execution, q_cap);
        trace.certification.push_back(make_record(price, sol));
        if (!sol) return;
        ++trace.subproblems_solved;
        keep_best(best, sol);
    }
}

}  // namespace

DlSolution run_r_search(const Instance& inst, const SearchConfig& cfg) {
    const auto range = search_range(inst, cfg);
    const int max_iterations = cfg.max_iterations.value_or(
        std::max(1, static_cast<int>(std::ceil(10.0 * (range.upper - range.lower) / cfg.step_size))));
    const double q_cap = mode_q_cap(inst, cfg.q_bound_mode);

    SearchTrace trace;
    std::optional<FixedRSolution> best;
    bool stop = false;
    double anchor = range.upper;
    long steps_from_anchor = 0;
    double price = range.upper;

    auto step_down = [&] {
        ++steps_from_anchor;
        price = anchor - static_cast<double>(steps_from_anchor) * cfg.step_size;
    };

    trace.reason = TerminalReason::BelowLowerBound;
    for (int iter = 0;; ++iter) {
        if (!(price > range.lower + kEps)) {
            trace.reason = TerminalReason::BelowLowerBound;
            break;
        }
        if (iter >= max_iterations) {
            trace.reason = TerminalReason::IterationCap;
            break;
        }

        const auto sol = try_solve_fixed_r(inst, price, cfg.execution, q_cap);
        trace.records.push_back(make_record(price, sol));
        if (!sol) {
            step_down();
            continue;
        }
        ++trace.subproblems_solved;
        keep_best(best, sol);

        const bool at_bound = sol->quantity >= sol->q_bound - kRegimeTol;
        if (!at_bound || sol->selected == 0) {
            step_down();
            continue;
        }
        if (sol->regime == Regime::Balanced && cfg.balanced_at_bound == BalancedAtBound::Step) {
            step_down();
            continue;
        }

        const double refined = refine_price(inst, sol->assignment, sol->regime);
        if (refined >= price - kEps) {
            trace.reason = TerminalReason::PriceAbove;
            break;
        }
        if (stop) {
            trace.reason = TerminalReason::StopFlag;
            break;
        }
        trace.records.back().jumped = true;
        ++trace.jumps_taken;
        anchor = refined;
        steps_from_anchor = 0;
        price = refined;
        if (sol->selected == inst.num_customers() || all_agents_full(inst, sol->assignment)) stop = true;
    }
    if (cfg.certify) certify_grid(inst, cfg, range, q_cap, trace, best);
    if (cfg.polish) polish_best(inst, cfg, range, q_cap, trace, best);
    return finish(inst, range.upper, std::move(trace), std::move(best));
}

DlSolution run_sequential_search(const Instance& inst, const SearchConfig& cfg) {
    const auto range = search_range(inst, cfg);
    SearchTrace trace;
    trace.reason = TerminalReason::GridExhausted;
    std::optional<FixedRSolution> best;
    for (long k = 0;; ++k) {
        const double price = range.upper - static_cast<double>(k) * cfg.step_size;
        if (price < range.lower - kEps) break;
        const auto sol = try_solve_fixed_r(inst, price, cfg.execution, mode_q_cap(inst, cfg.q_bound_mode));
        trace.records.push_back(make_record(price, sol));
        if (!sol) continue;
        ++trace.subproblems_solved;
        keep_best(best, sol);
    }
    return finish(inst, range.upper, std::move(trace), std::move(best));
}

}  // namespace snp

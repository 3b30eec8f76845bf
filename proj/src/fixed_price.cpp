#include "snp/fixed_price.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "snp/assignment.hpp"
#include "snp/errors.hpp"

namespace snp {

double optimal_q_for_assignment(const Instance& inst, const Assignment& x, double price, double q_cap) {
    const double demand = compute_demands(inst, x, price).total;
    return std::max(std::min({demand, q_effective(inst, x), q_cap}), 0.0);
}

FixedRSolution evaluate_assignment(const Instance& inst, const Assignment& x, double price, double q_cap) {
    FixedRSolution sol;
    sol.price = price;
    sol.assignment = x;
    sol.demand = compute_demands(inst, x, price);
    sol.q_bound = std::min(q_effective(inst, x), q_cap);
    sol.quantity = std::max(std::min(sol.demand.total, sol.q_bound), 0.0);
    sol.profit = profit_from_totals(inst.econ, price, sol.demand.total, sol.quantity);
    sol.regime = classify_regime(sol.demand.total, sol.quantity);
    sol.selected = x.selected_count();
    return sol;
}

bool preferred(const FixedRSolution& a, const FixedRSolution& b) {
    if (a.profit.total > b.profit.total + kEps) return true;
    if (b.profit.total > a.profit.total + kEps) return false;
    if (a.demand.total > b.demand.total + kEps) return true;
    if (b.demand.total > a.demand.total + kEps) return false;
    if (a.selected != b.selected) return a.selected < b.selected;
    const auto key = [](int agent) { return agent == Assignment::kNone ? INT_MAX : agent; };
    const auto xa = a.assignment.agents();
    const auto xb = b.assignment.agents();
    return std::lexicographical_compare(xa.begin(), xa.end(), xb.begin(), xb.end(),
                                        [&](int u, int v) { return key(u) < key(v); });
}

namespace {

// Per-price data shared by every threshold subproblem.
struct PricedCustomers {
    Matrix weights;                  // customers x agents; negative marks an ineligible pair
    std::vector<double> best_weight; // per customer, max over eligible agents
    std::vector<int> eligible;       // customers with at least one eligible agent and w_j >= b
    std::vector<double> thresholds;  // distinct eligible waiting times, ascending
};

PricedCustomers price_customers(const Instance& inst, double price) {
    const int I = inst.num_agents();
    const int J = inst.num_customers();
    const auto& e = inst.econ;
    const double shift = e.price_scale * (price - e.base_price);

    PricedCustomers pc;
    pc.weights = Matrix(J, I, -1.0);
    pc.best_weight.assign(J, -1.0);
    for (int j = 0; j < J; ++j) {
        if (inst.waits[j] < e.ship_time) continue;
        for (int i = 0; i < I; ++i) {
            const double f = inst.base_demand(i, j) - shift;
            if (f < -kEps) continue;
            pc.weights(j, i) = std::max(f, 0.0);
            pc.best_weight[j] = std::max(pc.best_weight[j], pc.weights(j, i));
        }
        if (pc.best_weight[j] >= 0.0) {
            pc.eligible.push_back(j);
            pc.thresholds.push_back(inst.waits[j]);
        }
    }
    std::sort(pc.thresholds.begin(), pc.thresholds.end());
    pc.thresholds.erase(std::unique(pc.thresholds.begin(), pc.thresholds.end()), pc.thresholds.end());
    return pc;
}

std::vector<int> active_at(const Instance& inst, const PricedCustomers& pc, double threshold) {
    std::vector<int> active;
    for (int j : pc.eligible) {
        if (inst.waits[j] >= threshold) active.push_back(j);
    }
    return active;
}

// Best assignment among customers whose waiting time is at least the threshold.
std::optional<FixedRSolution> solve_threshold(const Instance& inst, const PricedCustomers& pc, double price,
                                              double threshold, int floor, double q_cap) {
    const auto active = active_at(inst, pc, threshold);
    if (static_cast<int>(active.size()) < floor) return std::nullopt;
    auto x = detail::solve_assignment(pc.weights, inst.capacities, active, floor);
    if (!x) return std::nullopt;
    return evaluate_assignment(inst, *x, price, q_cap);
}

// Profit bound at a threshold ignoring agent capacities; valid because profit is
// nondecreasing in D once R >= s.
double threshold_upper_bound(const Instance& inst, const PricedCustomers& pc, double price, double threshold,
                             int total_capacity, double q_cap) {
    std::vector<double> w;
    for (int j : pc.eligible) {
        if (inst.waits[j] >= threshold) w.push_back(pc.best_weight[j]);
    }
    const auto take = std::min<std::size_t>(w.size(), static_cast<std::size_t>(std::max(total_capacity, 0)));
    std::partial_sort(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(take), w.end(), std::greater<>());
    const double demand = std::accumulate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(take), 0.0);
    const double cap = std::min(lead_time_cap(inst.econ, threshold), q_cap);
    return profit_from_totals(inst.econ, price, demand, std::min(demand, cap)).total;
}

std::optional<FixedRSolution> fold(std::optional<FixedRSolution> best, std::optional<FixedRSolution>&& cand) {
    if (!cand) return best;
    if (!best || preferred(*cand, *best)) return std::move(cand);
    return best;
}

std::optional<FixedRSolution> empty_candidate(const Instance& inst, double price, int floor, double q_cap) {
    if (floor > 0) return std::nullopt;
    return evaluate_assignment(inst, Assignment(inst.num_customers()), price, q_cap);
}

int total_capacity(const Instance& inst) {
    return std::accumulate(inst.capacities.begin(), inst.capacities.end(), 0);
}

std::optional<FixedRSolution> structural_serial(const Instance& inst, double price, int floor, double q_cap) {
    const auto pc = price_customers(inst, price);
    auto best = empty_candidate(inst, price, floor, q_cap);
    for (double t : pc.thresholds) best = fold(std::move(best), solve_threshold(inst, pc, price, t, floor, q_cap));
    return best;
}

std::optional<FixedRSolution> structural_parallel(const Instance& inst, double price, int floor, double q_cap) {
    const auto pc = price_customers(inst, price);
    const int n = static_cast<int>(pc.thresholds.size());
    const int capacity = total_capacity(inst);

    std::vector<double> bound(n);
    for (int t = 0; t < n; ++t) bound[t] = threshold_upper_bound(inst, pc, price, pc.thresholds[t], capacity, q_cap);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return bound[a] > bound[b]; });

    std::vector<std::optional<FixedRSolution>> results(n);
    auto empty = empty_candidate(inst, price, floor, q_cap);
    double incumbent = empty ? empty->profit.total : -std::numeric_limits<double>::infinity();

#ifdef _OPENMP
    const int batch = std::max(4, 2 * omp_get_max_threads());
#else
    const int batch = 4;
#endif
    for (int start = 0; start < n; start += batch) {
        const int stop = std::min(n, start + batch);
        // Candidates that cannot come within 1e-6 of the incumbent are skipped; this
        // margin exceeds the tie tolerance, so pruning never changes the winner.
        if (bound[order[start]] < incumbent - 1e-6) break;
#pragma omp parallel for schedule(dynamic, 1)
        for (int k = start; k < stop; ++k) {
            const int t = order[k];
            if (bound[t] < incumbent - 1e-6) continue;
            results[t] = solve_threshold(inst, pc, price, pc.thresholds[t], floor, q_cap);
        }
        for (int k = start; k < stop; ++k) {
            if (const auto& r = results[order[k]]) incumbent = std::max(incumbent, r->profit.total);
        }
    }

    auto best = std::move(empty);
    for (int t = 0; t < n; ++t) best = fold(std::move(best), std::move(results[t]));
    return best;
}

// Exhaustive search used below the shortage cost, where profit is no longer
// monotone in total demand.
std::optional<FixedRSolution> exhaustive(const Instance& inst, double price, int floor, double q_cap) {
    const int I = inst.num_agents();
    const int J = inst.num_customers();
    if (J > kFallbackMaxCustomers || std::pow(I + 1.0, J) > 1e8) {
        throw SizeGuardError("price below shortage cost needs exhaustive search; instance too large (I=" +
                             std::to_string(I) + ", J=" + std::to_string(J) + ")");
    }
    const auto pc = price_customers(inst, price);
    Assignment x(J);
    std::vector<int> load(I, 0);
    std::optional<FixedRSolution> best;

    std::function<void(int, int)> visit = [&](int j, int chosen) {
        if (chosen + (J - j) < floor) return;
        if (j == J) {
            best = fold(std::move(best), evaluate_assignment(inst, x, price, q_cap));
            return;
        }
        visit(j + 1, chosen);
        for (int i = 0; i < I; ++i) {
            if (pc.weights(j, i) < 0.0 || load[i] >= inst.capacities[i]) continue;
            x.assign(j, i);
            ++load[i];
            visit(j + 1, chosen + 1);
            --load[i];
            x.unassign(j);
        }
    };
    visit(0, 0);
    return best;
}

}  // namespace

std::optional<FixedRSolution> try_solve_fixed_r(const Instance& inst, double price, Execution exec, double q_cap) {
    if (!(price > 0.0) || !std::isfinite(price)) throw PreconditionError("selling price must be positive");
    if (!(q_cap >= 0.0)) throw PreconditionError("order quantity cap must be nonnegative");
    const int floor = min_selected(inst);
    if (price < inst.econ.shortage) return exhaustive(inst, price, floor, q_cap);
    return exec == Execution::Serial ? structural_serial(inst, price, floor, q_cap)
                                     : structural_parallel(inst, price, floor, q_cap);
}

double fixed_r_upper_bound(const Instance& inst, double price, double q_cap) {
    if (price < inst.econ.shortage) return std::numeric_limits<double>::infinity();
    const auto pc = price_customers(inst, price);
    const int capacity = total_capacity(inst);
    double best = min_selected(inst) == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    for (double t : pc.thresholds) best = std::max(best, threshold_upper_bound(inst, pc, price, t, capacity, q_cap));
    return best;
}

FixedRSolution solve_fixed_r(const Instance& inst, double price, Execution exec, double q_cap) {
    auto sol = try_solve_fixed_r(inst, price, exec, q_cap);
    if (!sol) {
        throw InfeasibleError("no assignment meets the service level of " + std::to_string(min_selected(inst)) +
                              " customers at R=" + std::to_string(price));
    }
    return std::move(*sol);
}

}  // namespace snp

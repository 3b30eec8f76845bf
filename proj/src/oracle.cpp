#include "snp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "snp/errors.hpp"

namespace snp {

namespace {

// Decodes map index `code` in base (I + 1); digit 0 is "unassigned", d is agent d - 1.
// Returns false when an agent's capacity is exceeded.
bool decode(const Instance& inst, long long code, Assignment& x, std::vector<int>& load) {
    const int base = inst.num_agents() + 1;
    std::fill(load.begin(), load.end(), 0);
    for (int j = 0; j < inst.num_customers(); ++j) {
        const int digit = static_cast<int>(code % base);
        code /= base;
        if (digit == 0) {
            x.unassign(j);
            continue;
        }
        const int agent = digit - 1;
        if (++load[agent] > inst.capacities[agent]) return false;
        x.assign(j, agent);
    }
    return true;
}

// Runs `body(code, x, state)` over every map, in contiguous chunks; chunk results are
// merged in chunk order so the outcome does not depend on the thread count.
template <typename State, typename Body, typename Merge>
State enumerate_maps(const Instance& inst, Execution exec, Body body, Merge merge) {
    const long long total = oracle_map_count(inst);
    const long long chunks = exec == Execution::Serial ? 1 : std::min<long long>(total, 64);
    std::vector<State> partial(chunks);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::Parallel)
    for (long long c = 0; c < chunks; ++c) {
        const long long begin = total * c / chunks;
        const long long end = total * (c + 1) / chunks;
        Assignment x(inst.num_customers());
        std::vector<int> load(inst.num_agents());
        State& st = partial[c];
        for (long long code = begin; code < end; ++code) {
            if (decode(inst, code, x, load)) body(x, st);
        }
    }
    State out{};
    for (auto& p : partial) merge(out, std::move(p));
    return out;
}

bool lead_time_ok(const Instance& inst, const Assignment& x) {
    for (int j = 0; j < x.num_customers(); ++j) {
        if (x.selected(j) && inst.waits[j] < inst.econ.ship_time) return false;
    }
    return true;
}

struct FixedState {
    std::optional<FixedRSolution> best;
    long long candidates = 0;
};

struct DlState {
    long long candidates = 0;
    double analytic = -std::numeric_limits<double>::infinity();
    double grid = -std::numeric_limits<double>::infinity();
    double best_profit = -std::numeric_limits<double>::infinity();
    double best_price = 0.0;
    std::optional<Assignment> best_x;
};

}  // namespace

long long oracle_map_count(const Instance& inst) {
    const double maps = std::pow(inst.num_agents() + 1.0, inst.num_customers());
    if (maps > kOracleMaxMaps) {
        throw SizeGuardError("brute force over " + std::to_string(maps) + " assignment maps exceeds the limit of " +
                             std::to_string(kOracleMaxMaps));
    }
    return static_cast<long long>(std::llround(maps));
}

FixedOracleReport oracle_fixed_r(const Instance& inst, double price, Execution exec, double q_cap) {
    require_valid(inst);
    const int floor = min_selected(inst);
    const double shift = inst.econ.price_scale * (price - inst.econ.base_price);

    auto body = [&](const Assignment& x, FixedState& st) {
        ++st.candidates;
        if (x.selected_count() < floor || !lead_time_ok(inst, x)) return;
        for (int j = 0; j < x.num_customers(); ++j) {
            if (x.selected(j) && inst.base_demand(x.agent(j), j) - shift < -kEps) return;
        }
        auto sol = evaluate_assignment(inst, x, price, q_cap);
        if (!st.best || preferred(sol, *st.best)) st.best = std::move(sol);
    };
    auto merge = [](FixedState& out, FixedState&& in) {
        out.candidates += in.candidates;
        if (in.best && (!out.best || preferred(*in.best, *out.best))) out.best = std::move(in.best);
    };
    auto st = enumerate_maps<FixedState>(inst, exec, body, merge);

    FixedOracleReport rep;
    rep.best = std::move(st.best);
    rep.maps_enumerated = oracle_map_count(inst);
    rep.candidates = st.candidates;
    return rep;
}

DlOracleReport oracle_dl(const Instance& inst, double price_step, std::optional<double> price_low, Execution exec,
                         double q_cap) {
    require_valid(inst);
    if (!(price_step > 0.0)) throw ConfigError("oracle price step must be positive");
    const auto& e = inst.econ;
    const double lo = price_low.value_or(e.shortage);
    const int floor = min_selected(inst);

    auto body = [&](const Assignment& x, DlState& st) {
        ++st.candidates;
        if (x.selected_count() < floor || !lead_time_ok(inst, x)) return;

        double potential = 0.0;  // sum of p mu over selected pairs
        double min_k = std::numeric_limits<double>::infinity();
        int n = 0;
        for (int j = 0; j < x.num_customers(); ++j) {
            if (!x.selected(j)) continue;
            const double k = inst.base_demand(x.agent(j), j);
            potential += k;
            min_k = std::min(min_k, k);
            ++n;
        }

        auto consider = [&](double price, double profit, bool analytic) {
            if (analytic) st.analytic = std::max(st.analytic, profit);
            else st.grid = std::max(st.grid, profit);
            if (profit > st.best_profit + kEps) {
                st.best_profit = profit;
                st.best_price = price;
                st.best_x = x;
            }
        };

        if (n == 0) {
            consider(lo, 0.0, true);
            consider(lo, 0.0, false);
            return;
        }

        const double hi = min_k / e.price_scale + e.base_price;  // every Y_j >= 0 up to here
        if (hi < lo - kEps) return;
        const double cap = std::min(q_effective(inst, x), q_cap);
        const double slope = n * e.price_scale;
        auto demand_at = [&](double price) { return std::max(potential - slope * (price - e.base_price), 0.0); };
        auto profit_at = [&](double price) {
            const double d = demand_at(price);
            return profit_from_totals(e, price, d, std::min(d, cap)).total;
        };

        // D = cap at the regime boundary; above it the order tracks demand, below it
        // the lead time caps Q and the remainder is bought at s.
        const double boundary = e.base_price + (potential - cap) / slope;
        const double balanced_peak = potential / (2.0 * slope) + (e.base_price + e.prod_cost) / 2.0;
        const double shortage_peak = potential / (2.0 * slope) + (e.base_price + e.shortage) / 2.0;

        std::vector<double> prices{lo, hi};
        if (boundary > lo && boundary < hi) prices.push_back(boundary);
        const double bal_lo = std::max(lo, boundary);
        if (bal_lo <= hi) prices.push_back(std::clamp(balanced_peak, bal_lo, hi));
        const double sh_hi = std::min(hi, boundary);
        if (lo <= sh_hi) prices.push_back(std::clamp(shortage_peak, lo, sh_hi));
        for (double p : prices) consider(p, profit_at(p), true);

        for (long k = 0;; ++k) {
            const double p = lo + static_cast<double>(k) * price_step;
            if (p > hi + kEps) break;
            consider(p, profit_at(p), false);
        }
    };
    auto merge = [](DlState& out, DlState&& in) {
        out.candidates += in.candidates;
        out.analytic = std::max(out.analytic, in.analytic);
        out.grid = std::max(out.grid, in.grid);
        if (in.best_x && (!out.best_x || in.best_profit > out.best_profit + kEps)) {
            out.best_profit = in.best_profit;
            out.best_price = in.best_price;
            out.best_x = std::move(in.best_x);
        }
    };
    auto st = enumerate_maps<DlState>(inst, exec, body, merge);

    DlOracleReport rep;
    rep.maps_enumerated = oracle_map_count(inst);
    rep.candidates = st.candidates;
    rep.price_low = lo;
    rep.grid_step = price_step;
    rep.analytic_profit = st.analytic;
    rep.grid_profit = st.grid;
    if (st.best_x) rep.best = evaluate_assignment(inst, *st.best_x, st.best_price, q_cap);
    return rep;
}

AonOracleReport oracle_aon(const Instance& inst) {
    require_valid(inst);
    struct State {
        std::optional<Assignment> best;
        double profit = 0.0;
        long long candidates = 0;
    };
    auto body = [&](const Assignment& x, State& st) {
        ++st.candidates;
        if (x.selected_count() == 0) return;
        const double profit = (inst.econ.base_price - inst.econ.prod_cost) * aon_sold(inst, x);
        if (!st.best || profit > st.profit + kEps) {
            st.best = x;
            st.profit = profit;
        }
    };
    auto merge = [](State& out, State&& in) {
        out.candidates += in.candidates;
        if (in.best && (!out.best || in.profit > out.profit + kEps)) {
            out.best = std::move(in.best);
            out.profit = in.profit;
        }
    };
    auto st = enumerate_maps<State>(inst, Execution::Serial, body, merge);
    if (!st.best) throw InfeasibleError("no feasible assignment with Q > 0");

    AonOracleReport rep;
    rep.best = make_aon_solution(inst, *st.best);
    rep.maps_enumerated = oracle_map_count(inst);
    rep.candidates = st.candidates;
    return rep;
}

}  // namespace snp

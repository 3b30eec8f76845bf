#include "snp/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snp/errors.hpp"

namespace snp {

NegativeDemandError::NegativeDemandError(int customer, double demand)
    : Error("negative demand " + std::to_string(demand) + " for customer " + std::to_string(customer)),
      customer_(customer),
      demand_(demand) {}

int Assignment::selected_count() const noexcept {
    return static_cast<int>(std::count_if(agent_of_.begin(), agent_of_.end(),
                                          [](int a) { return a != kNone; }));
}

std::vector<int> Assignment::loads(int num_agents) const {
    std::vector<int> load(num_agents, 0);
    for (int a : agent_of_) {
        if (a != kNone) ++load[a];
    }
    return load;
}

bool respects_capacity(const Instance& inst, const Assignment& x) {
    if (x.num_customers() != inst.num_customers()) return false;
    for (int a : x.agents()) {
        if (a != Assignment::kNone && (a < 0 || a >= inst.num_agents())) return false;
    }
    const auto load = x.loads(inst.num_agents());
    for (int i = 0; i < inst.num_agents(); ++i) {
        if (load[i] > inst.capacities[i]) return false;
    }
    return true;
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::Balanced: return "balanced";
        case Regime::Shortage: return "shortage";
        case Regime::Salvage: return "salvage";
    }
    return "unknown";
}

Regime classify_regime(double demand, double quantity) {
    if (std::abs(demand - quantity) <= kRegimeTol) return Regime::Balanced;
    return demand > quantity ? Regime::Shortage : Regime::Salvage;
}

double effort_value(const Instance& inst, int agent, int customer, double price) {
    const auto& e = inst.econ;
    return inst.base_demand(agent, customer) - e.price_scale * (price - e.base_price);
}

DemandVector compute_demands(const Instance& inst, const Assignment& x, double price) {
    DemandVector out;
    out.sold.assign(inst.num_customers(), 0.0);
    for (int j = 0; j < inst.num_customers(); ++j) {
        if (!x.selected(j)) continue;
        const double y = effort_value(inst, x.agent(j), j, price);
        // Values within rounding of zero are the eligibility boundary F = 0.
        if (y < -kEps) throw NegativeDemandError(j, y);
        out.sold[j] = std::max(y, 0.0);
        out.total += out.sold[j];
    }
    return out;
}

ProfitBreakdown profit_from_totals(const Economics& econ, double price, double demand, double quantity) {
    ProfitBreakdown p;
    p.revenue = price * demand;
    p.production_cost = econ.prod_cost * quantity;
    if (quantity > demand) p.salvage_credit = econ.salvage * (quantity - demand);
    if (demand > quantity) p.shortage_penalty = econ.shortage * (demand - quantity);
    p.total = p.revenue - p.production_cost + p.salvage_credit - p.shortage_penalty;
    return p;
}

ProfitBreakdown profit_dl(const Instance& inst, const Assignment& x, double quantity, double price) {
    if (quantity < 0.0) throw PreconditionError("order quantity must be nonnegative");
    const auto demand = compute_demands(inst, x, price);
    return profit_from_totals(inst.econ, price, demand.total, quantity);
}

double aon_sold(const Instance& inst, const Assignment& x) {
    double sold = 0.0;
    for (int j = 0; j < x.num_customers(); ++j) {
        if (x.selected(j)) sold += inst.base_demand(x.agent(j), j);
    }
    return sold;
}

ProfitBreakdown profit_aon(const Instance& inst, const Assignment& x, double quantity) {
    if (quantity <= 0.0) throw PreconditionError("AON order quantity must be positive");
    const double sold = aon_sold(inst, x);
    if (sold > quantity + kEps) {
        throw PreconditionError("AON sold quantity " + std::to_string(sold) +
                                " exceeds order quantity " + std::to_string(quantity));
    }
    const auto& e = inst.econ;
    ProfitBreakdown p;
    p.revenue = e.base_price * sold;
    p.production_cost = e.prod_cost * quantity;
    const double excess = std::max(quantity - sold, 0.0);
    p.salvage_credit = e.salvage * excess;
    p.total = (e.base_price - e.prod_cost) * sold - (e.prod_cost - e.salvage) * excess;
    return p;
}

double lead_time_cap(const Economics& econ, double wait) {
    return std::max((wait - econ.ship_time) / econ.unit_prod_time, 0.0);
}

double q_upper_global(const Instance& inst) {
    if (inst.waits.empty()) return kUnbounded;
    return lead_time_cap(inst.econ, *std::min_element(inst.waits.begin(), inst.waits.end()));
}

double q_effective(const Instance& inst, const Assignment& x) {
    double min_wait = kUnbounded;
    for (int j = 0; j < x.num_customers(); ++j) {
        if (x.selected(j)) min_wait = std::min(min_wait, inst.waits[j]);
    }
    if (min_wait == kUnbounded) return kUnbounded;
    return lead_time_cap(inst.econ, min_wait);
}

Metrics compute_metrics(const Instance& inst, const Assignment& x, double quantity,
                        const DemandVector& demand) {
    const int n = x.selected_count();
    if (n == 0) throw PreconditionError("fulfilment ratio undefined with no selected customer");
    double ratio_sum = 0.0;
    double total_mean = 0.0;
    for (int j = 0; j < inst.num_customers(); ++j) {
        total_mean += inst.means[j];
        if (x.selected(j)) ratio_sum += demand.sold[j] / inst.means[j];
    }
    Metrics m;
    m.m1 = ratio_sum / n;
    m.m2 = quantity / total_mean;
    m.m3 = static_cast<double>(n) / inst.num_customers();
    return m;
}

}  // namespace snp

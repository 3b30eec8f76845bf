#include "snp/aon.hpp"

#include <numeric>

#include "snp/assignment.hpp"
#include "snp/errors.hpp"

namespace snp {

AonSolution make_aon_solution(const Instance& inst, const Assignment& x) {
    AonSolution sol;
    sol.assignment = x;
    sol.sold.assign(inst.num_customers(), 0.0);
    for (int j = 0; j < inst.num_customers(); ++j) {
        if (x.selected(j)) sol.sold[j] = inst.base_demand(x.agent(j), j);
    }
    sol.quantity = aon_sold(inst, x);
    sol.profit = profit_aon(inst, x, sol.quantity);
    return sol;
}

AonSolution solve_aon(const Instance& inst) {
    require_valid(inst);
    const int total = std::accumulate(inst.capacities.begin(), inst.capacities.end(), 0);
    if (total <= 0) throw InfeasibleError("no feasible assignment with Q > 0");

    Matrix weights(inst.num_agents(), inst.num_customers());
    for (int i = 0; i < inst.num_agents(); ++i) {
        for (int j = 0; j < inst.num_customers(); ++j) weights(i, j) = inst.base_demand(i, j);
    }
    const auto x = max_weight_capacitated_assignment(weights, inst.capacities, 0);
    if (x.selected_count() == 0) throw InfeasibleError("no feasible assignment with Q > 0");
    return make_aon_solution(inst, x);
}

}  // namespace snp

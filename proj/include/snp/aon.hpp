#pragma once

#include <vector>

#include "snp/instance.hpp"
#include "snp/model.hpp"

namespace snp {

struct AonSolution {
    Assignment assignment;
    double quantity = 0.0;
    ProfitBreakdown profit;
    std::vector<double> sold;  // p_ij mu_j for the serving agent, 0 when unserved
};

/// Exact all-or-nothing optimum. With e <= c the order quantity equals total sold, so the
/// problem is a max-weight capacitated assignment on p_ij mu_j.
/// Throws InfeasibleError when no customer can be served.
AonSolution solve_aon(const Instance& inst);

/// Builds the solution record for a given assignment with Q = total sold.
AonSolution make_aon_solution(const Instance& inst, const Assignment& x);

}  // namespace snp

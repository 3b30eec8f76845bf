#pragma once

#include <optional>
#include <span>

#include "snp/instance.hpp"
#include "snp/model.hpp"

namespace snp {

/// Maximum-weight assignment of customers to capacitated agents.
///
/// `weights` is agents x customers; a pair is eligible iff its weight is >= 0.
/// Every customer goes to at most one agent, agent i takes at most
/// capacities[i] customers, and at least `min_cardinality` customers are
/// assigned. Among maximum-weight solutions, zero-gain customers stay
/// unassigned unless the cardinality floor needs them, and equal-weight agent
/// choices go to the lower agent index.
///
/// Throws InfeasibleError when fewer than `min_cardinality` customers can be placed.
Assignment max_weight_capacitated_assignment(const Matrix& weights, std::span<const int> capacities,
                                             int min_cardinality);

namespace detail {

/// Gain below which an augmenting path is not worth taking.
inline constexpr double kGainTol = 1e-10;

/// Successive-shortest-path kernel on a customer-major weight table
/// (row j holds the weights of customer j for every agent). Only customers in
/// `active` are considered. Returns nullopt when the floor cannot be met.
std::optional<Assignment> solve_assignment(const Matrix& by_customer, std::span<const int> capacities,
                                           std::span<const int> active, int min_cardinality);

}  // namespace detail

}  // namespace snp

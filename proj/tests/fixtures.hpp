#pragma once

#include <cstdint>
#include <random>

#include "snp/generator.hpp"
#include "snp/instance.hpp"

namespace snp::test {

// One agent (g = 2), two customers mu = (10, 20), w = (93, 103), p = 1.
inline Instance fixture_e1() {
    Instance inst;
    inst.capacities = {2};
    inst.means = {10, 20};
    inst.waits = {93, 103};
    inst.effort = Matrix(1, 2, 1.0);
    inst.econ.unit_prod_time = 0.1;
    inst.econ.ship_time = 3;
    inst.econ.prod_cost = 70;
    inst.econ.salvage = 50;
    inst.econ.shortage = 90;
    inst.econ.price_scale = 1;
    inst.econ.base_price = 100;
    inst.econ.service_level = 0.5;
    return inst;
}

// E1 with tight waiting times: w = (13, 14), a = 1, alpha = 0.
inline Instance fixture_e2() {
    auto inst = fixture_e1();
    inst.waits = {13, 14};
    inst.econ.unit_prod_time = 1;
    inst.econ.service_level = 0;
    return inst;
}

// Small random instance in the oracle's reach. Waiting times straddle the lead-time
// bound so both regimes and dropped customers show up.
inline Instance tiny_instance(std::uint64_t seed, int agents, int customers, double alpha) {
    GenSpec spec;
    spec.seed = seed;
    spec.num_agents = agents;
    spec.num_customers = customers;
    spec.overrides.capacity = Range{1, 3};
    spec.overrides.mean = Range{5, 25};
    spec.overrides.wait = Range{5, 40};
    spec.overrides.unit_prod_time = 1.0;
    spec.overrides.service_level = alpha;
    spec.integer_means_and_waits = false;
    return generate_instance(spec);
}

}  // namespace snp::test

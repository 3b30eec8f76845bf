#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "snp/errors.hpp"
#include "snp/fixed_price.hpp"
#include "snp/generator.hpp"
#include "snp/oracle.hpp"
#include "snp/search.hpp"

using namespace snp;
using snp::test::fixture_e1;
using snp::test::fixture_e2;
using snp::test::tiny_instance;

TEST_CASE("E1 at 92.5") {
    for (auto exec : {Execution::Serial, Execution::Parallel}) {
        const auto sol = solve_fixed_r(fixture_e1(), 92.5, exec);
        CHECK(sol.selected == 2);
        CHECK(sol.quantity == doctest::Approx(45));
        CHECK(sol.demand.total == doctest::Approx(45));
        CHECK(sol.profit.total == doctest::Approx(1012.5));
        CHECK(sol.regime == Regime::Balanced);
    }
}

TEST_CASE("E2 at 102.5") {
    const auto sol = solve_fixed_r(fixture_e2(), 102.5);
    CHECK(sol.selected == 2);
    CHECK(sol.quantity == doctest::Approx(10));
    CHECK(sol.demand.total == doctest::Approx(25));
    CHECK(sol.profit.total == doctest::Approx(512.5));
    CHECK(sol.regime == Regime::Shortage);
    CHECK(sol.q_bound == doctest::Approx(10));
}

TEST_CASE("infeasible service level") {
    auto e1 = fixture_e1();
    e1.econ.service_level = 1.0;
    CHECK_THROWS_AS(solve_fixed_r(e1, 120), InfeasibleError);
    CHECK_FALSE(try_solve_fixed_r(e1, 120).has_value());
    CHECK_THROWS_AS(solve_fixed_r(e1, 0.0), PreconditionError);

    GenSpec spec;
    spec.seed = 3;
    spec.num_agents = 2;
    spec.num_customers = 60;
    spec.overrides.capacity = Range{5, 10};
    CHECK_THROWS_AS(solve_fixed_r(generate_instance(spec), 95), InfeasibleError);
}

TEST_CASE("optimal order quantity") {
    const auto e1 = fixture_e1();
    Assignment both(std::vector<int>{0, 0});
    CHECK(optimal_q_for_assignment(e1, both, 92.5) == doctest::Approx(45));
    CHECK(optimal_q_for_assignment(fixture_e2(), both, 102.5) == doctest::Approx(10));
    Assignment first(std::vector<int>{0, Assignment::kNone});
    CHECK(optimal_q_for_assignment(e1, first, 110) == 0.0);
    CHECK(optimal_q_for_assignment(e1, both, 110) == doctest::Approx(10));
}

TEST_CASE("lead-time feasibility of every returned solution") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = tiny_instance(seed, 2, 5, 0.4);
        for (double price : {91.0, 95.0, 100.0, 104.0}) {
            const auto sol = try_solve_fixed_r(inst, price);
            if (!sol) continue;
            for (int j = 0; j < inst.num_customers(); ++j) {
                if (!sol->assignment.selected(j)) continue;
                CHECK(inst.econ.unit_prod_time * sol->quantity + inst.econ.ship_time <= inst.waits[j] + 1e-9);
                CHECK(sol->demand.sold[j] >= 0.0);
            }
            CHECK(respects_capacity(inst, sol->assignment));
        }
    }
}

TEST_CASE("serial and parallel kernels agree on full-size instances") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        GenSpec spec;
        spec.seed = seed;
        spec.num_agents = 6;
        spec.num_customers = 80;
        spec.overrides.wait = Range{30, 120};
        const auto inst = generate_instance(spec);
        const double top = r_upper_bound(inst);
        for (double price = 90; price <= top; price += 3.5) {
            const auto a = try_solve_fixed_r(inst, price, Execution::Serial);
            const auto b = try_solve_fixed_r(inst, price, Execution::Parallel);
            REQUIRE(a.has_value() == b.has_value());
            if (!a) continue;
            CHECK(a->profit.total == doctest::Approx(b->profit.total).epsilon(1e-12));
            CHECK(a->assignment == b->assignment);
        }
    }
}

TEST_CASE("matches the oracle on random tiny instances, including prices below s") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int I = 1 + static_cast<int>(seed % 3);
        const int J = 2 + static_cast<int>(seed % 5);
        const auto inst = tiny_instance(seed * 7919, I, J, (seed % 4) * 0.25);
        for (double price : {80.0, 90.0, 96.0, 103.0, 111.0}) {
            const auto rep = oracle_fixed_r(inst, price, Execution::Serial);
            const auto sol = try_solve_fixed_r(inst, price);
            REQUIRE(rep.best.has_value() == sol.has_value());
            if (!sol) continue;
            CHECK(sol->profit.total == doctest::Approx(rep.best->profit.total).epsilon(1e-9));
            CHECK(sol->assignment == rep.best->assignment);
        }
    }
}

TEST_CASE("selection keeps every positive customer when lead time does not bind") {
    GenSpec spec;
    spec.seed = 21;
    spec.num_agents = 4;
    spec.num_customers = 40;
    spec.overrides.wait = Range{500, 600};
    spec.overrides.service_level = 0.0;
    const auto inst = generate_instance(spec);
    const auto sol = solve_fixed_r(inst, 100);
    const auto load = sol.assignment.loads(inst.num_agents());
    bool spare = false;
    for (int i = 0; i < inst.num_agents(); ++i) spare |= load[i] < inst.capacities[i];
    REQUIRE(spare);
    CHECK(sol.selected == inst.num_customers());
}

TEST_CASE("threshold scoring reproduces the direct profit") {
    std::mt19937_64 rng(5);
    const auto inst = tiny_instance(44, 3, 6, 0.0);
    for (int k = 0; k < 200; ++k) {
        Assignment x(inst.num_customers());
        std::vector<int> load(inst.num_agents(), 0);
        for (int j = 0; j < inst.num_customers(); ++j) {
            const int i = static_cast<int>(rng() % (inst.num_agents() + 1)) - 1;
            if (i >= 0 && load[i] < inst.capacities[i]) {
                x.assign(j, i);
                ++load[i];
            }
        }
        const double price = 90;
        bool ok = true;
        for (int j = 0; j < inst.num_customers(); ++j) {
            if (x.selected(j) && (effort_value(inst, x.agent(j), j, price) < 0 || inst.waits[j] < inst.econ.ship_time))
                ok = false;
        }
        if (!ok) continue;
        const auto sol = evaluate_assignment(inst, x, price);
        const double q = std::min(sol.demand.total, q_effective(inst, x));
        CHECK(sol.profit.total == doctest::Approx(profit_dl(inst, x, std::max(q, 0.0), price).total));
    }
}

TEST_CASE("exhaustive fallback has a size guard") {
    GenSpec spec;
    spec.seed = 2;
    spec.num_agents = 2;
    spec.num_customers = 20;
    CHECK_THROWS_AS(solve_fixed_r(generate_instance(spec), 80), SizeGuardError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "snp/errors.hpp"
#include "snp/generator.hpp"
#include "snp/model.hpp"

using namespace snp;
using snp::test::fixture_e1;
using snp::test::fixture_e2;

namespace {

Instance one_pair(double p, double mu) {
    auto inst = fixture_e1();
    inst.capacities = {1};
    inst.means = {mu};
    inst.waits = {100};
    inst.effort = Matrix(1, 1, p);
    return inst;
}

bool has_violation(const ValidationReport& r, const std::string& needle) {
    for (const auto& v : r) {
        if (v.message.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("validation") {
    GenSpec spec;
    spec.seed = 3;
    CHECK(validate_instance(generate_instance(spec)).empty());

    auto inst = fixture_e1();
    inst.econ.salvage = 80;
    CHECK(has_violation(validate_instance(inst), "salvage >= production cost"));

    inst = fixture_e1();
    inst.econ.service_level = 1.2;
    CHECK(has_violation(validate_instance(inst), "service level out of [0,1]"));

    inst = fixture_e1();
    inst.econ.salvage = inst.econ.prod_cost;
    CHECK(validate_instance(inst).empty());

    inst = fixture_e1();
    inst.effort = Matrix(2, 2, 1.0);
    CHECK_FALSE(validate_instance(inst).empty());
    CHECK_THROWS_AS(require_valid(inst), ValidationError);
}

TEST_CASE("effort value and demands") {
    const auto inst = one_pair(1.2, 10);
    CHECK(effort_value(inst, 0, 0, 105) == doctest::Approx(7));
    CHECK(effort_value(inst, 0, 0, 100) == doctest::Approx(12));

    const auto e1 = fixture_e1();
    CHECK(effort_value(e1, 0, 0, 120) == doctest::Approx(-10));

    Assignment x(1);
    x.assign(0, 0);
    auto d = compute_demands(inst, x, 105);
    CHECK(d.sold[0] == doctest::Approx(7));
    CHECK(compute_demands(inst, Assignment(1), 105).sold[0] == 0.0);

    Assignment both(std::vector<int>{0, 0});
    d = compute_demands(e1, both, 92.5);
    CHECK(d.sold[0] == doctest::Approx(17.5));
    CHECK(d.sold[1] == doctest::Approx(27.5));
    CHECK(d.total == doctest::Approx(45));

    CHECK_THROWS_AS(compute_demands(e1, both, 115), NegativeDemandError);
    try {
        compute_demands(e1, both, 115);
    } catch (const NegativeDemandError& err) {
        CHECK(err.customer() == 0);
    }

    const auto at_base = compute_demands(e1, both, 100);
    CHECK(at_base.sold[0] == 10.0);
    CHECK(at_base.sold[1] == 20.0);
}

TEST_CASE("price-dependent profit") {
    const auto inst = one_pair(1.2, 10);
    Assignment x(1);
    x.assign(0, 0);
    const auto p = profit_dl(inst, x, 10, 105);
    CHECK(p.total == doctest::Approx(185));
    CHECK(p.revenue == doctest::Approx(735));
    CHECK(p.production_cost == doctest::Approx(700));
    CHECK(p.salvage_credit == doctest::Approx(150));
    CHECK(p.shortage_penalty == 0.0);

    Assignment both(std::vector<int>{0, 0});
    CHECK(profit_dl(fixture_e1(), both, 45, 92.5).total == doctest::Approx(1012.5));
    const auto short_case = profit_dl(fixture_e2(), both, 10, 102.5);
    CHECK(short_case.total == doctest::Approx(512.5));
    CHECK(short_case.salvage_credit == 0.0);
    CHECK(short_case.shortage_penalty > 0.0);
}

TEST_CASE("all-or-nothing profit") {
    auto inst = one_pair(1.0, 18);
    Assignment x(1);
    x.assign(0, 0);
    CHECK(profit_aon(inst, x, 18).total == doctest::Approx(540));

    inst = one_pair(1.0, 10);
    CHECK(profit_aon(inst, x, 12).total == doctest::Approx(260));

    inst = one_pair(1.0, 20);
    CHECK_THROWS_AS(profit_aon(inst, x, 10), PreconditionError);
    CHECK_THROWS_AS(profit_aon(inst, x, 0), PreconditionError);
}

TEST_CASE("lead-time bounds") {
    GenSpec spec;
    spec.seed = 11;
    auto inst = generate_instance(spec);
    inst.waits[5] = 90;
    for (auto& w : inst.waits) w = std::max(w, 90.0);
    CHECK(q_upper_global(inst) == doctest::Approx(870));
    inst.waits[5] = 20;
    CHECK(q_upper_global(inst) == doctest::Approx(170));
    inst.waits[5] = 2;
    CHECK(q_upper_global(inst) == 0.0);

    auto e1 = fixture_e1();
    e1.econ.unit_prod_time = 1;
    Assignment both(std::vector<int>{0, 0});
    CHECK(q_effective(e1, both) == doctest::Approx(90));

    const auto e2 = fixture_e2();
    Assignment second(std::vector<int>{Assignment::kNone, 0});
    CHECK(q_effective(e2, second) == doctest::Approx(11));
    CHECK(std::isinf(q_effective(e2, Assignment(2))));
}

TEST_CASE("metrics") {
    const auto e1 = fixture_e1();
    Assignment both(std::vector<int>{0, 0});
    const auto d = compute_demands(e1, both, 92.5);
    const auto m = compute_metrics(e1, both, 45, d);
    CHECK(m.m1 == doctest::Approx(1.5625));
    CHECK(m.m2 == doctest::Approx(1.5));
    CHECK(m.m3 == doctest::Approx(1.0));

    const auto at_base = compute_demands(e1, both, 100);
    const auto unit = compute_metrics(e1, both, 30, at_base);
    CHECK(unit.m1 == doctest::Approx(1.0));
    CHECK(unit.m2 == doctest::Approx(1.0));

    CHECK_THROWS_AS(compute_metrics(e1, Assignment(2), 0, compute_demands(e1, Assignment(2), 100)),
                    PreconditionError);
}

TEST_CASE("profit identity and Q optimality on random inputs") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0, 1);
    Economics econ;
    for (int k = 0; k < 2000; ++k) {
        const double price = 90 + 40 * u(rng);
        const double demand = 500 * u(rng);
        const double q = 500 * u(rng);
        const double total = profit_from_totals(econ, price, demand, q).total;
        const double identity = (price - econ.prod_cost) * demand -
                                (econ.shortage - econ.prod_cost) * std::max(demand - q, 0.0) -
                                (econ.prod_cost - econ.salvage) * std::max(q - demand, 0.0);
        CHECK(total == doctest::Approx(identity).epsilon(1e-12));

        const double cap = 500 * u(rng);
        const double best_q = std::min(demand, cap);
        const double best = profit_from_totals(econ, price, demand, best_q).total;
        for (int g = 0; g <= 50; ++g) {
            const double qq = cap * g / 50.0;
            CHECK(profit_from_totals(econ, price, demand, qq).total <= best + 1e-9);
        }
    }
}

TEST_CASE("profit is quadratic in R within a regime") {
    const auto e1 = fixture_e1();
    Assignment both(std::vector<int>{0, 0});
    const double h = 0.25;
    auto f = [&](double price) {
        const auto d = compute_demands(e1, both, price);
        return profit_from_totals(e1.econ, price, d.total, d.total).total;  // balanced
    };
    for (double r0 = 91; r0 < 108; r0 += 1.5) {
        const double second = f(r0 + h) - 2 * f(r0) + f(r0 - h);
        CHECK(second == doctest::Approx(-2 * e1.econ.price_scale * 2 * h * h).epsilon(1e-6));
    }

    const auto e2 = fixture_e2();
    auto g = [&](double price) {
        const auto d = compute_demands(e2, both, price);
        return profit_from_totals(e2.econ, price, d.total, 10).total;  // shortage, Q held at 10
    };
    for (double r0 = 95; r0 < 108; r0 += 1.5) {
        const double second = g(r0 + h) - 2 * g(r0) + g(r0 - h);
        CHECK(std::abs(second + 2 * e2.econ.price_scale * 2 * h * h) <= 1e-6);
    }
}

#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "snp/errors.hpp"
#include "snp/experiment.hpp"

using namespace snp;

TEST_CASE("grids") {
    CHECK(default_grid(SizeClass::Small).size() == 24);
    CHECK(default_grid(SizeClass::Large).size() == 24);
    CHECK(default_grid(SizeClass::Small).front() == std::pair{4, 50});
    CHECK(default_grid(SizeClass::Large).back() == std::pair{18, 300});
}

TEST_CASE("sweep value lists") {
    CHECK(default_sweep_values(SweepParam::PriceScale).size() == 14);
    CHECK(default_sweep_values(SweepParam::BasePrice).size() == 12);
    CHECK(default_sweep_values(SweepParam::ProdCost).size() == 7);
    CHECK(default_sweep_values(SweepParam::UnitProdTime).size() == 5);
    CHECK(default_sweep_values(SweepParam::ServiceLevel).size() == 101);
    CHECK(default_sweep_values(SweepParam::MarketSize).size() == 4);
    CHECK(default_sweep_values(SweepParam::PriceScale)[2].scalar == 0.3);
    CHECK(parse_sweep_param("waiting_time") == SweepParam::WaitingTime);
    CHECK_THROWS_AS(parse_sweep_param("colour"), ConfigError);
}

TEST_CASE("sweep specs force alpha to zero where required") {
    ExperimentConfig cfg;
    cfg.sweep_param = SweepParam::AgentCapacity;
    CHECK(sweep_base_spec(cfg).overrides.service_level == 0.0);
    CHECK(sweep_base_spec(cfg).num_customers == 100);
    cfg.sweep_param = SweepParam::WaitingTime;
    const auto spec = sweep_spec(cfg, default_sweep_values(cfg.sweep_param)[0]);
    CHECK(spec.overrides.wait_per_mean == 2.0);
    CHECK(spec.overrides.service_level == 0.0);
    cfg.sweep_param = SweepParam::PriceScale;
    CHECK_FALSE(sweep_base_spec(cfg).overrides.service_level.has_value());
}

TEST_CASE("cell formatting") {
    CHECK(format_cell(1012.5) == "1012.5");
    CHECK(format_cell(-0.0) == "0");
    CHECK(format_cell(-1e-300 * 1e-300) == "0");
    CHECK(format_cell(62982.83) == "62982.8");
    CHECK(format_cell(Cell{}).empty());
    CHECK(format_cell(std::string("a,b")) == "\"a,b\"");
    CHECK(format_cell(std::string("say \"hi\"")) == "\"say \"\"hi\"\"\"");
}

TEST_CASE("header and E1 row") {
    std::ostringstream empty;
    emit_csv(result_table({}), empty);
    CHECK(empty.str() == "id,I,J,profit,R_star,Q_star,T,R_ub,D,delta_QD,M1,M2,M3\n");

    const auto e1 = test::fixture_e1();
    const auto row = make_row(1, e1, run_r_search(e1), 0.25);
    std::ostringstream os;
    emit_csv(result_table({row}), os);
    CHECK(os.str() == "id,I,J,profit,R_star,Q_star,T,R_ub,D,delta_QD,M1,M2,M3\n"
                      "1,1,2,1012.5,92.5,45,0.25,120,45,0,1.5625,1.5,1\n");
}

TEST_CASE("failed rows keep their place") {
    ResultRow bad;
    bad.id = 3;
    bad.agents = 4;
    bad.customers = 50;
    bad.error = "infeasible";
    std::ostringstream os;
    emit_csv(result_table({bad}), os);
    CHECK(os.str().find("3,4,50,,,,,,,,,,\n") != std::string::npos);
}

TEST_CASE("empty configurations") {
    ExperimentConfig cfg;
    cfg.grid = std::vector<std::pair<int, int>>{};
    CHECK_THROWS_AS(run_table_experiment(cfg), ConfigError);
    cfg.sweep_values = std::vector<SweepValue>{};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

TEST_CASE("comparison on E2") {
    const auto cmp = compare_search_methods(test::fixture_e2(), {});
    CHECK(cmp.r_search.best.profit.total == doctest::Approx(512.5));
    CHECK(cmp.sequential.best.profit.total == doctest::Approx(512.5));
    CHECK(cmp.r_search.trace.subproblems_solved < cmp.sequential.trace.subproblems_solved);
    CHECK(cmp.reduction > 0);
    const auto t = trace_table(cmp);
    CHECK(t.rows.size() == cmp.r_search.trace.records.size() + cmp.sequential.trace.records.size());

    SearchConfig bad;
    bad.step_size = 0;
    CHECK_THROWS_AS(compare_search_methods(test::fixture_e2(), bad), ConfigError);
}

TEST_CASE("small rows are deterministic and consistent") {
    ExperimentConfig cfg;
    cfg.grid = std::vector<std::pair<int, int>>{{4, 50}, {6, 60}};
    const auto a = run_table_experiment(cfg);
    const auto b = run_table_experiment(cfg);
    REQUIRE(a.size() == 2);
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a[k].ok);
        CHECK(a[k].profit == b[k].profit);
        CHECK(a[k].r_star == b[k].r_star);
        CHECK(a[k].delta == doctest::Approx(a[k].q_star - a[k].demand).epsilon(1e-9));
        CHECK(a[k].metrics.m3 >= 0.8 - 1e-12);
    }
}

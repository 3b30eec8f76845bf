#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "snp/errors.hpp"
#include "snp/generator.hpp"
#include "snp/instance_io.hpp"

using namespace snp;

TEST_CASE("engine matches the standard test vector") {
    std::mt19937_64 rng;
    rng.discard(9999);
    CHECK(rng() == 9981545732273789042ULL);
}

TEST_CASE("unit draws use the top 53 bits") {
    std::mt19937_64 a(123), b(123);
    const double u = unit_draw(a);
    CHECK(u == static_cast<double>(b() >> 11) / 9007199254740992.0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("integer draws are inclusive and use one output each") {
    std::mt19937_64 rng(5);
    bool lo_seen = false, hi_seen = false;
    for (int k = 0; k < 2000; ++k) {
        const auto v = int_draw(rng, {20, 40});
        CHECK(v >= 20);
        CHECK(v <= 40);
        lo_seen |= v == 20;
        hi_seen |= v == 40;
    }
    CHECK(lo_seen);
    CHECK(hi_seen);

    std::mt19937_64 x(9), y(9);
    for (int k = 0; k < 10; ++k) int_draw(x, {1, 6});
    y.discard(10);
    CHECK(x() == y());
}

TEST_CASE("small spec economics") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        GenSpec spec;
        spec.seed = seed;
        const auto inst = generate_instance(spec);
        const auto& e = inst.econ;
        CHECK(e.unit_prod_time == 0.1);
        CHECK(e.ship_time == 3);
        CHECK(e.prod_cost == 70);
        CHECK(e.salvage == 50);
        CHECK(e.shortage == 90);
        CHECK(e.price_scale == 1);
        CHECK(e.base_price == 100);
        CHECK(e.service_level == 0.8);
        CHECK(inst.num_agents() == 4);
        CHECK(inst.num_customers() == 50);
        CHECK(validate_instance(inst).empty());
    }
    GenSpec large;
    large.size_class = SizeClass::Large;
    CHECK(generate_instance(large).econ.unit_prod_time == 0.02);
}

TEST_CASE("determinism") {
    GenSpec spec;
    spec.seed = 2024;
    spec.num_agents = 6;
    spec.num_customers = 70;
    const auto a = generate_instance(spec);
    const auto b = generate_instance(spec);
    CHECK(a == b);
    CHECK(dump_instance(a) == dump_instance(b));
    spec.seed = 2025;
    CHECK_FALSE(generate_instance(spec) == a);
}

TEST_CASE("frozen draws for seed 1") {
    GenSpec spec;
    spec.seed = 1;
    const auto inst = generate_instance(spec);
    CHECK(stream_seed(1, Field::Capacity) == 0xe9fd6049d65af21eULL);
    CHECK(inst.capacities == std::vector<int>{37, 26, 33, 28});
    CHECK(inst.means[0] == 11.0);
    CHECK(inst.waits[0] == 98.0);
    CHECK(inst.effort(0, 0) == doctest::Approx(0.8896536674742127).epsilon(1e-15));
}

TEST_CASE("overrides") {
    GenSpec spec;
    spec.seed = 4;
    spec.overrides.mean = Range{30, 50};
    auto inst = generate_instance(spec);
    for (double mu : inst.means) {
        CHECK(mu >= 30);
        CHECK(mu <= 50);
    }

    spec.overrides.wait_per_mean = 2.0;
    inst = generate_instance(spec);
    for (int j = 0; j < inst.num_customers(); ++j) CHECK(inst.waits[j] == 2 * inst.means[j]);

    GenSpec bad;
    bad.overrides.mean = Range{20, 10};
    CHECK_THROWS_AS(generate_instance(bad), ConfigError);
    bad = GenSpec{};
    bad.overrides.salvage = 80;
    CHECK_THROWS_AS(generate_instance(bad), ValidationError);
}

TEST_CASE("sweep isolation: untouched fields keep their draws") {
    GenSpec base;
    base.seed = 17;
    GenSpec changed = base;
    changed.overrides.mean = Range{15, 25};
    changed.overrides.price_scale = 0.4;
    const auto a = generate_instance(base);
    const auto b = generate_instance(changed);
    CHECK(a.capacities == b.capacities);
    CHECK(a.waits == b.waits);
    CHECK(a.effort == b.effort);
    CHECK_FALSE(a.means == b.means);
}

TEST_CASE("distribution coverage over 1000 instances") {
    struct Span {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        void add(double v) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        bool covers(double a, double b) const { return lo >= a && hi <= b && (hi - lo) >= 0.9 * (b - a); }
    };
    Span cap, mean, wait, effort;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        GenSpec spec;
        spec.seed = row_seed(77, k);
        const auto inst = generate_instance(spec);
        for (int g : inst.capacities) cap.add(g);
        for (double v : inst.means) mean.add(v);
        for (double v : inst.waits) wait.add(v);
        for (double v : inst.effort.data()) effort.add(v);
    }
    CHECK(cap.covers(20, 40));
    CHECK(mean.covers(10, 20));
    CHECK(wait.covers(90, 120));
    CHECK(effort.covers(0.8, 1.2));
    CHECK(effort.hi < 1.2);
}

TEST_CASE("real draws when integer mode is off") {
    GenSpec spec;
    spec.seed = 8;
    spec.integer_means_and_waits = false;
    const auto inst = generate_instance(spec);
    bool fractional = false;
    for (double mu : inst.means) fractional |= mu != std::floor(mu);
    CHECK(fractional);
}

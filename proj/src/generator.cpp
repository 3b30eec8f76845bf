#include "snp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snp/errors.hpp"

namespace snp {

std::string_view to_string(SizeClass s) {
    switch (s) {
        case SizeClass::Small: return "small";
        case SizeClass::Large: return "large";
        case SizeClass::Custom: return "custom";
    }
    return "custom";
}

SizeClass parse_size_class(std::string_view text) {
    if (text == "small") return SizeClass::Small;
    if (text == "large") return SizeClass::Large;
    if (text == "custom") return SizeClass::Custom;
    throw ConfigError("unknown size class '" + std::string(text) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, Field field) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(field)));
}

std::uint64_t row_seed(std::uint64_t base_seed, std::uint64_t row_id) {
    return splitmix64(base_seed + 0x632be59bd9b4e019ULL * (row_id + 1));
}

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double real_draw(std::mt19937_64& rng, Range range) {
    return range.lo + unit_draw(rng) * (range.hi - range.lo);
}

long long int_draw(std::mt19937_64& rng, Range range) {
    const auto lo = static_cast<long long>(std::llround(range.lo));
    const auto hi = static_cast<long long>(std::llround(range.hi));
    const auto width = static_cast<double>(hi - lo + 1);
    return std::min(hi, lo + static_cast<long long>(unit_draw(rng) * width));
}

namespace {

void check_range(const char* name, Range r, bool integral) {
    const bool ok = std::isfinite(r.lo) && std::isfinite(r.hi) && (integral ? r.lo <= r.hi : r.lo < r.hi);
    if (!ok) {
        throw ConfigError(std::string("empty or invalid range for ") + name + ": [" + std::to_string(r.lo) + ", " +
                          std::to_string(r.hi) + "]");
    }
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
    if (spec.num_agents < 1 || spec.num_customers < 1) {
        throw ConfigError("generator needs at least one agent and one customer");
    }
    const auto& ov = spec.overrides;
    const bool int_mw = spec.integer_means_and_waits;

    const Range capacity = ov.capacity.value_or(Range{20, 40});
    const Range mean = ov.mean.value_or(Range{10, 20});
    const Range wait = ov.wait.value_or(Range{90, 120});
    const Range effort = ov.effort.value_or(Range{0.8, 1.2});
    check_range("capacity", capacity, true);
    check_range("mean", mean, int_mw);
    check_range("effort", effort, false);
    if (!ov.wait_per_mean) check_range("wait", wait, int_mw);
    if (capacity.lo < 1) throw ConfigError("capacity range must start at >= 1");
    if (mean.lo <= 0 || effort.lo <= 0 || (!ov.wait_per_mean && wait.lo <= 0)) {
        throw ConfigError("mean, wait and effort ranges must be positive");
    }
    if (ov.wait_per_mean && !(*ov.wait_per_mean > 0)) throw ConfigError("wait_per_mean must be positive");

    Instance inst;
    Economics& e = inst.econ;
    e.unit_prod_time = spec.size_class == SizeClass::Large ? 0.02 : 0.1;
    if (ov.unit_prod_time) e.unit_prod_time = *ov.unit_prod_time;
    if (ov.ship_time) e.ship_time = *ov.ship_time;
    if (ov.prod_cost) e.prod_cost = *ov.prod_cost;
    if (ov.salvage) e.salvage = *ov.salvage;
    if (ov.shortage) e.shortage = *ov.shortage;
    if (ov.price_scale) e.price_scale = *ov.price_scale;
    if (ov.base_price) e.base_price = *ov.base_price;
    if (ov.service_level) e.service_level = *ov.service_level;

    const int I = spec.num_agents;
    const int J = spec.num_customers;

    std::mt19937_64 cap_rng(stream_seed(spec.seed, Field::Capacity));
    inst.capacities.resize(I);
    for (auto& g : inst.capacities) g = static_cast<int>(int_draw(cap_rng, capacity));

    std::mt19937_64 mean_rng(stream_seed(spec.seed, Field::Mean));
    inst.means.resize(J);
    for (auto& mu : inst.means) {
        mu = int_mw ? static_cast<double>(int_draw(mean_rng, mean)) : real_draw(mean_rng, mean);
    }

    std::mt19937_64 wait_rng(stream_seed(spec.seed, Field::Wait));
    inst.waits.resize(J);
    for (int j = 0; j < J; ++j) {
        const double drawn = int_mw ? static_cast<double>(int_draw(wait_rng, wait)) : real_draw(wait_rng, wait);
        inst.waits[j] = ov.wait_per_mean ? *ov.wait_per_mean * inst.means[j] : drawn;
    }

    std::mt19937_64 effort_rng(stream_seed(spec.seed, Field::Effort));
    inst.effort = Matrix(I, J);
    for (int i = 0; i < I; ++i) {
        for (int j = 0; j < J; ++j) inst.effort(i, j) = real_draw(effort_rng, effort);
    }

    inst.meta.seed = spec.seed;
    inst.meta.size_class = std::string(to_string(spec.size_class));
    inst.meta.generator_version = std::string(kGeneratorVersion);

    require_valid(inst);
    return inst;
}

}  // namespace snp

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "snp/instance.hpp"

namespace snp {

inline constexpr std::string_view kGeneratorVersion = "snp-gen/1";

enum class SizeClass { Small, Large, Custom };

std::string_view to_string(SizeClass s);
SizeClass parse_size_class(std::string_view text);

/// Closed interval [lo, hi] for integer draws, [lo, hi) for real draws.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-parameter replacements for the size-class defaults.
struct GenOverrides {
    std::optional<Range> capacity;
    std::optional<Range> mean;
    std::optional<Range> wait;
    std::optional<Range> effort;
    /// When set, w_j = wait_per_mean * mu_j and the wait range is ignored.
    std::optional<double> wait_per_mean;
    std::optional<double> unit_prod_time;
    std::optional<double> ship_time;
    std::optional<double> prod_cost;
    std::optional<double> salvage;
    std::optional<double> shortage;
    std::optional<double> price_scale;
    std::optional<double> base_price;
    std::optional<double> service_level;
};

struct GenSpec {
    SizeClass size_class = SizeClass::Small;
    std::uint64_t seed = 0;
    int num_agents = 4;
    int num_customers = 50;
    GenOverrides overrides;
    /// Draw mu_j and w_j as integers (inclusive ranges); otherwise as reals.
    bool integer_means_and_waits = true;
};

/// Draw streams, one per generated field; each owns an independent mt19937_64.
enum class Field : std::uint64_t { Capacity = 1, Mean = 2, Wait = 3, Effort = 4 };

/// splitmix64 finaliser, used to derive stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the engine that produces `field` for generator seed `seed`.
std::uint64_t stream_seed(std::uint64_t seed, Field field);

/// Uniform [0,1) from the top 53 bits of one engine output.
double unit_draw(std::mt19937_64& rng);
/// lo + u (hi - lo): half-open on the upper end.
double real_draw(std::mt19937_64& rng, Range range);
/// Integer in [lo, hi], both inclusive, using exactly one engine output.
long long int_draw(std::mt19937_64& rng, Range range);

Instance generate_instance(const GenSpec& spec);

/// Seed of row `row_id` in a grid derived from the experiment seed.
std::uint64_t row_seed(std::uint64_t base_seed, std::uint64_t row_id);

}  // namespace snp

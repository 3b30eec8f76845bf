#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace snp {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Economic and timing scalars shared by all agents and customers.
struct Economics {
    double unit_prod_time = 0.1;  // a, days per unit
    double ship_time = 3.0;       // b, days
    double prod_cost = 70.0;      // c
    double salvage = 50.0;        // e
    double shortage = 90.0;       // s
    double price_scale = 1.0;     // lambda, units per currency
    double base_price = 100.0;    // r
    double service_level = 0.8;   // alpha

    bool operator==(const Economics&) const = default;
};

/// Provenance carried through instance files; not used by the solvers.
struct InstanceMeta {
    unsigned long long seed = 0;
    std::string size_class = "custom";
    std::string generator_version;

    bool operator==(const InstanceMeta&) const = default;
};

/// Full problem datum. Agents index rows of `effort`, customers index columns.
struct Instance {
    std::vector<int> capacities;      // g_i
    std::vector<double> means;        // mu_j
    std::vector<double> waits;        // w_j
    Matrix effort;                    // p_ij
    Economics econ;
    InstanceMeta meta;

    int num_agents() const noexcept { return static_cast<int>(capacities.size()); }
    int num_customers() const noexcept { return static_cast<int>(means.size()); }

    /// p_ij * mu_j, the demand agent i raises from customer j at the base price.
    double base_demand(int i, int j) const { return effort(i, j) * means[j]; }

    bool operator==(const Instance&) const = default;
};

struct Violation {
    std::string field;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Lists every broken invariant; empty when the instance is usable.
ValidationReport validate_instance(const Instance& inst);

/// Throws ValidationError carrying all violations when the report is nonempty.
void require_valid(const Instance& inst);

/// Minimum number of customers that must be served: ceil(J * alpha).
int min_selected(const Instance& inst);

}  // namespace snp

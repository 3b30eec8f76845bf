#include "snp/assignment.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "snp/errors.hpp"

namespace snp {

namespace detail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRelaxTol = 1e-12;

// Successive shortest paths where every path is compressed to the agent level:
// a new customer enters agent k1, k1 hands one of its customers to k2, and so
// on until an agent with spare capacity absorbs the extra load.
class ExchangeSolver {
public:
    ExchangeSolver(const Matrix& w, std::span<const int> caps, std::span<const int> active)
        : w_(w),
          caps_(caps),
          active_(active),
          agents_(static_cast<int>(caps.size())),
          agent_of_(w.rows(), Assignment::kNone),
          load_(agents_, 0),
          dist_(agents_),
          pred_agent_(agents_),
          pred_customer_(agents_),
          move_gain_(static_cast<std::size_t>(agents_) * agents_),
          mover_(static_cast<std::size_t>(agents_) * agents_) {}

    // Best gain path; returns the terminal agent or -1 if none exists.
    int find_path(double& gain) {
        std::fill(dist_.begin(), dist_.end(), kNegInf);
        std::fill(pred_agent_.begin(), pred_agent_.end(), -1);
        std::fill(pred_customer_.begin(), pred_customer_.end(), -1);
        std::fill(move_gain_.begin(), move_gain_.end(), kNegInf);
        std::fill(mover_.begin(), mover_.end(), -1);

        for (int j : active_) {
            const auto row = w_.row(j);
            const int from = agent_of_[j];
            if (from == Assignment::kNone) {
                for (int k = 0; k < agents_; ++k) {
                    if (row[k] >= 0.0 && row[k] > dist_[k] + kRelaxTol) {
                        dist_[k] = row[k];
                        pred_customer_[k] = j;
                    }
                }
            } else {
                for (int k = 0; k < agents_; ++k) {
                    if (k == from || row[k] < 0.0) continue;
                    const double g = row[k] - row[from];
                    auto& best = move_gain_[static_cast<std::size_t>(from) * agents_ + k];
                    if (g > best + kRelaxTol) {
                        best = g;
                        mover_[static_cast<std::size_t>(from) * agents_ + k] = j;
                    }
                }
            }
        }

        for (int round = 0; round < agents_; ++round) {
            bool changed = false;
            for (int k = 0; k < agents_; ++k) {
                if (dist_[k] == kNegInf) continue;
                for (int k2 = 0; k2 < agents_; ++k2) {
                    const auto idx = static_cast<std::size_t>(k) * agents_ + k2;
                    if (mover_[idx] < 0) continue;
                    const double cand = dist_[k] + move_gain_[idx];
                    if (cand > dist_[k2] + kRelaxTol) {
                        dist_[k2] = cand;
                        pred_agent_[k2] = k;
                        pred_customer_[k2] = mover_[idx];
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        int end = -1;
        for (int k = 0; k < agents_; ++k) {
            if (load_[k] < caps_[k] && dist_[k] != kNegInf && (end < 0 || dist_[k] > dist_[end] + kRelaxTol)) {
                end = k;
            }
        }
        if (end >= 0) gain = dist_[end];
        return end;
    }

    void apply(int end) {
        ++load_[end];
        int k = end;
        for (int steps = 0; pred_agent_[k] != -1; ++steps) {
            if (steps > agents_) throw std::logic_error("assignment kernel: cyclic augmenting path");
            const int prev = pred_agent_[k];
            agent_of_[pred_customer_[k]] = k;
            k = prev;
        }
        agent_of_[pred_customer_[k]] = k;
        ++size_;
    }

    // Equal-weight agent choices go to the lowest agent index with room.
    void prefer_low_agents() {
        for (int j : active_) {
            const int from = agent_of_[j];
            if (from == Assignment::kNone) continue;
            const auto row = w_.row(j);
            for (int k = 0; k < from; ++k) {
                if (load_[k] < caps_[k] && row[k] >= 0.0 && std::abs(row[k] - row[from]) <= kRelaxTol) {
                    --load_[from];
                    ++load_[k];
                    agent_of_[j] = k;
                    break;
                }
            }
        }
    }

    int size() const noexcept { return size_; }
    Assignment result() const { return Assignment(agent_of_); }

private:
    const Matrix& w_;
    std::span<const int> caps_;
    std::span<const int> active_;
    int agents_;
    int size_ = 0;
    std::vector<int> agent_of_;
    std::vector<int> load_;
    std::vector<double> dist_;
    std::vector<int> pred_agent_;
    std::vector<int> pred_customer_;
    std::vector<double> move_gain_;
    std::vector<int> mover_;
};

}  // namespace

std::optional<Assignment> solve_assignment(const Matrix& by_customer, std::span<const int> capacities,
                                           std::span<const int> active, int min_cardinality) {
    if (by_customer.cols() != capacities.size()) {
        throw PreconditionError("weight table and capacity list disagree on agent count");
    }
    ExchangeSolver solver(by_customer, capacities, active);
    for (;;) {
        double gain = 0.0;
        const int end = solver.find_path(gain);
        if (end < 0) break;
        if (solver.size() >= min_cardinality && gain <= kGainTol) break;
        solver.apply(end);
    }
    if (solver.size() < min_cardinality) return std::nullopt;
    solver.prefer_low_agents();
    return solver.result();
}

}  // namespace detail

Assignment max_weight_capacitated_assignment(const Matrix& weights, std::span<const int> capacities,
                                             int min_cardinality) {
    if (weights.rows() != capacities.size()) {
        throw PreconditionError("weights must have one row per agent");
    }
    for (double v : weights.data()) {
        if (!std::isfinite(v)) throw PreconditionError("weights must be finite");
    }
    if (min_cardinality < 0) throw PreconditionError("cardinality floor must be >= 0");

    Matrix by_customer(weights.cols(), weights.rows());
    for (std::size_t i = 0; i < weights.rows(); ++i) {
        for (std::size_t j = 0; j < weights.cols(); ++j) by_customer(j, i) = weights(i, j);
    }
    std::vector<int> active(weights.cols());
    std::iota(active.begin(), active.end(), 0);

    auto result = detail::solve_assignment(by_customer, capacities, active, min_cardinality);
    if (!result) {
        throw InfeasibleError("cannot assign " + std::to_string(min_cardinality) +
                              " customers within agent capacities");
    }
    return *result;
}

}  // namespace snp

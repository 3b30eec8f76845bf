#include "snp/instance.hpp"

#include <cmath>
#include <sstream>

#include "snp/errors.hpp"

namespace snp {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    auto add = [&](std::string field, std::string msg) {
        report.push_back({std::move(field), std::move(msg)});
    };

    const auto I = inst.capacities.size();
    const auto J = inst.means.size();
    if (J == 0) add("customers", "at least one customer required");
    if (inst.waits.size() != J) add("customers", "waiting_time count differs from mean count");

    for (std::size_t i = 0; i < I; ++i) {
        if (inst.capacities[i] < 1) add("agents[" + std::to_string(i) + "].capacity", "capacity must be >= 1");
    }
    for (std::size_t j = 0; j < J; ++j) {
        if (!positive_finite(inst.means[j])) add("customers[" + std::to_string(j) + "].mean", "mean demand must be > 0");
    }
    for (std::size_t j = 0; j < inst.waits.size(); ++j) {
        if (!positive_finite(inst.waits[j])) {
            add("customers[" + std::to_string(j) + "].waiting_time", "waiting time must be > 0");
        }
    }

    if (inst.effort.rows() != I || inst.effort.cols() != J) {
        std::ostringstream os;
        os << "effort matrix is " << inst.effort.rows() << "x" << inst.effort.cols() << ", expected " << I << "x"
           << J;
        add("effort", os.str());
    } else {
        for (std::size_t i = 0; i < I; ++i) {
            for (std::size_t j = 0; j < J; ++j) {
                if (!positive_finite(inst.effort(i, j))) {
                    add("effort[" + std::to_string(i) + "][" + std::to_string(j) + "]", "effort must be > 0");
                }
            }
        }
    }

    const auto& e = inst.econ;
    if (!positive_finite(e.unit_prod_time)) add("economics.a", "unit production time must be > 0");
    if (!(std::isfinite(e.ship_time) && e.ship_time >= 0.0)) add("economics.b", "shipping time must be >= 0");
    if (!positive_finite(e.prod_cost)) add("economics.c", "production cost must be > 0");
    if (!positive_finite(e.salvage)) add("economics.e", "salvage price must be > 0");
    if (!positive_finite(e.shortage)) add("economics.s", "shortage cost must be > 0");
    if (!positive_finite(e.price_scale)) add("economics.lambda", "price scale must be > 0");
    if (!positive_finite(e.base_price)) add("economics.r", "base price must be > 0");
    if (!(e.service_level >= 0.0 && e.service_level <= 1.0)) {
        add("economics.alpha", "service level out of [0,1]");
    }
    if (e.salvage > e.prod_cost) add("economics.e", "salvage >= production cost");
    if (e.shortage <= e.prod_cost) add("economics.s", "shortage cost <= production cost");
    return report;
}

void require_valid(const Instance& inst) {
    const auto report = validate_instance(inst);
    if (report.empty()) return;
    std::string msg = "invalid instance:";
    for (const auto& v : report) msg += " [" + v.field + ": " + v.message + "]";
    throw ValidationError(msg);
}

int min_selected(const Instance& inst) {
    const double need = inst.num_customers() * inst.econ.service_level;
    return static_cast<int>(std::ceil(need - 1e-9));
}

}  // namespace snp

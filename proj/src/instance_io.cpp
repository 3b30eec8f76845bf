#include "snp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snp/errors.hpp"

namespace snp {

using nlohmann::json;

namespace {

// Long names appear in error messages next to the normative short keys.
const char* long_name(const std::string& key) {
    if (key == "a") return "unit_prod_time";
    if (key == "b") return "ship_time";
    if (key == "c") return "prod_cost";
    if (key == "e") return "salvage_price";
    if (key == "s") return "shortage_cost";
    if (key == "lambda") return "price_scale";
    if (key == "r") return "base_price";
    if (key == "alpha") return "service_level";
    return nullptr;
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!obj.is_object()) throw ParseError("expected object at '" + (path.empty() ? "<root>" : path) + "'");
    const auto it = obj.find(key);
    if (it == obj.end()) {
        std::string msg = "missing field '" + where + "'";
        if (const char* ln = long_name(key)) msg += std::string(" (") + ln + ")";
        throw ParseError(msg);
    }
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = field(obj, key, path);
    if (!v.is_number()) throw ParseError("field '" + path + "." + key + "' is not a number");
    return v.get<double>();
}

const json& array(const json& obj, const std::string& key) {
    const auto& v = field(obj, key, "");
    if (!v.is_array()) throw ParseError("field '" + key + "' is not a list");
    return v;
}

}  // namespace

std::string dump_instance(const Instance& inst) {
    json doc;
    doc["agents"] = json::array();
    for (int g : inst.capacities) doc["agents"].push_back({{"capacity", g}});
    doc["customers"] = json::array();
    for (int j = 0; j < inst.num_customers(); ++j) {
        doc["customers"].push_back({{"mean", inst.means[j]}, {"waiting_time", inst.waits[j]}});
    }
    doc["effort"] = json::array();
    for (std::size_t i = 0; i < inst.effort.rows(); ++i) {
        auto row = inst.effort.row(i);
        doc["effort"].push_back(json(std::vector<double>(row.begin(), row.end())));
    }
    const auto& e = inst.econ;
    doc["economics"] = {{"a", e.unit_prod_time}, {"b", e.ship_time},       {"c", e.prod_cost},
                        {"e", e.salvage},        {"s", e.shortage},        {"lambda", e.price_scale},
                        {"r", e.base_price},     {"alpha", e.service_level}};
    doc["meta"] = {{"seed", inst.meta.seed},
                   {"size_class", inst.meta.size_class},
                   {"generator_version", inst.meta.generator_version}};
    return doc.dump(2) + "\n";
}

namespace {

Instance from_json(const json& doc) {
    Instance inst;
    const auto& agents = array(doc, "agents");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string path = "agents[" + std::to_string(i) + "]";
        const auto& v = field(agents[i], "capacity", path);
        if (!v.is_number_integer()) throw ParseError("field '" + path + ".capacity' is not an integer");
        inst.capacities.push_back(v.get<int>());
    }

    const auto& customers = array(doc, "customers");
    for (std::size_t j = 0; j < customers.size(); ++j) {
        const std::string path = "customers[" + std::to_string(j) + "]";
        inst.means.push_back(number(customers[j], "mean", path));
        inst.waits.push_back(number(customers[j], "waiting_time", path));
    }

    const auto& effort = array(doc, "effort");
    inst.effort = Matrix(effort.size(), customers.size());
    for (std::size_t i = 0; i < effort.size(); ++i) {
        const auto& row = effort[i];
        if (!row.is_array() || row.size() != customers.size()) {
            throw ParseError("effort row " + std::to_string(i) + " must list one value per customer");
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_number()) throw ParseError("effort[" + std::to_string(i) + "][" + std::to_string(j) + "] is not a number");
            inst.effort(i, j) = row[j].get<double>();
        }
    }

    const auto& econ = field(doc, "economics", "");
    auto& e = inst.econ;
    e.unit_prod_time = number(econ, "a", "economics");
    e.ship_time = number(econ, "b", "economics");
    e.prod_cost = number(econ, "c", "economics");
    e.salvage = number(econ, "e", "economics");
    e.shortage = number(econ, "s", "economics");
    e.price_scale = number(econ, "lambda", "economics");
    e.base_price = number(econ, "r", "economics");
    e.service_level = number(econ, "alpha", "economics");

    const auto& meta = field(doc, "meta", "");
    const auto& seed = field(meta, "seed", "meta");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw ParseError("field 'meta.seed' is not an integer");
    inst.meta.seed = seed.get<unsigned long long>();
    inst.meta.size_class = field(meta, "size_class", "meta").get<std::string>();
    inst.meta.generator_version = field(meta, "generator_version", "meta").get<std::string>();
    return inst;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("malformed instance file: ") + err.what());
    }
    Instance inst;
    try {
        inst = from_json(doc);
    } catch (const json::exception& err) {
        throw ParseError(std::string("bad field type: ") + err.what());
    }
    require_valid(inst);
    return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << dump_instance(inst);
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

}  // namespace snp

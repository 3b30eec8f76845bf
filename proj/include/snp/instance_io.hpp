#pragma once

#include <filesystem>
#include <string>

#include "snp/instance.hpp"

namespace snp {

/// JSON text of an instance; reals keep full round-trip precision.
std::string dump_instance(const Instance& inst);
/// Parses and validates. Throws ParseError naming the offending field, ValidationError on broken invariants.
Instance parse_instance(const std::string& text);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace snp

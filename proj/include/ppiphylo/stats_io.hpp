#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "ppiphylo/graph_stats.hpp"

namespace ppiphylo {

using StatTable = std::map<std::string, StatVector>;

/// `species_id,<19 statistics>` header, rows sorted by species id, reals
/// with 10 significant digits, undefined assortativity as an empty field.
void write_stats_csv(std::ostream& out, const StatTable& table);
StatTable read_stats_csv(std::istream& in);

std::string format_real(double v);
std::string format_optional(const std::optional<double>& v);

}  // namespace ppiphylo

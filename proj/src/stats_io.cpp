#include "ppiphylo/stats_io.hpp"

#include <istream>
#include <ostream>

#include "ppiphylo/detail/text.hpp"
#include "ppiphylo/error.hpp"

namespace ppiphylo {

namespace {

constexpr bool is_count_field(std::size_t i) {
    return i == 0 || i == 1 || i == 3 || i == 5 || i == 7 || i == 16 || i == 17 || i == 18;
}

}  // namespace

std::string format_real(double v) { return detail::format_significant(v, 10); }

std::string format_optional(const std::optional<double>& v) { return v ? format_real(*v) : std::string{}; }

void write_stats_csv(std::ostream& out, const StatTable& table) {
    out << "species_id";
    for (auto name : kStatNames) out << ',' << name;
    out << '\n';
    for (const auto& [species, stats] : table) {
        out << species;
        const auto values = stats.values();
        for (std::size_t i = 0; i < kNumStats; ++i) {
            out << ',';
            if (!values[i]) continue;
            if (is_count_field(i))
                out << static_cast<std::uint64_t>(*values[i]);
            else
                out << format_real(*values[i]);
        }
        out << '\n';
    }
}

StatTable read_stats_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty stats table", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = detail::split(line, ",");
    if (header.size() != kNumStats + 1 || header[0] != "species_id")
        throw FormatError("unexpected stats header", 1);
    for (std::size_t i = 0; i < kNumStats; ++i)
        if (header[i + 1] != kStatNames[i])
            throw FormatError("unexpected stats column '" + std::string(header[i + 1]) + "'", 1);

    StatTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line, ",");
        if (fields.size() != kNumStats + 1)
            throw FormatError("expected " + std::to_string(kNumStats + 1) + " fields", line_no);
        std::array<std::optional<double>, kNumStats> values;
        for (std::size_t i = 0; i < kNumStats; ++i) {
            const auto text = detail::trim(fields[i + 1]);
            if (text.empty()) {
                if (i != kAssortativityIndex)
                    throw FormatError("missing value for " + std::string(kStatNames[i]), line_no);
                continue;
            }
            auto v = detail::parse_double(text);
            if (!v) throw FormatError("non-numeric value '" + std::string(text) + "'", line_no);
            values[i] = *v;
        }
        const std::string species(detail::trim(fields[0]));
        if (!table.emplace(species, StatVector::from_values(values)).second)
            throw DataError("duplicate species " + species + " in stats table");
    }
    return table;
}

}  // namespace ppiphylo

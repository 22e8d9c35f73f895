#pragma once

#include <bitset>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppiphylo/graph.hpp"

namespace ppiphylo::ingest {

/// STRING evidence channels, in file column order.
enum class Channel : std::uint8_t {
    neighborhood,
    fusion,
    cooccurence,
    coexpression,
    experimental,
    database,
    textmining,
};
inline constexpr std::size_t kNumChannels = 7;

std::string_view channel_name(Channel c);
std::optional<Channel> channel_from_name(std::string_view name);

/// Which STRING links survive ingestion.
///
/// A link is kept iff at least one required channel scores > 0 and its
/// combined score is >= min_combined_score. An empty channel set imposes no
/// channel requirement, so it must be paired with a positive minimum score.
struct EvidenceFilter {
    std::bitset<kNumChannels> required_channels;
    int min_combined_score = 0;

    /// {experimental, database}, no score floor.
    static EvidenceFilter defaults();
    /// Parses "experimental,database"; throws ConfigError on unknown names.
    static EvidenceFilter from_spec(std::string_view channels, int min_combined_score);

    void require(Channel c) { required_channels.set(static_cast<std::size_t>(c)); }
    bool requires_channel(Channel c) const {
        return required_channels.test(static_cast<std::size_t>(c));
    }
    /// Throws ConfigError when neither a channel nor a positive floor is set.
    void validate() const;
    bool keeps(std::span<const int, kNumChannels> scores, int combined) const;
};

inline constexpr std::string_view kStringLinksHeader =
    "protein1 protein2 neighborhood fusion cooccurence coexpression experimental "
    "database textmining combined_score";

/// Reads one species' STRING detailed links file. Node order is the
/// lexicographic order of protein ids, so the result is independent of line
/// order. Proteins that occur only on dropped links are absent.
Graph parse_string_links(std::istream& in, const EvidenceFilter& filter = EvidenceFilter::defaults());

/// Writes `g` in STRING links format with experimental=1000 and
/// combined_score=1000 on every edge, one line per undirected edge.
void write_string_links(std::ostream& out, const Graph& g);

/// Publication-count table: `species_id<TAB>count` per line. Blank lines
/// and lines starting with '#' are skipped. Duplicates: last one wins.
std::map<std::string, std::int64_t> parse_pubcount_table(std::istream& in);

/// Species with strictly more than `threshold` publications.
std::set<std::string> filter_species(const std::map<std::string, std::int64_t>& pubcounts,
                                     std::int64_t threshold);

/// A root-to-species list of taxon names. `ranks` is either empty or parallel
/// to `path` and carries NCBI rank strings when the source provides them.
struct RawLineage {
    std::string species_id;
    std::vector<std::string> path;
    std::vector<std::string> ranks;

    friend bool operator==(const RawLineage&, const RawLineage&) = default;
};

/// `species_id<TAB>name1;name2;...` lines, root first.
std::vector<RawLineage> parse_lineage_table(std::istream& in);

/// Lineages for `taxids` from NCBI `nodes.dmp` / `names.dmp`. With an empty
/// request, every taxid of rank "species" is returned. Paths run from the
/// self-parented root down to the taxid and carry per-element ranks.
std::vector<RawLineage> parse_taxdump(std::istream& nodes, std::istream& names,
                                      std::span<const std::string> taxids = {});

}  // namespace ppiphylo::ingest

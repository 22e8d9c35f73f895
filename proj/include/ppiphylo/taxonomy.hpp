#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppiphylo/ingest.hpp"

namespace ppiphylo {

/// The six canonical ranks, coarse to fine.
enum class Rank : std::uint8_t { domain, kingdom, phylum, class_, order, family };
inline constexpr std::size_t kNumRanks = 6;
inline constexpr std::array<std::string_view, kNumRanks> kRankNames = {
    "domain", "kingdom", "phylum", "class", "order", "family"};

std::string_view rank_name(Rank r);
/// Canonical rank for a rank string; NCBI "superkingdom" counts as domain.
std::optional<Rank> rank_from_string(std::string_view s);

/// Decides which lineage elements are canonical ranks. Ranks attached to the
/// lineage (taxdump input) take precedence over the name table; anything
/// unresolved is an intermediate level and gets collapsed.
class RankResolver {
public:
    RankResolver() = default;

    /// `name<TAB>rank` lines.
    static RankResolver from_table(std::istream& in);

    void add(std::string name, Rank rank) { table_[std::move(name)] = rank; }
    std::optional<Rank> resolve(const std::string& name, std::optional<std::string_view> source_rank) const;

private:
    std::unordered_map<std::string, Rank> table_;
};

/// A (rank, name) path, coarse to fine, ranks strictly increasing.
struct LineagePath {
    std::vector<std::pair<Rank, std::string>> entries;

    std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const LineagePath&, const LineagePath&) = default;
};

using TaxonIndex = std::size_t;

struct TaxonNode {
    std::string name;
    std::optional<Rank> rank;  // empty only for the root
    std::optional<TaxonIndex> parent;
    std::vector<TaxonIndex> children;
};

/// Six-rank taxonomy rooted at "cellular organisms". Species hang off their
/// family node.
class TaxonomyTree {
public:
    static constexpr std::string_view kRootName = "cellular organisms";

    TaxonomyTree();

    const std::vector<TaxonNode>& nodes() const noexcept { return nodes_; }
    TaxonIndex root() const noexcept { return 0; }
    const std::map<std::string, TaxonIndex>& species_assignments() const noexcept { return assignments_; }
    bool contains(const std::string& species) const { return assignments_.count(species) != 0; }

    /// Throws LookupError for an unassigned species.
    LineagePath lineage_of(const std::string& species) const;
    /// Node indices root, domain, ..., family for a species.
    std::vector<TaxonIndex> node_path(const std::string& species) const;
    std::optional<TaxonIndex> child_named(TaxonIndex parent, const std::string& name) const;

    /// Adds a full six-rank lineage, reusing existing prefix nodes.
    TaxonIndex insert(const std::string& species, const LineagePath& lineage);

private:
    std::vector<TaxonNode> nodes_;
    std::map<std::string, TaxonIndex> assignments_;
};

struct RejectedSpecies {
    std::string species_id;
    std::string reason;
};

struct TaxonomyBuild {
    TaxonomyTree tree;
    std::vector<RejectedSpecies> rejected;
};

/// Collapses each raw lineage to the six canonical ranks and merges them.
/// Species lacking any rank are rejected, not fatal. A ranked name that
/// appears under two different parents is a DataError.
TaxonomyBuild build_taxonomy(const std::vector<ingest::RawLineage>& lineages, const RankResolver& resolver);

/// `species_id<TAB>domain<TAB>...<TAB>family`, rows sorted by species id.
void write_canonical_taxonomy(std::ostream& out, const TaxonomyTree& tree);
/// Reads the canonical export back as ranked raw lineages.
std::vector<ingest::RawLineage> read_canonical_taxonomy(std::istream& in);

}  // namespace ppiphylo

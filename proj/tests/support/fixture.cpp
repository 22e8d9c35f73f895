#include "fixture.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "ppiphylo/ingest.hpp"
#include "synthetic.hpp"

namespace fixture {

namespace fs = std::filesystem;
using namespace ppiphylo;

namespace {

void put(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

Files write(const fs::path& dir) {
    fs::create_directories(dir / "links");
    Files f;
    f.dir = dir;

    std::ostringstream pubs;
    for (int s = 0; s < 4; ++s) {
        const std::string taxid = std::to_string(1001 + s);
        const auto r = synth::random_graph(40, 0.12, 50 + static_cast<std::uint64_t>(s));
        std::vector<std::string> ids;
        std::vector<NodeIndex> keep;
        for (NodeIndex i = 0; i < r.num_nodes(); ++i) {
            ids.push_back(taxid + ".P" + std::to_string(1000 + i));
            if (r.degree(i) > 0) keep.push_back(i);
        }
        const auto g = Graph::from_edges(taxid, ids, r.edge_list()).induced_subgraph(keep);
        std::ostringstream links;
        ingest::write_string_links(links, g);
        const auto path = (dir / "links" / (taxid + ".protein.links.detailed.txt")).string();
        put(path, links.str());
        f.links.push_back(path);
        pubs << taxid << '\t' << (s == 3 ? 20 : 500) << '\n';
    }
    f.pubcounts = (dir / "pubcounts.tsv").string();
    put(f.pubcounts, pubs.str());

    const auto phylo = synth::phylogeny(60, 11);
    f.tree = (dir / "tree.nwk").string();
    put(f.tree, phylo.newick + "\n");
    std::ostringstream stats;
    write_stats_csv(stats, phylo.stats);
    f.stats = (dir / "stats.csv").string();
    put(f.stats, stats.str());

    std::ostringstream lin, names;
    static const char* kDomains[] = {"Bacteria", "Archaea", "Eukaryota"};
    std::size_t i = 0;
    for (const auto& leaf : phylo.tree.leaves()) {
        const std::string d = kDomains[i % 3];
        const std::string k = d + "_K" + std::to_string(i % 2);
        lin << leaf << '\t' << d << '\t' << k << '\t' << k << "_P\t" << k << "_C\t" << k << "_O\t" << k << "_F\n";
        names << leaf << "\tGenus " << leaf << '\n';
        ++i;
    }
    f.lineages = (dir / "lineages.tsv").string();
    put(f.lineages, lin.str());
    f.names = (dir / "names.tsv").string();
    put(f.names, names.str());
    f.weighted_tree = (dir / "weighted.nwk").string();
    put(f.weighted_tree, std::regex_replace(phylo.newick, std::regex("(s[0-9]{3})"), "Genus_$1") + "\n");

    const auto tax = synth::taxonomy(6, 12);
    std::ostringstream canon, tstats;
    write_canonical_taxonomy(canon, tax.tree);
    write_stats_csv(tstats, tax.stats);
    f.tax_taxonomy = (dir / "taxonomy.tsv").string();
    put(f.tax_taxonomy, canon.str());
    f.tax_stats = (dir / "tax_stats.csv").string();
    put(f.tax_stats, tstats.str());
    return f;
}

int run(const std::string& bin, const std::string& args, const fs::path& dir) {
    const std::string cmd = "'" + bin + "' " + args + " > '" + (dir / "last.log").string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixture

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixture.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = PPIPHYLO_BIN;

struct Env {
    fs::path dir;
    fixture::Files f;

    Env() : dir(fs::temp_directory_path() / "ppiphylo_cli_test") {
        fs::remove_all(dir);
        f = fixture::write(dir);
    }
    std::string p(const std::string& name) const { return (dir / name).string(); }
    int run(const std::string& args) const { return fixture::run(kBin, args, dir); }
    std::string log() const { return fixture::slurp(dir / "last.log"); }
};

const Env& env() {
    static const Env e;
    return e;
}

std::size_t lines(const std::string& path) {
    const auto s = fixture::slurp(path);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string first_line(const std::string& path) {
    std::istringstream in(fixture::slurp(path));
    std::string l;
    std::getline(in, l);
    return l;
}

}  // namespace

TEST_CASE("help and argument errors") {
    const auto& e = env();
    CHECK(e.run("--help") == 0);
    CHECK(e.run("") == 4);
    CHECK(e.run("frobnicate") == 4);
    CHECK(e.run("stats --bogus x") == 4);
    CHECK(e.run("features --tree " + e.f.tree) == 4);  // missing required options
}

TEST_CASE("stats subcommand") {
    const auto& e = env();
    std::string all;
    for (const auto& l : e.f.links) all += " " + l;
    REQUIRE(e.run("stats" + all + " --out " + e.p("net.csv")) == 0);
    CHECK(lines(e.p("net.csv")) == 5);
    CHECK(first_line(e.p("net.csv")).rfind("species_id,", 0) == 0);
    CHECK(fs::exists(e.p("net.csv.meta.json")));

    REQUIRE(e.run("stats" + all + " --pubcounts " + e.f.pubcounts + " --out " + e.p("net100.csv")) == 0);
    CHECK(lines(e.p("net100.csv")) == 4);

    // Global flags may follow the subcommand.
    REQUIRE(e.run("stats" + all + " --out " + e.p("net_t.csv") + " --threads 2 --exact-threshold 0 --seed 3") == 0);
    CHECK(lines(e.p("net_t.csv")) == 5);

    CHECK(e.run("stats " + e.f.links[0] + " " + e.f.links[0] + " --out " + e.p("dup.csv")) == 3);
    CHECK(e.run("stats " + e.p("missing.txt") + " --out " + e.p("x.csv")) == 4);
    {
        std::ofstream bad(e.p("bad_links.txt"));
        bad << "protein1 protein2 combined_score\n1.a 1.b 900\n";
    }
    CHECK(e.run("stats " + e.p("bad_links.txt") + " --out " + e.p("x.csv")) == 2);
    CHECK(e.run("--evidence telepathy stats " + e.f.links[0] + " --out " + e.p("x.csv")) == 4);
    CHECK(e.run("--evidence '' stats " + e.f.links[0] + " --out " + e.p("x.csv")) == 4);
    CHECK(e.run("--evidence '' --min-combined-score 400 stats " + e.f.links[0] + " --out " + e.p("x.csv")) == 0);
}

TEST_CASE("predictor round trip") {
    const auto& e = env();
    CHECK(e.run("features --tree " + e.f.tree + " --stats " + e.f.stats + " --out " + e.p("features.csv")) == 0);
    CHECK(lines(e.p("features.csv")) == 61);

    REQUIRE(e.run("predict-train --tree " + e.f.tree + " --stats " + e.f.stats + " --train-fraction 0.8 --split-out " +
                  e.p("split") + " --out " + e.p("pred.json")) == 0);
    CHECK(lines(e.p("split.train.txt")) == 48);
    CHECK(lines(e.p("split.test.txt")) == 12);
    REQUIRE(e.run("predict-eval --model " + e.p("pred.json") + " --tree " + e.f.tree + " --stats " + e.f.stats +
                  " --test " + e.p("split.test.txt") + " --out " + e.p("table.csv") + " --predictions " +
                  e.p("pred.csv")) == 0);
    CHECK(lines(e.p("table.csv")) == 20);
    CHECK(first_line(e.p("table.csv")) == "statistic,mean_relative_error,std_relative_error,n,excluded");
    CHECK(lines(e.p("pred.csv")) == 13);

    // Evaluating on training species is refused.
    CHECK(e.run("predict-eval --model " + e.p("pred.json") + " --tree " + e.f.tree + " --stats " + e.f.stats +
                " --test " + e.p("split.train.txt") + " --out " + e.p("x.csv")) == 3);
    CHECK(e.run("predict-train --tree " + e.f.tree + " --stats " + e.f.stats + " --train-fraction 0.8 --C 0 --out " +
                e.p("x.json")) == 4);
    CHECK(e.run("predict-train --tree " + e.f.tree + " --stats " + e.f.stats + " --train-fraction 1.5 --out " +
                e.p("x.json")) == 4);
    {
        std::ofstream bad(e.p("bad.nwk"));
        bad << "((a,b),c\n";
    }
    CHECK(e.run("features --tree " + e.p("bad.nwk") + " --stats " + e.f.stats + " --out " + e.p("x.csv")) == 2);
}

TEST_CASE("classifier round trip") {
    const auto& e = env();
    const std::string tax = " --taxonomy " + e.f.tax_taxonomy + " --stats " + e.f.tax_stats;
    REQUIRE(e.run("classify-train" + tax + " --out " + e.p("hier.json")) == 0);
    REQUIRE(e.run("classify-eval" + tax + " --folds 3 --out-nodes " + e.p("nodes.csv") + " --out-cumulative " +
                  e.p("cum.csv")) == 0);
    CHECK(first_line(e.p("nodes.csv")) == "level,node,kind,mean_training_size,evaluated,correct,accuracy");
    CHECK(lines(e.p("cum.csv")) == 7);

    {
        std::ofstream ids(e.p("some.txt"));
        ids << "t000\nt010\nt020\n";
    }
    REQUIRE(e.run("classify-eval --stats " + e.f.tax_stats + " --model " + e.p("hier.json") + " --test " +
                  e.p("some.txt") + " --out-predictions " + e.p("lineage_pred.csv")) == 0);
    CHECK(lines(e.p("lineage_pred.csv")) == 4);

    // A predictor model is not a hierarchy model.
    REQUIRE(e.run("predict-train --tree " + e.f.tree + " --stats " + e.f.stats + " --train-fraction 0.8 --out " +
                  e.p("pred2.json")) == 0);
    CHECK(e.run("classify-eval --stats " + e.f.tax_stats + " --model " + e.p("pred2.json") + " --test " +
                e.p("some.txt") + " --out-predictions " + e.p("x.csv")) == 2);
    CHECK(e.run("classify-eval --stats " + e.f.tax_stats + " --out-nodes " + e.p("x.csv")) == 4);
}

TEST_CASE("analysis subcommands") {
    const auto& e = env();
    const std::string tax = " --taxonomy " + e.f.tax_taxonomy + " --stats " + e.f.tax_stats;
    REQUIRE(e.run("rfe" + tax + " --folds 3 --out " + e.p("rfe.csv")) == 0);
    CHECK(lines(e.p("rfe.csv")) == 20);
    CHECK(e.run("rfe" + tax + " --rank tribe --out " + e.p("x.csv")) == 4);

    REQUIRE(e.run("permtest" + tax + " --rank kingdom --statistic nodes --statistic edges --permutations 199 --out " +
                  e.p("perm.csv")) == 0);
    CHECK(lines(e.p("perm.csv")) == 3);
    CHECK(e.run("permtest" + tax + " --statistic bogus --out " + e.p("x.csv")) == 4);

    REQUIRE(e.run("map-trees --names " + e.f.names + " --reference-tree " + e.f.weighted_tree + " --out " +
                  e.p("mapping.tsv")) == 0);
    CHECK(lines(e.p("mapping.tsv")) == 60);
    REQUIRE(e.run("figure-data --tree " + e.f.tree + " --stats " + e.f.stats + " --taxonomy " + e.f.lineages +
                  " --weighted-tree " + e.f.weighted_tree + " --mapping " + e.p("mapping.tsv") + " --out " +
                  e.p("fig.csv")) == 0);
    CHECK(lines(e.p("fig.csv")) == 61);
    CHECK(e.log().find("warning") == std::string::npos);
    CHECK(e.run("figure-data --tree " + e.f.tree + " --stats " + e.f.stats + " --weighted-tree " + e.f.weighted_tree +
                " --out " + e.p("x.csv")) == 4);
}

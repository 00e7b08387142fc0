#include "doctest.h"

#include "motifq/errors.hpp"
#include "motifq/synthgen.hpp"
#include "support.hpp"

#include <cmath>
#include <sstream>

using namespace motifq;
using namespace testsupport;

namespace {

SynthSpec spec_of(const std::string& motif, std::size_t n, double d, double r, std::size_t plants, std::uint64_t seed) {
    SynthSpec s;
    s.motif = *builtin_motif(motif);
    s.n = n;
    s.d = d;
    s.r_act = r;
    s.plant_count = plants;
    s.seed = seed;
    return s;
}

/// Edges not belonging to a planted copy, using the recorded copy names.
std::vector<Relation> filler_labels(const RegulatoryNetwork& net, const SynthSpec& spec) {
    std::set<std::pair<NodeId, NodeId>> planted;
    for (const auto& copy : planted_copies(spec)) {
        for (const auto& e : spec.motif.edges()) {
            planted.emplace(*net.find_node(copy[e.a]), *net.find_node(copy[e.b]));
        }
    }
    std::vector<Relation> out;
    for (const auto& e : net.edges()) {
        if (!planted.count({e.src, e.dst})) out.push_back(e.rel);
    }
    return out;
}

}  // namespace

TEST_CASE("edge targets") {
    auto s = spec_of("ffl", 101, 3.0, 0.5, 1, 0);
    CHECK(s.target_edges() == static_cast<std::size_t>(std::llround(101 * 3.0 / 2)));
    s.convention = DegreeConvention::OutDegree;
    CHECK(s.target_edges() == 303);
    CHECK(generate(s).edge_count() == 303);
}

TEST_CASE("planted FFLs are found by the enumerator") {
    auto s = spec_of("ffl", 60, 2.0, 0.5, 3, 9);
    auto net = generate(s);
    CHECK(net.edge_count() == s.target_edges());
    auto embs = enumerate_embeddings(net, s.motif);
    CHECK(embs.size() >= 3);
    const auto found = brute_embeddings(net, s.motif);
    for (const auto& copy : planted_copies(s)) {
        EdgeSet es;
        for (const auto& e : s.motif.edges()) es.push_back(*net.find_edge(*net.find_node(copy[e.a]), *net.find_node(copy[e.b])));
        std::sort(es.begin(), es.end());
        CHECK(found.count(es) == 1);
    }
}

TEST_CASE("planted copies are node-disjoint for every motif") {
    for (const auto& m : builtin_motifs()) {
        auto s = spec_of(m.name(), 80, 3.0, 0.4, 6, 21);
        std::set<std::string> used;
        for (const auto& copy : planted_copies(s)) {
            CHECK(copy.size() == m.size());
            for (const auto& v : copy) CHECK(used.insert(v).second);
        }
        auto net = generate(s);
        auto embs = enumerate_embeddings(net, m);
        CHECK(embs.size() >= 6);
    }
}

TEST_CASE("activation ratio") {
    auto all_act = spec_of("cascade", 50, 4.0, 1.0, 2, 3);
    auto net = generate(all_act);
    for (auto rel : filler_labels(net, all_act)) CHECK(rel == Relation::Activation);

    for (double r : {0.1, 0.35, 0.5, 0.8}) {
        auto s = spec_of("bifan", 1000, 4.0, r, 10, 77);
        auto g = generate(s);
        auto labels = filler_labels(g, s);
        const double act = static_cast<double>(std::count(labels.begin(), labels.end(), Relation::Activation));
        CHECK(std::abs(act / static_cast<double>(labels.size()) - r) <= 0.02);
    }
}

TEST_CASE("same seed reproduces the network") {
    auto s = spec_of("biparallel", 120, 5.0, 0.3, 4, 1234);
    auto a = generate(s);
    auto b = generate(s);
    CHECK(a.edges() == b.edges());
    CHECK(a.node_names() == b.node_names());
    s.seed = 1235;
    CHECK(generate(s).edges() != a.edges());
}

TEST_CASE("infeasible specs") {
    CHECK_THROWS_AS(generate(spec_of("ffl", 5, 4.0, 0.5, 2, 0)), InfeasibleSpec);
    CHECK_THROWS_AS(generate(spec_of("ffl", 30, 0.1, 0.5, 3, 0)), InfeasibleSpec);
    CHECK_THROWS_AS(generate(spec_of("ffl", 30, 4.0, 1.5, 1, 0)), InfeasibleSpec);
    CHECK_THROWS_AS(generate(spec_of("ffl", 4, 20.0, 0.5, 1, 0)), InfeasibleSpec);
    CHECK_THROWS_AS(generate(SynthSpec{}), InfeasibleSpec);
}

TEST_CASE("node names and instance names") {
    auto s = spec_of("ffl", 100, 2.0, 0.5, 1, 4);
    auto net = generate(s);
    CHECK(net.node_names().front() == "g00");
    CHECK(net.node_names().back() == "g99");
    CHECK(s.instance_name() == "ffl_n100_d2_r0.5_s4");
    s.name = "custom";
    CHECK(generate(s).name() == "custom");
}

TEST_CASE("manifest parsing") {
    std::istringstream in("# sweep\nn=50 d=3 r=0.25 motif=bifan plants=2 seed=8\n\nmotif=ffl convention=out name=x  # tail\n");
    auto specs = parse_manifest(in);
    REQUIRE(specs.size() == 2);
    CHECK(specs[0].n == 50);
    CHECK(specs[0].d == 3.0);
    CHECK(specs[0].r_act == 0.25);
    CHECK(specs[0].motif.name() == "bifan");
    CHECK(specs[0].plant_count == 2);
    CHECK(specs[0].seed == 8);
    CHECK(specs[1].convention == DegreeConvention::OutDegree);
    CHECK(specs[1].name == "x");

    std::istringstream bad1("n=ten motif=ffl\n");
    CHECK_THROWS_AS(parse_manifest(bad1), ParseError);
    std::istringstream bad2("n=10\n");
    CHECK_THROWS_AS(parse_manifest(bad2), ParseError);
    std::istringstream bad3("motif=ffl\ncolour=red motif=ffl\n");
    try {
        parse_manifest(bad3, "m.txt");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

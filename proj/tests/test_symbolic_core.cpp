#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "sofic/labelled_graph.hpp"

using namespace sofic;

namespace {

// Left Fischer cover of the even shift: 1-loop at P1, 0-edges P1<->P2.
LabelledGraph even_fischer() {
    LabelledGraph g{Alphabet{{"0", "1"}}};
    int p1 = g.add_vertex("P1"), p2 = g.add_vertex("P2");
    g.add_edge(p1, p1, 1);
    g.add_edge(p1, p2, 0);
    g.add_edge(p2, p1, 0);
    return g;
}

// Left Krieger cover of the even shift: Fischer part plus P3.
LabelledGraph even_krieger() {
    LabelledGraph g = even_fischer();
    int p3 = g.add_vertex("P3");
    g.add_edge(0, p3, 1);
    g.add_edge(p3, p3, 0);
    return g;
}

std::multiset<std::tuple<std::string, std::string, std::string>> edge_multiset(
    const LabelledGraph& g) {
    std::multiset<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& e : g.edges())
        out.insert({g.vertex_name(e.src), g.vertex_name(e.dst), g.alphabet().name(e.label)});
    return out;
}

LabelledGraph random_essential_graph(std::mt19937& rng, int max_vertices) {
    while (true) {
        std::uniform_int_distribution<int> nv(2, max_vertices);
        int n = nv(rng);
        LabelledGraph g{Alphabet{{"a", "b"}}};
        for (int v = 0; v < n; ++v) g.add_vertex();
        std::uniform_int_distribution<int> vtx(0, n - 1);
        std::uniform_int_distribution<int> sym(0, 1);
        int edges = n + vtx(rng) + 2;
        for (int e = 0; e < edges; ++e) g.add_edge(vtx(rng), vtx(rng), sym(rng));
        LabelledGraph h = essentialize(g);
        if (h.vertex_count() >= 2) return h;
    }
}

// Oracle: enumerate every word up to the pumping bound and compare
// nonemptiness of the backward images, stepping directly on the edge list.
bool language_equal_oracle(const LabelledGraph& g, const std::vector<int>& u,
                           const std::vector<int>& v, int max_len) {
    auto step = [&](const std::set<int>& targets, Symbol a) {
        std::set<int> out;
        for (const auto& e : g.edges())
            if (e.label == a && targets.count(e.dst)) out.insert(e.src);
        return out;
    };
    struct Item {
        std::set<int> a, b;
    };
    std::vector<Item> level{{std::set<int>(u.begin(), u.end()), std::set<int>(v.begin(), v.end())}};
    if (level[0].a.empty() != level[0].b.empty()) return false;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Item> next;
        for (const auto& item : level) {
            for (Symbol s = 0; s < g.alphabet().size(); ++s) {
                Item n{step(item.a, s), step(item.b, s)};
                if (n.a.empty() != n.b.empty()) return false;
                if (!n.a.empty()) next.push_back(std::move(n));
            }
        }
        level = std::move(next);
        if (level.empty()) break;
    }
    return true;
}

}  // namespace

TEST_CASE("transpose is an involution and preserves labels") {
    LabelledGraph g = even_krieger();
    CHECK(edge_multiset(transpose(transpose(g))) == edge_multiset(g));

    LabelledGraph loop{Alphabet{{"a"}}};
    loop.add_vertex();
    loop.add_edge(0, 0, 0);
    CHECK(edge_multiset(transpose(loop)) == edge_multiset(loop));

    LabelledGraph uv{Alphabet{{"a"}}};
    uv.add_vertex("u");
    uv.add_vertex("v");
    uv.add_edge(0, 1, 0);
    LabelledGraph t = transpose(uv);
    REQUIRE(t.edge_count() == 1);
    CHECK(t.edges()[0].src == 1);
    CHECK(t.edges()[0].dst == 0);
    CHECK(t.edges()[0].label == 0);
}

TEST_CASE("essentialize removes sinks and sources to a fixed point") {
    LabelledGraph g{Alphabet{{"a"}}};
    int u = g.add_vertex("u"), v = g.add_vertex("v");
    g.add_edge(u, v, 0);
    g.add_edge(u, u, 0);
    LabelledGraph h = essentialize(g);
    CHECK(h.vertex_count() == 1);
    CHECK(h.vertex_name(0) == "u");
    CHECK(h.edge_count() == 1);

    LabelledGraph f = even_fischer();
    CHECK(essentialize(f).vertex_count() == 2);
    CHECK(edge_multiset(essentialize(f)) == edge_multiset(f));

    // chain u -> v -> w collapses to nothing
    LabelledGraph chain{Alphabet{{"a"}}};
    chain.add_vertex();
    chain.add_vertex();
    chain.add_vertex();
    chain.add_edge(0, 1, 0);
    chain.add_edge(1, 2, 0);
    CHECK(essentialize(chain).vertex_count() == 0);

    // idempotent on random graphs
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        LabelledGraph r = random_essential_graph(rng, 5);
        LabelledGraph once = essentialize(r);
        CHECK(edge_multiset(essentialize(once)) == edge_multiset(once));
        CHECK(validate_presentation(once).essential);
    }
}

TEST_CASE("irreducible components") {
    LabelledGraph g{Alphabet{{"a"}}};
    int u = g.add_vertex("u"), v = g.add_vertex("v");
    g.add_edge(u, u, 0);
    g.add_edge(u, v, 0);
    auto comps = irreducible_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == std::vector<int>{u});

    auto even = irreducible_components(even_krieger());
    REQUIRE(even.size() == 2);
    CHECK(even[0] == std::vector<int>{0, 1});
    CHECK(even[1] == std::vector<int>{2});

    LabelledGraph lone{Alphabet{{"a"}}};
    lone.add_vertex();
    CHECK(irreducible_components(lone).empty());
}

TEST_CASE("validate_presentation flags") {
    PresentationReport r = validate_presentation(even_fischer());
    CHECK(r.left_resolving);
    CHECK(r.right_resolving);
    CHECK(r.irreducible);
    CHECK(r.essential);
    CHECK(r.predecessor_separated);
    CHECK(r.follower_separated);

    // standard loop graph of {ab, bb}: the central vertex receives two b-edges
    LabelledGraph loop{Alphabet{{"a", "b"}}};
    int c = loop.add_vertex("c"), m1 = loop.add_vertex("m1"), m2 = loop.add_vertex("m2");
    loop.add_edge(c, m1, 0);
    loop.add_edge(m1, c, 1);
    loop.add_edge(c, m2, 1);
    loop.add_edge(m2, c, 1);
    CHECK_FALSE(validate_presentation(loop).left_resolving);

    // the loop graph of {aa, b} is the even-shift Fischer cover itself
    LabelledGraph even_loop{Alphabet{{"a", "b"}}};
    int ec = even_loop.add_vertex("c"), em = even_loop.add_vertex("m");
    even_loop.add_edge(ec, em, 0);
    even_loop.add_edge(em, ec, 0);
    even_loop.add_edge(ec, ec, 1);
    CHECK(validate_presentation(even_loop).left_resolving);

    LabelledGraph bare{Alphabet{{"a"}}};
    bare.add_vertex();
    CHECK_FALSE(validate_presentation(bare).essential);

    // duality under transpose
    std::mt19937 rng(11);
    for (int i = 0; i < 15; ++i) {
        LabelledGraph g = random_essential_graph(rng, 5);
        CHECK(validate_presentation(transpose(g)).right_resolving ==
              validate_presentation(g).left_resolving);
        CHECK(validate_presentation(transpose(g)).left_resolving ==
              validate_presentation(g).right_resolving);
    }
}

TEST_CASE("source sets") {
    LabelledGraph f = even_fischer();
    Word one(1, static_cast<char>(1));
    CHECK(source_set(f, one) == std::vector<int>{0});
    Word eps;
    CHECK(source_set(f, eps) == std::vector<int>{0, 1});
    // 11 is allowed (loop), 101 is forbidden in the even shift
    Word w101;
    w101.push_back(1);
    w101.push_back(0);
    w101.push_back(1);
    CHECK(source_set(f, w101).empty());
}

TEST_CASE("predecessor language equality on the even shift covers") {
    LabelledGraph k = even_krieger();
    CHECK(predecessor_language_equal(k, {0, 1}, {2}));
    CHECK_FALSE(predecessor_language_equal(k, {0}, {1}));
    CHECK(predecessor_language_equal(k, {0, 2}, {0, 2}));

    // non-left-resolving input is rejected
    LabelledGraph bad{Alphabet{{"a"}}};
    bad.add_vertex();
    bad.add_vertex();
    bad.add_edge(0, 0, 0);
    bad.add_edge(1, 0, 0);
    CHECK_THROWS_AS(predecessor_language_equal(bad, {0}, {1}), std::invalid_argument);
}

TEST_CASE("language equality matches the word-enumeration oracle") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        LabelledGraph g = random_essential_graph(rng, 3);
        BackwardTables t(g);
        int n = g.vertex_count();
        int bound = 2 * n * n;
        std::vector<std::vector<int>> subsets;
        for (int v = 0; v < n; ++v) subsets.push_back({v});
        subsets.push_back([&] {
            std::vector<int> all(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
            return all;
        }());
        for (std::size_t i = 0; i < subsets.size(); ++i)
            for (std::size_t j = 0; j < subsets.size(); ++j) {
                bool fast = language_equal(t, to_bitset(n, subsets[i]), to_bitset(n, subsets[j]));
                bool slow = language_equal_oracle(g, subsets[i], subsets[j], bound);
                CHECK(fast == slow);
            }
        // equivalence relation on singleton classes
        for (int a = 0; a < n; ++a) {
            CHECK(language_equal(t, to_bitset(n, {a}), to_bitset(n, {a})));
            for (int b = 0; b < n; ++b) {
                bool ab = language_equal(t, to_bitset(n, {a}), to_bitset(n, {b}));
                bool ba = language_equal(t, to_bitset(n, {b}), to_bitset(n, {a}));
                CHECK(ab == ba);
                for (int c = 0; c < n; ++c) {
                    bool bc = language_equal(t, to_bitset(n, {b}), to_bitset(n, {c}));
                    bool ac = language_equal(t, to_bitset(n, {a}), to_bitset(n, {c}));
                    if (ab && bc) CHECK(ac);
                }
            }
        }
    }
}

TEST_CASE("symbol expansion") {
    LabelledGraph loop{Alphabet{{"a"}}};
    loop.add_vertex();
    loop.add_edge(0, 0, 0);
    LabelledGraph two = symbol_expand(loop, 0, "d");
    CHECK(two.vertex_count() == 2);
    CHECK(two.edge_count() == 2);
    CHECK(two.alphabet().size() == 2);

    LabelledGraph f = even_fischer();
    LabelledGraph noa = symbol_expand(f, f.alphabet().index_of("1"), "d");
    // exactly one 1-edge in the even Fischer cover
    CHECK(noa.vertex_count() == 3);
    CHECK(noa.edge_count() == 4);

    LabelledGraph same{Alphabet{{"a", "b"}}};
    same.add_vertex();
    same.add_edge(0, 0, 1);
    LabelledGraph exp = symbol_expand(same, 0, "d");
    CHECK(exp.vertex_count() == 1);
    CHECK(exp.edge_count() == 1);
    CHECK(exp.alphabet().size() == 3);

    CHECK_THROWS_AS(symbol_expand(f, 0, "1"), std::invalid_argument);

    // adds exactly (#a-edges) vertices and edges
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        LabelledGraph g = random_essential_graph(rng, 5);
        int a_edges = 0;
        for (const auto& e : g.edges()) a_edges += (e.label == 0);
        LabelledGraph x = symbol_expand(g, 0, "zz");
        CHECK(x.vertex_count() == g.vertex_count() + a_edges);
        CHECK(x.edge_count() == g.edge_count() + a_edges);
    }
}

TEST_CASE("graph isomorphism") {
    LabelledGraph f = even_fischer();
    auto idmap = graph_isomorphic(f, f);
    REQUIRE(idmap.has_value());
    CHECK(*idmap == std::vector<int>{0, 1});

    // asymmetric witness: u -> v is not isomorphic to its transpose
    // once extended so that degrees do not already distinguish it;
    // plain one-edge graphs transpose to a re-labelled copy, so use
    // labels that break the symmetry instead.
    LabelledGraph g1{Alphabet{{"a", "b"}}};
    g1.add_vertex();
    g1.add_vertex();
    g1.add_edge(0, 0, 0);
    g1.add_edge(0, 1, 1);
    CHECK_FALSE(graph_isomorphic(g1, transpose(g1)).has_value());

    // random vertex permutations are always recovered
    std::mt19937 rng(31);
    for (int i = 0; i < 15; ++i) {
        LabelledGraph g = random_essential_graph(rng, 6);
        std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
        for (int v = 0; v < g.vertex_count(); ++v) perm[static_cast<std::size_t>(v)] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        LabelledGraph pg(g.alphabet());
        for (int v = 0; v < g.vertex_count(); ++v) pg.add_vertex();
        for (const auto& e : g.edges())
            pg.add_edge(perm[static_cast<std::size_t>(e.src)],
                        perm[static_cast<std::size_t>(e.dst)], e.label);
        auto found = graph_isomorphic(g, pg);
        REQUIRE(found.has_value());
        for (const auto& e : g.edges()) {
            (void)e;  // mapping validity is asserted inside the search
        }
    }

    // differing labels are not matched
    LabelledGraph h{Alphabet{{"b"}}};
    h.add_vertex("Q1");
    h.add_vertex("Q2");
    h.add_edge(0, 0, 0);
    h.add_edge(0, 1, 0);
    h.add_edge(1, 0, 0);
    CHECK_FALSE(graph_isomorphic(f, h).has_value());

    // relabelled copy of the even Fischer cover maps back
    LabelledGraph copy{Alphabet{{"0", "1"}}};
    copy.add_vertex("X");
    copy.add_vertex("Y");
    copy.add_edge(1, 1, 1);
    copy.add_edge(1, 0, 0);
    copy.add_edge(0, 1, 0);
    auto m = graph_isomorphic(f, copy);
    REQUIRE(m.has_value());
    CHECK(*m == std::vector<int>{1, 0});
}

TEST_CASE("graph serialization round trip") {
    LabelledGraph g = even_krieger();
    std::string text = graph_to_string(g);
    std::istringstream in(text);
    LabelledGraph h = read_graph(in);
    CHECK(edge_multiset(g) == edge_multiset(h));
    CHECK(graph_to_string(h) == text);
}

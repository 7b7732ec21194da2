#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sofic/alphabet.hpp"
#include "sofic/bitset.hpp"

namespace sofic {

struct Edge {
    int src;
    int dst;
    Symbol label;
};

// Finite directed multigraph with edge labels. Vertex ids are dense
// and ordered by insertion, so serialized output is reproducible.
// Values are treated as immutable once construction is finished.
class LabelledGraph {
public:
    LabelledGraph() = default;
    explicit LabelledGraph(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    int add_vertex(std::string name = "") {
        if (name.empty()) name = "v" + std::to_string(names_.size());
        names_.push_back(std::move(name));
        return static_cast<int>(names_.size()) - 1;
    }

    void add_edge(int src, int dst, Symbol label) { edges_.push_back({src, dst, label}); }
    void add_edge(int src, int dst, const std::string& label) {
        edges_.push_back({src, dst, alphabet_.index_of(label)});
    }

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Alphabet& alphabet() const { return alphabet_; }
    Alphabet& alphabet() { return alphabet_; }
    const std::string& vertex_name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& vertex_names() const { return names_; }

    int out_degree(int v) const {
        int d = 0;
        for (const auto& e : edges_) d += (e.src == v);
        return d;
    }
    int in_degree(int v) const {
        int d = 0;
        for (const auto& e : edges_) d += (e.dst == v);
        return d;
    }

private:
    Alphabet alphabet_;
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
};

struct PresentationReport {
    bool left_resolving = false;
    bool right_resolving = false;
    bool irreducible = false;
    bool essential = false;
    bool predecessor_separated = false;
    bool follower_separated = false;
};

// Precomputed per-symbol backward images: step(a, V) = aV is the set
// of sources of a-labelled edges ending in V.
class BackwardTables {
public:
    explicit BackwardTables(const LabelledGraph& g);
    // aV for a single target vertex.
    const Bitset& sources(Symbol a, int v) const {
        return tab_[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)];
    }
    Bitset step(Symbol a, const Bitset& targets) const;
    int vertex_count() const { return n_; }
    int symbol_count() const { return static_cast<int>(tab_.size()); }

private:
    int n_ = 0;
    std::vector<std::vector<Bitset>> tab_;
};

LabelledGraph transpose(const LabelledGraph& g);

// Subgraph induced by the given vertices (ids are compacted, order kept).
LabelledGraph induced_subgraph(const LabelledGraph& g, const std::vector<int>& vertices);

// Vertices of the maximal essential subgraph, in ascending order.
std::vector<int> essential_vertices(const LabelledGraph& g);
LabelledGraph essentialize(const LabelledGraph& g);

// Strongly connected components that contain at least one edge, i.e.
// the maximal irreducible subgraphs, ordered by smallest member.
std::vector<std::vector<int>> irreducible_components(const LabelledGraph& g);

// True when the graph has exactly one irreducible component and it
// covers every vertex.
bool is_irreducible(const LabelledGraph& g);

PresentationReport validate_presentation(const LabelledGraph& g);

// Set of vertices where a path labelled w starts, computed right to
// left via V -> aV. For the empty word: all vertices emitting an edge.
std::vector<int> source_set(const LabelledGraph& g, const Word& w);

// Predecessor-word-language comparison of vertex subsets via the
// product subset construction on pairs. The *_in variants take
// precomputed tables; U and V may live in different graphs as long as
// labels are matched by name.
bool language_equal(const BackwardTables& t, const Bitset& u, const Bitset& v);
bool language_subset(const BackwardTables& t, const Bitset& u, const Bitset& v);
bool language_equal_across(const LabelledGraph& g1, const Bitset& u,
                           const LabelledGraph& g2, const Bitset& v);

// Public contract of the spec: rejects non-left-resolving input.
bool predecessor_language_equal(const LabelledGraph& g, const std::vector<int>& u,
                                const std::vector<int>& v);

// Replace every a-edge by two consecutive edges labelled a then d
// through a fresh midpoint vertex.
LabelledGraph symbol_expand(const LabelledGraph& g, Symbol a, const std::string& d);

// Label-, source- and range-preserving bijection, first found in
// canonical backtracking order; labels are matched by name.
std::optional<std::vector<int>> graph_isomorphic(const LabelledGraph& g1, const LabelledGraph& g2);

// Text format: "vertices: v0 v1 ..." then one "src label dst" line per edge.
void write_graph(std::ostream& os, const LabelledGraph& g);
std::string graph_to_string(const LabelledGraph& g);
LabelledGraph read_graph(std::istream& is);

inline Bitset to_bitset(int n, const std::vector<int>& idx) {
    Bitset b(n);
    for (int i : idx) b.set(i);
    return b;
}

}  // namespace sofic

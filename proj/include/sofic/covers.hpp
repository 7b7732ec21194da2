#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sofic/int_matrix.hpp"
#include "sofic/labelled_graph.hpp"

namespace sofic {

// Thrown when a state-space construction exceeds its cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultStateCap = 200000;

// A subset of Fischer-cover vertices together with its union-
// equivalence class. min_size is the smallest cardinality of any set
// of generalised-Fischer vertices with the same predecessor-set union.
struct SubsetClass {
    Bitset representative;
    int class_id = -1;
    int min_size = 0;
};

// A cover whose vertices are union-classes of Fischer-vertex subsets.
struct CoverWithClasses {
    LabelledGraph graph;
    std::vector<SubsetClass> classes;  // one per vertex
};

// The left Fischer cover of the irreducible sofic shift presented by
// g: backward subset construction, merge of predecessor-equivalent
// vertices, essentialization, and extraction of the top irreducible
// component. Errors on reducible or empty input.
LabelledGraph fischer_cover_left(const LabelledGraph& g, std::size_t cap = kDefaultStateCap);
LabelledGraph fischer_cover_right(const LabelledGraph& g, std::size_t cap = kDefaultStateCap);

// States are binary relations on the Fischer vertices reachable from
// the identity under right-multiplication by the one-letter relations;
// dom of a state on a transition cycle is a stabilized predecessor set.
struct RelationMonoidAutomaton {
    std::vector<std::vector<Bitset>> states;    // state -> relation rows
    std::vector<std::vector<int>> transitions;  // state x symbol -> state
    std::vector<bool> cyclic;                   // lies on a directed cycle
    std::vector<Bitset> domains;                // dom of each state
};

RelationMonoidAutomaton relation_monoid(const LabelledGraph& fischer,
                                        std::size_t cap = kDefaultStateCap);

CoverWithClasses krieger_cover_left(const LabelledGraph& fischer,
                                    std::size_t cap = kDefaultStateCap);

CoverWithClasses past_set_cover(const LabelledGraph& fischer,
                                std::size_t cap = kDefaultStateCap);

struct GfcResult {
    LabelledGraph graph;
    std::vector<int> cover_vertices;     // vertices of the input cover kept
    std::vector<bool> indecomposable;    // per input cover vertex
};

// Subgraph of the Krieger cover induced by the vertices that reach an
// indecomposable predecessor set.
GfcResult generalized_fischer_cover(const CoverWithClasses& krieger,
                                    const LabelledGraph& fischer);

// layer(v) = min cardinality of a set of generalised-Fischer vertices
// whose predecessor-language union matches v's class.
std::vector<int> layers(const CoverWithClasses& cover, const LabelledGraph& fischer,
                        const CoverWithClasses& krieger, const GfcResult& gfc);

// Krieger cover isomorphic to the maximal essential subgraph of the
// past set cover (Carlsen-Matsumoto Condition (*)).
bool condition_star(const LabelledGraph& fischer, std::size_t cap = kDefaultStateCap);

// Vertices: proper communication sets (SCCs containing an edge);
// an edge between two sets whenever a path connects them. Edges carry
// a single sentinel label.
LabelledGraph proper_communication_graph(const LabelledGraph& g);

// The AFT left Fischer cover realizing a given rooted acyclic graph as
// the proper communication graph of its left Krieger cover. With
// condition_k, each vertex gets two loops instead of one.
LabelledGraph range_invariant_construction(const LabelledGraph& e, bool condition_k);

struct FiberProduct {
    SymbolicMatrix matrix;  // full product, vertices in row-major pair order
    LabelledGraph graph;
    LabelledGraph cover;    // maximal essential subgraph
};

// Label-synchronized product of a right-resolving cover with itself.
FiberProduct fiber_product(const LabelledGraph& right_fischer);

}  // namespace sofic

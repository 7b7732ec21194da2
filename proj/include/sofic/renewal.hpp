#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sofic/invariants.hpp"
#include "sofic/labelled_graph.hpp"

namespace sofic {

struct GeneratingList {
    std::string name;
    Alphabet alphabet;
    std::vector<Word> words;
};

// Parses whitespace-separated word tokens; the alphabet is built in
// order of first occurrence. Rejects empty or duplicate words.
GeneratingList make_generating_list(const std::string& name,
                                    const std::vector<std::string>& tokens);

std::string render_generating_list(const GeneratingList& list);

// A minimal partitioning (n_b, [g_1..g_k], l) of the factor starting
// at position n_b of the concatenation g_1...g_k; l is implicit in the
// owning word entry.
struct Partitioning {
    int n_b = 1;
    std::vector<int> gens;
};

struct WordEntry {
    Word word;
    std::vector<Partitioning> partitionings;
    bool strongly_synchronizing = false;
    bool left_extendable = false;
    bool right_extendable = false;
};

struct WordTable {
    int length = 0;
    std::vector<WordEntry> entries;
    std::unordered_map<Word, int> index;
};

// All allowed words of length 1 with their minimal partitionings.
WordTable word_table_initial(const GeneratingList& list);

// All minimal partitionings and allowed words at length l+1; the
// strongly-synchronizing flag propagates from length-l factors.
WordTable extend_step(const GeneratingList& list, const WordTable& table);

// Sets the three flags from the entry's minimal partitionings; skipped
// parts are short-circuited when a strongly synchronizing factor is
// already known.
void classify_word_flags(const GeneratingList& list, WordEntry& entry);

struct LengthStats {
    int length = 0;
    std::size_t words = 0;
    std::size_t strongly_sync = 0;
    std::size_t left_ext = 0;
    std::size_t right_ext = 0;
};

struct InvestigationResult {
    bool is_sft = false;
    int step = 0;                      // n for an n-step SFT
    std::size_t words_seen = 0;        // cumulative word count
    std::vector<Word> forbidden;       // first-occurrence minimal forbidden words
    std::vector<LengthStats> history;
    std::optional<BowenFranksInvariant> invariant;
    Int det = 0;
    std::vector<Word> words_n;         // B_n when sft
    std::vector<Word> words_n1;        // B_{n+1} when sft
};

inline constexpr std::size_t kDefaultWordCap = 10000;

// Asked when the cumulative word count exceeds the cap; returning true
// doubles the cap and resumes.
using CapCallback = std::function<bool(std::size_t)>;

InvestigationResult detect_sft(const GeneratingList& list,
                               std::size_t max_words = kDefaultWordCap,
                               const CapCallback& on_cap = nullptr);

// Edge graph with vertices B_n and edges B_{n+1}, each edge labelled
// by its last symbol.
LabelledGraph higher_block_shift(const GeneratingList& list, const InvestigationResult& r);

// detect_sft, then higher block shift, amalgamation reduction, and the
// Bowen-Franks invariant.
InvestigationResult investigate(const GeneratingList& list,
                                std::size_t max_words = kDefaultWordCap,
                                const CapCallback& on_cap = nullptr);

// Internal words up to the given length bound (default: max generator
// length); all minimal partitionings count, including boundary-crossing
// ones.
std::vector<Word> internal_words(const GeneratingList& list, int bound = 0);

// Replaces maximal-length internal words by fresh symbols until every
// internal word has length 1; output canonically renamed and sorted.
GeneratingList reduce_irreducible(const GeneratingList& list);

// Union list over disjointified alphabets (second list's symbols get a
// primed suffix).
GeneratingList add_lists(const GeneratingList& a, const GeneratingList& b);

// Preimage list under the fragmentation of `symbol` into k fresh ones.
GeneratingList fragment(const GeneratingList& list, const std::string& symbol, int k);

// The list whose renewal system forbids exactly { a_i^{n_i} }.
// Requires k >= 2, all n_i >= 2, and some n_i > 2.
GeneratingList symmetric_system(const std::vector<int>& ns);

// Loop graph with a common central vertex (vertex 0).
LabelledGraph standard_loop_graph(const GeneratingList& list);

struct BorderPoints {
    std::vector<int> vertices;      // Fischer-cover vertex per border point
    std::vector<Word> generators;   // minimal generator of each
    int universal = -1;             // index into `vertices`, or -1
};

int default_generator_bound(const GeneratingList& list, const LabelledGraph& fischer);

// Border points of the SFT renewal system X(list) with Fischer cover
// `fischer` (as produced by the pipeline from the standard loop graph).
BorderPoints border_points(const GeneratingList& list, const LabelledGraph& fischer,
                           int gen_bound = 0);

// Left Fischer cover of X(L1 u L2) for left-modular lists with
// identified universal border points and disjoint alphabets.
LabelledGraph modular_sum_fischer(const LabelledGraph& f1, const BorderPoints& b1,
                                  const LabelledGraph& f2, const BorderPoints& b2);

// The reduced Hong-Shin list {alpha, alphatilde, alpha g2..gr beta,
// beta alphatilde g2..gr} u {g_k}.
GeneratingList class_R_list(int r);

// Closed-form det(I - A) of a fragmentation of class_R_list(r); counts
// are fragment multiplicities per symbol name (missing means 1).
Int class_R_det(int r, const std::map<std::string, Int>& counts);

// File format: one system per line, "NAME: w1 w2 ...", '#' comments.
std::vector<GeneratingList> read_generating_lists(std::istream& is);
void write_generating_lists(std::ostream& os, const std::vector<GeneratingList>& lists);

}  // namespace sofic

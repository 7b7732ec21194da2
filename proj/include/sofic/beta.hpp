#pragma once

#include <string>
#include <vector>

#include "sofic/covers.hpp"
#include "sofic/invariants.hpp"
#include "sofic/labelled_graph.hpp"

namespace sofic {

// Eventually periodic generating sequence g(beta) = pre (period)^inf
// in minimal (n, p) form. Construct through validate_and_normalize.
struct BetaSequence {
    std::vector<int> pre;
    std::vector<int> period;

    int n() const { return static_cast<int>(pre.size()); }
    int p() const { return static_cast<int>(period.size()); }
    int digit(int i) const {  // 0-based position in the infinite sequence
        if (i < n()) return pre[static_cast<std::size_t>(i)];
        return period[static_cast<std::size_t>((i - n()) % p())];
    }
    bool operator==(const BetaSequence& o) const { return pre == o.pre && period == o.period; }
};

std::string render_beta(const BetaSequence& s);

// Minimal (n,p) form; rejects Parry violations (every proper shift
// must compare strictly below the sequence, except the forced
// period-multiple equalities of a periodic sequence), all-zero input,
// single-digit periods, and finitely supported sequences.
BetaSequence validate_and_normalize(const std::vector<int>& pre, const std::vector<int>& period);

inline bool is_sft(const BetaSequence& s) { return s.n() == 0; }
inline int covering_multiplicity(const BetaSequence& s) { return is_sft(s) ? 1 : 2; }

// Sum of the period digits; a flow invariant.
int invariant_S(const BetaSequence& s);

// n+p vertices; from v_i edges 0..g_i-1 back to v_1 and one g_i-edge
// to v_{i+1}, wrapping the period.
LabelledGraph right_fischer_cover(const BetaSequence& s);

// Closed forms, each cross-checked against the pipeline value of the
// constructed cover matrix.
BowenFranksInvariant bf_fischer(const BetaSequence& s);
BowenFranksInvariant bf_fiber(const BetaSequence& s);

// Computes the right Krieger cover via the transpose route and tests
// isomorphism with the right Fischer cover; true for every valid s.
bool krieger_equals_fischer_check(const BetaSequence& s, std::size_t cap = kDefaultStateCap);

// Fischer cover plus two disjoint period cycles with their fan-in
// edges; the attached involution fixes the Fischer part and swaps the
// two cycles. Checked isomorphic to the essentialized fiber product.
struct BetaFiberCover {
    LabelledGraph graph;
    std::vector<int> involution;  // vertex -> vertex, order two
};
BetaFiberCover fiber_product_cover(const BetaSequence& s);

// Digitwise image under j -> 1^j 0, renormalized; output alphabet {0,1}.
BetaSequence to_binary(const BetaSequence& s);

// Deletes a 0 after each occurrence of the maximal leading 1-run.
BetaSequence delete_zero_move(const BetaSequence& s);
// Inserts a 0 after the initial 1^k and after each occurrence of 01^k;
// requires binary aperiodic input and k > n/2 for the maximal 1-prefix n.
BetaSequence insert_zero_move(const BetaSequence& s, int k);

// Greedy alternation of delete/insert moves; each applied move must
// strictly decrease (pre-period length, period length).
BetaSequence standard_form(const BetaSequence& s);

enum class FlowVerdict { equivalent, equivalent_assuming_conjecture, not_equivalent, unknown };

FlowVerdict classify_flow(const BetaSequence& a, const BetaSequence& b);
std::string render_verdict(FlowVerdict v);

}  // namespace sofic

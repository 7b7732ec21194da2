#pragma once

#include <set>
#include <string>

#include "sofic/invariants.hpp"
#include "sofic/labelled_graph.hpp"

namespace sofic {

// Sofic gap set S = {e_1..e_k} u ({f_1..f_l} + N * N0). N = 0 encodes
// a finite S with empty periodic base.
struct GapSpec {
    std::set<int> sporadic;
    std::set<int> base;
    int period = 0;
};

// Validates the invariants: nonnegative entries, sporadic disjoint
// from the periodic tail, base spread smaller than the period, base
// empty iff period is 0, S nonempty.
GapSpec make_gap_spec(const std::set<int>& sporadic, const std::set<int>& base, int period);

std::string render_gap_spec(const GapSpec& s);

bool is_reduced(const GapSpec& s);

// Fully periodic standard form {0, ...} + n*N0 with minimal n, by the
// rotation j = 1 - k (mod l).
GapSpec reduce(const GapSpec& s);

// True iff the gap shift is an SFT: finite S, or a cofinite tail.
bool gap_is_sft(const GapSpec& s);

// Flow class of an SFT gap shift: full |S|-shift when S is finite,
// full 2-shift otherwise. Errors on strictly sofic input.
struct SftVerdict {
    int full_shift_symbols = 0;
};
SftVerdict classify_sft(const GapSpec& s);

// n vertices on a 0-labelled wheel with 1-labelled chords from each
// v_{s_i} to v_0; requires the reduced form.
LabelledGraph gap_right_fischer_cover(const GapSpec& reduced);

struct GapInvariants {
    int k = 0;  // base size of the reduced form
    int n = 0;  // period of the reduced form
    BowenFranksInvariant bf;
};
GapInvariants gap_invariants(const GapSpec& s);

enum class GapVerdict { not_equivalent, unknown };
GapVerdict flow_distinguish(const GapSpec& a, const GapSpec& b);

// CLI grammar "e1,e2|f1,f2|N".
GapSpec parse_gap_spec(const std::string& text);

}  // namespace sofic

#pragma once

#include <string>
#include <vector>

#include "sofic/int_matrix.hpp"

namespace sofic {

// Divisor chain d1 | d2 | ... | dn, all nonnegative, zeros last.
struct SmithForm {
    std::vector<Int> divisors;
};

enum class DetSign { negative, zero, positive };

// Sign of det(I - A) together with the nontrivial elementary divisors
// of I - A (1s dropped, 0 meaning a free summand).
struct BowenFranksInvariant {
    DetSign sign = DetSign::zero;
    std::vector<Int> divisors;

    bool operator==(const BowenFranksInvariant& o) const {
        return sign == o.sign && divisors == o.divisors;
    }
};

// Repeatedly merges groups of identical rows by a state-amalgamation
// (columns of a group are summed) until all rows are distinct. The
// Bowen-Franks invariant of I - A is preserved.
SparseIntMatrix amalgamation_reduce(const SparseIntMatrix& m);

// Divisor chain of the input matrix itself (callers pass I - A).
SmithForm smith_normal_form(const SparseIntMatrix& m);

// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const SparseIntMatrix& m);

BowenFranksInvariant bowen_franks(const SparseIntMatrix& adjacency);
BowenFranksInvariant bowen_franks(const LabelledGraph& g);

// Franks classification: complete for irreducible SFTs not flow
// equivalent to the trivial one-point shift; the caller asserts that.
bool franks_equivalent(const BowenFranksInvariant& a, const BowenFranksInvariant& b);

// log of the Perron eigenvalue of a nonnegative matrix, by power
// iteration with an all-ones seed; -infinity for zero/empty matrices.
double entropy(const SparseIntMatrix& m, double tol = 1e-10);

// "-Z/2Z", "Z/3Z+Z+Z", "+Z/4Z", "-Z/1Z" (trivial group).
std::string render_bf(const BowenFranksInvariant& bf);
// "[d1,...,dk]" with 0 denoting a free summand.
std::string render_divisors(const std::vector<Int>& divisors);

}  // namespace sofic

#include "sofic/beta.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sofic {

std::string render_beta(const BetaSequence& s) {
    bool wide = false;
    for (int d : s.pre) wide |= d > 9;
    for (int d : s.period) wide |= d > 9;
    auto join = [&](const std::vector<int>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (wide && i) out += ',';
            out += std::to_string(v[i]);
        }
        return out;
    };
    return join(s.pre) + "(" + join(s.period) + ")";
}

namespace {

// Lexicographic comparison of shift k of the infinite sequence against
// the sequence itself over a window.
int compare_shift(const BetaSequence& s, int k, int window) {
    for (int i = 0; i < window; ++i) {
        int a = s.digit(k + i);
        int b = s.digit(i);
        if (a != b) return a < b ? -1 : 1;
    }
    return 0;
}

void normalize(BetaSequence& s) {
    // Minimal period.
    int p = s.p();
    for (int d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        bool ok = true;
        for (int i = d; i < p && ok; ++i)
            ok = s.period[static_cast<std::size_t>(i)] == s.period[static_cast<std::size_t>(i % d)];
        if (ok) {
            s.period.resize(static_cast<std::size_t>(d));
            break;
        }
    }
    // Shortest pre-period: absorb trailing digits equal to the period's
    // last by rotating the period.
    while (!s.pre.empty() && s.pre.back() == s.period.back()) {
        s.period.insert(s.period.begin(), s.period.back());
        s.period.pop_back();
        s.pre.pop_back();
    }
}

}  // namespace

BetaSequence validate_and_normalize(const std::vector<int>& pre, const std::vector<int>& period) {
    if (period.empty()) throw std::invalid_argument("beta sequence: empty period");
    for (int d : pre)
        if (d < 0) throw std::invalid_argument("beta sequence: negative digit");
    for (int d : period)
        if (d < 0) throw std::invalid_argument("beta sequence: negative digit");

    BetaSequence s{pre, period};
    normalize(s);

    if (std::all_of(s.period.begin(), s.period.end(), [](int d) { return d == 0; })) {
        bool zero_pre = std::all_of(s.pre.begin(), s.pre.end(), [](int d) { return d == 0; });
        throw std::invalid_argument(zero_pre ? "beta sequence: identically zero"
                                             : "beta sequence: finitely supported");
    }
    if (s.n() == 0 && s.p() == 1)
        throw std::invalid_argument("beta sequence: Parry violation (constant sequence)");

    int window = s.n() + 2 * s.p();
    for (int k = 1; k <= window; ++k) {
        int cmp = compare_shift(s, k, window);
        if (cmp > 0) throw std::invalid_argument("beta sequence: Parry violation");
        if (cmp == 0 && !(s.n() == 0 && k % s.p() == 0))
            throw std::invalid_argument("beta sequence: Parry violation (shift not strictly less)");
    }
    return s;
}

int invariant_S(const BetaSequence& s) {
    int sum = 0;
    for (int d : s.period) sum += d;
    return sum;
}

LabelledGraph right_fischer_cover(const BetaSequence& s) {
    int total = s.n() + s.p();
    int maxdigit = 0;
    for (int i = 0; i < total; ++i) maxdigit = std::max(maxdigit, s.digit(i));
    Alphabet alpha;
    for (int d = 0; d <= maxdigit; ++d) alpha.add(std::to_string(d));
    LabelledGraph g(alpha);
    for (int i = 1; i <= total; ++i) g.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < total; ++i) {
        int gi = s.digit(i);
        for (int d = 0; d < gi; ++d) g.add_edge(i, 0, d);
        int succ = (i + 1 < total) ? i + 1 : s.n();
        g.add_edge(i, succ, gi);
    }
    return g;
}

BowenFranksInvariant bf_fischer(const BetaSequence& s) {
    int S = invariant_S(s);
    BowenFranksInvariant closed;
    closed.sign = DetSign::negative;
    if (S != 1) closed.divisors.push_back(S);
    BowenFranksInvariant pipeline = bowen_franks(adjacency_matrix(right_fischer_cover(s)));
    if (!(closed == pipeline))
        throw std::logic_error("bf_fischer: closed form disagrees with pipeline");
    return closed;
}

BetaFiberCover fiber_product_cover(const BetaSequence& s) {
    if (is_sft(s))
        throw std::invalid_argument("fiber_product_cover: sequence is periodic (SFT case)");
    int n = s.n(), p = s.p();
    LabelledGraph f = right_fischer_cover(s);
    BetaFiberCover out;
    out.graph = LabelledGraph(f.alphabet());
    for (int v = 0; v < f.vertex_count(); ++v) out.graph.add_vertex(f.vertex_name(v));
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < p; ++i)
            out.graph.add_vertex("v" + std::to_string(n + i + 1) + (c ? "''" : "'"));
    for (const auto& e : f.edges()) out.graph.add_edge(e.src, e.dst, e.label);
    for (int c = 0; c < 2; ++c) {
        int base = n + p + c * p;
        for (int i = 0; i < p; ++i) {
            int gi = s.digit(n + i);
            for (int d = 0; d < gi; ++d) out.graph.add_edge(base + i, 0, d);
            out.graph.add_edge(base + i, base + (i + 1) % p, gi);
        }
    }
    out.involution.resize(static_cast<std::size_t>(out.graph.vertex_count()));
    for (int v = 0; v < n + p; ++v) out.involution[static_cast<std::size_t>(v)] = v;
    for (int i = 0; i < p; ++i) {
        out.involution[static_cast<std::size_t>(n + p + i)] = n + 2 * p + i;
        out.involution[static_cast<std::size_t>(n + 2 * p + i)] = n + p + i;
    }
    // Cross-check against the essentialized product of the Fischer
    // cover with itself.
    FiberProduct product = fiber_product(f);
    if (!graph_isomorphic(out.graph, product.cover))
        throw std::logic_error("fiber_product_cover: direct construction differs from product");
    return out;
}

BowenFranksInvariant bf_fiber(const BetaSequence& s) {
    int S = invariant_S(s);
    BowenFranksInvariant closed;
    closed.sign = DetSign::zero;
    if (S != 1) closed.divisors.push_back(S);
    closed.divisors.push_back(0);
    closed.divisors.push_back(0);
    BowenFranksInvariant pipeline =
        bowen_franks(adjacency_matrix(fiber_product_cover(s).graph));
    if (!(closed == pipeline))
        throw std::logic_error("bf_fiber: closed form disagrees with pipeline");
    return closed;
}

bool krieger_equals_fischer_check(const BetaSequence& s, std::size_t cap) {
    LabelledGraph f = right_fischer_cover(s);
    CoverWithClasses left_krieger = krieger_cover_left(transpose(f), cap);
    LabelledGraph right_krieger = transpose(left_krieger.graph);
    return graph_isomorphic(right_krieger, f).has_value();
}

BetaSequence to_binary(const BetaSequence& s) {
    auto phi = [](const std::vector<int>& digits) {
        std::vector<int> out;
        for (int d : digits) {
            out.insert(out.end(), static_cast<std::size_t>(d), 1);
            out.push_back(0);
        }
        return out;
    };
    return validate_and_normalize(phi(s.pre), phi(s.period));
}

namespace {

void require_binary_aperiodic(const BetaSequence& s, const char* who) {
    if (s.n() == 0) throw std::invalid_argument(std::string(who) + ": sequence is periodic");
    for (int i = 0; i < s.n() + s.p(); ++i)
        if (s.digit(i) > 1) throw std::invalid_argument(std::string(who) + ": not binary");
}

int leading_ones(const BetaSequence& s) {
    int m = 0;
    while (s.digit(m) == 1) ++m;
    return m;
}

// Recovers a (pre, period) pair from a rewrite that is p-periodic
// beyond position `stable` of the source sequence, then renormalizes.
BetaSequence recover(const std::vector<int>& emitted, const std::vector<int>& boundaries) {
    // boundaries: emitted counts at [q0, q0+p, q0+2p]
    std::vector<int> pre(emitted.begin(), emitted.begin() + boundaries[0]);
    std::vector<int> period(emitted.begin() + boundaries[0], emitted.begin() + boundaries[1]);
    std::vector<int> check(emitted.begin() + boundaries[1], emitted.begin() + boundaries[2]);
    if (period != check) throw std::logic_error("beta move: rewrite failed to become periodic");
    if (period.empty()) throw std::logic_error("beta move: empty rewritten period");
    return validate_and_normalize(pre, period);
}

}  // namespace

BetaSequence delete_zero_move(const BetaSequence& s) {
    require_binary_aperiodic(s, "delete_zero_move");
    int n = s.n(), p = s.p();
    int m = leading_ones(s);
    // The rewrite rule is p-periodic once its lookbehind window lies in
    // the periodic zone.
    int q0 = n + ((m + 1 + p - 1) / p + 1) * p;
    int limit = q0 + 2 * p;
    std::vector<int> emitted;
    std::vector<int> boundaries;
    for (int i = 0; i < limit; ++i) {
        if (i == q0 || i == q0 + p) boundaries.push_back(static_cast<int>(emitted.size()));
        bool drop = false;
        if (s.digit(i) == 0 && i >= m) {
            bool run = true;
            for (int j = i - m; j < i; ++j) run &= s.digit(j) == 1;
            if (run && (i - m == 0 || s.digit(i - m - 1) == 0)) drop = true;
        }
        if (!drop) emitted.push_back(s.digit(i));
    }
    boundaries.push_back(static_cast<int>(emitted.size()));
    BetaSequence out = recover(emitted, boundaries);
    if (invariant_S(out) != invariant_S(s))
        throw std::logic_error("delete_zero_move: invariant S changed");
    return out;
}

BetaSequence insert_zero_move(const BetaSequence& s, int k) {
    require_binary_aperiodic(s, "insert_zero_move");
    int n = s.n(), p = s.p();
    int m = leading_ones(s);
    if (!(2 * k > m && k <= m))
        throw std::invalid_argument("insert_zero_move: k must satisfy n/2 < k <= n");
    int q0 = n + ((k + 1 + p - 1) / p + 1) * p;
    int limit = q0 + 2 * p;
    std::vector<int> emitted;
    std::vector<int> boundaries;
    for (int i = 0; i < limit; ++i) {
        if (i == q0 || i == q0 + p) boundaries.push_back(static_cast<int>(emitted.size()));
        emitted.push_back(s.digit(i));
        bool insert = (i == k - 1);
        if (!insert && i >= k && s.digit(i - k) == 0) {
            bool run = true;
            for (int j = i - k + 1; j <= i; ++j) run &= s.digit(j) == 1;
            insert = run;
        }
        if (insert) emitted.push_back(0);
    }
    boundaries.push_back(static_cast<int>(emitted.size()));
    BetaSequence out = recover(emitted, boundaries);
    if (invariant_S(out) != invariant_S(s))
        throw std::logic_error("insert_zero_move: invariant S changed");
    return out;
}

BetaSequence standard_form(const BetaSequence& s) {
    BetaSequence cur = s;
    for (int i = 0; i < cur.n() + cur.p(); ++i)
        if (cur.digit(i) > 1) {
            cur = to_binary(cur);
            break;
        }
    auto measure = [](const BetaSequence& b) { return std::make_pair(b.n(), b.p()); };
    while (cur.n() > 0) {
        bool progressed = false;
        while (cur.n() > 0) {
            BetaSequence next = delete_zero_move(cur);
            if (measure(next) < measure(cur)) {
                cur = next;
                progressed = true;
            } else {
                break;
            }
        }
        if (cur.n() == 0) break;
        int m = leading_ones(cur);
        for (int k = m; 2 * k > m; --k) {
            BetaSequence next = insert_zero_move(cur, k);
            if (measure(next) < measure(cur)) {
                cur = next;
                progressed = true;
                break;
            }
        }
        if (!progressed) break;
    }
    return cur;
}

FlowVerdict classify_flow(const BetaSequence& a, const BetaSequence& b) {
    if (is_sft(a) != is_sft(b)) return FlowVerdict::not_equivalent;
    if (invariant_S(a) != invariant_S(b)) return FlowVerdict::not_equivalent;
    return is_sft(a) ? FlowVerdict::equivalent : FlowVerdict::equivalent_assuming_conjecture;
}

std::string render_verdict(FlowVerdict v) {
    switch (v) {
        case FlowVerdict::equivalent: return "equivalent";
        case FlowVerdict::equivalent_assuming_conjecture: return "equivalent-assuming-conjecture";
        case FlowVerdict::not_equivalent: return "not-equivalent";
        case FlowVerdict::unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace sofic

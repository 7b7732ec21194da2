#include "sofic/gap.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sofic {

GapSpec make_gap_spec(const std::set<int>& sporadic, const std::set<int>& base, int period) {
    if (period < 0) throw std::invalid_argument("gap spec: negative period");
    for (int e : sporadic)
        if (e < 0) throw std::invalid_argument("gap spec: negative gap length");
    for (int f : base)
        if (f < 0) throw std::invalid_argument("gap spec: negative gap length");
    if (period == 0) {
        if (!base.empty()) throw std::invalid_argument("gap spec: base requires a period");
        if (sporadic.empty()) throw std::invalid_argument("gap spec: empty set");
    } else {
        if (base.empty()) throw std::invalid_argument("gap spec: positive period with empty base");
        if (*base.rbegin() - *base.begin() >= period)
            throw std::invalid_argument("gap spec: base spread must be smaller than the period");
        for (int e : sporadic)
            for (int f : base)
                if (e >= f && (e - f) % period == 0)
                    throw std::invalid_argument("gap spec: sporadic value lies in the tail");
    }
    return GapSpec{sporadic, base, period};
}

std::string render_gap_spec(const GapSpec& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : s.sporadic) {
        if (!first) os << ',';
        os << e;
        first = false;
    }
    os << '}';
    if (s.period > 0) {
        os << "u({";
        first = true;
        for (int f : s.base) {
            if (!first) os << ',';
            os << f;
            first = false;
        }
        os << "}+" << s.period << "N)";
    }
    return os.str();
}

namespace {

// Rewrites the periodic tail with the smallest divisor of the period
// that leaves it invariant.
GapSpec canonical_period(const GapSpec& s) {
    if (s.period == 0 || !s.sporadic.empty()) return s;
    int lo = *s.base.begin();
    auto member = [&](int x) {
        for (int b : s.base)
            if (x >= b && (x - b) % s.period == 0) return true;
        return false;
    };
    for (int d = 1; d <= s.period; ++d) {
        if (s.period % d != 0) continue;
        bool ok = true;
        for (int x = lo; x < lo + s.period && ok; ++x) ok = member(x) == member(x + d);
        if (!ok) continue;
        std::set<int> base;
        for (int x = lo; x < lo + d; ++x)
            if (member(x)) base.insert(x);
        return make_gap_spec({}, base, d);
    }
    return s;
}

}  // namespace

bool is_reduced(const GapSpec& s) {
    if (s.period == 0 || !s.sporadic.empty()) return false;
    if (s.base.empty() || *s.base.begin() != 0) return false;
    GapSpec c = canonical_period(s);
    return c.period == s.period;
}

GapSpec reduce(const GapSpec& s) {
    if (s.period == 0) throw std::invalid_argument("reduce: finite gap set (period 0)");
    int k = static_cast<int>(s.sporadic.size());
    int l = static_cast<int>(s.base.size());
    std::vector<int> f(s.base.begin(), s.base.end());
    // j in [1, l], j = 1 - k (mod l)
    int j = ((1 - k) % l + l) % l;
    if (j == 0) j = l;
    std::set<int> base;
    int fj = f[static_cast<std::size_t>(j - 1)];
    for (int i = j; i < l; ++i) base.insert(f[static_cast<std::size_t>(i)] - fj);
    base.insert(0);
    for (int i = 0; i < j - 1; ++i) base.insert(f[static_cast<std::size_t>(i)] + s.period - fj);
    GapSpec out = make_gap_spec({}, base, s.period);
    return canonical_period(out);
}

bool gap_is_sft(const GapSpec& s) {
    if (s.period <= 1) return true;
    // Infinite S is an SFT iff its complement is finite, i.e. the base
    // covers every residue class.
    return static_cast<int>(s.base.size()) == s.period;
}

SftVerdict classify_sft(const GapSpec& s) {
    if (!gap_is_sft(s)) throw std::invalid_argument("classify_sft: strictly sofic gap shift");
    if (s.period == 0) return SftVerdict{static_cast<int>(s.sporadic.size())};
    return SftVerdict{2};
}

LabelledGraph gap_right_fischer_cover(const GapSpec& spec) {
    if (!is_reduced(spec))
        throw std::invalid_argument("gap_right_fischer_cover: spec not in reduced form");
    int n = spec.period;
    Alphabet alpha{std::vector<std::string>{"0", "1"}};
    LabelledGraph g(alpha);
    for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 0);
    for (int sidx : spec.base) g.add_edge(sidx, 0, 1);
    return g;
}

GapInvariants gap_invariants(const GapSpec& s) {
    GapSpec r = reduce(s);
    GapInvariants out;
    out.k = static_cast<int>(r.base.size());
    out.n = r.period;
    out.bf = bowen_franks(adjacency_matrix(gap_right_fischer_cover(r)));
    BowenFranksInvariant closed;
    closed.sign = DetSign::negative;
    if (out.k != 1) closed.divisors.push_back(out.k);
    if (!(out.bf == closed))
        throw std::logic_error("gap_invariants: pipeline disagrees with -Z/kZ");
    return out;
}

GapVerdict flow_distinguish(const GapSpec& a, const GapSpec& b) {
    GapInvariants ia = gap_invariants(a);
    GapInvariants ib = gap_invariants(b);
    if (ia.k != ib.k || ia.n != ib.n) return GapVerdict::not_equivalent;
    return GapVerdict::unknown;
}

GapSpec parse_gap_spec(const std::string& text) {
    auto split = [](const std::string& t, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : t) {
            if (c == sep) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
        return parts;
    };
    auto numbers = [&](const std::string& t) {
        std::set<int> out;
        for (const auto& piece : split(t, ',')) {
            std::string trimmed;
            for (char c : piece)
                if (!isspace(static_cast<unsigned char>(c))) trimmed += c;
            if (trimmed.empty()) continue;
            out.insert(std::stoi(trimmed));
        }
        return out;
    };
    auto parts = split(text, '|');
    if (parts.size() != 3) throw std::invalid_argument("gap spec: expected \"e1,e2|f1,f2|N\"");
    std::set<int> sporadic = numbers(parts[0]);
    std::set<int> base = numbers(parts[1]);
    std::string ntext;
    for (char c : parts[2])
        if (!isspace(static_cast<unsigned char>(c))) ntext += c;
    int period = ntext.empty() ? 0 : std::stoi(ntext);
    return make_gap_spec(sporadic, base, period);
}

}  // namespace sofic

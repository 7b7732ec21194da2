#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "sofic/covers.hpp"
#include "sofic/renewal.hpp"

using namespace sofic;

namespace {

GeneratingList L(const std::string& name, const std::vector<std::string>& words) {
    return make_generating_list(name, words);
}

std::set<std::string> rendered_words(const GeneratingList& list, const std::vector<Word>& ws) {
    std::set<std::string> out;
    for (const auto& w : ws) out.insert(render_word(list.alphabet, w));
    return out;
}

std::set<std::string> table_words(const GeneratingList& list, const WordTable& t) {
    std::set<std::string> out;
    for (const auto& e : t.entries) out.insert(render_word(list.alphabet, e.word));
    return out;
}

std::set<std::string> list_words(const GeneratingList& l) {
    std::set<std::string> out;
    for (const auto& w : l.words) out.insert(render_word(l.alphabet, w));
    return out;
}

// Oracle: factors of length `len` of free concatenations, by string
// enumeration with shared-prefix deduplication.
std::set<Word> factor_oracle(const GeneratingList& list, int len) {
    int maxg = 0;
    for (const auto& g : list.words) maxg = std::max(maxg, static_cast<int>(g.size()));
    std::size_t bound = static_cast<std::size_t>(len + 2 * maxg);
    std::unordered_set<Word> concats{Word{}};
    std::vector<Word> frontier{Word{}};
    std::set<Word> factors;
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& c : frontier) {
            for (const auto& g : list.words) {
                Word v = c + g;
                if (v.size() > bound) continue;
                if (!concats.insert(v).second) continue;
                next.push_back(v);
                if (v.size() >= static_cast<std::size_t>(len))
                    for (std::size_t i = 0; i + static_cast<std::size_t>(len) <= v.size(); ++i)
                        factors.insert(v.substr(i, static_cast<std::size_t>(len)));
            }
        }
        frontier = std::move(next);
    }
    return factors;
}

}  // namespace

TEST_CASE("word tables") {
    GeneratingList even = L("even", {"aa", "b"});
    WordTable t1 = word_table_initial(even);
    CHECK(table_words(even, t1) == std::set<std::string>{"a", "b"});
    WordTable t2 = extend_step(even, t1);
    CHECK(table_words(even, t2) == std::set<std::string>{"aa", "ab", "ba", "bb"});
    // aa has the boundary-crossing minimal partitioning (2, [aa,aa], 2)
    const WordEntry& aa = t2.entries[static_cast<std::size_t>(t2.index.at(
        parse_word(even.alphabet, "aa")))];
    CHECK(aa.partitionings.size() == 2);

    GeneratingList single = L("one", {"a"});
    WordTable s = word_table_initial(single);
    for (int l = 1; l < 5; ++l) {
        CHECK(s.entries.size() == 1);
        s = extend_step(single, s);
    }

    // bab is forbidden for {aa, aaa, b}
    GeneratingList ex = L("ex", {"aa", "aaa", "b"});
    WordTable e = word_table_initial(ex);
    e = extend_step(ex, e);
    e = extend_step(ex, e);
    CHECK(e.index.count(parse_word(ex.alphabet, "bab")) == 0);
    CHECK(table_words(ex, e).size() == 7);  // {a,b}^3 minus bab
}

TEST_CASE("word tables match the concatenation-factor oracle") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> nwords(2, 4), wlen(1, 3), letter(0, 1);
    int trials = 0;
    while (trials < 20) {
        std::vector<std::string> words;
        std::set<std::string> seen;
        int n = nwords(rng);
        for (int i = 0; i < n; ++i) {
            std::string w;
            int len = wlen(rng);
            for (int j = 0; j < len; ++j) w += static_cast<char>('a' + letter(rng));
            if (seen.insert(w).second) words.push_back(w);
        }
        if (words.size() < 2) continue;
        ++trials;
        GeneratingList list = L("rnd", words);
        WordTable t = word_table_initial(list);
        for (int len = 1; len <= 10; ++len) {
            std::set<Word> have;
            for (const auto& e : t.entries) have.insert(e.word);
            CHECK(have == factor_oracle(list, len));
            if (len < 10) t = extend_step(list, t);
        }
    }
}

TEST_CASE("word flags") {
    // even shift: the letter a (i.e. 0) is neither left- nor right-extendable
    GeneratingList even = L("even", {"aa", "b"});
    WordTable t = word_table_initial(even);
    for (auto& e : t.entries) classify_word_flags(even, e);
    const WordEntry& a = t.entries[static_cast<std::size_t>(t.index.at(
        parse_word(even.alphabet, "a")))];
    CHECK_FALSE(a.left_extendable);
    CHECK_FALSE(a.right_extendable);
    CHECK_FALSE(a.strongly_synchronizing);
    const WordEntry& b = t.entries[static_cast<std::size_t>(t.index.at(
        parse_word(even.alphabet, "b")))];
    CHECK(b.left_extendable);
    CHECK(b.right_extendable);
    CHECK(b.strongly_synchronizing);

    // every partitioning of any factor of {ab}* breaks at a fixed spot
    GeneratingList ab = L("ab", {"ab"});
    WordTable t2 = extend_step(ab, word_table_initial(ab));
    for (auto& e : t2.entries) classify_word_flags(ab, e);
    for (const auto& e : t2.entries) CHECK(e.strongly_synchronizing);
}

TEST_CASE("flags agree with a next-table enumeration oracle") {
    auto in_lstar = [](const GeneratingList& list, const Word& u) {
        std::vector<bool> ok(u.size() + 1, false);
        ok[0] = true;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!ok[i]) continue;
            for (const auto& g : list.words)
                if (u.compare(i, g.size(), g) == 0) ok[i + g.size()] = true;
        }
        return ok[u.size()];
    };
    auto piece = [](const GeneratingList& list, const WordEntry& e, const Partitioning& p,
                    bool want_end) {
        Word v;
        for (int g : p.gens) v += list.words[static_cast<std::size_t>(g)];
        return want_end ? v.substr(static_cast<std::size_t>(p.n_b - 1) + e.word.size())
                        : v.substr(0, static_cast<std::size_t>(p.n_b - 1));
    };
    for (auto list : {L("even", {"aa", "b"}), L("ex", {"aa", "aaa", "b"}),
                      L("z1", {"a", "aba", "bab"})}) {
        WordTable cur = word_table_initial(list);
        for (int l = 1; l <= 5; ++l) {
            WordTable next = extend_step(list, cur);
            for (auto& e : cur.entries) classify_word_flags(list, e);
            for (const auto& e : cur.entries) {
                bool left = true;
                for (Symbol s = 0; s < list.alphabet.size() && left; ++s) {
                    Word aw = Word(1, static_cast<char>(s)) + e.word;
                    auto it = next.index.find(aw);
                    if (it == next.index.end()) continue;
                    const WordEntry& ne = next.entries[static_cast<std::size_t>(it->second)];
                    for (const auto& p : e.partitionings) {
                        Word end = piece(list, e, p, true);
                        bool found = false;
                        for (const auto& q : ne.partitionings) {
                            Word qe = piece(list, ne, q, true);
                            if (qe.size() <= end.size() && end.compare(0, qe.size(), qe) == 0 &&
                                in_lstar(list, end.substr(qe.size()))) {
                                found = true;
                                break;
                            }
                        }
                        if (!found) {
                            left = false;
                            break;
                        }
                    }
                }
                CHECK(e.left_extendable == left);
                if (e.strongly_synchronizing) {
                    CHECK(e.left_extendable);
                    CHECK(e.right_extendable);
                }
            }
            cur = std::move(next);
        }
    }
}

TEST_CASE("detect_sft") {
    GeneratingList ex = L("ex", {"aa", "aaa", "b"});
    InvestigationResult r = detect_sft(ex);
    CHECK(r.is_sft);
    CHECK(r.step == 3);
    CHECK(rendered_words(ex, r.forbidden) == std::set<std::string>{"bab"});

    GeneratingList even = L("even", {"aa", "b"});
    InvestigationResult e = detect_sft(even, 500);
    CHECK_FALSE(e.is_sft);
    e = detect_sft(even, 5000);
    CHECK_FALSE(e.is_sft);

    // the cap callback resumes with a doubled cap
    std::size_t calls = 0;
    InvestigationResult c = detect_sft(ex, 2, [&](std::size_t) { return ++calls < 30; });
    CHECK(calls > 0);
    CHECK(c.is_sft);

    GeneratingList l1 = L("L1", {"aa", "bb", "aaa", "baa", "bba", "bbab", "bbbbb"});
    InvestigationResult r1 = detect_sft(l1, 1000000);
    CHECK(r1.is_sft);
    CHECK(r1.step == 8);
    CHECK(rendered_words(l1, r1.forbidden) ==
          std::set<std::string>{"abab", "aabaaab", "aabbbab", "aabbbaaab", "aabbbbbab"});
}

TEST_CASE("higher block shift and investigate") {
    GeneratingList full2 = L("full2", {"a", "b"});
    InvestigationResult r = detect_sft(full2);
    CHECK(r.is_sft);
    CHECK(r.step == 1);
    LabelledGraph h = higher_block_shift(full2, r);
    CHECK(h.vertex_count() == 2);
    CHECK(h.edge_count() == 4);

    GeneratingList ex = L("ex", {"aa", "aaa", "b"});
    InvestigationResult rx = detect_sft(ex);
    CHECK(higher_block_shift(ex, rx).vertex_count() == 7);

    InvestigationResult inv = investigate(full2);
    REQUIRE(inv.invariant.has_value());
    CHECK(inv.invariant->sign == DetSign::negative);
    CHECK(inv.invariant->divisors.empty());
    CHECK(inv.det == -1);

    InvestigationResult invx = investigate(ex);
    CHECK(invx.det == -1);
    CHECK(invx.invariant->divisors.empty());

    // two rows of the Z-group table: group Z, det 0
    InvestigationResult z1 = investigate(L("z1", {"a", "aba", "bab"}));
    CHECK(z1.is_sft);
    CHECK(z1.step == 3);
    CHECK(z1.det == 0);
    CHECK(z1.invariant->divisors == std::vector<Int>{0});

    InvestigationResult z2 = investigate(L("z2", {"ab", "baa", "bba", "abba"}), 1000000);
    CHECK(z2.is_sft);
    CHECK(z2.step == 9);
    CHECK(z2.det == 0);
    CHECK(z2.invariant->divisors == std::vector<Int>{0});

    GeneratingList even = L("even", {"aa", "b"});
    CHECK_THROWS_AS(higher_block_shift(even, detect_sft(even, 100)), std::invalid_argument);
}

TEST_CASE("internal words and irreducible reduction") {
    GeneratingList abc = L("abc", {"abc", "d"});
    auto internals = rendered_words(abc, internal_words(abc));
    CHECK(internals.count("abc") == 1);
    GeneratingList red = reduce_irreducible(abc);
    CHECK(red.words.size() == 2);
    for (const auto& w : red.words) CHECK(w.size() == 1);

    // {00,1}: the word 00 has the crossing minimal partitioning
    // (2,[00,00],2), so the list is already irreducible
    GeneratingList even = L("even", {"aa", "b"});
    auto einternals = rendered_words(even, internal_words(even));
    CHECK(einternals == std::set<std::string>{"a", "b"});
    GeneratingList ered = reduce_irreducible(even);
    CHECK(list_words(ered) == std::set<std::string>{"a", "bb"});

    // already irreducible: unchanged up to renaming
    GeneratingList z1 = L("z1", {"a", "aba", "bab"});
    GeneratingList z1red = reduce_irreducible(z1);
    CHECK(list_words(z1red) == std::set<std::string>{"a", "aba", "bab"});

    // flow invariance of the reduction moves
    for (auto list : {L("x", {"abc", "d"}), L("y", {"ab", "b"}), L("z", {"aa", "aaa", "b"})}) {
        InvestigationResult a = investigate(list, 100000);
        InvestigationResult b = investigate(reduce_irreducible(list), 100000);
        REQUIRE(a.is_sft == b.is_sft);
        if (a.is_sft) {
            CHECK(a.invariant->sign == b.invariant->sign);
            CHECK(a.invariant->divisors == b.invariant->divisors);
        }
    }
}

TEST_CASE("addition and fragmentation") {
    GeneratingList a = L("a", {"a"});
    GeneratingList b = L("b", {"b"});
    GeneratingList sum = add_lists(a, b);
    CHECK(sum.name == "a+b");
    CHECK(list_words(sum) == std::set<std::string>{"a", "b"});

    // colliding alphabets get primed
    GeneratingList sum2 = add_lists(a, a);
    CHECK(list_words(sum2) == std::set<std::string>{"a", "a'"});

    GeneratingList f1 = fragment(L("x", {"a"}), "a", 3);
    CHECK(list_words(f1) == std::set<std::string>{"a1", "a2", "a3"});
    GeneratingList f2 = fragment(L("x", {"ab"}), "a", 2);
    CHECK(list_words(f2) == std::set<std::string>{"a1.b", "a2.b"});

    // fragmentation and addition commute on the invariant values
    GeneratingList l1 = L("p", {"aa", "aaa", "b"});
    GeneratingList l2 = L("q", {"c"});
    InvestigationResult r1 = investigate(fragment(add_lists(l1, l2), "b", 2), 200000);
    InvestigationResult r2 = investigate(add_lists(fragment(l1, "b", 2), l2), 200000);
    REQUIRE(r1.is_sft);
    REQUIRE(r2.is_sft);
    CHECK(r1.det == r2.det);
    CHECK(r1.invariant->divisors == r2.invariant->divisors);
}

TEST_CASE("symmetric systems") {
    GeneratingList s32 = symmetric_system({3, 2});
    CHECK(list_words(s32) == std::set<std::string>{"ba", "aba"});
    CHECK_THROWS_AS(symmetric_system({2}), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_system({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_system({3, 1}), std::invalid_argument);

    // forbidden words are exactly the letter powers
    InvestigationResult r = investigate(s32, 100000);
    REQUIRE(r.is_sft);
    CHECK(rendered_words(s32, r.forbidden) == std::set<std::string>{"aaa", "bb"});

    // (4,2): m = n1*n2*(k-1 - sum 1/n_i) = 8 * 1/4 = 2
    InvestigationResult r42 = investigate(symmetric_system({4, 2}), 100000);
    REQUIRE(r42.is_sft);
    CHECK(r42.invariant->sign == DetSign::negative);
    CHECK(r42.invariant->divisors == std::vector<Int>{2});
}

TEST_CASE("standard loop graph") {
    GeneratingList even = L("even", {"aa", "b"});
    LabelledGraph g = standard_loop_graph(even);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 3);
    CHECK(graph_isomorphic(fischer_cover_left(g),
                           fischer_cover_left(standard_loop_graph(L("e2", {"b", "aa"}))))
              .has_value());
}

TEST_CASE("border points") {
    GeneratingList ex = L("ex", {"aa", "aaa", "b"});
    LabelledGraph f = fischer_cover_left(standard_loop_graph(ex));
    CHECK(f.vertex_count() == 3);
    BorderPoints bp = border_points(ex, f);
    REQUIRE(bp.vertices.size() == 2);
    REQUIRE(bp.universal >= 0);
    CHECK(render_word(ex.alphabet, bp.generators[static_cast<std::size_t>(bp.universal)]) == "b");
    std::set<std::string> gens;
    for (const auto& g : bp.generators) gens.insert(render_word(ex.alphabet, g));
    CHECK(gens == std::set<std::string>{"b", "aa"});

    GeneratingList full2 = L("full2", {"a", "b"});
    LabelledGraph f2 = fischer_cover_left(standard_loop_graph(full2));
    BorderPoints bp2 = border_points(full2, f2);
    REQUIRE(bp2.vertices.size() == 1);
    CHECK(bp2.universal == 0);
    CHECK(render_word(full2.alphabet, bp2.generators[0]) == "a");

    // class R: the universal border point plus the r upper ones
    for (int r = 2; r <= 3; ++r) {
        GeneratingList cls = class_R_list(r);
        LabelledGraph fr = fischer_cover_left(standard_loop_graph(cls));
        CHECK(fr.vertex_count() == 2 * r + 1);
        BorderPoints bpr = border_points(cls, fr);
        CHECK(static_cast<int>(bpr.vertices.size()) == r + 1);
        CHECK(bpr.universal >= 0);
    }
}

TEST_CASE("modular sums") {
    GeneratingList a = L("a", {"a"});
    GeneratingList b = L("b", {"b"});
    auto fischer_of = [](const GeneratingList& l) {
        return fischer_cover_left(standard_loop_graph(l));
    };
    LabelledGraph fa = fischer_of(a), fb = fischer_of(b);
    LabelledGraph sum = modular_sum_fischer(fa, border_points(a, fa), fb, border_points(b, fb));
    CHECK(sum.vertex_count() == 1);
    CHECK(sum.edge_count() == 2);

    // {aa,aaa,b} + {c}: the Fischer cover gains c-edges from P0 to P0 and P1
    GeneratingList ex = L("ex", {"aa", "aaa", "b"});
    GeneratingList c = L("c", {"c"});
    LabelledGraph fx = fischer_of(ex), fc = fischer_of(c);
    LabelledGraph sum2 =
        modular_sum_fischer(fx, border_points(ex, fx), fc, border_points(c, fc));
    CHECK(sum2.vertex_count() == 3);
    CHECK(sum2.edge_count() == 7);
    LabelledGraph pipeline = fischer_of(add_lists(ex, c));
    CHECK(graph_isomorphic(sum2, pipeline).has_value());
}

TEST_CASE("class R lists") {
    GeneratingList r2 = class_R_list(2);
    CHECK(list_words(r2) == std::set<std::string>{"a", "t", "c", "acb", "btc"});
    CHECK(class_R_det(2, {}) == -3);
    InvestigationResult inv = investigate(r2, 200000);
    REQUIRE(inv.is_sft);
    CHECK(inv.det == -3);
    CHECK(inv.invariant->divisors == std::vector<Int>{3});

    CHECK(class_R_det(2, {{"c", 4}}) == Int(1 - 1 - 1 - 4 - 2 * 4 + 16));
    CHECK_THROWS_AS(class_R_list(1), std::invalid_argument);
}

TEST_CASE("generating list file format") {
    std::istringstream in("# comment\nfoo: aa b\n\nbar: a1.b a2.b\n");
    auto lists = read_generating_lists(in);
    REQUIRE(lists.size() == 2);
    CHECK(lists[0].name == "foo");
    CHECK(list_words(lists[1]) == std::set<std::string>{"a1.b", "a2.b"});
    std::ostringstream os;
    write_generating_lists(os, lists);
    CHECK(os.str() == "foo: aa b\nbar: a1.b a2.b\n");

    std::istringstream bad("x: aa aa\n");
    CHECK_THROWS_AS(read_generating_lists(bad), std::invalid_argument);
}

#include "sofic/renewal.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "sofic/covers.hpp"

namespace sofic {

GeneratingList make_generating_list(const std::string& name,
                                    const std::vector<std::string>& tokens) {
    GeneratingList list;
    list.name = name;
    if (tokens.empty()) throw std::invalid_argument("generating list: no words");
    std::set<Word> seen;
    for (const auto& tok : tokens) {
        Word w = parse_word(list.alphabet, tok);
        if (w.empty()) throw std::invalid_argument("generating list: empty word");
        if (!seen.insert(w).second)
            throw std::invalid_argument("generating list: duplicate word " + tok);
        list.words.push_back(std::move(w));
    }
    return list;
}

std::string render_generating_list(const GeneratingList& list) {
    std::string out = list.name + ":";
    for (const auto& w : list.words) out += " " + render_word(list.alphabet, w);
    return out;
}

namespace {

Word concat_gens(const GeneratingList& list, const std::vector<int>& gens) {
    Word v;
    for (int g : gens) v += list.words[static_cast<std::size_t>(g)];
    return v;
}

int total_length(const GeneratingList& list, const std::vector<int>& gens) {
    int t = 0;
    for (int g : gens) t += static_cast<int>(list.words[static_cast<std::size_t>(g)].size());
    return t;
}

// u in L*?
bool in_lstar(const GeneratingList& list, const Word& u) {
    std::vector<bool> ok(u.size() + 1, false);
    ok[0] = true;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!ok[i]) continue;
        for (const auto& g : list.words)
            if (u.compare(i, g.size(), g) == 0) ok[i + g.size()] = true;
    }
    return ok[u.size()];
}

void add_partitioning(WordTable& table, const GeneratingList& list, Partitioning p,
                      const WordTable* prev) {
    Word v = concat_gens(list, p.gens);
    Word w = v.substr(static_cast<std::size_t>(p.n_b - 1),
                      static_cast<std::size_t>(table.length));
    auto it = table.index.find(w);
    int id;
    if (it == table.index.end()) {
        id = static_cast<int>(table.entries.size());
        table.index.emplace(w, id);
        WordEntry entry;
        entry.word = w;
        // A word containing a strongly synchronizing factor is itself
        // strongly synchronizing.
        if (prev) {
            auto factor_sync = [&](const Word& f) {
                auto fit = prev->index.find(f);
                return fit != prev->index.end() &&
                       prev->entries[static_cast<std::size_t>(fit->second)].strongly_synchronizing;
            };
            if (factor_sync(w.substr(0, w.size() - 1)) || factor_sync(w.substr(1)))
                entry.strongly_synchronizing = true;
        }
        table.entries.push_back(std::move(entry));
    } else {
        id = it->second;
    }
    table.entries[static_cast<std::size_t>(id)].partitionings.push_back(std::move(p));
}

}  // namespace

WordTable word_table_initial(const GeneratingList& list) {
    WordTable table;
    table.length = 1;
    for (int g = 0; g < static_cast<int>(list.words.size()); ++g) {
        int len = static_cast<int>(list.words[static_cast<std::size_t>(g)].size());
        for (int j = 1; j <= len; ++j) add_partitioning(table, list, {j, {g}}, nullptr);
    }
    return table;
}

WordTable extend_step(const GeneratingList& list, const WordTable& table) {
    WordTable next;
    next.length = table.length + 1;
    for (const auto& entry : table.entries) {
        for (const auto& p : entry.partitionings) {
            int covered_end = p.n_b + table.length - 1;
            int total = total_length(list, p.gens);
            if (covered_end < total) {
                add_partitioning(next, list, p, &table);
            } else {
                for (int g = 0; g < static_cast<int>(list.words.size()); ++g) {
                    Partitioning q = p;
                    q.gens.push_back(g);
                    add_partitioning(next, list, std::move(q), &table);
                }
            }
        }
    }
    return next;
}

void classify_word_flags(const GeneratingList& list, WordEntry& entry) {
    if (entry.partitionings.empty())
        throw std::logic_error("classify_word_flags: word without partitionings");
    const int l = static_cast<int>(entry.word.size());
    const int nsym = list.alphabet.size();

    if (!entry.strongly_synchronizing) {
        // Intersection of border positions over all minimal partitionings.
        std::vector<bool> common(static_cast<std::size_t>(l) + 1, true);
        common[0] = false;
        for (const auto& p : entry.partitionings) {
            std::vector<bool> borders(static_cast<std::size_t>(l) + 1, false);
            int acc = 0;
            for (int g : p.gens) {
                acc += static_cast<int>(list.words[static_cast<std::size_t>(g)].size());
                int m = acc - p.n_b + 1;
                if (m >= 1 && m <= l) borders[static_cast<std::size_t>(m)] = true;
            }
            for (int m = 1; m <= l; ++m)
                if (!borders[static_cast<std::size_t>(m)]) common[static_cast<std::size_t>(m)] = false;
        }
        entry.strongly_synchronizing =
            std::any_of(common.begin(), common.end(), [](bool b) { return b; });
    }
    if (entry.strongly_synchronizing) {
        entry.left_extendable = true;
        entry.right_extendable = true;
        return;
    }

    struct Piece {
        Word begin, end;
        char prev = -1;  // letter preceding w in the concatenation, or -1
        char next = -1;  // letter following w, or -1
    };
    std::vector<Piece> pieces;
    pieces.reserve(entry.partitionings.size());
    for (const auto& p : entry.partitionings) {
        Word v = concat_gens(list, p.gens);
        Piece pc;
        pc.begin = v.substr(0, static_cast<std::size_t>(p.n_b - 1));
        pc.end = v.substr(static_cast<std::size_t>(p.n_b - 1 + l));
        if (p.n_b >= 2) pc.prev = v[static_cast<std::size_t>(p.n_b - 2)];
        if (p.n_b - 1 + l < static_cast<int>(v.size()))
            pc.next = v[static_cast<std::size_t>(p.n_b - 1 + l)];
        pieces.push_back(std::move(pc));
    }
    std::vector<bool> gen_last(static_cast<std::size_t>(nsym), false);
    std::vector<bool> gen_first(static_cast<std::size_t>(nsym), false);
    for (const auto& g : list.words) {
        gen_last[static_cast<std::size_t>(static_cast<unsigned char>(g.back()))] = true;
        gen_first[static_cast<std::size_t>(static_cast<unsigned char>(g.front()))] = true;
    }

    // Ends (resp. beginnings) of the minimal partitionings of aw (wa),
    // obtained by extending the partitionings of w one letter leftward
    // (rightward); the end (beginning) is unchanged by the extension.
    std::vector<std::set<Word>> ends_for(static_cast<std::size_t>(nsym));
    std::vector<std::set<Word>> begins_for(static_cast<std::size_t>(nsym));
    for (const auto& pc : pieces) {
        if (pc.prev >= 0) {
            ends_for[static_cast<std::size_t>(pc.prev)].insert(pc.end);
        } else {
            for (Symbol a = 0; a < nsym; ++a)
                if (gen_last[static_cast<std::size_t>(a)])
                    ends_for[static_cast<std::size_t>(a)].insert(pc.end);
        }
        if (pc.next >= 0) {
            begins_for[static_cast<std::size_t>(pc.next)].insert(pc.begin);
        } else {
            for (Symbol a = 0; a < nsym; ++a)
                if (gen_first[static_cast<std::size_t>(a)])
                    begins_for[static_cast<std::size_t>(a)].insert(pc.begin);
        }
    }

    entry.left_extendable = true;
    for (Symbol a = 0; a < nsym && entry.left_extendable; ++a) {
        const auto& ends = ends_for[static_cast<std::size_t>(a)];
        if (ends.empty()) continue;  // aw is forbidden
        for (const auto& pc : pieces) {
            bool ok = false;
            for (const auto& e : ends) {
                if (e.size() > pc.end.size() || pc.end.compare(0, e.size(), e) != 0) continue;
                if (in_lstar(list, pc.end.substr(e.size()))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                entry.left_extendable = false;
                break;
            }
        }
    }
    entry.right_extendable = true;
    for (Symbol a = 0; a < nsym && entry.right_extendable; ++a) {
        const auto& begins = begins_for[static_cast<std::size_t>(a)];
        if (begins.empty()) continue;  // wa is forbidden
        for (const auto& pc : pieces) {
            bool ok = false;
            for (const auto& b : begins) {
                if (b.size() > pc.begin.size()) continue;
                std::size_t off = pc.begin.size() - b.size();
                if (pc.begin.compare(off, b.size(), b) != 0) continue;
                if (in_lstar(list, pc.begin.substr(0, off))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                entry.right_extendable = false;
                break;
            }
        }
    }
}

namespace {

void collect_forbidden(const GeneratingList& list, const WordTable& cur, const WordTable& next,
                       std::vector<Word>& forbidden) {
    // w*a is a minimal forbidden word when it is not allowed but both
    // w and (w*a minus its first letter) are.
    for (const auto& entry : cur.entries) {
        for (Symbol a = 0; a < list.alphabet.size(); ++a) {
            Word cand = entry.word + static_cast<char>(a);
            if (next.index.count(cand)) continue;
            if (cur.index.count(cand.substr(1))) forbidden.push_back(cand);
        }
    }
}

LengthStats stats_of(const WordTable& t) {
    LengthStats s;
    s.length = t.length;
    s.words = t.entries.size();
    for (const auto& e : t.entries) {
        s.strongly_sync += e.strongly_synchronizing;
        s.left_ext += e.left_extendable;
        s.right_ext += e.right_extendable;
    }
    return s;
}

}  // namespace

InvestigationResult detect_sft(const GeneratingList& list, std::size_t max_words,
                               const CapCallback& on_cap) {
    InvestigationResult r;
    WordTable table = word_table_initial(list);
    std::size_t cap = max_words == 0 ? 1 : max_words;
    while (true) {
        for (auto& entry : table.entries) classify_word_flags(list, entry);
        r.history.push_back(stats_of(table));
        r.words_seen += table.entries.size();

        const LengthStats& s = r.history.back();
        if (s.left_ext == s.words || s.right_ext == s.words) {
            r.is_sft = true;
            r.step = table.length;
            WordTable next = extend_step(list, table);
            collect_forbidden(list, table, next, r.forbidden);
            for (const auto& e : table.entries) r.words_n.push_back(e.word);
            for (const auto& e : next.entries) r.words_n1.push_back(e.word);
            return r;
        }
        while (r.words_seen > cap) {
            if (on_cap && on_cap(r.words_seen))
                cap *= 2;
            else
                return r;  // inconclusive
        }
        WordTable next = extend_step(list, table);
        collect_forbidden(list, table, next, r.forbidden);
        table = std::move(next);
    }
}

LabelledGraph higher_block_shift(const GeneratingList& list, const InvestigationResult& r) {
    if (!r.is_sft)
        throw std::invalid_argument("higher_block_shift: investigation was inconclusive");
    LabelledGraph g(list.alphabet);
    std::unordered_map<Word, int> id;
    for (const auto& w : r.words_n) id.emplace(w, g.add_vertex(render_word(list.alphabet, w)));
    for (const auto& w : r.words_n1) {
        int src = id.at(w.substr(0, w.size() - 1));
        int dst = id.at(w.substr(1));
        g.add_edge(src, dst, static_cast<Symbol>(static_cast<unsigned char>(w.back())));
    }
    return g;
}

InvestigationResult investigate(const GeneratingList& list, std::size_t max_words,
                                const CapCallback& on_cap) {
    InvestigationResult r = detect_sft(list, max_words, on_cap);
    if (!r.is_sft) return r;
    SparseIntMatrix a = adjacency_matrix(higher_block_shift(list, r));
    SparseIntMatrix reduced = amalgamation_reduce(a);
    r.invariant = bowen_franks(reduced);
    r.det = determinant(identity_minus(reduced));
    return r;
}

std::vector<Word> internal_words(const GeneratingList& list, int bound) {
    int maxg = 0;
    for (const auto& w : list.words) maxg = std::max(maxg, static_cast<int>(w.size()));
    if (bound <= 0) bound = maxg;
    std::vector<Word> out;
    WordTable table = word_table_initial(list);
    for (int l = 1; l <= bound; ++l) {
        for (const auto& entry : table.entries) {
            bool internal = true;
            for (const auto& p : entry.partitionings)
                if (p.gens.size() != 1) {
                    internal = false;
                    break;
                }
            if (internal) out.push_back(entry.word);
        }
        if (l < bound) table = extend_step(list, table);
    }
    return out;
}

namespace {

// Drops words that are concatenations of the remaining ones.
GeneratingList simplify(const GeneratingList& list) {
    GeneratingList cur = list;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.words.size(); ++i) {
            GeneratingList rest = cur;
            rest.words.erase(rest.words.begin() + static_cast<std::ptrdiff_t>(i));
            if (!rest.words.empty() && in_lstar(rest, cur.words[i])) {
                cur = std::move(rest);
                changed = true;
                break;
            }
        }
    }
    return cur;
}

std::string fresh_symbol_name(const Alphabet& a) {
    for (char c = 'a'; c <= 'z'; ++c)
        if (!a.contains(std::string(1, c))) return std::string(1, c);
    for (char c = 'A'; c <= 'Z'; ++c)
        if (!a.contains(std::string(1, c))) return std::string(1, c);
    for (int i = 0;; ++i)
        if (!a.contains("s" + std::to_string(i))) return "s" + std::to_string(i);
}

GeneratingList rebuild(const std::string& name, const Alphabet& old,
                       const std::vector<Word>& words) {
    GeneratingList out;
    out.name = name;
    std::vector<Symbol> remap(static_cast<std::size_t>(old.size()), -1);
    std::set<Word> seen;
    for (const auto& w : words) {
        Word nw;
        for (char c : w) {
            auto uc = static_cast<std::size_t>(static_cast<unsigned char>(c));
            if (remap[uc] < 0) remap[uc] = out.alphabet.add(old.name(static_cast<Symbol>(uc)));
            nw.push_back(static_cast<char>(remap[uc]));
        }
        if (seen.insert(nw).second) out.words.push_back(std::move(nw));
    }
    return out;
}

bool word_length_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

GeneratingList reduce_irreducible(const GeneratingList& list) {
    GeneratingList cur = simplify(list);
    while (true) {
        std::vector<Word> internals = internal_words(cur);
        Word target;
        for (const auto& w : internals)
            if (w.size() >= 2 && (target.empty() || w.size() > target.size() ||
                                  (w.size() == target.size() && w < target)))
                target = w;
        if (target.empty()) break;
        std::string fresh = fresh_symbol_name(cur.alphabet);
        Alphabet next_alpha = cur.alphabet;
        Symbol ns = next_alpha.add(fresh);
        std::vector<Word> next_words;
        for (const auto& g : cur.words) {
            Word ng;
            std::size_t i = 0;
            while (i < g.size()) {
                if (g.compare(i, target.size(), target) == 0) {
                    ng.push_back(static_cast<char>(ns));
                    i += target.size();
                } else {
                    ng.push_back(g[i]);
                    ++i;
                }
            }
            next_words.push_back(std::move(ng));
        }
        cur = rebuild(cur.name, next_alpha, next_words);
        cur = simplify(cur);
    }
    // Canonical form: sort, rename symbols in first-use order to a, b,
    // ..., and sort again.
    std::sort(cur.words.begin(), cur.words.end(), word_length_lex_less);
    Alphabet canonical;
    std::vector<Symbol> remap(static_cast<std::size_t>(cur.alphabet.size()), -1);
    std::vector<Word> renamed;
    for (const auto& w : cur.words) {
        Word nw;
        for (char c : w) {
            auto uc = static_cast<std::size_t>(static_cast<unsigned char>(c));
            if (remap[uc] < 0) remap[uc] = canonical.add(fresh_symbol_name(canonical));
            nw.push_back(static_cast<char>(remap[uc]));
        }
        renamed.push_back(std::move(nw));
    }
    std::sort(renamed.begin(), renamed.end(), word_length_lex_less);
    GeneratingList out;
    out.name = cur.name.empty() ? "" : cur.name + "_red";
    out.alphabet = std::move(canonical);
    out.words = std::move(renamed);
    return out;
}

GeneratingList add_lists(const GeneratingList& a, const GeneratingList& b) {
    GeneratingList out;
    out.name = a.name + "+" + b.name;
    out.alphabet = a.alphabet;
    out.words = a.words;
    std::vector<Symbol> remap;
    for (Symbol s = 0; s < b.alphabet.size(); ++s) {
        std::string name = b.alphabet.name(s);
        while (out.alphabet.contains(name)) name += "'";
        remap.push_back(out.alphabet.add(name));
    }
    for (const auto& w : b.words) {
        Word nw;
        for (char c : w)
            nw.push_back(static_cast<char>(remap[static_cast<std::size_t>(static_cast<unsigned char>(c))]));
        out.words.push_back(std::move(nw));
    }
    return out;
}

GeneratingList fragment(const GeneratingList& list, const std::string& symbol, int k) {
    if (k < 1) throw std::invalid_argument("fragment: k must be positive");
    Symbol target = list.alphabet.index_of(symbol);
    GeneratingList out;
    out.name = list.name + "_f";
    std::vector<Symbol> keep(static_cast<std::size_t>(list.alphabet.size()), -1);
    std::vector<Symbol> frags;
    for (Symbol s = 0; s < list.alphabet.size(); ++s) {
        if (s == target) {
            for (int i = 1; i <= k; ++i) {
                std::string name = symbol + std::to_string(i);
                while (list.alphabet.contains(name) || out.alphabet.contains(name)) name += "'";
                frags.push_back(out.alphabet.add(name));
            }
        } else {
            keep[static_cast<std::size_t>(s)] = out.alphabet.add(list.alphabet.name(s));
        }
    }
    for (const auto& w : list.words) {
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == static_cast<char>(target)) positions.push_back(i);
        std::vector<int> counter(positions.size(), 0);
        while (true) {
            Word nw;
            std::size_t pi = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (pi < positions.size() && positions[pi] == i) {
                    nw.push_back(static_cast<char>(frags[static_cast<std::size_t>(counter[pi])]));
                    ++pi;
                } else {
                    nw.push_back(static_cast<char>(
                        keep[static_cast<std::size_t>(static_cast<unsigned char>(w[i]))]));
                }
            }
            out.words.push_back(std::move(nw));
            // next assignment, rightmost position fastest
            std::size_t j = positions.size();
            while (j > 0) {
                if (++counter[j - 1] < k) break;
                counter[j - 1] = 0;
                --j;
            }
            if (j == 0) break;
        }
    }
    return out;
}

GeneratingList symmetric_system(const std::vector<int>& ns) {
    int k = static_cast<int>(ns.size());
    if (k < 2) throw std::invalid_argument("symmetric_system: need at least two letters");
    int maxn = 0;
    for (int n : ns) {
        if (n < 2) throw std::invalid_argument("symmetric_system: all n_i must be >= 2");
        maxn = std::max(maxn, n);
    }
    if (maxn <= 2) throw std::invalid_argument("symmetric_system: some n_i must exceed 2");
    if (k > 26) throw std::invalid_argument("symmetric_system: too many letters");

    GeneratingList out;
    out.name = "sym";
    for (int i = 0; i < k; ++i) {
        out.name += (i ? "_" : "(") + std::to_string(ns[static_cast<std::size_t>(i)]);
        out.alphabet.add(std::string(1, static_cast<char>('a' + i)));
    }
    out.name += ")";
    for (int i = 0; i < k; ++i) {
        for (int l = 1; l <= ns[static_cast<std::size_t>(i)] - 2; ++l) {
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                Word w;
                w.push_back(static_cast<char>(j));
                w.append(static_cast<std::size_t>(l), static_cast<char>(i));
                out.words.push_back(w);
                for (int m = 0; m < k; ++m) {
                    if (m == j) continue;
                    Word u;
                    u.push_back(static_cast<char>(m));
                    u += w;
                    out.words.push_back(std::move(u));
                }
            }
        }
    }
    return out;
}

LabelledGraph standard_loop_graph(const GeneratingList& list) {
    LabelledGraph g(list.alphabet);
    int center = g.add_vertex("c");
    for (std::size_t i = 0; i < list.words.size(); ++i) {
        const Word& w = list.words[i];
        int prev = center;
        for (std::size_t j = 0; j + 1 < w.size(); ++j) {
            int mid = g.add_vertex("m" + std::to_string(i) + "_" + std::to_string(j));
            g.add_edge(prev, mid, static_cast<Symbol>(static_cast<unsigned char>(w[j])));
            prev = mid;
        }
        g.add_edge(prev, center, static_cast<Symbol>(static_cast<unsigned char>(w.back())));
    }
    return g;
}

int default_generator_bound(const GeneratingList& list, const LabelledGraph& fischer) {
    int maxg = 0;
    for (const auto& w : list.words) maxg = std::max(maxg, static_cast<int>(w.size()));
    return 2 * fischer.vertex_count() * maxg;
}

BorderPoints border_points(const GeneratingList& list, const LabelledGraph& fischer,
                           int gen_bound) {
    if (gen_bound <= 0) gen_bound = default_generator_bound(list, fischer);
    int n = fischer.vertex_count();
    // Relation of each generator word on the Fischer cover; states are
    // relations of concatenations, explored shortest-word first.
    std::vector<std::vector<Bitset>> fwd(static_cast<std::size_t>(fischer.alphabet().size()),
                                         std::vector<Bitset>(static_cast<std::size_t>(n), Bitset(n)));
    for (const auto& e : fischer.edges())
        fwd[static_cast<std::size_t>(e.label)][static_cast<std::size_t>(e.src)].set(e.dst);
    auto compose_letter = [&](const std::vector<Bitset>& rows, Symbol a) {
        std::vector<Bitset> out(static_cast<std::size_t>(n), Bitset(n));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rows[static_cast<std::size_t>(u)].test(v))
                    out[static_cast<std::size_t>(u)] |= fwd[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)];
        return out;
    };
    std::vector<Bitset> id_rows(static_cast<std::size_t>(n), Bitset(n));
    for (int v = 0; v < n; ++v) id_rows[static_cast<std::size_t>(v)].set(v);
    // The Fischer cover inherits the list alphabet from the loop graph.
    std::vector<std::vector<Bitset>> gen_rel;
    for (const auto& g : list.words) {
        auto rows = id_rows;
        for (char c : g) rows = compose_letter(rows, static_cast<Symbol>(static_cast<unsigned char>(c)));
        gen_rel.push_back(std::move(rows));
    }
    auto compose_rel = [&](const std::vector<Bitset>& lhs, const std::vector<Bitset>& rhs) {
        std::vector<Bitset> out(static_cast<std::size_t>(n), Bitset(n));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (lhs[static_cast<std::size_t>(u)].test(v)) out[static_cast<std::size_t>(u)] |= rhs[static_cast<std::size_t>(v)];
        return out;
    };

    using QItem = std::pair<Word, std::vector<Bitset>>;
    auto cmp = [](const QItem& a, const QItem& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        return a.first > b.first;
    };
    std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> queue(cmp);
    std::map<std::vector<Bitset>, bool> visited;
    queue.push({Word{}, id_rows});
    std::map<int, Word> best;  // border vertex -> minimal generator
    while (!queue.empty()) {
        auto [word, rel] = queue.top();
        queue.pop();
        if (visited.count(rel)) continue;
        visited[rel] = true;
        if (!word.empty()) {
            Bitset dom(n);
            for (int u = 0; u < n; ++u)
                if (rel[static_cast<std::size_t>(u)].any()) dom.set(u);
            if (dom.count() == 1) {
                int v = dom.to_indices()[0];
                if (!best.count(v)) best[v] = word;
            }
        }
        for (std::size_t g = 0; g < list.words.size(); ++g) {
            if (word.size() + list.words[g].size() > static_cast<std::size_t>(gen_bound)) continue;
            std::vector<Bitset> next = compose_rel(rel, gen_rel[g]);
            if (!visited.count(next)) queue.push({word + list.words[g], next});
        }
    }

    BorderPoints out;
    LabelledGraph loop = standard_loop_graph(list);
    for (const auto& [v, w] : best) {
        out.vertices.push_back(v);
        out.generators.push_back(w);
        Bitset pv(n);
        pv.set(v);
        Bitset center(loop.vertex_count());
        center.set(0);
        if (language_equal_across(fischer, pv, loop, center)) {
            if (out.universal >= 0)
                throw std::logic_error("border_points: two universal border points");
            out.universal = static_cast<int>(out.vertices.size()) - 1;
        }
    }
    return out;
}

LabelledGraph modular_sum_fischer(const LabelledGraph& f1, const BorderPoints& b1,
                                  const LabelledGraph& f2, const BorderPoints& b2) {
    if (b1.universal < 0 || b2.universal < 0)
        throw std::invalid_argument("modular_sum_fischer: missing universal border point");
    for (const auto& name : f2.alphabet().names())
        if (f1.alphabet().contains(name))
            throw std::invalid_argument("modular_sum_fischer: alphabets not disjoint");

    Alphabet alpha = f1.alphabet();
    for (const auto& name : f2.alphabet().names()) alpha.add(name);
    LabelledGraph g(alpha);
    int u1 = b1.vertices[static_cast<std::size_t>(b1.universal)];
    int u2 = b2.vertices[static_cast<std::size_t>(b2.universal)];
    int plus = g.add_vertex("P+");
    std::vector<int> map1(static_cast<std::size_t>(f1.vertex_count()), -1);
    std::vector<int> map2(static_cast<std::size_t>(f2.vertex_count()), -1);
    for (int v = 0; v < f1.vertex_count(); ++v)
        map1[static_cast<std::size_t>(v)] = (v == u1) ? plus : g.add_vertex("A" + std::to_string(v));
    for (int v = 0; v < f2.vertex_count(); ++v)
        map2[static_cast<std::size_t>(v)] = (v == u2) ? plus : g.add_vertex("B" + std::to_string(v));

    for (const auto& e : f1.edges())
        g.add_edge(map1[static_cast<std::size_t>(e.src)], map1[static_cast<std::size_t>(e.dst)], e.label);
    const Symbol shift = f1.alphabet().size();  // f2 labels follow f1's
    for (const auto& e : f2.edges())
        g.add_edge(map2[static_cast<std::size_t>(e.src)], map2[static_cast<std::size_t>(e.dst)],
                   e.label + shift);

    // Every edge into a universal border point is duplicated toward
    // each non-universal border point of the other cover.
    for (const auto& e : f1.edges()) {
        if (e.dst != u1) continue;
        for (std::size_t i = 0; i < b2.vertices.size(); ++i) {
            if (static_cast<int>(i) == b2.universal) continue;
            g.add_edge(map1[static_cast<std::size_t>(e.src)],
                       map2[static_cast<std::size_t>(b2.vertices[i])], e.label);
        }
    }
    for (const auto& e : f2.edges()) {
        if (e.dst != u2) continue;
        for (std::size_t i = 0; i < b1.vertices.size(); ++i) {
            if (static_cast<int>(i) == b1.universal) continue;
            g.add_edge(map2[static_cast<std::size_t>(e.src)],
                       map1[static_cast<std::size_t>(b1.vertices[i])], e.label + shift);
        }
    }
    return g;
}

GeneratingList class_R_list(int r) {
    if (r < 2) throw std::invalid_argument("class_R_list: r must be >= 2");
    if (r > 18) throw std::invalid_argument("class_R_list: r too large");
    GeneratingList out;
    out.name = "R" + std::to_string(r);
    Symbol alpha = out.alphabet.add("a");
    Symbol atilde = out.alphabet.add("t");
    Symbol beta = out.alphabet.add("b");
    std::vector<Symbol> gammas;
    const std::string pool = "cdefghijklmnopqrsuvwxyz";
    for (int i = 0; i < r - 1; ++i)
        gammas.push_back(out.alphabet.add(std::string(1, pool[static_cast<std::size_t>(i)])));

    out.words.push_back(Word(1, static_cast<char>(alpha)));
    out.words.push_back(Word(1, static_cast<char>(atilde)));
    for (Symbol gsym : gammas) out.words.push_back(Word(1, static_cast<char>(gsym)));
    Word head(1, static_cast<char>(alpha));
    for (Symbol gsym : gammas) head.push_back(static_cast<char>(gsym));
    head.push_back(static_cast<char>(beta));
    out.words.push_back(head);
    Word tail(1, static_cast<char>(beta));
    tail.push_back(static_cast<char>(atilde));
    for (Symbol gsym : gammas) tail.push_back(static_cast<char>(gsym));
    out.words.push_back(tail);
    return out;
}

Int class_R_det(int r, const std::map<std::string, Int>& counts) {
    auto val = [&](const std::string& name) {
        auto it = counts.find(name);
        return it == counts.end() ? Int(1) : it->second;
    };
    Int alpha = val("a"), atilde = val("t"), beta = val("b");
    const std::string pool = "cdefghijklmnopqrsuvwxyz";
    Int gamma_sum = 0, gamma_prod = 1;
    for (int i = 0; i < r - 1; ++i) {
        Int gi = val(std::string(1, pool[static_cast<std::size_t>(i)]));
        gamma_sum += gi;
        gamma_prod *= gi;
    }
    return 1 - alpha - atilde - gamma_sum - (alpha + atilde) * beta * gamma_prod +
           alpha * atilde * beta * gamma_prod * gamma_prod;
}

std::vector<GeneratingList> read_generating_lists(std::istream& is) {
    std::vector<GeneratingList> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::string name = "unnamed";
        std::string words = trimmed;
        auto colon = trimmed.find(':');
        if (colon != std::string::npos) {
            name = trimmed.substr(0, colon);
            words = trimmed.substr(colon + 1);
        }
        std::istringstream ws(words);
        std::vector<std::string> tokens;
        std::string tok;
        while (ws >> tok) tokens.push_back(tok);
        try {
            out.push_back(make_generating_list(name, tokens));
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    return out;
}

void write_generating_lists(std::ostream& os, const std::vector<GeneratingList>& lists) {
    for (const auto& l : lists) os << render_generating_list(l) << '\n';
}

}  // namespace sofic

#include "sofic/labelled_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace sofic {

BackwardTables::BackwardTables(const LabelledGraph& g) : n_(g.vertex_count()) {
    tab_.assign(static_cast<std::size_t>(g.alphabet().size()),
                std::vector<Bitset>(static_cast<std::size_t>(n_), Bitset(n_)));
    for (const auto& e : g.edges())
        tab_[static_cast<std::size_t>(e.label)][static_cast<std::size_t>(e.dst)].set(e.src);
}

Bitset BackwardTables::step(Symbol a, const Bitset& targets) const {
    Bitset out(n_);
    const auto& row = tab_[static_cast<std::size_t>(a)];
    for (int v = 0; v < n_; ++v)
        if (targets.test(v)) out |= row[static_cast<std::size_t>(v)];
    return out;
}

LabelledGraph transpose(const LabelledGraph& g) {
    LabelledGraph t(g.alphabet());
    for (int v = 0; v < g.vertex_count(); ++v) t.add_vertex(g.vertex_name(v));
    for (const auto& e : g.edges()) t.add_edge(e.dst, e.src, e.label);
    return t;
}

LabelledGraph induced_subgraph(const LabelledGraph& g, const std::vector<int>& vertices) {
    std::vector<int> remap(static_cast<std::size_t>(g.vertex_count()), -1);
    LabelledGraph h(g.alphabet());
    for (int v : vertices) remap[static_cast<std::size_t>(v)] = h.add_vertex(g.vertex_name(v));
    for (const auto& e : g.edges()) {
        int s = remap[static_cast<std::size_t>(e.src)];
        int d = remap[static_cast<std::size_t>(e.dst)];
        if (s >= 0 && d >= 0) h.add_edge(s, d, e.label);
    }
    return h;
}

std::vector<int> essential_vertices(const LabelledGraph& g) {
    int n = g.vertex_count();
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> outd(static_cast<std::size_t>(n), 0), ind(static_cast<std::size_t>(n), 0);
        for (const auto& e : g.edges()) {
            if (alive[static_cast<std::size_t>(e.src)] && alive[static_cast<std::size_t>(e.dst)]) {
                outd[static_cast<std::size_t>(e.src)]++;
                ind[static_cast<std::size_t>(e.dst)]++;
            }
        }
        for (int v = 0; v < n; ++v) {
            if (alive[static_cast<std::size_t>(v)] &&
                (outd[static_cast<std::size_t>(v)] == 0 || ind[static_cast<std::size_t>(v)] == 0)) {
                alive[static_cast<std::size_t>(v)] = false;
                changed = true;
            }
        }
    }
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (alive[static_cast<std::size_t>(v)]) keep.push_back(v);
    return keep;
}

LabelledGraph essentialize(const LabelledGraph& g) {
    return induced_subgraph(g, essential_vertices(g));
}

namespace {

// Iterative Tarjan over the multigraph.
std::vector<std::vector<int>> strongly_connected(const LabelledGraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : g.edges()) adj[static_cast<std::size_t>(e.src)].push_back(e.dst);

    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            auto& succ = adj[static_cast<std::size_t>(f.v)];
            if (f.child < succ.size()) {
                int w = succ[f.child++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    std::vector<int> scc;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        scc.push_back(w);
                    } while (w != f.v);
                    std::sort(scc.begin(), scc.end());
                    sccs.push_back(std::move(scc));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    int p = frames.back().v;
                    low[static_cast<std::size_t>(p)] =
                        std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
                }
            }
        }
    }
    return sccs;
}

}  // namespace

std::vector<std::vector<int>> irreducible_components(const LabelledGraph& g) {
    auto sccs = strongly_connected(g);
    std::vector<std::vector<int>> out;
    for (auto& scc : sccs) {
        bool has_edge = false;
        if (scc.size() > 1) {
            has_edge = true;
        } else {
            for (const auto& e : g.edges())
                if (e.src == scc[0] && e.dst == scc[0]) { has_edge = true; break; }
        }
        if (has_edge) out.push_back(std::move(scc));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool is_irreducible(const LabelledGraph& g) {
    if (g.vertex_count() == 0) return false;
    auto comps = irreducible_components(g);
    return comps.size() == 1 && static_cast<int>(comps[0].size()) == g.vertex_count();
}

namespace {

bool resolving(const LabelledGraph& g, bool left) {
    // left: no vertex receives two edges with the same label.
    std::map<std::pair<int, Symbol>, int> seen;
    for (const auto& e : g.edges()) {
        int v = left ? e.dst : e.src;
        if (++seen[{v, e.label}] > 1) return false;
    }
    return true;
}

bool separated(const LabelledGraph& g, const BackwardTables& t) {
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            Bitset bu(n), bv(n);
            bu.set(u);
            bv.set(v);
            if (language_equal(t, bu, bv)) return false;
        }
    }
    return true;
}

}  // namespace

PresentationReport validate_presentation(const LabelledGraph& g) {
    PresentationReport r;
    r.left_resolving = resolving(g, true);
    r.right_resolving = resolving(g, false);
    r.irreducible = is_irreducible(g);
    auto keep = essential_vertices(g);
    r.essential = static_cast<int>(keep.size()) == g.vertex_count();
    LabelledGraph h = r.essential ? g : induced_subgraph(g, keep);
    BackwardTables bt(h);
    r.predecessor_separated = separated(h, bt);
    LabelledGraph ht = transpose(h);
    BackwardTables ft(ht);
    r.follower_separated = separated(ht, ft);
    return r;
}

std::vector<int> source_set(const LabelledGraph& g, const Word& w) {
    int n = g.vertex_count();
    if (w.empty()) {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (g.out_degree(v) > 0) out.push_back(v);
        return out;
    }
    BackwardTables t(g);
    Bitset cur(n);
    for (int v = 0; v < n; ++v) cur.set(v);
    for (std::size_t i = w.size(); i-- > 0;)
        cur = t.step(static_cast<Symbol>(static_cast<unsigned char>(w[i])), cur);
    return cur.to_indices();
}

namespace {

enum class LangMode { kEqual, kSubset };

bool language_compare(const BackwardTables& t, const Bitset& u0, const Bitset& v0, LangMode mode) {
    std::unordered_set<std::pair<Bitset, Bitset>, BitsetPairHash> visited;
    std::deque<std::pair<Bitset, Bitset>> queue;
    auto check = [&](const Bitset& a, const Bitset& b) {
        if (mode == LangMode::kEqual) return a.any() == b.any();
        return !(a.any() && b.none());
    };
    if (!check(u0, v0)) return false;
    queue.emplace_back(u0, v0);
    visited.insert({u0, v0});
    while (!queue.empty()) {
        auto [u, v] = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < t.symbol_count(); ++a) {
            Bitset au = t.step(a, u);
            Bitset av = t.step(a, v);
            if (!check(au, av)) return false;
            bool dead = (mode == LangMode::kEqual) ? au.none() : au.none();
            if (dead) continue;
            auto key = std::make_pair(au, av);
            if (visited.insert(key).second) queue.push_back(key);
        }
    }
    return true;
}

}  // namespace

bool language_equal(const BackwardTables& t, const Bitset& u, const Bitset& v) {
    return language_compare(t, u, v, LangMode::kEqual);
}

bool language_subset(const BackwardTables& t, const Bitset& u, const Bitset& v) {
    return language_compare(t, u, v, LangMode::kSubset);
}

bool language_equal_across(const LabelledGraph& g1, const Bitset& u,
                           const LabelledGraph& g2, const Bitset& v) {
    BackwardTables t1(g1), t2(g2);
    // Join the alphabets by name; a symbol missing on one side has an
    // identically empty image there.
    std::vector<std::pair<Symbol, Symbol>> joint;
    for (Symbol a = 0; a < g1.alphabet().size(); ++a) {
        const std::string& name = g1.alphabet().name(a);
        joint.emplace_back(a, g2.alphabet().contains(name) ? g2.alphabet().index_of(name) : -1);
    }
    for (Symbol b = 0; b < g2.alphabet().size(); ++b)
        if (!g1.alphabet().contains(g2.alphabet().name(b))) joint.emplace_back(-1, b);

    std::unordered_set<std::pair<Bitset, Bitset>, BitsetPairHash> visited;
    std::deque<std::pair<Bitset, Bitset>> queue;
    if (u.any() != v.any()) return false;
    queue.emplace_back(u, v);
    visited.insert({u, v});
    Bitset empty1(g1.vertex_count()), empty2(g2.vertex_count());
    while (!queue.empty()) {
        auto [s1, s2] = queue.front();
        queue.pop_front();
        for (auto [a, b] : joint) {
            Bitset n1 = (a >= 0) ? t1.step(a, s1) : empty1;
            Bitset n2 = (b >= 0) ? t2.step(b, s2) : empty2;
            if (n1.any() != n2.any()) return false;
            if (n1.none()) continue;
            auto key = std::make_pair(n1, n2);
            if (visited.insert(key).second) queue.push_back(key);
        }
    }
    return true;
}

bool predecessor_language_equal(const LabelledGraph& g, const std::vector<int>& u,
                                const std::vector<int>& v) {
    if (!resolving(g, true))
        throw std::invalid_argument("predecessor_language_equal: graph is not left-resolving");
    BackwardTables t(g);
    return language_equal(t, to_bitset(g.vertex_count(), u), to_bitset(g.vertex_count(), v));
}

LabelledGraph symbol_expand(const LabelledGraph& g, Symbol a, const std::string& d) {
    if (g.alphabet().contains(d))
        throw std::invalid_argument("symbol_expand: symbol already present: " + d);
    Alphabet alpha = g.alphabet();
    Symbol nd = alpha.add(d);
    LabelledGraph h(alpha);
    for (int v = 0; v < g.vertex_count(); ++v) h.add_vertex(g.vertex_name(v));
    for (const auto& e : g.edges()) {
        if (e.label == a) {
            int mid = h.add_vertex();
            h.add_edge(e.src, mid, a);
            h.add_edge(mid, e.dst, nd);
        } else {
            h.add_edge(e.src, e.dst, e.label);
        }
    }
    return h;
}

namespace {

using EdgeCount = std::map<std::pair<int, int>, std::map<std::string, int>>;

EdgeCount edge_counts(const LabelledGraph& g) {
    EdgeCount m;
    for (const auto& e : g.edges()) m[{e.src, e.dst}][g.alphabet().name(e.label)]++;
    return m;
}

// Degree/label signature used for candidate pruning.
std::string vertex_signature(const LabelledGraph& g, int v) {
    std::map<std::string, int> outs, ins;
    for (const auto& e : g.edges()) {
        if (e.src == v) outs[g.alphabet().name(e.label)]++;
        if (e.dst == v) ins[g.alphabet().name(e.label)]++;
    }
    std::string sig = "o:";
    for (auto& [k, c] : outs) sig += k + "*" + std::to_string(c) + ",";
    sig += "i:";
    for (auto& [k, c] : ins) sig += k + "*" + std::to_string(c) + ",";
    return sig;
}

}  // namespace

std::optional<std::vector<int>> graph_isomorphic(const LabelledGraph& g1, const LabelledGraph& g2) {
    int n = g1.vertex_count();
    if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;

    std::vector<std::string> sig1(static_cast<std::size_t>(n)), sig2(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        sig1[static_cast<std::size_t>(v)] = vertex_signature(g1, v);
        sig2[static_cast<std::size_t>(v)] = vertex_signature(g2, v);
    }
    {
        auto s1 = sig1;
        auto s2 = sig2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }

    EdgeCount ec1 = edge_counts(g1), ec2 = edge_counts(g2);
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    auto consistent = [&](int u, int cand) {
        for (int w = 0; w < n; ++w) {
            int mw = map[static_cast<std::size_t>(w)];
            if (mw < 0 && w != u) continue;
            int m_w = (w == u) ? cand : mw;
            auto get = [](const EdgeCount& m, int a, int b) {
                auto it = m.find({a, b});
                return it == m.end() ? std::map<std::string, int>{} : it->second;
            };
            if (get(ec1, u, w) != get(ec2, cand, m_w)) return false;
            if (w != u && get(ec1, w, u) != get(ec2, m_w, cand)) return false;
        }
        return true;
    };

    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    int depth = 0;
    while (depth >= 0 && depth < n) {
        bool advanced = false;
        for (std::size_t c = choice[static_cast<std::size_t>(depth)];
             c < static_cast<std::size_t>(n); ++c) {
            int cand = static_cast<int>(c);
            if (used[c] || sig1[static_cast<std::size_t>(depth)] != sig2[c]) continue;
            if (!consistent(depth, cand)) continue;
            map[static_cast<std::size_t>(depth)] = cand;
            used[c] = true;
            choice[static_cast<std::size_t>(depth)] = c + 1;
            ++depth;
            if (depth < n) choice[static_cast<std::size_t>(depth)] = 0;
            advanced = true;
            break;
        }
        if (!advanced) {
            --depth;
            if (depth >= 0) {
                used[static_cast<std::size_t>(map[static_cast<std::size_t>(depth)])] = false;
                map[static_cast<std::size_t>(depth)] = -1;
            }
        }
    }
    if (depth == n) return map;
    return std::nullopt;
}

void write_graph(std::ostream& os, const LabelledGraph& g) {
    os << "vertices:";
    for (int v = 0; v < g.vertex_count(); ++v) os << ' ' << g.vertex_name(v);
    os << '\n';
    for (const auto& e : g.edges())
        os << g.vertex_name(e.src) << ' ' << g.alphabet().name(e.label) << ' '
           << g.vertex_name(e.dst) << '\n';
}

std::string graph_to_string(const LabelledGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

LabelledGraph read_graph(std::istream& is) {
    std::string line;
    LabelledGraph g;
    std::map<std::string, int> ids;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string kw;
            ls >> kw;
            if (kw != "vertices:") throw std::invalid_argument("graph file: expected 'vertices:'");
            std::string name;
            while (ls >> name) ids[name] = g.add_vertex(name);
            have_header = true;
            continue;
        }
        std::string s, l, d;
        if (!(ls >> s >> l >> d)) throw std::invalid_argument("graph file: bad edge line: " + line);
        if (!ids.count(s) || !ids.count(d))
            throw std::invalid_argument("graph file: unknown vertex in: " + line);
        g.add_edge(ids[s], ids[d], g.alphabet().add_or_get(l));
    }
    if (!have_header) throw std::invalid_argument("graph file: empty input");
    return g;
}

}  // namespace sofic

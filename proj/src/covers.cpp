#include "sofic/covers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace sofic {

namespace {

Bitset full_set(int n) {
    Bitset b(n);
    for (int i = 0; i < n; ++i) b.set(i);
    return b;
}

bool left_resolving(const LabelledGraph& g) {
    std::map<std::pair<int, Symbol>, int> seen;
    for (const auto& e : g.edges())
        if (++seen[{e.dst, e.label}] > 1) return false;
    return true;
}

bool right_resolving(const LabelledGraph& g) {
    std::map<std::pair<int, Symbol>, int> seen;
    for (const auto& e : g.edges())
        if (++seen[{e.src, e.label}] > 1) return false;
    return true;
}

std::vector<bool> reachable_from(const LabelledGraph& g, const std::vector<int>& seeds) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
    for (const auto& e : g.edges()) adj[static_cast<std::size_t>(e.src)].push_back(e.dst);
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    std::deque<int> q;
    for (int s : seeds)
        if (!seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = true;
            q.push_back(s);
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                q.push_back(w);
            }
    }
    return seen;
}

// Backward subset construction closed from the given seeds; states are
// the reachable nonempty subsets in BFS order, symbols in alphabet order.
struct SubsetAutomaton {
    std::vector<Bitset> states;
    std::unordered_map<Bitset, int, BitsetHash> index;
    std::vector<std::vector<int>> delta;  // state x symbol -> state or -1
};

SubsetAutomaton close_subsets(const LabelledGraph& g, const BackwardTables& t,
                              const std::vector<Bitset>& seeds, std::size_t cap) {
    SubsetAutomaton a;
    std::deque<int> q;
    for (const auto& s : seeds) {
        if (s.none() || a.index.count(s)) continue;
        a.index[s] = static_cast<int>(a.states.size());
        a.states.push_back(s);
        q.push_back(a.index[s]);
    }
    while (!q.empty()) {
        int id = q.front();
        q.pop_front();
        for (Symbol sym = 0; sym < g.alphabet().size(); ++sym) {
            Bitset next = t.step(sym, a.states[static_cast<std::size_t>(id)]);
            if (next.none()) continue;
            auto it = a.index.find(next);
            if (it == a.index.end()) {
                if (a.states.size() >= cap)
                    throw ResourceError("subset construction exceeded state cap");
                int nid = static_cast<int>(a.states.size());
                a.index[next] = nid;
                a.states.push_back(next);
                q.push_back(nid);
            }
        }
    }
    a.delta.assign(a.states.size(), std::vector<int>(static_cast<std::size_t>(g.alphabet().size()), -1));
    for (std::size_t s = 0; s < a.states.size(); ++s)
        for (Symbol sym = 0; sym < g.alphabet().size(); ++sym) {
            Bitset next = t.step(sym, a.states[s]);
            if (next.any()) a.delta[s][static_cast<std::size_t>(sym)] = a.index.at(next);
        }
    return a;
}

// Groups subsets of g's vertices by predecessor-language equality;
// class ids follow first appearance. Returns per-item class id and the
// representative (first member) of each class.
struct ClassGrouping {
    std::vector<int> class_of;
    std::vector<Bitset> reps;
};

ClassGrouping group_by_language(const BackwardTables& t, const std::vector<Bitset>& items) {
    ClassGrouping g;
    g.class_of.assign(items.size(), -1);
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t c = 0; c < g.reps.size(); ++c) {
            if (language_equal(t, items[i], g.reps[c])) {
                g.class_of[i] = static_cast<int>(c);
                break;
            }
        }
        if (g.class_of[i] < 0) {
            g.class_of[i] = static_cast<int>(g.reps.size());
            g.reps.push_back(items[i]);
        }
    }
    return g;
}

// Smallest cardinality of a subset of `parts` whose union is
// language-equal to `target`.
int min_union_size(const BackwardTables& t, const std::vector<Bitset>& parts,
                   const Bitset& target) {
    int m = static_cast<int>(parts.size());
    std::vector<int> pick;
    // Enumerate combinations of size k in lexicographic order.
    for (int k = 1; k <= m; ++k) {
        pick.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            Bitset u(target.universe());
            for (int i : pick) u |= parts[static_cast<std::size_t>(i)];
            if (language_equal(t, u, target)) return k;
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    throw std::logic_error("min_union_size: class not expressible over the given parts");
}

// Builds a cover whose vertices are the language classes of the given
// subsets, with an a-edge from class(aV) to class(V) whenever aV is
// nonempty. Fills min_size against singleton Fischer vertices, which
// realizes the generalised-Fischer layer count for irreducible shifts.
CoverWithClasses build_class_cover(const LabelledGraph& fischer, const BackwardTables& t,
                                   const std::vector<Bitset>& subsets) {
    ClassGrouping grouping = group_by_language(t, subsets);
    int n_classes = static_cast<int>(grouping.reps.size());

    CoverWithClasses out;
    out.graph = LabelledGraph(fischer.alphabet());
    for (int c = 0; c < n_classes; ++c) out.graph.add_vertex("P" + std::to_string(c));

    std::unordered_map<Bitset, int, BitsetHash> class_of_subset;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        class_of_subset.emplace(subsets[i], grouping.class_of[i]);
    auto lookup_class = [&](const Bitset& s) {
        auto it = class_of_subset.find(s);
        if (it != class_of_subset.end()) return it->second;
        for (int c = 0; c < n_classes; ++c)
            if (language_equal(t, s, grouping.reps[static_cast<std::size_t>(c)])) {
                class_of_subset.emplace(s, c);
                return c;
            }
        throw std::logic_error("cover construction: image subset has no class");
    };

    for (int c = 0; c < n_classes; ++c) {
        const Bitset& v = grouping.reps[static_cast<std::size_t>(c)];
        for (Symbol a = 0; a < fischer.alphabet().size(); ++a) {
            Bitset av = t.step(a, v);
            if (av.none()) continue;
            out.graph.add_edge(lookup_class(av), c, a);
        }
    }

    std::vector<Bitset> singletons;
    for (int v = 0; v < fischer.vertex_count(); ++v) {
        Bitset b(fischer.vertex_count());
        b.set(v);
        singletons.push_back(b);
    }
    out.classes.resize(static_cast<std::size_t>(n_classes));
    for (int c = 0; c < n_classes; ++c) {
        out.classes[static_cast<std::size_t>(c)].representative =
            grouping.reps[static_cast<std::size_t>(c)];
        out.classes[static_cast<std::size_t>(c)].class_id = c;
        out.classes[static_cast<std::size_t>(c)].min_size =
            min_union_size(t, singletons, grouping.reps[static_cast<std::size_t>(c)]);
    }
    return out;
}

void require_fischer(const LabelledGraph& f, const char* who) {
    if (f.vertex_count() == 0) throw std::invalid_argument(std::string(who) + ": empty cover");
    if (!left_resolving(f))
        throw std::invalid_argument(std::string(who) + ": cover is not left-resolving");
    if (!is_irreducible(f))
        throw std::invalid_argument(std::string(who) + ": cover is not irreducible");
}

}  // namespace

LabelledGraph fischer_cover_left(const LabelledGraph& g, std::size_t cap) {
    LabelledGraph h = essentialize(g);
    if (h.vertex_count() == 0)
        throw std::invalid_argument("fischer_cover_left: presentation has empty essential part");
    if (!is_irreducible(h))
        throw std::invalid_argument("fischer_cover_left: presentation is reducible");

    BackwardTables t(h);
    SubsetAutomaton aut = close_subsets(h, t, {full_set(h.vertex_count())}, cap);

    ClassGrouping grouping = group_by_language(t, aut.states);
    int n_classes = static_cast<int>(grouping.reps.size());
    LabelledGraph merged(h.alphabet());
    for (int c = 0; c < n_classes; ++c) merged.add_vertex();
    {
        std::map<std::tuple<int, Symbol, int>, bool> added;
        for (std::size_t s = 0; s < aut.states.size(); ++s) {
            for (Symbol a = 0; a < h.alphabet().size(); ++a) {
                int target = aut.delta[s][static_cast<std::size_t>(a)];
                if (target < 0) continue;
                // edge labelled a from class(aS) to class(S)
                int from = grouping.class_of[static_cast<std::size_t>(target)];
                int to = grouping.class_of[s];
                auto key = std::make_tuple(from, a, to);
                if (!added.emplace(key, true).second) continue;
                merged.add_edge(from, to, a);
            }
        }
    }

    LabelledGraph essential = essentialize(merged);
    if (essential.vertex_count() == 0)
        throw std::logic_error("fischer_cover_left: merged presentation collapsed");

    auto comps = irreducible_components(essential);
    std::vector<int> top;
    for (const auto& comp : comps) {
        auto reach = reachable_from(essential, comp);
        if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) {
            if (!top.empty())
                throw std::logic_error("fischer_cover_left: top component not unique");
            top = comp;
        }
    }
    if (top.empty()) throw std::logic_error("fischer_cover_left: no top component");

    LabelledGraph fc = induced_subgraph(essential, top);
    LabelledGraph named(fc.alphabet());
    for (int v = 0; v < fc.vertex_count(); ++v) named.add_vertex("P" + std::to_string(v));
    for (const auto& e : fc.edges()) named.add_edge(e.src, e.dst, e.label);

    if (!left_resolving(named) || !is_irreducible(named))
        throw std::logic_error("fischer_cover_left: output fails Fischer characterisation");
    return named;
}

LabelledGraph fischer_cover_right(const LabelledGraph& g, std::size_t cap) {
    return transpose(fischer_cover_left(transpose(g), cap));
}

RelationMonoidAutomaton relation_monoid(const LabelledGraph& fischer, std::size_t cap) {
    int n = fischer.vertex_count();
    int nsym = fischer.alphabet().size();
    // forward images per symbol per vertex
    std::vector<std::vector<Bitset>> fwd(static_cast<std::size_t>(nsym),
                                         std::vector<Bitset>(static_cast<std::size_t>(n), Bitset(n)));
    for (const auto& e : fischer.edges())
        fwd[static_cast<std::size_t>(e.label)][static_cast<std::size_t>(e.src)].set(e.dst);

    RelationMonoidAutomaton m;
    std::map<std::vector<Bitset>, int> index;

    std::vector<Bitset> id_rows(static_cast<std::size_t>(n), Bitset(n));
    for (int v = 0; v < n; ++v) id_rows[static_cast<std::size_t>(v)].set(v);
    m.states.push_back(id_rows);
    index[id_rows] = 0;
    std::deque<int> q{0};
    while (!q.empty()) {
        int id = q.front();
        q.pop_front();
        m.transitions.resize(m.states.size(),
                             std::vector<int>(static_cast<std::size_t>(nsym), -1));
        for (Symbol a = 0; a < nsym; ++a) {
            std::vector<Bitset> next(static_cast<std::size_t>(n), Bitset(n));
            const auto& rows = m.states[static_cast<std::size_t>(id)];
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (rows[static_cast<std::size_t>(u)].test(v))
                        next[static_cast<std::size_t>(u)] |= fwd[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)];
            auto it = index.find(next);
            int nid;
            if (it == index.end()) {
                if (m.states.size() >= cap)
                    throw ResourceError("relation monoid exceeded state cap");
                nid = static_cast<int>(m.states.size());
                index[next] = nid;
                m.states.push_back(std::move(next));
                q.push_back(nid);
            } else {
                nid = it->second;
            }
            if (m.transitions.size() < m.states.size())
                m.transitions.resize(m.states.size(),
                                     std::vector<int>(static_cast<std::size_t>(nsym), -1));
            m.transitions[static_cast<std::size_t>(id)][static_cast<std::size_t>(a)] = nid;
        }
    }

    // Cycle flags via the irreducible components of the transition graph.
    LabelledGraph trans{Alphabet{std::vector<std::string>{"t"}}};
    for (std::size_t s = 0; s < m.states.size(); ++s) trans.add_vertex();
    for (std::size_t s = 0; s < m.states.size(); ++s)
        for (Symbol a = 0; a < nsym; ++a)
            trans.add_edge(static_cast<int>(s), m.transitions[s][static_cast<std::size_t>(a)], 0);
    m.cyclic.assign(m.states.size(), false);
    for (const auto& comp : irreducible_components(trans))
        for (int s : comp) m.cyclic[static_cast<std::size_t>(s)] = true;

    for (const auto& rel : m.states) {
        Bitset dom(n);
        for (int u = 0; u < n; ++u)
            if (rel[static_cast<std::size_t>(u)].any()) dom.set(u);
        m.domains.push_back(dom);
    }
    return m;
}

CoverWithClasses krieger_cover_left(const LabelledGraph& fischer, std::size_t cap) {
    require_fischer(fischer, "krieger_cover_left");
    RelationMonoidAutomaton m = relation_monoid(fischer, cap);
    BackwardTables t(fischer);

    std::vector<Bitset> candidates;
    std::unordered_map<Bitset, bool, BitsetHash> seen;
    for (std::size_t s = 0; s < m.states.size(); ++s) {
        if (!m.cyclic[s] || m.domains[s].none()) continue;
        if (seen.emplace(m.domains[s], true).second) candidates.push_back(m.domains[s]);
    }
    return build_class_cover(fischer, t, candidates);
}

CoverWithClasses past_set_cover(const LabelledGraph& fischer, std::size_t cap) {
    require_fischer(fischer, "past_set_cover");
    BackwardTables t(fischer);
    // Seeds s(a) for every symbol; the closure yields s(w) for every
    // nonempty word. The empty word's class enters exactly when some
    // nonempty word realizes it.
    Bitset all = full_set(fischer.vertex_count());
    std::vector<Bitset> seeds;
    for (Symbol a = 0; a < fischer.alphabet().size(); ++a) seeds.push_back(t.step(a, all));
    SubsetAutomaton aut = close_subsets(fischer, t, seeds, cap);
    return build_class_cover(fischer, t, aut.states);
}

GfcResult generalized_fischer_cover(const CoverWithClasses& krieger,
                                    const LabelledGraph& fischer) {
    BackwardTables t(fischer);
    int n = krieger.graph.vertex_count();
    GfcResult out;
    out.indecomposable.assign(static_cast<std::size_t>(n), false);
    for (int p = 0; p < n; ++p) {
        const Bitset& rep = krieger.classes[static_cast<std::size_t>(p)].representative;
        Bitset uni(fischer.vertex_count());
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            const Bitset& rq = krieger.classes[static_cast<std::size_t>(q)].representative;
            if (language_subset(t, rq, rep)) uni |= rq;
        }
        out.indecomposable[static_cast<std::size_t>(p)] = !language_equal(t, uni, rep);
    }
    // Keep the vertices from which an indecomposable one is reachable.
    LabelledGraph rev = transpose(krieger.graph);
    std::vector<int> seeds;
    for (int p = 0; p < n; ++p)
        if (out.indecomposable[static_cast<std::size_t>(p)]) seeds.push_back(p);
    auto keep = reachable_from(rev, seeds);
    for (int p = 0; p < n; ++p)
        if (keep[static_cast<std::size_t>(p)]) out.cover_vertices.push_back(p);
    out.graph = induced_subgraph(krieger.graph, out.cover_vertices);
    return out;
}

std::vector<int> layers(const CoverWithClasses& cover, const LabelledGraph& fischer,
                        const CoverWithClasses& krieger, const GfcResult& gfc) {
    BackwardTables t(fischer);
    std::vector<Bitset> parts;
    for (int kv : gfc.cover_vertices)
        parts.push_back(krieger.classes[static_cast<std::size_t>(kv)].representative);
    std::vector<int> out;
    for (const auto& cls : cover.classes)
        out.push_back(min_union_size(t, parts, cls.representative));
    return out;
}

bool condition_star(const LabelledGraph& fischer, std::size_t cap) {
    CoverWithClasses k = krieger_cover_left(fischer, cap);
    CoverWithClasses w = past_set_cover(fischer, cap);
    return graph_isomorphic(k.graph, essentialize(w.graph)).has_value();
}

LabelledGraph proper_communication_graph(const LabelledGraph& g) {
    auto comps = irreducible_components(g);
    LabelledGraph pc{Alphabet{std::vector<std::string>{"t"}}};
    for (std::size_t c = 0; c < comps.size(); ++c) pc.add_vertex("C" + std::to_string(c));
    for (std::size_t c = 0; c < comps.size(); ++c) {
        auto reach = reachable_from(g, comps[c]);
        for (std::size_t d = 0; d < comps.size(); ++d) {
            if (c == d) continue;
            if (reach[static_cast<std::size_t>(comps[d].front())])
                pc.add_edge(static_cast<int>(c), static_cast<int>(d), 0);
        }
    }
    return pc;
}

LabelledGraph range_invariant_construction(const LabelledGraph& e, bool condition_k) {
    int n = e.vertex_count();
    if (n == 0) throw std::invalid_argument("range construction: empty input");
    if (!irreducible_components(e).empty())
        throw std::invalid_argument("range construction: input has a circuit");

    // Unique root: the one vertex connected to all others.
    int root = -1;
    for (int v = 0; v < n; ++v) {
        auto reach = reachable_from(e, {v});
        if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) {
            if (root >= 0)
                throw std::invalid_argument("range construction: multiple maximal vertices");
            root = v;
        }
    }
    if (root < 0) throw std::invalid_argument("range construction: no root");

    // Simple edge set and longest path lengths from the root.
    std::map<std::pair<int, int>, bool> simple;
    for (const auto& ed : e.edges()) simple[{ed.src, ed.dst}] = true;
    std::vector<int> level(static_cast<std::size_t>(n), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [uv, _] : simple) {
            int want = level[static_cast<std::size_t>(uv.first)] + 1;
            if (level[static_cast<std::size_t>(uv.second)] < want) {
                level[static_cast<std::size_t>(uv.second)] = want;
                changed = true;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (level[static_cast<std::size_t>(v)] > 24)
            throw ResourceError("range construction: 2^l(v) copies too large");

    Alphabet alpha;
    LabelledGraph f(alpha);
    std::vector<std::vector<int>> copies(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int copies_of_v = 1 << level[static_cast<std::size_t>(v)];
        for (int i = 1; i <= copies_of_v; ++i)
            copies[static_cast<std::size_t>(v)].push_back(
                f.add_vertex(e.vertex_name(v) + "_" + std::to_string(i)));
    }
    auto label = [&](const std::string& name) { return f.alphabet().add_or_get(name); };
    for (int v = 0; v < n; ++v) {
        Symbol a = label("a_" + e.vertex_name(v));
        Symbol a2 = condition_k ? label("a_" + e.vertex_name(v) + "'") : -1;
        for (int c : copies[static_cast<std::size_t>(v)]) {
            f.add_edge(c, c, a);
            if (condition_k) f.add_edge(c, c, a2);
        }
    }
    for (const auto& [uv, _] : simple) {
        auto [u, v] = uv;
        int nu = static_cast<int>(copies[static_cast<std::size_t>(u)].size());
        int nv = static_cast<int>(copies[static_cast<std::size_t>(v)].size());
        int fan = nv / nu;  // 2^(l(v)-l(u)) >= 2
        for (int j = 0; j < nv; ++j) {
            int i = j / fan;
            int k = j % fan;
            Symbol a = label("a_" + e.vertex_name(u) + "_" + e.vertex_name(v) + "_" +
                             std::to_string(k + 1));
            f.add_edge(copies[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)],
                       copies[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)], a);
        }
    }
    // Uniquely labelled return edges from the copies of each sink; the
    // root is excluded (only relevant for the one-vertex input).
    for (int v = 0; v < n; ++v) {
        if (v == root) continue;
        bool sink = true;
        for (const auto& [uv, _] : simple)
            if (uv.first == v) { sink = false; break; }
        if (!sink) continue;
        int j = 0;
        for (int c : copies[static_cast<std::size_t>(v)]) {
            Symbol a = label("r_" + e.vertex_name(v) + "_" + std::to_string(++j));
            f.add_edge(c, copies[static_cast<std::size_t>(root)][0], a);
        }
    }

    if (!left_resolving(f) || !right_resolving(f) || !is_irreducible(f))
        throw std::logic_error("range construction: output is not a Fischer cover");
    return f;
}

FiberProduct fiber_product(const LabelledGraph& right_fischer) {
    if (!right_resolving(right_fischer))
        throw std::invalid_argument("fiber_product: cover is not right-resolving");
    int n = right_fischer.vertex_count();
    FiberProduct out;
    out.graph = LabelledGraph(right_fischer.alphabet());
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            out.graph.add_vertex("(" + right_fischer.vertex_name(u) + "," +
                                 right_fischer.vertex_name(v) + ")");
    for (const auto& e1 : right_fischer.edges())
        for (const auto& e2 : right_fischer.edges())
            if (e1.label == e2.label)
                out.graph.add_edge(e1.src * n + e2.src, e1.dst * n + e2.dst, e1.label);
    out.matrix = symbolic_adjacency(out.graph);
    out.cover = essentialize(out.graph);
    return out;
}

}  // namespace sofic

#pragma once

// Structures to graphs.
//
// Three hubs a, b, c carry a unique 3-, 5- and 7-cycle (hub -> one cycle
// vertex, cycle oriented around). Every element x gets a vertex v_x with
// a -> v_x. Every tuple (x_1..x_i) of every relation of arity i gets a gadget:
// for k = 1..i a chain of i+k-1 interior vertices entered from v_{x_k}, all
// chains ending in one shared junction y, and y -> b when the fact holds,
// y -> c otherwise.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "structcode/core.hpp"

namespace structcode {

struct Role {
    enum class Kind { A, B, C, Cycle, Element, ChainNode, Junction };

    Kind kind = Kind::A;
    std::size_t cycle_length = 0;  // Cycle
    std::size_t position = 0;      // Cycle, ChainNode (0-based from the chain start)
    std::size_t element = 0;       // Element
    std::size_t relation = 0;      // ChainNode, Junction
    Tuple tuple;                   // ChainNode, Junction
    std::size_t chain = 0;         // ChainNode, 1-based k
    bool holds = false;            // Junction

    friend bool operator==(const Role&, const Role&) = default;
};

namespace coding_layout {

inline constexpr std::size_t a = 0;
inline constexpr std::size_t b = 1;
inline constexpr std::size_t c = 2;
inline constexpr std::size_t cycle_lengths[3] = {3, 5, 7};
inline constexpr std::size_t first_element = 18;

inline std::size_t cycle_vertex(std::size_t length, std::size_t pos) {
    switch (length) {
        case 3: return 3 + pos;
        case 5: return 6 + pos;
        case 7: return 11 + pos;
        default: throw std::invalid_argument("cycle length must be 3, 5 or 7");
    }
}

// Offset of chain k (1-based) inside a gadget of arity i.
inline std::size_t chain_offset(std::size_t i, std::size_t k) { return (k - 1) * i + (k - 1) * (k - 2) / 2; }
inline std::size_t chain_length(std::size_t i, std::size_t k) { return i + k - 1; }
inline std::size_t junction_offset(std::size_t i) { return chain_offset(i, i + 1); }
inline std::size_t gadget_size(std::size_t i) { return junction_offset(i) + 1; }

}  // namespace coding_layout

class CodedGraph {
public:
    DiGraph graph;
    std::vector<Role> provenance;
    Signature signature;
    std::size_t universe = 0;

    std::size_t element_vertex(std::size_t x) const { return coding_layout::first_element + x; }

    std::size_t gadget_base(std::size_t relation, const Tuple& t) const { return bases_.at({relation, t}); }

    std::size_t chain_vertex(std::size_t relation, const Tuple& t, std::size_t k, std::size_t pos) const {
        return gadget_base(relation, t) + coding_layout::chain_offset(t.size(), k) + pos;
    }

    std::size_t junction(std::size_t relation, const Tuple& t) const {
        return gadget_base(relation, t) + coding_layout::junction_offset(t.size());
    }

    std::string provenance_text() const;

private:
    friend CodedGraph encode(const FinStructure& s);
    std::map<std::pair<std::size_t, Tuple>, std::size_t> bases_;
};

inline std::string tuple_text(const Tuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(t[i]);
    }
    return out;
}

inline std::string CodedGraph::provenance_text() const {
    std::ostringstream out;
    for (std::size_t v = 0; v < provenance.size(); ++v) {
        const Role& r = provenance[v];
        out << "v " << v << " role=";
        switch (r.kind) {
            case Role::Kind::A: out << 'A'; break;
            case Role::Kind::B: out << 'B'; break;
            case Role::Kind::C: out << 'C'; break;
            case Role::Kind::Cycle: out << "Cycle len=" << r.cycle_length << " pos=" << r.position; break;
            case Role::Kind::Element: out << "Element x=" << r.element; break;
            case Role::Kind::ChainNode:
                out << "ChainNode " << signature[r.relation].name << ' ' << tuple_text(r.tuple) << " k=" << r.chain
                    << " pos=" << r.position;
                break;
            case Role::Kind::Junction:
                out << "Junction " << signature[r.relation].name << ' ' << tuple_text(r.tuple)
                    << " holds=" << (r.holds ? 1 : 0);
                break;
        }
        out << '\n';
    }
    return out.str();
}

inline CodedGraph encode(const FinStructure& s) {
    namespace L = coding_layout;
    CodedGraph out;
    out.signature = s.signature();
    out.universe = s.size();

    std::size_t total = L::first_element + s.size();
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        const std::size_t i = s.signature()[r].arity;
        std::size_t tuples = 1;
        for (std::size_t j = 0; j < i; ++j) tuples *= s.size();
        total += tuples * L::gadget_size(i);
    }
    out.graph = DiGraph(total);
    out.provenance.resize(total);
    auto& g = out.graph;
    auto& roles = out.provenance;

    roles[L::a].kind = Role::Kind::A;
    roles[L::b].kind = Role::Kind::B;
    roles[L::c].kind = Role::Kind::C;
    const std::size_t hubs[3] = {L::a, L::b, L::c};
    for (std::size_t h = 0; h < 3; ++h) {
        const std::size_t len = L::cycle_lengths[h];
        for (std::size_t p = 0; p < len; ++p) {
            const std::size_t v = L::cycle_vertex(len, p);
            roles[v].kind = Role::Kind::Cycle;
            roles[v].cycle_length = len;
            roles[v].position = p;
            g.add_edge(v, L::cycle_vertex(len, (p + 1) % len));
        }
        g.add_edge(hubs[h], L::cycle_vertex(len, 0));
    }
    for (std::size_t x = 0; x < s.size(); ++x) {
        roles[out.element_vertex(x)].kind = Role::Kind::Element;
        roles[out.element_vertex(x)].element = x;
        g.add_edge(L::a, out.element_vertex(x));
    }

    std::size_t next = L::first_element + s.size();
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        const std::size_t i = s.signature()[r].arity;
        for_each_tuple(s.size(), i, [&](const Tuple& t) {
            const std::size_t base = next;
            out.bases_[{r, t}] = base;
            const std::size_t y = base + L::junction_offset(i);
            const bool holds = s.holds(r, t);
            roles[y] = Role{Role::Kind::Junction, 0, 0, 0, r, t, 0, holds};
            for (std::size_t k = 1; k <= i; ++k) {
                const std::size_t start = base + L::chain_offset(i, k);
                const std::size_t len = L::chain_length(i, k);
                for (std::size_t p = 0; p < len; ++p) {
                    roles[start + p] = Role{Role::Kind::ChainNode, 0, p, 0, r, t, k, false};
                    g.add_edge(start + p, p + 1 < len ? start + p + 1 : y);
                }
                g.add_edge(out.element_vertex(t[k - 1]), start);
            }
            g.add_edge(y, holds ? L::b : L::c);
            next += L::gadget_size(i);
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

struct Decoding {
    FinStructure structure;
    std::size_t a = 0, b = 0, c = 0;
    std::vector<std::size_t> element_vertices;  // element index -> vertex (the enumeration of {x : a -> x})
    std::vector<Role> roles;                    // per vertex, in terms of the decoded structure
};

namespace detail {

// Strongly connected components (iterative Tarjan); returns component id per vertex.
inline std::vector<std::size_t> scc(const DiGraph& g, std::size_t& count) {
    const std::size_t n = g.size();
    const std::size_t none = Morphism::unmapped;
    std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    count = 0;
    struct Frame {
        std::size_t v;
        std::set<std::size_t>::const_iterator it;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != none) continue;
        std::vector<Frame> call{{root, g.out(root).begin()}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.it != g.out(f.v).end()) {
                const std::size_t w = *f.it++;
                if (index[w] == none) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, g.out(w).begin()});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                while (true) {
                    const std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                    if (w == v) break;
                }
                ++count;
            }
        }
    }
    return comp;
}

}  // namespace detail

// Decodes an isomorphic copy of a coded graph. When sig is given, gadgets are
// matched to its relations by arity (arities must then be distinct);
// otherwise one relation "R<i>" is inferred per gadget arity i.
inline Decoding decode_detailed(const DiGraph& g, const std::optional<Signature>& sig = std::nullopt) {
    namespace L = coding_layout;
    const std::size_t n = g.size();
    Decoding d;
    d.roles.assign(n, Role{});
    std::vector<bool> assigned(n, false);
    auto assign = [&](std::size_t v, Role r) {
        if (assigned[v]) throw MalformedCoding("vertex " + std::to_string(v) + " plays two roles");
        assigned[v] = true;
        d.roles[v] = std::move(r);
    };

    // Cycles.
    std::size_t comps = 0;
    const auto comp = detail::scc(g, comps);
    std::vector<std::vector<std::size_t>> members(comps);
    for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);
    std::map<std::size_t, std::size_t> cycle_of_length;  // length -> component
    for (std::size_t k = 0; k < comps; ++k) {
        const auto& ms = members[k];
        if (ms.size() == 1 && !g.has_edge(ms[0], ms[0])) continue;
        const std::size_t len = ms.size();
        if (len != 3 && len != 5 && len != 7)
            throw MalformedCoding("unexpected cycle structure on " + std::to_string(len) + " vertices");
        if (cycle_of_length.count(len)) throw MalformedCoding("more than one " + std::to_string(len) + "-cycle");
        for (auto v : ms)
            if (g.out(v).size() != 1) throw MalformedCoding("cycle vertex " + std::to_string(v) + " is not on a simple cycle");
        cycle_of_length[len] = k;
    }
    std::size_t hubs[3];
    for (std::size_t h = 0; h < 3; ++h) {
        const std::size_t len = L::cycle_lengths[h];
        if (!cycle_of_length.count(len)) throw MalformedCoding("no " + std::to_string(len) + "-cycle");
        const auto& ms = members[cycle_of_length[len]];
        std::optional<std::size_t> hub, entry;
        for (auto v : ms)
            for (auto u : g.in(v)) {
                if (comp[u] == comp[v]) continue;
                if (hub) throw MalformedCoding("the " + std::to_string(len) + "-cycle has more than one attachment");
                hub = u;
                entry = v;
            }
        if (!hub) throw MalformedCoding("the " + std::to_string(len) + "-cycle is not attached");
        hubs[h] = *hub;
        std::size_t v = *entry;
        for (std::size_t p = 0; p < len; ++p) {
            assign(v, Role{Role::Kind::Cycle, len, p});
            v = *g.out(v).begin();
        }
    }
    d.a = hubs[0];
    d.b = hubs[1];
    d.c = hubs[2];
    assign(d.a, Role{Role::Kind::A});
    assign(d.b, Role{Role::Kind::B});
    assign(d.c, Role{Role::Kind::C});
    if (g.out(d.b).size() != 1 || g.out(d.c).size() != 1) throw MalformedCoding("b or c has extra out-edges");

    // Elements: {x : a -> x} in increasing vertex order.
    std::map<std::size_t, std::size_t> element_of;
    for (auto v : g.out(d.a)) {
        if (comp[v] == cycle_of_length[3]) continue;
        if (g.in(v).size() != 1) throw MalformedCoding("element vertex " + std::to_string(v) + " has extra in-edges");
        element_of[v] = d.element_vertices.size();
        assign(v, Role{Role::Kind::Element, 0, 0, d.element_vertices.size()});
        d.element_vertices.push_back(v);
    }
    const std::size_t universe = d.element_vertices.size();

    // Gadgets, found from their junctions.
    struct Gadget {
        std::size_t junction;
        Tuple tuple;
        bool holds;
        std::vector<std::vector<std::size_t>> chains;  // chains[k-1] = interior vertices from start
    };
    std::vector<Gadget> gadgets;
    for (std::size_t target : {d.b, d.c}) {
        for (auto y : g.in(target)) {
            if (assigned[y]) throw MalformedCoding("unexpected edge into b or c from vertex " + std::to_string(y));
            if (g.out(y).size() != 1) throw MalformedCoding("junction " + std::to_string(y) + " has extra out-edges");
            const std::size_t i = g.in(y).size();
            if (i == 0) throw MalformedCoding("junction " + std::to_string(y) + " has no chains");
            Gadget gd{y, Tuple(i), target == d.b, std::vector<std::vector<std::size_t>>(i)};
            for (auto end : g.in(y)) {
                std::vector<std::size_t> chain{end};
                std::size_t v = end;
                while (true) {
                    if (g.in(v).size() != 1 || g.out(v).size() != 1 || assigned[v] || chain.size() > n)
                        throw MalformedCoding("broken chain at vertex " + std::to_string(v));
                    const std::size_t p = *g.in(v).begin();
                    if (element_of.count(p)) break;
                    chain.push_back(p);
                    v = p;
                }
                const std::size_t start_elem = element_of.at(*g.in(chain.back()).begin());
                std::reverse(chain.begin(), chain.end());
                const std::size_t len = chain.size();
                if (len < i || len > 2 * i - 1 || !gd.chains[len - i].empty())
                    throw MalformedCoding("junction " + std::to_string(y) + " has chains of unexpected lengths");
                gd.chains[len - i] = std::move(chain);
                gd.tuple[len - i] = start_elem;
            }
            gadgets.push_back(std::move(gd));
        }
    }

    // Signature.
    std::map<std::size_t, std::size_t> relation_of_arity;
    Signature s;
    if (sig) {
        s = *sig;
        for (std::size_t r = 0; r < s.size(); ++r)
            if (!relation_of_arity.emplace(s[r].arity, r).second)
                throw MalformedCoding("signature has two relations of arity " + std::to_string(s[r].arity) +
                                      "; they cannot be told apart in the coding");
    } else {
        std::set<std::size_t> arities;
        for (const auto& gd : gadgets) arities.insert(gd.tuple.size());
        std::vector<RelationSymbol> rels;
        for (auto i : arities) {
            relation_of_arity[i] = rels.size();
            rels.push_back({"R" + std::to_string(i), i});
        }
        s = Signature(rels);
    }

    d.structure = FinStructure(s, universe);
    std::set<std::pair<std::size_t, Tuple>> seen;
    for (const auto& gd : gadgets) {
        auto it = relation_of_arity.find(gd.tuple.size());
        if (it == relation_of_arity.end())
            throw MalformedCoding("gadget of arity " + std::to_string(gd.tuple.size()) + " has no relation");
        const std::size_t r = it->second;
        if (!seen.emplace(r, gd.tuple).second)
            throw MalformedCoding("tuple (" + tuple_text(gd.tuple) + ") of " + s[r].name + " is coded twice");
        if (gd.holds) d.structure.add_fact(r, gd.tuple);
        assign(gd.junction, Role{Role::Kind::Junction, 0, 0, 0, r, gd.tuple, 0, gd.holds});
        for (std::size_t k = 1; k <= gd.chains.size(); ++k)
            for (std::size_t p = 0; p < gd.chains[k - 1].size(); ++p)
                assign(gd.chains[k - 1][p], Role{Role::Kind::ChainNode, 0, p, 0, r, gd.tuple, k, false});
    }
    for (std::size_t r = 0; r < s.size(); ++r) {
        std::size_t expected = 1;
        for (std::size_t j = 0; j < s[r].arity; ++j) expected *= universe;
        std::size_t coded = 0;
        for (const auto& key : seen) coded += key.first == r ? 1 : 0;
        if (coded != expected) throw MalformedCoding("relation " + s[r].name + " is incompletely coded");
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!assigned[v]) throw MalformedCoding("vertex " + std::to_string(v) + " has no role in the coding");

    // Every vertex has a role; the edge count pins down that there are no stray edges.
    std::size_t expected_edges = 3 + 3 + 5 + 7 + universe;
    for (const auto& gd : gadgets) {
        for (const auto& ch : gd.chains) expected_edges += ch.size() + 1;
        expected_edges += 1;
    }
    if (g.edges().size() != expected_edges) throw MalformedCoding("graph has edges outside the coding pattern");
    return d;
}

inline FinStructure decode(const DiGraph& g, const std::optional<Signature>& sig = std::nullopt) {
    return decode_detailed(g, sig).structure;
}

// ---------------------------------------------------------------------------
// Canonical maps
// ---------------------------------------------------------------------------

// s -> decode(relabel(encode(s))), x -> f^-1(v_x) where f enumerates {x : a -> x}.
inline Morphism canonical_iso(const FinStructure& s, std::span<const std::size_t> relabelling = {}) {
    const CodedGraph coded = encode(s);
    std::vector<std::size_t> perm(relabelling.begin(), relabelling.end());
    if (perm.empty()) {
        perm.resize(coded.graph.size());
        for (std::size_t v = 0; v < perm.size(); ++v) perm[v] = v;
    }
    const Decoding d = decode_detailed(relabel(coded.graph, perm), s.signature());
    std::vector<std::size_t> inv(coded.graph.size(), Morphism::unmapped);
    for (std::size_t i = 0; i < d.element_vertices.size(); ++i) inv[d.element_vertices[i]] = i;
    std::vector<std::size_t> m(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) m[x] = inv[perm[coded.element_vertex(x)]];
    Morphism out(s.size(), d.structure.size(), std::move(m));
    if (!is_isomorphism(out, s, d.structure)) throw Error("canonical_iso: composite map is not an isomorphism");
    return out;
}

// Graph embedding encode(A) -> encode(B) induced by an embedding h: A -> B.
inline Morphism encode_morphism(const Morphism& h, const FinStructure& A, const FinStructure& B) {
    if (!is_embedding(h, A, B)) throw NotAnEmbedding("encode_morphism: map is not an embedding");
    const CodedGraph ga = encode(A);
    const CodedGraph gb = encode(B);
    std::vector<std::size_t> m(ga.graph.size(), Morphism::unmapped);
    for (std::size_t v = 0; v < ga.graph.size(); ++v) {
        const Role& r = ga.provenance[v];
        switch (r.kind) {
            case Role::Kind::A:
            case Role::Kind::B:
            case Role::Kind::C:
            case Role::Kind::Cycle: m[v] = v; break;
            case Role::Kind::Element: m[v] = gb.element_vertex(h(r.element)); break;
            case Role::Kind::ChainNode:
            case Role::Kind::Junction: {
                Tuple image(r.tuple.size());
                for (std::size_t i = 0; i < image.size(); ++i) image[i] = h(r.tuple[i]);
                m[v] = r.kind == Role::Kind::Junction ? gb.junction(r.relation, image)
                                                      : gb.chain_vertex(r.relation, image, r.chain, r.position);
                break;
            }
        }
    }
    return Morphism(ga.graph.size(), gb.graph.size(), std::move(m));
}

// Vertex map g -> encode(decode(g)) obtained by classifying every vertex by its role.
inline Morphism lambda_graph(const DiGraph& g, const std::optional<Signature>& sig = std::nullopt) {
    const Decoding d = decode_detailed(g, sig);
    const CodedGraph e = encode(d.structure);
    std::vector<std::size_t> m(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        const Role& r = d.roles[v];
        switch (r.kind) {
            case Role::Kind::A: m[v] = coding_layout::a; break;
            case Role::Kind::B: m[v] = coding_layout::b; break;
            case Role::Kind::C: m[v] = coding_layout::c; break;
            case Role::Kind::Cycle: m[v] = coding_layout::cycle_vertex(r.cycle_length, r.position); break;
            case Role::Kind::Element: m[v] = e.element_vertex(r.element); break;
            case Role::Kind::ChainNode: m[v] = e.chain_vertex(r.relation, r.tuple, r.chain, r.position); break;
            case Role::Kind::Junction: m[v] = e.junction(r.relation, r.tuple); break;
        }
    }
    Morphism out(g.size(), e.graph.size(), std::move(m));
    if (!is_isomorphism(out, g, e.graph)) throw MalformedCoding("lambda_graph: role map is not an isomorphism");
    return out;
}

// Structure map decode(g1) -> decode(g2) induced by a graph embedding nu: g1 -> g2,
// i -> f2^-1(nu(f1(i))).
inline Morphism decode_morphism(const Morphism& nu, const DiGraph& g1, const DiGraph& g2,
                                const std::optional<Signature>& sig = std::nullopt) {
    if (!is_embedding(nu, g1, g2)) throw NotAnEmbedding("decode_morphism: map is not a graph embedding");
    const Decoding d1 = decode_detailed(g1, sig);
    const Decoding d2 = decode_detailed(g2, sig);
    std::map<std::size_t, std::size_t> inv;
    for (std::size_t i = 0; i < d2.element_vertices.size(); ++i) inv[d2.element_vertices[i]] = i;
    std::vector<std::size_t> m(d1.element_vertices.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto it = inv.find(nu(d1.element_vertices[i]));
        if (it == inv.end()) throw NotAnEmbedding("decode_morphism: element vertex not sent to an element vertex");
        m[i] = it->second;
    }
    const std::size_t n = m.size();
    return Morphism(n, d2.element_vertices.size(), std::move(m));
}

}  // namespace structcode

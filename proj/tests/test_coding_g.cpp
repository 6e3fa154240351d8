#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "structcode/coding_g.hpp"
#include "structcode/corpus.hpp"

using namespace structcode;

namespace {

bool naive_isomorphic(const FinStructure& a, const FinStructure& b) {
    if (a.size() != b.size() || a.signature().size() != b.signature().size()) return false;
    std::vector<std::size_t> p(a.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t r = 0; r < a.signature().size() && ok; ++r)
            for_each_tuple(a.size(), a.signature()[r].arity, [&](const Tuple& t) {
                Tuple u(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) u[i] = p[t[i]];
                if (a.holds(r, t) != b.holds(r, u)) ok = false;
            });
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Lengths of all simple cycles, each counted once (rooted at its smallest vertex).
std::vector<std::size_t> simple_cycles(const DiGraph& g) {
    std::vector<std::size_t> out;
    std::vector<bool> on(g.size(), false);
    for (std::size_t root = 0; root < g.size(); ++root) {
        std::vector<std::size_t> path{root};
        on[root] = true;
        auto dfs = [&](auto&& self, std::size_t v) -> void {
            for (auto w : g.out(v)) {
                if (w == root) out.push_back(path.size());
                else if (w > root && !on[w]) {
                    on[w] = true;
                    path.push_back(w);
                    self(self, w);
                    path.pop_back();
                    on[w] = false;
                }
            }
        };
        dfs(dfs, root);
        on[root] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t expected_vertices(const FinStructure& s) {
    std::size_t n = 18 + s.size();
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        const std::size_t i = s.signature()[r].arity;
        std::size_t tuples = 1;
        for (std::size_t j = 0; j < i; ++j) tuples *= s.size();
        std::size_t gadget = 1;  // the shared last vertex y
        for (std::size_t k = 1; k <= i; ++k) gadget += i + k - 1;
        n += tuples * gadget;
    }
    return n;
}

FinStructure figure_one() {
    FinStructure s(Signature({{"R", 3}}), 3);
    s.add_fact(0, {0, 1, 2});
    return s;
}

std::vector<std::size_t> shuffled(Rng& rng, std::size_t n) { return random_permutation(rng, n); }

}  // namespace

TEST(Encode, FigureOneGadgets) {
    // R(1,2,3) holds and R(3,2,1) fails (elements written 0, 1, 2 here). Coordinate k
    // of the tuple starts a chain with 3 + k - 1 nodes before the shared last vertex y,
    // and y points to b when the fact holds, to c otherwise.
    const FinStructure s = figure_one();
    const CodedGraph g = encode(s);
    for (const auto& [tuple, holds] : {std::pair{Tuple{0, 1, 2}, true}, std::pair{Tuple{2, 1, 0}, false}}) {
        const std::size_t y = g.junction(0, tuple);
        EXPECT_TRUE(g.graph.has_edge(y, holds ? coding_layout::b : coding_layout::c));
        EXPECT_FALSE(g.graph.has_edge(y, holds ? coding_layout::c : coding_layout::b));
        EXPECT_EQ(g.graph.in(y).size(), 3u);
        for (std::size_t k = 1; k <= 3; ++k) {
            // Walk from the element vertex of coordinate k to y.
            const std::size_t vx = g.element_vertex(tuple[k - 1]);
            std::size_t v = g.chain_vertex(0, tuple, k, 0);
            EXPECT_TRUE(g.graph.has_edge(vx, v));
            std::size_t nodes = 1;
            while (!g.graph.has_edge(v, y)) {
                ASSERT_EQ(g.graph.out(v).size(), 1u);
                v = *g.graph.out(v).begin();
                ++nodes;
            }
            EXPECT_EQ(nodes, 2 + k) << "chain " << k;
        }
    }
}

TEST(Encode, EmptyUniverseHas18Vertices) {
    const CodedGraph g = encode(FinStructure(Signature({{"R", 2}}), 0));
    EXPECT_EQ(g.graph.size(), 18u);
    EXPECT_EQ(simple_cycles(g.graph), (std::vector<std::size_t>{3, 5, 7}));
}

TEST(Encode, UnaryFactGadget) {
    FinStructure s(Signature({{"R", 1}}), 1);
    s.add_fact(0, {0});
    const CodedGraph g = encode(s);
    EXPECT_EQ(g.graph.size(), 21u);
    const std::size_t first = g.chain_vertex(0, {0}, 1, 0), y = g.junction(0, {0});
    EXPECT_TRUE(g.graph.has_edge(g.element_vertex(0), first));
    EXPECT_TRUE(g.graph.has_edge(first, y));
    EXPECT_TRUE(g.graph.has_edge(y, coding_layout::b));
}

TEST(Encode, SizeCyclesAndSpokes) {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const FinStructure s = random_structure(rng, random_signature(rng), uniform(rng, 0, 3));
        const CodedGraph g = encode(s);
        ASSERT_EQ(g.graph.size(), expected_vertices(s));
        ASSERT_EQ(simple_cycles(g.graph), (std::vector<std::size_t>{3, 5, 7}));
        for (std::size_t x = 0; x < s.size(); ++x) ASSERT_TRUE(g.graph.has_edge(coding_layout::a, g.element_vertex(x)));
        std::size_t a = 0, b = 0, c = 0;
        for (const auto& role : g.provenance) {
            a += role.kind == Role::Kind::A;
            b += role.kind == Role::Kind::B;
            c += role.kind == Role::Kind::C;
        }
        ASSERT_EQ(a + b + c, 3u);
        ASSERT_EQ(a * b * c, 1u);
    }
}

TEST(Encode, ProvenanceText) {
    const CodedGraph g = encode(figure_one());
    const std::string text = g.provenance_text();
    const std::size_t v = g.chain_vertex(0, {0, 1, 2}, 2, 1);
    EXPECT_NE(text.find("v " + std::to_string(v) + " role=ChainNode R 0,1,2 k=2 pos=1\n"), std::string::npos);
    EXPECT_NE(text.find("v 0 role=A\n"), std::string::npos);
}

TEST(Decode, RoundTrip) {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const FinStructure s = random_structure(rng, random_signature(rng), uniform(rng, 0, 4));
        const FinStructure back = decode(encode(s).graph, s.signature());
        ASSERT_TRUE(naive_isomorphic(s, back));
    }
}

TEST(Decode, AfterRandomRelabelling) {
    Rng rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const FinStructure s = random_structure(rng, random_signature(rng), uniform(rng, 0, 3));
        const DiGraph g = encode(s).graph;
        const DiGraph h = relabel(g, shuffled(rng, g.size()));
        ASSERT_TRUE(naive_isomorphic(s, decode(h, s.signature())));
    }
}

TEST(Decode, InfersOneRelationPerArity) {
    const FinStructure back = decode(encode(figure_one()).graph);
    ASSERT_EQ(back.signature().size(), 1u);
    EXPECT_EQ(back.signature()[0].arity, 3u);
    EXPECT_EQ(back.signature()[0].name, "R3");
    EXPECT_TRUE(naive_isomorphic(figure_one(), back));
}

TEST(Decode, MalformedInputs) {
    DiGraph g = encode(FinStructure(Signature({{"R", 1}}), 1)).graph;
    // A second 3-cycle.
    DiGraph two(g.size() + 3);
    for (auto [u, v] : g.edges()) two.add_edge(u, v);
    two.add_edge(g.size(), g.size() + 1);
    two.add_edge(g.size() + 1, g.size() + 2);
    two.add_edge(g.size() + 2, g.size());
    EXPECT_THROW(decode(two), MalformedCoding);
    // A missing junction edge.
    const CodedGraph coded = encode(figure_one());
    DiGraph broken(coded.graph.size());
    const std::size_t y = coded.junction(0, {0, 1, 2});
    for (auto [u, v] : coded.graph.edges())
        if (u != y) broken.add_edge(u, v);
    EXPECT_THROW(decode(broken), MalformedCoding);
    EXPECT_THROW(decode(DiGraph(5)), MalformedCoding);
}

TEST(CanonicalIso, Identity) {
    const FinStructure s = figure_one();
    EXPECT_EQ(canonical_iso(s).map(), Morphism::identity(3).map());
    EXPECT_EQ(canonical_iso(FinStructure(edge_signature(), 0)).source_size(), 0u);
}

TEST(CanonicalIso, FollowsTheEnumerationOrder) {
    Rng rng(44);
    for (int trial = 0; trial < 40; ++trial) {
        const FinStructure s = random_structure(rng, random_signature(rng), uniform(rng, 1, 3));
        const CodedGraph g = encode(s);
        const auto perm = shuffled(rng, g.graph.size());
        // Elements are enumerated in increasing order of their new vertex names.
        std::vector<std::size_t> order(s.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](auto x, auto y) { return perm[g.element_vertex(x)] < perm[g.element_vertex(y)]; });
        std::vector<std::size_t> expected(s.size());
        for (std::size_t rank = 0; rank < order.size(); ++rank) expected[order[rank]] = rank;
        const Morphism m = canonical_iso(s, perm);
        ASSERT_EQ(m.map(), expected);
        ASSERT_TRUE(is_isomorphism(m, s, decode(relabel(g.graph, perm), s.signature())));
    }
}

TEST(EncodeMorphism, IdentityAndExample) {
    const FinStructure s = figure_one();
    EXPECT_EQ(encode_morphism(Morphism::identity(3), s, s).map(), Morphism::identity(encode(s).graph.size()).map());

    FinStructure a(Signature({{"R", 1}}), 1), b(Signature({{"R", 1}}), 2);
    a.add_fact(0, {0});
    b.add_fact(0, {0});
    b.add_fact(0, {1});
    const Morphism h(1, 2, {1});
    const Morphism m = encode_morphism(h, a, b);
    const CodedGraph ga = encode(a), gb = encode(b);
    EXPECT_EQ(m(ga.element_vertex(0)), gb.element_vertex(1));
    EXPECT_EQ(m(ga.junction(0, {0})), gb.junction(0, {1}));
    EXPECT_TRUE(is_embedding(m, ga.graph, gb.graph));
}

TEST(EncodeMorphism, RejectsNonReflectingMaps) {
    FinStructure a(Signature({{"R", 1}}), 1), b(Signature({{"R", 1}}), 1);
    b.add_fact(0, {0});
    EXPECT_THROW(encode_morphism(Morphism(1, 1, {0}), a, b), NotAnEmbedding);
}

TEST(EncodeMorphism, ForwardTransferAndFunctoriality) {
    Rng rng(45);
    for (int trial = 0; trial < 40; ++trial) {
        const Signature sig = random_signature(rng);
        const FinStructure c = random_structure(rng, sig, uniform(rng, 0, 3));
        const auto bc = embedding_into(rng, c, uniform(rng, 0, c.size()));
        const auto ab = embedding_into(rng, bc.source, uniform(rng, 0, bc.source.size()));
        const Morphism f1 = encode_morphism(ab.map, ab.source, ab.target);
        const Morphism f2 = encode_morphism(bc.map, bc.source, bc.target);
        ASSERT_TRUE(is_embedding(f1, encode(ab.source).graph, encode(ab.target).graph));
        ASSERT_EQ(encode_morphism(compose(bc.map, ab.map), ab.source, c).map(), compose(f2, f1).map());
    }
}

TEST(LambdaGraph, IdentityAndPermuted) {
    const FinStructure s = figure_one();
    const DiGraph g = encode(s).graph;
    EXPECT_EQ(lambda_graph(g, s.signature()).map(), Morphism::identity(g.size()).map());

    Rng rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        const FinStructure t = random_structure(rng, random_signature(rng), uniform(rng, 0, 3));
        const CodedGraph coded = encode(t);
        const auto perm = shuffled(rng, coded.graph.size());
        const DiGraph h = relabel(coded.graph, perm);
        const Morphism l = lambda_graph(h, t.signature());
        const DiGraph target = encode(decode(h, t.signature())).graph;
        ASSERT_TRUE(is_isomorphism(l, h, target));
        // The hubs and cycles keep their roles.
        ASSERT_EQ(l(perm[coding_layout::a]), coding_layout::a);
        ASSERT_EQ(l(perm[coding_layout::b]), coding_layout::b);
        ASSERT_EQ(l(perm[coding_layout::cycle_vertex(7, 0)]), coding_layout::cycle_vertex(7, 0));
    }
    EXPECT_THROW(lambda_graph(DiGraph(3)), MalformedCoding);
}

TEST(DecodeMorphism, InvertsEncodeMorphism) {
    Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        const FinStructure b = random_structure(rng, random_signature(rng), uniform(rng, 0, 3));
        const auto inst = embedding_into(rng, b, uniform(rng, 0, b.size()));
        const Morphism m = encode_morphism(inst.map, inst.source, inst.target);
        const Morphism back =
            decode_morphism(m, encode(inst.source).graph, encode(inst.target).graph, b.signature());
        ASSERT_EQ(back.map(), inst.map.map());
    }
}

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "structcode/coding_g.hpp"
#include "structcode/corpus.hpp"
#include "structcode/search.hpp"

using namespace structcode;

namespace {

bool reflects(const FinStructure& a, const FinStructure& b, const std::vector<std::size_t>& m) {
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
        bool ok = true;
        for_each_tuple(a.size(), a.signature()[r].arity, [&](const Tuple& t) {
            Tuple u;
            for (auto x : t) u.push_back(m[x]);
            if (a.holds(r, t) != b.holds(r, u)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

// Every injective map, tested fact by fact.
std::set<std::vector<std::size_t>> naive_embeddings(const FinStructure& a, const FinStructure& b) {
    std::set<std::vector<std::size_t>> out;
    std::vector<std::size_t> m;
    std::vector<bool> used(b.size(), false);
    auto go = [&](auto&& self) -> void {
        if (m.size() == a.size()) {
            if (reflects(a, b, m)) out.insert(m);
            return;
        }
        for (std::size_t y = 0; y < b.size(); ++y) {
            if (used[y]) continue;
            used[y] = true;
            m.push_back(y);
            self(self);
            m.pop_back();
            used[y] = false;
        }
    };
    go(go);
    return out;
}

FinStructure complete_graph(std::size_t n) {
    FinStructure s(edge_signature(), n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v) s.add_fact(0, {u, v});
    return s;
}

}  // namespace

TEST(FindEmbedding, Examples) {
    const FinStructure k2 = complete_graph(2), k3 = complete_graph(3);
    const auto e = find_embedding(k2, k3);
    ASSERT_TRUE(e);
    EXPECT_TRUE(is_embedding(*e, k2, k3));
    EXPECT_FALSE(find_embedding(k3, k2));

    DiGraph path(2), cycle(3);
    path.add_edge(0, 1);
    for (std::size_t v = 0; v < 3; ++v) cycle.add_edge(v, (v + 1) % 3);
    const auto p = find_embedding(path, cycle);
    ASSERT_TRUE(p);
    EXPECT_TRUE(is_embedding(*p, path, cycle));
    // Reflection matters: the directed 2-path does not embed into K3.
    DiGraph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    EXPECT_FALSE(find_embedding(p3, to_graph(k3)));
}

TEST(FindEmbedding, AgreesWithNaiveEnumeration) {
    Rng rng(61);
    for (int trial = 0; trial < 300; ++trial) {
        const Signature sig = random_signature(rng, 2, 3);
        const FinStructure b = random_structure(rng, sig, uniform(rng, 0, 4));
        const FinStructure a = coin(rng) && b.size() > 0 ? embedding_into(rng, b, uniform(rng, 0, b.size())).source
                                                         : random_structure(rng, sig, uniform(rng, 0, 3));
        const auto naive = naive_embeddings(a, b);
        const auto found = find_embedding(a, b);
        ASSERT_EQ(found.has_value(), !naive.empty());
        if (found) {
            ASSERT_TRUE(naive.count(found->map()));
        }
        const auto all = enumerate_embeddings(a, b, 1000);
        ASSERT_FALSE(all.truncated);
        std::set<std::vector<std::size_t>> got;
        for (const auto& m : all.morphisms) got.insert(m.map());
        ASSERT_EQ(got, naive);
        ASSERT_EQ(all.morphisms.size(), naive.size());
    }
}

TEST(EnumerateEmbeddings, Counts) {
    EXPECT_EQ(enumerate_embeddings(complete_graph(1), complete_graph(2), 100).morphisms.size(), 2u);
    EXPECT_EQ(enumerate_embeddings(complete_graph(2), complete_graph(3), 100).morphisms.size(), 6u);
    EXPECT_EQ(enumerate_embeddings(complete_graph(0), complete_graph(3), 100).morphisms.size(), 1u);
    const auto capped = enumerate_embeddings(complete_graph(2), complete_graph(4), 5);
    EXPECT_TRUE(capped.truncated);
    EXPECT_EQ(capped.morphisms.size(), 5u);
}

TEST(FindIsomorphism, RecoversARelabelling) {
    Rng rng(62);
    for (int trial = 0; trial < 40; ++trial) {
        const FinStructure s = random_structure(rng, random_signature(rng), uniform(rng, 0, 6));
        const FinStructure t = relabel(s, random_permutation(rng, s.size()));
        const auto iso = find_isomorphism(s, t);
        ASSERT_TRUE(iso);
        ASSERT_TRUE(is_isomorphism(*iso, s, t));
    }
}

TEST(FindIsomorphism, PermutedCodes) {
    Rng rng(63);
    FinStructure s(Signature({{"R", 2}}), 3);
    s.add_fact(0, {0, 1});
    s.add_fact(0, {1, 2});
    const DiGraph g = encode(s).graph;
    const DiGraph h = relabel(g, random_permutation(rng, g.size()));
    const auto iso = find_isomorphism(g, h);
    ASSERT_TRUE(iso);
    EXPECT_TRUE(is_isomorphism(*iso, g, h));
    FinStructure t = s;
    t.add_fact(0, {2, 0});
    EXPECT_FALSE(find_isomorphism(g, encode(t).graph));
}

TEST(FindIsomorphism, DifferentSizesOrFacts) {
    EXPECT_FALSE(find_isomorphism(complete_graph(2), complete_graph(3)));
    FinStructure a(edge_signature(), 2), b(edge_signature(), 2);
    a.add_fact(0, {0, 1});
    b.add_fact(0, {0, 0});
    EXPECT_FALSE(find_isomorphism(a, b));
}

TEST(Search, BudgetIsEnforced) {
    SearchOptions opts;
    opts.budget = 3;
    EXPECT_THROW(enumerate_embeddings(FinStructure(edge_signature(), 4), FinStructure(edge_signature(), 6), 10000, opts),
                 BudgetExceeded);
}

TEST(Automorphisms, CompleteGraphHasFactorialMany) {
    EXPECT_EQ(automorphisms(complete_graph(4), 100).morphisms.size(), 24u);
    DiGraph cycle(5);
    for (std::size_t v = 0; v < 5; ++v) cycle.add_edge(v, (v + 1) % 5);
    EXPECT_EQ(automorphisms(to_structure(cycle), 100).morphisms.size(), 5u);
}

#pragma once

// Seeded random structures, graphs and embedding instances.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "structcode/core.hpp"

namespace structcode {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// One relation per arity, drawn from {1, 2, 3}; relations named R1, R2, R3 by arity.
inline Signature random_signature(Rng& rng, std::size_t max_relations = 3, std::size_t max_arity = 3) {
    std::vector<std::size_t> arities;
    for (std::size_t a = 1; a <= max_arity; ++a) arities.push_back(a);
    std::shuffle(arities.begin(), arities.end(), rng);
    arities.resize(uniform(rng, 1, std::min(max_relations, arities.size())));
    std::sort(arities.begin(), arities.end());
    std::vector<RelationSymbol> rels;
    for (auto a : arities) rels.push_back({"R" + std::to_string(a), a});
    return Signature(rels);
}

inline FinStructure random_structure(Rng& rng, const Signature& sig, std::size_t size, double density = 0.4) {
    FinStructure s(sig, size);
    for (std::size_t r = 0; r < sig.size(); ++r)
        for_each_tuple(size, sig[r].arity, [&](const Tuple& t) {
            if (coin(rng, density)) s.add_fact(r, t);
        });
    return s;
}

inline DiGraph random_graph(Rng& rng, std::size_t size, double density = 0.4, bool loops = false) {
    DiGraph g(size, loops);
    for (std::size_t u = 0; u < size; ++u)
        for (std::size_t v = 0; v < size; ++v)
            if ((u != v || loops) && coin(rng, density)) g.add_edge(u, v);
    return g;
}

// Substructure induced on `keep` (in that order); element i of the result is keep[i].
inline FinStructure induced(const FinStructure& s, const std::vector<std::size_t>& keep) {
    FinStructure out(s.signature(), keep.size());
    Tuple image;
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        image.resize(s.signature()[r].arity);
        for_each_tuple(keep.size(), image.size(), [&](const Tuple& t) {
            for (std::size_t i = 0; i < t.size(); ++i) image[i] = keep[t[i]];
            if (s.holds(r, image)) out.add_fact(r, t);
        });
    }
    return out;
}

inline DiGraph induced(const DiGraph& g, const std::vector<std::size_t>& keep) {
    DiGraph out(keep.size(), g.allows_loops());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (g.has_edge(keep[i], keep[j])) out.add_edge(i, j);
    return out;
}

// A random injective choice of k of the n points, in random order.
inline std::vector<std::size_t> random_subset(Rng& rng, std::size_t n, std::size_t k) {
    auto p = random_permutation(rng, n);
    p.resize(k);
    return p;
}

// (A, B, h) with A the substructure of B induced on a random subset and h the inclusion.
template <class T>
struct EmbeddingInstance {
    T source;
    T target;
    Morphism map;
};

template <class T>
EmbeddingInstance<T> embedding_into(Rng& rng, const T& target, std::size_t k) {
    auto keep = random_subset(rng, target.size(), k);
    T source = induced(target, keep);
    return {std::move(source), target, Morphism(k, target.size(), keep)};
}

// All one-binary-relation structures on n points, up to isomorphism, as
// adjacency bitmasks (bit u*n+v set iff E(u, v)); loops allowed.
inline std::vector<FinStructure> binary_structures_up_to_iso(std::size_t n) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t bits = n * n;
    std::vector<FinStructure> out;
    std::set<std::uint64_t> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        std::uint64_t canon = mask;
        for (const auto& q : perms) {
            std::uint64_t m = 0;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    if (mask >> (u * n + v) & 1) m |= std::uint64_t{1} << (q[u] * n + q[v]);
            canon = std::min(canon, m);
        }
        if (!seen.insert(canon).second) continue;
        FinStructure s(edge_signature(), n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (canon >> (u * n + v) & 1) s.add_fact(0, {u, v});
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace structcode

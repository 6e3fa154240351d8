#pragma once

// Lazily presented (possibly infinite) structures.
//
// An AtomOracle describes a structure whose universe is an initial segment of
// N (all of N when size() is empty) over a possibly infinite list of relation
// symbols, together with a total decider for atomic facts.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "structcode/core.hpp"

namespace structcode {

class AtomOracle {
public:
    using RelationAt = std::function<RelationSymbol(std::size_t)>;
    using Decider = std::function<bool(std::size_t relation, std::span<const std::size_t> elements)>;

    AtomOracle(RelationAt relation_at, std::optional<std::size_t> relation_count, std::optional<std::size_t> size,
               Decider decide)
        : relation_at_(std::move(relation_at)),
          relation_count_(relation_count),
          size_(size),
          decide_(std::move(decide)) {}

    // Relation symbols are numbered 0, 1, 2, ...; infinite when relation_count() is empty.
    RelationSymbol relation(std::size_t r) const {
        if (relation_count_ && r >= *relation_count_) throw std::out_of_range("relation index out of range");
        return relation_at_(r);
    }
    std::optional<std::size_t> relation_count() const { return relation_count_; }
    std::optional<std::size_t> size() const { return size_; }

    bool holds(std::size_t relation, std::span<const std::size_t> elements) const {
        return decide_(relation, elements);
    }
    bool holds(std::size_t relation, std::initializer_list<std::size_t> elements) const {
        return decide_(relation, std::span<const std::size_t>(elements.begin(), elements.size()));
    }

private:
    RelationAt relation_at_;
    std::optional<std::size_t> relation_count_;
    std::optional<std::size_t> size_;
    Decider decide_;
};

inline AtomOracle oracle_of(FinStructure s) {
    auto shared = std::make_shared<const FinStructure>(std::move(s));
    return AtomOracle([shared](std::size_t r) { return shared->signature()[r]; }, shared->signature().size(),
                      shared->size(),
                      [shared](std::size_t r, std::span<const std::size_t> xs) {
                          for (auto x : xs)
                              if (x >= shared->size()) return false;
                          return shared->holds(r, xs);
                      });
}

struct RestrictOptions {
    // Only relations with index below this bound are materialized; clamped to
    // the oracle's relation count when that is finite.
    std::size_t relation_bound = std::numeric_limits<std::size_t>::max();
    std::size_t query_budget = 50'000'000;
};

// Substructure on an explicit list of universe elements; element k of the
// result is elements[k].
inline FinStructure restrict_to(const AtomOracle& o, std::span<const std::size_t> elements,
                                const RestrictOptions& opts = {}) {
    std::size_t rels = opts.relation_bound;
    if (o.relation_count()) rels = std::min(rels, *o.relation_count());
    if (rels == std::numeric_limits<std::size_t>::max())
        throw std::invalid_argument("restrict: infinite signature needs an explicit relation bound");

    std::vector<RelationSymbol> symbols;
    for (std::size_t r = 0; r < rels; ++r) symbols.push_back(o.relation(r));
    FinStructure s(Signature(symbols), elements.size());

    std::size_t queries = 0;
    std::vector<std::size_t> args;
    for (std::size_t r = 0; r < rels; ++r) {
        args.resize(symbols[r].arity);
        for_each_tuple(elements.size(), symbols[r].arity, [&](const Tuple& t) {
            if (++queries > opts.query_budget) throw BudgetExceeded("restrict: oracle query budget exhausted");
            for (std::size_t i = 0; i < t.size(); ++i) args[i] = elements[t[i]];
            if (o.holds(r, args)) s.add_fact(r, t);
        });
    }
    return s;
}

// Substructure on the first n elements of the universe (fewer if it is finite).
inline FinStructure restrict(const AtomOracle& o, std::size_t n, const RestrictOptions& opts = {}) {
    if (o.size()) n = std::min(n, *o.size());
    std::vector<std::size_t> elements(n);
    for (std::size_t i = 0; i < n; ++i) elements[i] = i;
    return restrict_to(o, elements, opts);
}

// ---------------------------------------------------------------------------
// Atomic diagram
// ---------------------------------------------------------------------------
//
// Atomic sentence i is R_r(x_t1, ..., x_tk) with r = i mod |sig| and t the
// (i div |sig|)-th tuple of N^k, where tuples are ordered first by their
// largest entry and then lexicographically.

namespace detail {

// Successor in the max-then-lex order on N^k.
inline void next_graded_tuple(Tuple& t) {
    const std::size_t k = t.size();
    const std::size_t m = *std::max_element(t.begin(), t.end());
    // Next tuple over {0..m}^k in lex order that still contains m.
    Tuple u = t;
    while (true) {
        std::size_t pos = k;
        bool wrapped = true;
        while (pos > 0) {
            --pos;
            if (u[pos] < m) {
                ++u[pos];
                std::fill(u.begin() + static_cast<std::ptrdiff_t>(pos) + 1, u.end(), 0);
                wrapped = false;
                break;
            }
        }
        if (wrapped) break;
        if (std::find(u.begin(), u.end(), m) != u.end()) {
            t = u;
            return;
        }
    }
    // First tuple with maximum m+1.
    std::fill(t.begin(), t.end(), 0);
    t.back() = m + 1;
}

}  // namespace detail

inline std::vector<bool> atomic_diagram_prefix(const FinStructure& s, std::size_t n) {
    std::vector<bool> bits(n, false);
    const std::size_t rels = s.signature().size();
    if (rels == 0) return bits;
    std::vector<Tuple> cursor(rels);
    for (std::size_t r = 0; r < rels; ++r) cursor[r] = Tuple(s.signature()[r].arity, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = i % rels;
        Tuple& t = cursor[r];
        bool in_range = std::all_of(t.begin(), t.end(), [&](auto x) { return x < s.size(); });
        bits[i] = in_range && s.holds(r, t);
        detail::next_graded_tuple(t);
    }
    return bits;
}

}  // namespace structcode

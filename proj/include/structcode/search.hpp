#pragma once

// Backtracking search for embeddings and isomorphisms between finite
// structures. Variables are ordered so that each new element usually has an
// already-mapped neighbour, and its candidates are drawn from the neighbours
// of that neighbour's image.
// Pruning only discards candidates that cannot extend to a solution.

#include <functional>
#include <map>
#include <tuple>
#include <optional>
#include <vector>

#include "structcode/core.hpp"

namespace structcode {

enum class MapKind {
    embedding,     // injective, preserves and reflects every relation
    homomorphism,  // preserves facts only; exploratory
};

struct SearchOptions {
    std::size_t budget = 10'000'000;  // search-tree nodes
    MapKind kind = MapKind::embedding;
};

struct EnumerationResult {
    std::vector<Morphism> morphisms;
    bool truncated = false;  // cap reached before the search finished
};

namespace detail {

struct FactRef {
    std::size_t relation;
    const Tuple* tuple;
};

struct Indexed {
    explicit Indexed(const FinStructure& s) : s(s), facts_of(s.size()), neighbours(s.size()) {
        const std::size_t rels = s.signature().size();
        std::size_t max_arity = 0;
        for (const auto& r : s.signature().relations()) max_arity = std::max(max_arity, r.arity);
        profile.assign(s.size(), std::vector<std::size_t>(rels * max_arity, 0));
        stride = max_arity;
        std::vector<std::set<std::size_t>> nb(s.size());
        for (std::size_t r = 0; r < rels; ++r)
            for (const auto& t : s.facts(r)) {
                for (std::size_t p = 0; p < t.size(); ++p) {
                    const auto x = t[p];
                    ++profile[x][r * stride + p];
                    if (std::find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(p), x) ==
                        t.begin() + static_cast<std::ptrdiff_t>(p))
                        facts_of[x].push_back({r, &t});
                    for (auto z : t)
                        if (z != x) nb[x].insert(z);
                }
            }
        for (std::size_t x = 0; x < s.size(); ++x) neighbours[x].assign(nb[x].begin(), nb[x].end());
    }

    const FinStructure& s;
    std::vector<std::vector<FactRef>> facts_of;
    std::vector<std::vector<std::size_t>> neighbours;
    std::vector<std::vector<std::size_t>> profile;
    std::size_t stride = 0;
};

class Backtracker {
public:
    Backtracker(const FinStructure& a, const FinStructure& b, bool bijective, const SearchOptions& opts)
        : A_(a), B_(b), bijective_(bijective), opts_(opts) {
        if (!(a.signature() == b.signature())) throw InvalidStructure("search: signatures differ");
        map_.assign(a.size(), Morphism::unmapped);
        pre_.assign(b.size(), Morphism::unmapped);
        if (bijective_) refine_colours();
        order_variables();
    }

    using Visit = std::function<bool(const std::vector<std::size_t>&)>;

    // Visits solutions in deterministic order; stops when visit returns false.
    void run(const Visit& visit) {
        if (bijective_) {
            if (A_.s.size() != B_.s.size()) return;
            for (std::size_t r = 0; r < A_.s.signature().size(); ++r)
                if (A_.s.facts(r).size() != B_.s.facts(r).size()) return;
        }
        if (injective() && A_.s.size() > B_.s.size()) return;
        visit_ = &visit;
        stop_ = false;
        extend(0);
    }

private:
    bool injective() const { return opts_.kind == MapKind::embedding; }

    // Greedy connectivity order: the root is the element with the fewest
    // compatible targets; each next element has the most already-ordered
    // neighbours, preferring neighbours of recently ordered elements.
    void order_variables() {
        const std::size_t n = A_.s.size();
        std::vector<bool> placed(n, false);
        std::vector<std::size_t> conn(n, 0), recent(n, 0);
        parent_.assign(n, Morphism::unmapped);
        std::vector<std::size_t> root_score(n, 0);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < B_.s.size(); ++y) root_score[x] += profile_ok(x, y);
        while (order_.size() < n) {
            std::size_t best = Morphism::unmapped;
            for (std::size_t x = 0; x < n; ++x) {
                if (placed[x] || conn[x] == 0) continue;
                if (best == Morphism::unmapped ||
                    std::tie(conn[x], recent[x]) > std::tie(conn[best], recent[best]) ||
                    (std::tie(conn[x], recent[x]) == std::tie(conn[best], recent[best]) &&
                     A_.neighbours[x].size() > A_.neighbours[best].size()))
                    best = x;
            }
            if (best == Morphism::unmapped) {
                std::size_t best_count = 0;
                for (std::size_t x = 0; x < n; ++x) {
                    if (placed[x]) continue;
                    const std::size_t c = root_score[x];
                    if (best == Morphism::unmapped || c < best_count ||
                        (c == best_count && A_.neighbours[x].size() > A_.neighbours[best].size())) {
                        best = x;
                        best_count = c;
                    }
                }
            } else {
                std::size_t latest = 0;
                for (std::size_t i = 0; i < order_.size(); ++i)
                    if (std::binary_search(A_.neighbours[best].begin(), A_.neighbours[best].end(), order_[i]))
                        latest = i + 1;
                parent_[best] = order_[latest - 1];
            }
            placed[best] = true;
            order_.push_back(best);
            for (auto z : A_.neighbours[best]) {
                ++conn[z];
                recent[z] = order_.size();
            }
        }
    }

    // Joint colour refinement of A and B; isomorphisms preserve the stable colours.
    void refine_colours() {
        const FinStructure* side[2] = {&A_.s, &B_.s};
        std::vector<std::size_t> col[2];
        std::map<std::vector<std::size_t>, std::size_t> names;
        for (int k = 0; k < 2; ++k) {
            const Indexed& ix = k == 0 ? A_ : B_;
            col[k].resize(side[k]->size());
            for (std::size_t x = 0; x < col[k].size(); ++x)
                col[k][x] = names.emplace(ix.profile[x], names.size()).first->second;
        }
        std::size_t classes = names.size();
        for (std::size_t round = 0; round <= A_.s.size(); ++round) {
            std::map<std::vector<std::size_t>, std::size_t> next_names;
            std::vector<std::size_t> next[2];
            for (int k = 0; k < 2; ++k) {
                const Indexed& ix = k == 0 ? A_ : B_;
                next[k].resize(col[k].size());
                for (std::size_t x = 0; x < col[k].size(); ++x) {
                    std::vector<std::vector<std::size_t>> items;
                    for (const auto& f : ix.facts_of[x]) {
                        std::vector<std::size_t> item{f.relation};
                        for (std::size_t p = 0; p < f.tuple->size(); ++p) {
                            const auto z = (*f.tuple)[p];
                            item.push_back(z == x ? Morphism::unmapped : col[k][z]);
                        }
                        items.push_back(std::move(item));
                    }
                    std::sort(items.begin(), items.end());
                    std::vector<std::size_t> key{col[k][x]};
                    for (const auto& it : items) {
                        key.push_back(it.size());
                        key.insert(key.end(), it.begin(), it.end());
                    }
                    next[k][x] = next_names.emplace(std::move(key), next_names.size()).first->second;
                }
            }
            col[0] = std::move(next[0]);
            col[1] = std::move(next[1]);
            if (next_names.size() == classes) break;
            classes = next_names.size();
        }
        colour_a_ = std::move(col[0]);
        colour_b_ = std::move(col[1]);
    }

    bool profile_ok(std::size_t x, std::size_t y) const {
        if (!injective()) return true;
        if (bijective_ && colour_a_[x] != colour_b_[y]) return false;
        const auto& px = A_.profile[x];
        const auto& py = B_.profile[y];
        for (std::size_t i = 0; i < px.size(); ++i) {
            if (bijective_ ? px[i] != py[i] : px[i] > py[i]) return false;
        }
        return true;
    }

    bool consistent(std::size_t x, std::size_t y) const {
        Tuple image;
        for (const auto& f : A_.facts_of[x]) {
            image.resize(f.tuple->size());
            bool complete = true;
            for (std::size_t i = 0; i < image.size(); ++i) {
                auto z = (*f.tuple)[i];
                image[i] = z == x ? y : map_[z];
                if (image[i] == Morphism::unmapped) {
                    complete = false;
                    break;
                }
            }
            if (complete && !B_.s.holds(f.relation, image)) return false;
        }
        if (opts_.kind == MapKind::homomorphism) return true;
        Tuple preimage;
        for (const auto& f : B_.facts_of[y]) {
            preimage.resize(f.tuple->size());
            bool complete = true;
            for (std::size_t i = 0; i < preimage.size(); ++i) {
                auto w = (*f.tuple)[i];
                preimage[i] = w == y ? x : pre_[w];
                if (preimage[i] == Morphism::unmapped) {
                    complete = false;
                    break;
                }
            }
            if (complete && !A_.s.holds(f.relation, preimage)) return false;
        }
        return true;
    }

    void extend(std::size_t depth) {
        if (stop_) return;
        if (++nodes_ > opts_.budget) throw BudgetExceeded("search: node budget exhausted");
        if (depth == order_.size()) {
            if (!(*visit_)(map_)) stop_ = true;
            return;
        }
        const std::size_t x = order_[depth];
        auto try_candidate = [&](std::size_t y) {
            if (injective() && pre_[y] != Morphism::unmapped) return;
            if (!profile_ok(x, y) || !consistent(x, y)) return;
            map_[x] = y;
            std::size_t saved = pre_[y];
            if (injective()) pre_[y] = x;
            extend(depth + 1);
            map_[x] = Morphism::unmapped;
            if (injective()) pre_[y] = saved;
        };
        if (parent_[x] != Morphism::unmapped) {
            for (auto y : B_.neighbours[map_[parent_[x]]]) {
                try_candidate(y);
                if (stop_) return;
            }
            // Non-injective maps may also collapse x onto its parent's image.
            if (!injective()) try_candidate(map_[parent_[x]]);
        } else {
            for (std::size_t y = 0; y < B_.s.size(); ++y) {
                try_candidate(y);
                if (stop_) return;
            }
        }
    }

private:
    Indexed A_;
    Indexed B_;
    bool bijective_;
    SearchOptions opts_;
    std::vector<std::size_t> colour_a_, colour_b_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> map_;
    std::vector<std::size_t> pre_;
    const Visit* visit_ = nullptr;
    std::size_t nodes_ = 0;
    bool stop_ = false;
};

}  // namespace detail

inline std::optional<Morphism> find_embedding(const FinStructure& source, const FinStructure& target,
                                              const SearchOptions& opts = {}) {
    if (opts.kind != MapKind::embedding) throw std::invalid_argument("find_embedding: use find_homomorphism");
    std::optional<Morphism> found;
    detail::Backtracker bt(source, target, false, opts);
    bt.run([&](const std::vector<std::size_t>& m) {
        found = Morphism(source.size(), target.size(), m);
        return false;
    });
    return found;
}

inline std::optional<Morphism> find_isomorphism(const FinStructure& a, const FinStructure& b,
                                                const SearchOptions& opts = {}) {
    std::optional<Morphism> found;
    SearchOptions o = opts;
    o.kind = MapKind::embedding;
    detail::Backtracker bt(a, b, true, o);
    bt.run([&](const std::vector<std::size_t>& m) {
        found = Morphism(a.size(), b.size(), m);
        return false;
    });
    return found;
}

// Weak homomorphism search (preserves facts, need not be injective or reflect).
inline std::optional<std::vector<std::size_t>> find_homomorphism(const FinStructure& source,
                                                                 const FinStructure& target,
                                                                 const SearchOptions& opts = {}) {
    SearchOptions o = opts;
    o.kind = MapKind::homomorphism;
    std::optional<std::vector<std::size_t>> found;
    detail::Backtracker bt(source, target, false, o);
    bt.run([&](const std::vector<std::size_t>& m) {
        found = m;
        return false;
    });
    return found;
}

inline EnumerationResult enumerate_embeddings(const FinStructure& a, const FinStructure& b, std::size_t cap,
                                              const SearchOptions& opts = {}) {
    EnumerationResult out;
    SearchOptions o = opts;
    o.kind = MapKind::embedding;
    detail::Backtracker bt(a, b, false, o);
    bt.run([&](const std::vector<std::size_t>& m) {
        if (out.morphisms.size() == cap) {
            out.truncated = true;
            return false;
        }
        out.morphisms.emplace_back(a.size(), b.size(), m);
        return true;
    });
    return out;
}

inline EnumerationResult automorphisms(const FinStructure& a, std::size_t cap, const SearchOptions& opts = {}) {
    EnumerationResult out;
    detail::Backtracker bt(a, a, true, opts);
    bt.run([&](const std::vector<std::size_t>& m) {
        if (out.morphisms.size() == cap) {
            out.truncated = true;
            return false;
        }
        out.morphisms.emplace_back(a.size(), a.size(), m);
        return true;
    });
    return out;
}

inline std::optional<Morphism> find_embedding(const DiGraph& source, const DiGraph& target,
                                              const SearchOptions& opts = {}) {
    return find_embedding(to_structure(source), to_structure(target), opts);
}

inline std::optional<Morphism> find_isomorphism(const DiGraph& a, const DiGraph& b, const SearchOptions& opts = {}) {
    return find_isomorphism(to_structure(a), to_structure(b), opts);
}

inline EnumerationResult enumerate_embeddings(const DiGraph& a, const DiGraph& b, std::size_t cap,
                                              const SearchOptions& opts = {}) {
    return enumerate_embeddings(to_structure(a), to_structure(b), cap, opts);
}

}  // namespace structcode

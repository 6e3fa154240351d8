#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace structcode {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct InvalidStructure : Error {
    using Error::Error;
};

// A search, game or oracle scan ran past its configured cap.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct MalformedCoding : Error {
    using Error::Error;
};

struct NotAnEmbedding : Error {
    using Error::Error;
};

struct ContradictoryEvidence : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Pairing and string indexing
// ---------------------------------------------------------------------------

using Natural = std::uint64_t;

constexpr Natural cantor_pair(Natural m, Natural n) {
    return (m + n) * (m + n + 1) / 2 + n;
}

inline std::pair<Natural, Natural> cantor_unpair(Natural z) {
    // w = floor((sqrt(8z+1)-1)/2), corrected for floating point error.
    auto w = static_cast<Natural>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
    while (w * (w + 1) / 2 > z) --w;
    while ((w + 1) * (w + 2) / 2 <= z) ++w;
    const Natural n = z - w * (w + 1) / 2;
    return {w - n, n};
}

// Finite binary strings are stored as text over {'0','1'}.
using BitString = std::string;

// Length-lexicographic bijection N -> {0,1}^<N: k+1 in binary with the
// leading 1 dropped. 0 -> "", 1 -> "0", 2 -> "1", 3 -> "00", ...
inline BitString enum_string(Natural k) {
    BitString out;
    Natural v = k + 1;
    while (v > 1) {
        out.push_back(static_cast<char>('0' + (v & 1)));
        v >>= 1;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

inline Natural string_index(const BitString& s) {
    if (s.size() >= 63) throw std::out_of_range("string_index: string too long");
    Natural v = 1;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("string_index: not a bit string");
        v = (v << 1) | static_cast<Natural>(c - '0');
    }
    return v - 1;
}

// Number of strings of length <= L, i.e. the index bound of enum_string for that length.
constexpr Natural strings_up_to_length(std::size_t L) {
    return (Natural{1} << (L + 1)) - 1;
}

// ---------------------------------------------------------------------------
// Signatures and structures
// ---------------------------------------------------------------------------

struct RelationSymbol {
    std::string name;
    std::size_t arity = 1;

    friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            const auto& r = relations_[i];
            if (r.name.empty()) throw InvalidStructure("relation with empty name");
            if (r.arity == 0) throw InvalidStructure("relation " + r.name + " has arity 0");
            if (!index_.emplace(r.name, i).second) throw InvalidStructure("duplicate relation " + r.name);
        }
    }

    std::size_t size() const { return relations_.size(); }
    bool empty() const { return relations_.empty(); }
    const RelationSymbol& operator[](std::size_t i) const { return relations_.at(i); }
    const std::vector<RelationSymbol>& relations() const { return relations_; }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const Signature& other) const { return relations_ == other.relations_; }

private:
    std::vector<RelationSymbol> relations_;
    std::map<std::string, std::size_t> index_;
};

using Tuple = std::vector<std::size_t>;

// Finite relational structure with universe {0, ..., size-1}.
class FinStructure {
public:
    FinStructure() = default;
    FinStructure(Signature sig, std::size_t size) : sig_(std::move(sig)), size_(size), facts_(sig_.size()) {
        dense_.resize(sig_.size());
        for (std::size_t r = 0; r < sig_.size(); ++r) {
            std::size_t cells = 1;
            bool small = true;
            for (std::size_t i = 0; i < sig_[r].arity && small; ++i) {
                if (size_ != 0 && cells > dense_limit / size_) small = false;
                cells *= size_;
            }
            if (small) dense_[r].assign(cells, false);
        }
    }

    const Signature& signature() const { return sig_; }
    std::size_t size() const { return size_; }

    void add_fact(std::size_t relation, Tuple tuple) {
        check_tuple(relation, tuple);
        if (!dense_[relation].empty()) dense_[relation][cell(tuple)] = true;
        facts_[relation].insert(std::move(tuple));
    }

    void add_fact(const std::string& relation, Tuple tuple) {
        auto r = sig_.find(relation);
        if (!r) throw InvalidStructure("unknown relation " + relation);
        add_fact(*r, std::move(tuple));
    }

    // Expects tuple entries < size().
    bool holds(std::size_t relation, std::span<const std::size_t> tuple) const {
        if (!dense_.at(relation).empty()) return dense_[relation][cell(tuple)];
        const auto& set = facts_[relation];
        return set.find(Tuple(tuple.begin(), tuple.end())) != set.end();
    }

    bool holds(std::size_t relation, const Tuple& tuple) const {
        return holds(relation, std::span<const std::size_t>(tuple.data(), tuple.size()));
    }

    const std::set<Tuple>& facts(std::size_t relation) const { return facts_.at(relation); }

    std::size_t fact_count() const {
        std::size_t n = 0;
        for (const auto& f : facts_) n += f.size();
        return n;
    }

    bool operator==(const FinStructure& other) const = default;

private:
    static constexpr std::size_t dense_limit = std::size_t{1} << 22;

    std::size_t cell(std::span<const std::size_t> tuple) const {
        std::size_t c = 0;
        for (auto x : tuple) c = c * size_ + x;
        return c;
    }

    void check_tuple(std::size_t relation, const Tuple& tuple) const {
        if (relation >= sig_.size()) throw InvalidStructure("relation index out of range");
        if (tuple.size() != sig_[relation].arity)
            throw InvalidStructure("arity mismatch for " + sig_[relation].name + ": expected " +
                                   std::to_string(sig_[relation].arity) + ", got " + std::to_string(tuple.size()));
        for (auto x : tuple)
            if (x >= size_) throw InvalidStructure("element " + std::to_string(x) + " out of range");
    }

    Signature sig_;
    std::size_t size_ = 0;
    std::vector<std::set<Tuple>> facts_;
    std::vector<std::vector<bool>> dense_;  // membership bitmap when size^arity is small
};

// Calls fn(tuple) for every tuple in {0..n-1}^arity in lexicographic order.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t arity, Fn&& fn) {
    if (arity == 0) {
        fn(Tuple{});
        return;
    }
    if (n == 0) return;
    Tuple t(arity, 0);
    while (true) {
        fn(static_cast<const Tuple&>(t));
        std::size_t pos = arity;
        while (pos > 0) {
            --pos;
            if (++t[pos] < n) break;
            t[pos] = 0;
            if (pos == 0) return;
        }
    }
}

// ---------------------------------------------------------------------------
// Directed graphs
// ---------------------------------------------------------------------------

class DiGraph {
public:
    DiGraph() = default;
    explicit DiGraph(std::size_t size, bool allow_loops = false)
        : size_(size), allow_loops_(allow_loops), out_(size), in_(size) {}

    std::size_t size() const { return size_; }
    bool allows_loops() const { return allow_loops_; }

    void add_edge(std::size_t u, std::size_t v) {
        if (u >= size_ || v >= size_) throw InvalidStructure("edge endpoint out of range");
        if (u == v && !allow_loops_) throw InvalidStructure("self-loop on vertex " + std::to_string(u));
        if (edges_.emplace(u, v).second) {
            out_[u].insert(v);
            in_[v].insert(u);
        }
    }

    bool has_edge(std::size_t u, std::size_t v) const { return edges_.count({u, v}) != 0; }
    const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    const std::set<std::size_t>& out(std::size_t u) const { return out_.at(u); }
    const std::set<std::size_t>& in(std::size_t u) const { return in_.at(u); }

    bool operator==(const DiGraph& other) const { return size_ == other.size_ && edges_ == other.edges_; }

private:
    std::size_t size_ = 0;
    bool allow_loops_ = false;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::set<std::size_t>> out_;
    std::vector<std::set<std::size_t>> in_;
};

inline const Signature& edge_signature() {
    static const Signature sig({{"E", 2}});
    return sig;
}

inline FinStructure to_structure(const DiGraph& g) {
    FinStructure s(edge_signature(), g.size());
    for (auto [u, v] : g.edges()) s.add_fact(0, {u, v});
    return s;
}

inline DiGraph to_graph(const FinStructure& s) {
    if (s.signature().size() != 1 || s.signature()[0].arity != 2)
        throw InvalidStructure("to_graph: structure must have exactly one binary relation");
    bool loops = false;
    for (const auto& t : s.facts(0)) loops = loops || t[0] == t[1];
    DiGraph g(s.size(), loops);
    for (const auto& t : s.facts(0)) g.add_edge(t[0], t[1]);
    return g;
}

// Returns the graph with vertex v renamed to perm[v].
inline DiGraph relabel(const DiGraph& g, std::span<const std::size_t> perm) {
    if (perm.size() != g.size()) throw std::invalid_argument("relabel: permutation size mismatch");
    DiGraph out(g.size(), g.allows_loops());
    for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
    return out;
}

inline FinStructure relabel(const FinStructure& s, std::span<const std::size_t> perm) {
    if (perm.size() != s.size()) throw std::invalid_argument("relabel: permutation size mismatch");
    FinStructure out(s.signature(), s.size());
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.facts(r)) {
            Tuple u(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i]];
            out.add_fact(r, std::move(u));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

// Injective (partial or total) map between element indices.
class Morphism {
public:
    static constexpr std::size_t unmapped = std::numeric_limits<std::size_t>::max();

    Morphism() = default;
    Morphism(std::size_t source_size, std::size_t target_size, std::vector<std::size_t> map)
        : source_size_(source_size), target_size_(target_size), map_(std::move(map)) {
        if (map_.size() != source_size_) throw std::invalid_argument("Morphism: map size differs from source size");
        std::vector<bool> hit(target_size_, false);
        for (auto y : map_) {
            if (y == unmapped) continue;
            if (y >= target_size_) throw std::invalid_argument("Morphism: image out of range");
            if (hit[y]) throw NotAnEmbedding("Morphism: map is not injective");
            hit[y] = true;
        }
    }

    static Morphism identity(std::size_t n) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = i;
        return Morphism(n, n, std::move(m));
    }

    std::size_t source_size() const { return source_size_; }
    std::size_t target_size() const { return target_size_; }
    const std::vector<std::size_t>& map() const { return map_; }
    std::size_t operator()(std::size_t x) const { return map_.at(x); }
    bool defined(std::size_t x) const { return x < map_.size() && map_[x] != unmapped; }

    bool total() const {
        return std::none_of(map_.begin(), map_.end(), [](auto y) { return y == unmapped; });
    }

    bool bijective() const { return total() && source_size_ == target_size_; }

    Morphism inverse() const {
        std::vector<std::size_t> inv(target_size_, unmapped);
        for (std::size_t x = 0; x < map_.size(); ++x)
            if (map_[x] != unmapped) inv[map_[x]] = x;
        return Morphism(target_size_, source_size_, std::move(inv));
    }

    bool operator==(const Morphism&) const = default;

private:
    std::size_t source_size_ = 0;
    std::size_t target_size_ = 0;
    std::vector<std::size_t> map_;
};

// second ∘ first
inline Morphism compose(const Morphism& second, const Morphism& first) {
    if (first.target_size() != second.source_size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<std::size_t> m(first.source_size(), Morphism::unmapped);
    for (std::size_t x = 0; x < m.size(); ++x)
        if (first.defined(x)) m[x] = second.map()[first(x)];
    return Morphism(first.source_size(), second.target_size(), std::move(m));
}

// Independent full-enumeration check: m is total, injective, and preserves and
// reflects every relation of the shared signature.
inline bool is_embedding(const Morphism& m, const FinStructure& a, const FinStructure& b) {
    if (!(a.signature() == b.signature())) return false;
    if (m.source_size() != a.size() || m.target_size() != b.size() || !m.total()) return false;
    std::vector<bool> hit(b.size(), false);
    for (auto y : m.map()) {
        if (hit[y]) return false;
        hit[y] = true;
    }
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
        bool ok = true;
        Tuple image(a.signature()[r].arity);
        for_each_tuple(a.size(), a.signature()[r].arity, [&](const Tuple& t) {
            if (!ok) return;
            for (std::size_t i = 0; i < t.size(); ++i) image[i] = m(t[i]);
            if (a.holds(r, t) != b.holds(r, image)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

inline bool is_isomorphism(const Morphism& m, const FinStructure& a, const FinStructure& b) {
    return a.size() == b.size() && is_embedding(m, a, b);
}

// Edge-list check for graphs: total, injective, every edge maps to an edge and
// every edge between image vertices has a preimage edge.
inline bool is_embedding(const Morphism& m, const DiGraph& a, const DiGraph& b) {
    if (m.source_size() != a.size() || m.target_size() != b.size() || !m.total()) return false;
    std::vector<std::size_t> pre(b.size(), Morphism::unmapped);
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (pre[m(x)] != Morphism::unmapped) return false;
        pre[m(x)] = x;
    }
    for (auto [u, v] : a.edges())
        if (!b.has_edge(m(u), m(v))) return false;
    for (auto [u, v] : b.edges())
        if (pre[u] != Morphism::unmapped && pre[v] != Morphism::unmapped && !a.has_edge(pre[u], pre[v])) return false;
    return true;
}

inline bool is_isomorphism(const Morphism& m, const DiGraph& a, const DiGraph& b) {
    return a.size() == b.size() && is_embedding(m, a, b);
}

}  // namespace structcode

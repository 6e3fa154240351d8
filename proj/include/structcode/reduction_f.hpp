#pragma once

// Graphs to structures in the language {W, N, O, R_nu, gF_nu}.
//
// The universe N is split into parts A_i = { cantor_pair(i, k) : k in N }.
// A_0 holds the vertices (vertex i is cantor_pair(0, i)); the block of the
// ordered pair (m, n) is A_{cantor_pair(m,n)+1} and carries a copy of S_0 when
// m -> n is an edge and of S_1 otherwise, its k-th element being the k-th
// element of that copy.

#include <functional>
#include <optional>
#include <vector>

#include "structcode/core.hpp"
#include "structcode/oracle.hpp"
#include "structcode/shelah.hpp"

namespace structcode {

using EdgeOracle = std::function<bool(Natural, Natural)>;

// A finite graph viewed as a graph on N whose vertices >= size are isolated.
inline EdgeOracle edge_oracle(const DiGraph& g) {
    auto shared = std::make_shared<const DiGraph>(g);
    return [shared](Natural m, Natural n) { return m < shared->size() && n < shared->size() && shared->has_edge(m, n); };
}

// ---------------------------------------------------------------------------
// Language layout
// ---------------------------------------------------------------------------

namespace c_lang {

inline constexpr std::size_t W = 0;
inline constexpr std::size_t N = 1;
inline constexpr std::size_t O = 2;

inline std::size_t R(const Nu& nu) { return 3 + 2 * static_cast<std::size_t>(string_index(nu.bits)); }
inline std::size_t gF(const Nu& nu) { return 4 + 2 * static_cast<std::size_t>(string_index(nu.bits)); }

inline RelationSymbol relation(std::size_t r) {
    switch (r) {
        case W: return {"W", 1};
        case N: return {"N", 2};
        case O: return {"O", 3};
        default: break;
    }
    Nu nu(enum_string((r - 3) / 2));
    return (r - 3) % 2 == 0 ? RelationSymbol{relation_name_R(nu), 1} : RelationSymbol{relation_name_gF(nu), 2};
}

// Relations W, N, O and R_nu, gF_nu for |nu| <= nu_bound.
inline std::size_t relation_bound(std::size_t nu_bound) {
    return 3 + 2 * static_cast<std::size_t>(strings_up_to_length(nu_bound));
}

}  // namespace c_lang

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

struct BlockPos {
    Natural m;
    Natural n;
    Natural k;  // index within the block
    friend bool operator==(const BlockPos&, const BlockPos&) = default;
};

class CPoint {
public:
    explicit CPoint(Natural code) : code_(code) {
        auto [part, k] = cantor_unpair(code);
        if (part == 0) {
            vertex_ = k;
        } else {
            auto [m, n] = cantor_unpair(part - 1);
            block_ = BlockPos{m, n, k};
        }
    }

    static CPoint vertex(Natural i) { return CPoint(cantor_pair(0, i)); }
    static CPoint in_block(Natural m, Natural n, Natural k) { return CPoint(cantor_pair(cantor_pair(m, n) + 1, k)); }

    Natural code() const { return code_; }
    const std::optional<Natural>& vertex_index() const { return vertex_; }
    const std::optional<BlockPos>& block() const { return block_; }

private:
    Natural code_;
    std::optional<Natural> vertex_;
    std::optional<BlockPos> block_;
};

enum class BlockType { S0, S1, Unknown };

inline const char* to_string(BlockType t) {
    switch (t) {
        case BlockType::S0: return "S0";
        case BlockType::S1: return "S1";
        default: return "Unknown";
    }
}

inline BlockType block_type(const EdgeOracle& edge, Natural m, Natural n) {
    return edge(m, n) ? BlockType::S0 : BlockType::S1;
}

// ---------------------------------------------------------------------------
// The reduction
// ---------------------------------------------------------------------------

inline bool decide_f(const EdgeOracle& edge, std::size_t r, std::span<const std::size_t> xs) {
    switch (r) {
        case c_lang::W: return CPoint(xs[0]).vertex_index().has_value();
        case c_lang::N: {
            CPoint a(xs[0]), y(xs[1]);
            return a.vertex_index() && y.block() && y.block()->m == *a.vertex_index();
        }
        case c_lang::O: {
            CPoint a(xs[0]), b(xs[1]), z(xs[2]);
            return a.vertex_index() && b.vertex_index() && z.block() && z.block()->m == *a.vertex_index() &&
                   z.block()->n == *b.vertex_index();
        }
        default: break;
    }
    const Nu nu(enum_string((r - 3) / 2));
    CPoint x(xs[0]);
    if (!x.block()) return false;
    const bool tail = !edge(x.block()->m, x.block()->n);
    const SElem ex = shelah_element(tail, x.block()->k);
    if ((r - 3) % 2 == 0) return holds_R(nu, ex);
    CPoint y(xs[1]);
    if (!y.block() || y.block()->m != x.block()->m || y.block()->n != x.block()->n) return false;
    return holds_graphF(nu, ex, shelah_element(tail, y.block()->k));
}

inline AtomOracle build_f(EdgeOracle edge) {
    return AtomOracle(c_lang::relation, std::nullopt, std::nullopt,
                      [edge = std::move(edge)](std::size_t r, std::span<const std::size_t> xs) {
                          return decide_f(edge, r, xs);
                      });
}

inline AtomOracle build_f(const DiGraph& g) { return build_f(edge_oracle(g)); }

inline RestrictOptions nu_bounded(std::size_t nu_bound) {
    RestrictOptions opts;
    opts.relation_bound = c_lang::relation_bound(nu_bound);
    return opts;
}

// Treats a finite structure over (a subset of) the language as a C-language oracle.
inline AtomOracle c_oracle(FinStructure s) {
    auto shared = std::make_shared<const FinStructure>(std::move(s));
    auto lookup = std::make_shared<std::map<std::size_t, std::size_t>>();
    for (std::size_t i = 0; i < shared->signature().size(); ++i) {
        const auto& sym = shared->signature()[i];
        std::optional<std::size_t> r;
        if (sym.name == "W") r = c_lang::W;
        else if (sym.name == "N") r = c_lang::N;
        else if (sym.name == "O") r = c_lang::O;
        else if (sym.name.rfind("R_", 0) == 0) r = c_lang::R(Nu(sym.name.substr(2)));
        else if (sym.name.rfind("gF_", 0) == 0) r = c_lang::gF(Nu(sym.name.substr(3)));
        if (!r || !(c_lang::relation(*r) == sym))
            throw InvalidStructure("relation " + sym.name + "/" + std::to_string(sym.arity) + " is not in the W/N/O/R/gF language");
        (*lookup)[*r] = i;
    }
    return AtomOracle(c_lang::relation, std::nullopt, shared->size(),
                      [shared, lookup](std::size_t r, std::span<const std::size_t> xs) {
                          auto it = lookup->find(r);
                          if (it == lookup->end()) return false;
                          for (auto x : xs)
                              if (x >= shared->size()) return false;
                          return shared->holds(it->second, xs);
                      });
}

// Points of f(G) over the vertices below V and the first K members of each
// block (m, n) with m, n < V: vertices first, then blocks in lex order.
inline std::vector<Natural> block_points(std::size_t V, std::size_t K) {
    std::vector<Natural> out;
    for (Natural i = 0; i < V; ++i) out.push_back(CPoint::vertex(i).code());
    for (Natural m = 0; m < V; ++m)
        for (Natural n = 0; n < V; ++n)
            for (Natural k = 0; k < K; ++k) out.push_back(CPoint::in_block(m, n, k).code());
    return out;
}

// Restriction of f(G) to block_points(V, K) in the sublanguage |nu| <= L,
// computed from the block structure instead of by querying every tuple.
inline FinStructure f_restriction(const DiGraph& g, std::size_t V, std::size_t K, std::size_t L) {
    if (V < g.size()) throw std::invalid_argument("f_restriction: V smaller than the graph");
    const auto edge = edge_oracle(g);
    std::vector<RelationSymbol> symbols;
    for (std::size_t r = 0; r < c_lang::relation_bound(L); ++r) symbols.push_back(c_lang::relation(r));
    FinStructure s(Signature(symbols), V + V * V * K);
    auto member = [&](std::size_t m, std::size_t n, std::size_t k) { return V + (m * V + n) * K + k; };
    for (std::size_t v = 0; v < V; ++v) s.add_fact(c_lang::W, {v});
    for (std::size_t m = 0; m < V; ++m)
        for (std::size_t n = 0; n < V; ++n) {
            const bool tail = !edge(m, n);
            std::vector<SElem> elems = enumerate(tail, K);
            for (std::size_t k = 0; k < K; ++k) {
                const std::size_t x = member(m, n, k);
                s.add_fact(c_lang::N, {m, x});
                s.add_fact(c_lang::O, {m, n, x});
                for (Natural j = 0; j < strings_up_to_length(L); ++j) {
                    const Nu nu(enum_string(j));
                    if (holds_R(nu, elems[k])) s.add_fact(c_lang::R(nu), {x});
                    const Natural image = shelah_index(eval_F(nu, elems[k]));
                    if (image < K) s.add_fact(c_lang::gF(nu), {x, member(m, n, image)});
                }
            }
        }
    return s;
}

// ---------------------------------------------------------------------------
// Induced embedding
// ---------------------------------------------------------------------------

// Map on points of f(G) -> f(H) induced by a graph embedding g: G -> H. The
// finite graphs are padded with isolated vertices, and g is extended to them
// by i -> |H| + (i - |G|).
class InducedEmbedding {
public:
    InducedEmbedding(Morphism g, std::size_t source_size, std::size_t target_size)
        : g_(std::move(g)), source_size_(source_size), target_size_(target_size) {}

    Natural vertex(Natural i) const { return i < source_size_ ? g_(i) : target_size_ + (i - source_size_); }

    Natural operator()(Natural code) const {
        CPoint p(code);
        if (p.vertex_index()) return CPoint::vertex(vertex(*p.vertex_index())).code();
        const auto& b = *p.block();
        return CPoint::in_block(vertex(b.m), vertex(b.n), b.k).code();
    }

    const Morphism& graph_map() const { return g_; }

private:
    Morphism g_;
    std::size_t source_size_;
    std::size_t target_size_;
};

inline InducedEmbedding induced_embedding(const Morphism& g, const DiGraph& source, const DiGraph& target) {
    if (!is_embedding(g, source, target)) throw NotAnEmbedding("induced_embedding: map is not a graph embedding");
    return InducedEmbedding(g, source.size(), target.size());
}

// ---------------------------------------------------------------------------
// Block classification and decoding
// ---------------------------------------------------------------------------

struct ClassifyOptions {
    std::size_t nu_bound = 3;
    std::size_t budget = 50;                // block members inspected
    std::size_t scan_limit = 1'000'000;     // universe elements scanned looking for members
};

// Reads the R_nu trace (|nu| <= L) of x. In any copy of S_b it is the set of
// prefixes of one string of length L, which is returned; anything else throws.
inline BitString read_trace_bits(const AtomOracle& o, Natural x, std::size_t L) {
    std::vector<BitString> by_length(L + 1);
    std::vector<std::size_t> count(L + 1, 0);
    const std::size_t arg[] = {x};
    for (Natural k = 0; k < strings_up_to_length(L); ++k) {
        Nu nu(enum_string(k));
        if (!o.holds(c_lang::R(nu), arg)) continue;
        ++count[nu.size()];
        by_length[nu.size()] = nu.bits;
    }
    for (std::size_t len = 0; len <= L; ++len) {
        if (count[len] != 1 || (len > 0 && by_length[len].compare(0, len - 1, by_length[len - 1]) != 0))
            throw ContradictoryEvidence("element " + std::to_string(x) + " has an R trace that is not a chain of prefixes");
    }
    return by_length[L];
}

// Decides whether the block O(x, y, -) is a copy of S_0 or S_1. Members are
// inspected in universe order; the first one whose trace at bound L is
// constant decides. This is the least-witness approximation of
// "some member has trace b^k for every k", and it is exact on f(G) itself,
// where each block lists its generator first.
inline BlockType classify_block(const AtomOracle& o, Natural x, Natural y, const ClassifyOptions& opts = {}) {
    {
        const std::size_t wx[] = {x}, wy[] = {y};
        if (!o.holds(c_lang::W, wx) || !o.holds(c_lang::W, wy))
            throw std::invalid_argument("classify_block: arguments must satisfy W");
    }
    if (opts.budget == 0 || opts.nu_bound == 0) return BlockType::Unknown;
    Natural limit = opts.scan_limit;
    if (o.size()) limit = std::min<Natural>(limit, *o.size());
    std::size_t inspected = 0;
    for (Natural j = 0; j < limit && inspected < opts.budget; ++j) {
        const std::size_t args[] = {x, y, j};
        if (!o.holds(c_lang::O, args)) continue;
        ++inspected;
        const BitString bits = read_trace_bits(o, j, opts.nu_bound);
        if (bits == BitString(opts.nu_bound, '0')) return BlockType::S0;
        if (bits == BitString(opts.nu_bound, '1')) return BlockType::S1;
    }
    return BlockType::Unknown;
}

struct DecodeFResult {
    DiGraph graph;
    std::vector<Natural> vertices;                               // W-elements used, in order
    std::vector<std::pair<std::size_t, std::size_t>> unknown;   // pairs left unclassified

    bool complete() const { return unknown.empty(); }
};

// Graph on the first k W-elements with m -> n iff the block of (m, n) is S_0.
inline DecodeFResult decode_f(const AtomOracle& o, std::size_t k, const ClassifyOptions& opts = {}) {
    DecodeFResult out;
    Natural limit = opts.scan_limit;
    if (o.size()) limit = std::min<Natural>(limit, *o.size());
    for (Natural j = 0; j < limit && out.vertices.size() < k; ++j) {
        const std::size_t args[] = {j};
        if (o.holds(c_lang::W, args)) out.vertices.push_back(j);
    }
    if (out.vertices.size() < k)
        throw BudgetExceeded("decode_f: found only " + std::to_string(out.vertices.size()) + " W-elements");
    out.graph = DiGraph(k, true);
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t n = 0; n < k; ++n) {
            switch (classify_block(o, out.vertices[m], out.vertices[n], opts)) {
                case BlockType::S0: out.graph.add_edge(m, n); break;
                case BlockType::S1: break;
                case BlockType::Unknown: out.unknown.emplace_back(m, n); break;
            }
        }
    return out;
}

}  // namespace structcode

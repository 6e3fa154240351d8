#pragma once

// Functors between categories of finite structures (or finite restrictions of
// computable ones) with embeddings as morphisms. A functor is a pair of
// procedures: one on objects, one on (source, morphism, target) triples.
// Every law is checked extensionally on the explicit finite maps.

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "structcode/coding_g.hpp"
#include "structcode/core.hpp"
#include "structcode/reduction_f.hpp"
#include "structcode/search.hpp"

namespace structcode {

template <class In, class Out>
struct Functor {
    std::string name;
    std::function<Out(const In&)> object;
    std::function<Morphism(const In& source, const Morphism& h, const In& target)> morphism;

    Out operator()(const In& x) const { return object(x); }
    Morphism operator()(const In& a, const Morphism& h, const In& b) const { return morphism(a, h, b); }
};

template <class T>
Functor<T, T> identity_functor() {
    return {"id", [](const T& x) { return x; }, [](const T&, const Morphism& h, const T&) { return h; }};
}

// second . first
template <class A, class B, class C>
Functor<A, C> compose(const Functor<B, C>& second, const Functor<A, B>& first) {
    return {second.name + "." + first.name, [=](const A& x) { return second.object(first.object(x)); },
            [=](const A& a, const Morphism& h, const A& b) {
                return second.morphism(first.object(a), first.morphism(a, h, b), first.object(b));
            }};
}

// ---------------------------------------------------------------------------
// Concrete functors
// ---------------------------------------------------------------------------

inline Functor<FinStructure, DiGraph> encode_functor() {
    return {"encode", [](const FinStructure& s) { return encode(s).graph; },
            [](const FinStructure& a, const Morphism& h, const FinStructure& b) { return encode_morphism(h, a, b); }};
}

// A -> decode(relabel(encode(A), perm(A))); perm(A) empty means no relabelling.
using Relabelling = std::function<std::vector<std::size_t>(const FinStructure&)>;

inline std::vector<std::size_t> apply_relabelling(const Relabelling& perm, const FinStructure& s, std::size_t n) {
    std::vector<std::size_t> p;
    if (perm) p = perm(s);
    if (p.empty()) {
        p.resize(n);
        for (std::size_t v = 0; v < n; ++v) p[v] = v;
    }
    return p;
}

inline Functor<FinStructure, FinStructure> decode_encode_functor(Relabelling perm = {}) {
    auto object = [perm](const FinStructure& s) {
        const DiGraph g = encode(s).graph;
        return decode(relabel(g, apply_relabelling(perm, s, g.size())), s.signature());
    };
    auto morphism = [perm](const FinStructure& a, const Morphism& h, const FinStructure& b) {
        const DiGraph ga = encode(a).graph, gb = encode(b).graph;
        const auto pa = apply_relabelling(perm, a, ga.size()), pb = apply_relabelling(perm, b, gb.size());
        const Morphism ra(ga.size(), ga.size(), pa), rb(gb.size(), gb.size(), pb);
        const Morphism moved = compose(rb, compose(encode_morphism(h, a, b), ra.inverse()));
        return decode_morphism(moved, relabel(ga, pa), relabel(gb, pb), a.signature());
    };
    return {"decode.encode", object, morphism};
}

// Parameters of the finite shadow of f: a graph G is sent to the restriction
// of f(G) on vertices below |G| + pad and the first K members of every block,
// in the sublanguage |nu| <= L. Graph embeddings map these point sets into
// each other because the padding extension sends padded vertices to padded
// vertices.
struct FShadow {
    std::size_t pad = 1;
    std::size_t K = 4;
    std::size_t L = 1;
};

inline Functor<DiGraph, FinStructure> reduction_f_functor(FShadow p = {}) {
    auto object = [p](const DiGraph& g) { return f_restriction(g, g.size() + p.pad, p.K, p.L); };
    auto morphism = [p](const DiGraph& a, const Morphism& h, const DiGraph& b) {
        const InducedEmbedding e = induced_embedding(h, a, b);
        const auto src = block_points(a.size() + p.pad, p.K);
        const auto tgt = block_points(b.size() + p.pad, p.K);
        std::map<Natural, std::size_t> index;
        for (std::size_t i = 0; i < tgt.size(); ++i) index[tgt[i]] = i;
        std::vector<std::size_t> m(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            auto it = index.find(e(src[i]));
            if (it == index.end()) throw Error("reduction_f_functor: image point outside the target restriction");
            m[i] = it->second;
        }
        return Morphism(src.size(), tgt.size(), std::move(m));
    };
    return {"f", object, morphism};
}

inline Functor<DiGraph, DiGraph> h_functor(FShadow p = {}) {
    auto h = compose(encode_functor(), reduction_f_functor(p));
    h.name = "H";
    return h;
}

// ---------------------------------------------------------------------------
// Law checks
// ---------------------------------------------------------------------------

template <class T>
struct Arrow {
    T source;
    T target;
    Morphism map;
};

// h1: A -> B followed by h2: B -> C.
template <class T>
struct ComposablePair {
    T a, b, c;
    Morphism h1, h2;
};

struct LawReport {
    std::string name;
    std::size_t checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty() && checked > 0; }
    std::string summary() const {
        std::ostringstream os;
        os << name << " checked=" << checked << " violations=" << violations.size();
        return os.str();
    }
};

inline bool same_map(const Morphism& x, const Morphism& y) {
    return x.source_size() == y.source_size() && x.target_size() == y.target_size() && x.map() == y.map();
}

template <class In, class Out>
LawReport check_functor_laws(const Functor<In, Out>& F, const std::vector<ComposablePair<In>>& samples) {
    LawReport rep{F.name};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const std::string tag = "sample " + std::to_string(i) + ": ";
        try {
            const Out fa = F(s.a), fb = F(s.b), fc = F(s.c);
            const Morphism id = F(s.a, Morphism::identity(s.a.size()), s.a);
            ++rep.checked;
            if (!same_map(id, Morphism::identity(fa.size()))) rep.violations.push_back(tag + "F(id) != id");
            const Morphism f1 = F(s.a, s.h1, s.b), f2 = F(s.b, s.h2, s.c);
            ++rep.checked;
            if (!is_embedding(f1, fa, fb) || !is_embedding(f2, fb, fc))
                rep.violations.push_back(tag + "F(h) is not an embedding");
            const Morphism whole = F(s.a, compose(s.h2, s.h1), s.c);
            ++rep.checked;
            if (!same_map(whole, compose(f2, f1))) rep.violations.push_back(tag + "F(h2 h1) != F(h2) F(h1)");
        } catch (const Error& e) {
            rep.violations.push_back(tag + e.what());
        }
    }
    return rep;
}

// Lambda^A: F(A) -> G(A), one isomorphism per object.
template <class In, class Out>
using EffectiveIso = std::function<Morphism(const In&)>;

// Lambda^B . F(gamma) == G(gamma) . Lambda^A, pointwise.
template <class In, class Out>
bool check_commuting_square(const EffectiveIso<In, Out>& lambda, const Functor<In, Out>& F, const Functor<In, Out>& G,
                            const Arrow<In>& gamma) {
    const Morphism la = lambda(gamma.source), lb = lambda(gamma.target);
    const Out fa = F(gamma.source), ga = G(gamma.source);
    if (!is_isomorphism(la, fa, ga)) return false;
    if (!is_isomorphism(lb, F(gamma.target), G(gamma.target))) return false;
    const Morphism left = compose(lb, F(gamma.source, gamma.map, gamma.target));
    const Morphism right = compose(G(gamma.source, gamma.map, gamma.target), la);
    return same_map(left, right);
}

// Lambda_K for decode.encode against the identity: x -> f^-1(v_x).
inline EffectiveIso<FinStructure, FinStructure> lambda_k(Relabelling perm = {}) {
    return [perm](const FinStructure& s) {
        const DiGraph g = encode(s).graph;
        const auto p = apply_relabelling(perm, s, g.size());
        return canonical_iso(s, p);
    };
}

// ---------------------------------------------------------------------------
// Pseudo-inverse report for F = f and G = decode_f
// ---------------------------------------------------------------------------

struct PseudoInverseReport {
    std::size_t graphs = 0;
    std::size_t graph_round_trips = 0;      // G(F(g)) == g
    std::size_t structure_round_trips = 0;  // F(G(A)) ~= A for A = F(g) restricted
    std::size_t unknown = 0;                // items left undecided by a small budget
    std::vector<std::string> failures;
    std::string note = "G reads the stabilized block type (least constant-trace witness); this is the one jump it takes";

    bool ok() const { return failures.empty(); }
};

inline PseudoInverseReport pseudo_inverse_report(const std::vector<DiGraph>& corpus, const ClassifyOptions& opts = {},
                                                 FShadow shadow = {}) {
    PseudoInverseReport rep;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const DiGraph& g = corpus[i];
        const std::string tag = "graph " + std::to_string(i) + ": ";
        ++rep.graphs;
        try {
            const DecodeFResult d = decode_f(build_f(g), g.size(), opts);
            if (!d.complete()) {
                ++rep.unknown;
                continue;
            }
            if (d.graph == g) ++rep.graph_round_trips;
            else rep.failures.push_back(tag + "decode_f(build_f(g)) != g");

            const FinStructure A = f_restriction(g, g.size() + shadow.pad, shadow.K, shadow.L);
            const std::size_t V = g.size() + shadow.pad;
            ClassifyOptions shallow = opts;
            shallow.nu_bound = std::min(opts.nu_bound, shadow.L);
            const DecodeFResult back = decode_f(c_oracle(A), V, shallow);
            if (!back.complete()) {
                ++rep.unknown;
                continue;
            }
            const FinStructure again = f_restriction(back.graph, V, shadow.K, shadow.L);
            if (again == A || find_isomorphism(again, A)) ++rep.structure_round_trips;
            else rep.failures.push_back(tag + "F(G(A)) is not isomorphic to A");
        } catch (const Error& e) {
            rep.failures.push_back(tag + e.what());
        }
    }
    return rep;
}

}  // namespace structcode

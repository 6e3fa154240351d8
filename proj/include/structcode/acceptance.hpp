#pragma once

// The acceptance criteria, shared by the CLI self-test and the test suite.
// Each criterion returns one line of key=value text.

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "structcode/coding_g.hpp"
#include "structcode/core.hpp"
#include "structcode/corpus.hpp"
#include "structcode/ef_games.hpp"
#include "structcode/functors.hpp"
#include "structcode/limit_builder.hpp"
#include "structcode/reduction_f.hpp"
#include "structcode/search.hpp"
#include "structcode/shelah.hpp"

namespace structcode {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string metric;
    double seconds = 0;
    std::vector<std::string> findings;

    std::string line() const {
        std::ostringstream os;
        os << "criterion=" << id << " name=" << name << " status=" << (pass ? "pass" : "fail") << " " << metric;
        os.setf(std::ios::fixed);
        os.precision(2);
        os << " seconds=" << seconds;
        return os.str();
    }
};

struct AcceptanceConfig {
    std::uint64_t seed = 20240611;
};

namespace acceptance_detail {

// Independent isomorphism test: tries every permutation.
inline bool naive_isomorphic(const FinStructure& a, const FinStructure& b) {
    if (a.size() != b.size() || !(a.signature() == b.signature())) return false;
    std::vector<std::size_t> p(a.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
    do {
        if (is_isomorphism(Morphism(a.size(), b.size(), p), a, b)) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline FinStructure random_small_structure(Rng& rng, std::size_t max_size) {
    const Signature sig = random_signature(rng);
    return random_structure(rng, sig, uniform(rng, 0, max_size), 0.3 + 0.4 * std::uniform_real_distribution<>()(rng));
}

inline FinStructure random_binary(Rng& rng, std::size_t size) {
    FinStructure s(edge_signature(), size);
    for (std::size_t u = 0; u < size; ++u)
        for (std::size_t v = 0; v < size; ++v)
            if (coin(rng)) s.add_fact(0, {u, v});
    return s;
}

// Lengths of all simple directed cycles, by depth-first search from each
// vertex as the least vertex of the cycle, restricted to its strongly
// connected component.
inline std::vector<std::size_t> cycle_lengths(const DiGraph& g) {
    std::size_t comps = 0;
    const auto comp = detail::scc(g, comps);
    std::vector<std::size_t> out;
    std::vector<bool> on_path(g.size(), false);
    for (std::size_t start = 0; start < g.size(); ++start) {
        std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t depth) {
            for (auto w : g.out(v)) {
                if (comp[w] != comp[start] || w < start) continue;
                if (w == start) {
                    out.push_back(depth + 1);
                    continue;
                }
                if (on_path[w]) continue;
                on_path[w] = true;
                dfs(w, depth + 1);
                on_path[w] = false;
            }
        };
        on_path[start] = true;
        dfs(start, 0);
        on_path[start] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline SElem random_selem(Rng& rng, std::size_t max_prefix) {
    BitString p;
    const std::size_t len = uniform(rng, 0, max_prefix);
    for (std::size_t i = 0; i < len; ++i) p.push_back(coin(rng) ? '1' : '0');
    return SElem(p, coin(rng));
}

inline Nu random_nu(Rng& rng, std::size_t max_len) {
    BitString p;
    const std::size_t len = uniform(rng, 0, max_len);
    for (std::size_t i = 0; i < len; ++i) p.push_back(coin(rng) ? '1' : '0');
    return Nu(p);
}

// Deterministic relabelling of encode(s), derived from the structure's facts.
inline std::vector<std::size_t> scramble(const FinStructure& s) {
    std::uint64_t h = 1469598103934665603ULL ^ s.size();
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.facts(r))
            for (auto x : t) h = (h ^ (x + 31 * r + 7)) * 1099511628211ULL;
    Rng rng(h);
    return random_permutation(rng, encode(s).graph.size());
}

template <class F>
CriterionResult timed(int id, std::string name, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.findings.push_back(std::string("exception: ") + e.what());
        if (r.metric.empty()) r.metric = "error=exception";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace acceptance_detail

// 1. decode(encode(A)) ~= A via canonical_iso for 200 random structures.
inline CriterionResult criterion_coding_round_trip(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(1, "coding-round-trip", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 1);
        std::size_t ok = 0;
        const std::size_t total = 200;
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < total; ++i) {
            const FinStructure s = random_small_structure(rng, 4);
            const auto perm = random_permutation(rng, encode(s).graph.size());
            try {
                const Morphism m = canonical_iso(s, perm);
                const FinStructure back = decode(relabel(encode(s).graph, perm), s.signature());
                if (is_isomorphism(m, s, back)) ++ok;
                else r.findings.push_back("structure " + std::to_string(i) + ": canonical map is not an isomorphism");
            } catch (const Error& e) {
                r.findings.push_back("structure " + std::to_string(i) + ": " + e.what());
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.pass = ok == total && secs < 30;
        r.metric = "passed=" + std::to_string(ok) + "/" + std::to_string(total);
    });
}

// 2. A ~= B iff encode(A) ~= encode(B), 500 pairs, one binary relation, <= 3 elements.
inline CriterionResult criterion_iso_equivalence(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(2, "iso-equivalence", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 2);
        std::size_t agree = 0, iso_pairs = 0;
        const std::size_t total = 500;
        for (std::size_t i = 0; i < total; ++i) {
            const std::size_t n = uniform(rng, 0, 3);
            const FinStructure a = random_binary(rng, n);
            const FinStructure b =
                i % 2 == 0 ? relabel(a, random_permutation(rng, n)) : random_binary(rng, coin(rng, 0.8) ? n : uniform(rng, 0, 3));
            const bool structures = naive_isomorphic(a, b);
            const bool graphs = find_isomorphism(encode(a).graph, encode(b).graph).has_value();
            iso_pairs += structures;
            if (structures == graphs) ++agree;
            else r.findings.push_back("pair " + std::to_string(i) + ": structures iso=" + std::to_string(structures) +
                                      " codes iso=" + std::to_string(graphs));
        }
        r.pass = agree == total;
        r.metric = "agreement=" + std::to_string(agree) + "/" + std::to_string(total) +
                   " isomorphic_pairs=" + std::to_string(iso_pairs);
    });
}

// 3. A embeds in B => encode(A) embeds in encode(B); the converse is probed.
inline CriterionResult criterion_embedding_transfer(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(3, "embedding-transfer", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 3);
        std::size_t forward = 0;
        const std::size_t total = 200;
        for (std::size_t i = 0; i < total; ++i) {
            const Signature sig = random_signature(rng);
            const FinStructure target = random_structure(rng, sig, uniform(rng, 1, 4));
            const auto inst = embedding_into(rng, target, uniform(rng, 0, target.size()));
            const DiGraph ga = encode(inst.source).graph, gb = encode(inst.target).graph;
            const Morphism e = encode_morphism(inst.map, inst.source, inst.target);
            if (is_embedding(e, ga, gb) && find_embedding(ga, gb)) ++forward;
            else r.findings.push_back("instance " + std::to_string(i) + ": code embedding missing");
        }
        // Converse: whenever the codes embed, does the structure embed?
        std::size_t code_embeds = 0, counterexamples = 0, undecided = 0;
        for (std::size_t i = 0; i < 200; ++i) {
            const Signature sig = random_signature(rng, 2, 2);
            const FinStructure a = random_structure(rng, sig, uniform(rng, 0, 3));
            const FinStructure b = random_structure(rng, sig, uniform(rng, 0, 3));
            try {
                SearchOptions opts;
                opts.budget = 2'000'000;
                if (!find_embedding(encode(a).graph, encode(b).graph, opts)) continue;
                ++code_embeds;
                if (!find_embedding(a, b)) {
                    ++counterexamples;
                    r.findings.push_back("converse counterexample: codes embed but structures do not (pair " +
                                         std::to_string(i) + ")");
                }
            } catch (const BudgetExceeded&) {
                ++undecided;
            }
        }
        r.pass = forward == total;
        r.metric = "forward=" + std::to_string(forward) + "/" + std::to_string(total) +
                   " converse_code_embeddings=" + std::to_string(code_embeds) +
                   " converse_counterexamples=" + std::to_string(counterexamples) +
                   " converse_undecided=" + std::to_string(undecided);
    });
}

// 4. Every code has exactly one 3-, 5- and 7-cycle and no other cycle.
inline CriterionResult criterion_cycle_uniqueness(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(4, "cycle-uniqueness", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 4);
        std::size_t ok = 0;
        const std::size_t total = 200;
        const std::vector<std::size_t> expected{3, 5, 7};
        for (std::size_t i = 0; i < total; ++i) {
            const FinStructure s = random_small_structure(rng, 4);
            if (cycle_lengths(encode(s).graph) == expected) ++ok;
            else r.findings.push_back("structure " + std::to_string(i) + ": unexpected cycles");
        }
        r.pass = ok == total;
        r.metric = "passed=" + std::to_string(ok) + "/" + std::to_string(total);
    });
}

// 5. ef_winner agrees with equiv_n on all one-binary-relation structures of
// size <= 4 (up to isomorphism, loops allowed), n <= 3; K2 vs K3 pinned.
inline CriterionResult criterion_ef_cross_validation(const AcceptanceConfig&) {
    using namespace acceptance_detail;
    return timed(5, "ef-cross-validation", [&](CriterionResult& r) {
        std::vector<FinStructure> all;
        for (std::size_t n = 0; n <= 4; ++n)
            for (auto& s : binary_structures_up_to_iso(n)) all.push_back(std::move(s));
        std::vector<std::unique_ptr<PreparedStructure>> prepared;
        for (const auto& s : all) prepared.push_back(std::make_unique<PreparedStructure>(s));
        std::size_t pairs = 0, disagreements = 0;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i; j < all.size(); ++j) {
                EfSolver solver(*prepared[i], *prepared[j]);
                const auto profile = equiv_profile(all[i], all[j], 3);
                ++pairs;
                for (std::size_t n = 1; n <= 3; ++n)
                    if ((solver.winner(n) == Player::Duplicator) != profile[n]) {
                        ++disagreements;
                        if (r.findings.size() < 10)
                            r.findings.push_back("disagreement on classes " + std::to_string(i) + "," +
                                                 std::to_string(j) + " n=" + std::to_string(n));
                    }
            }
        auto clique = [](std::size_t n) {
            FinStructure s(edge_signature(), n);
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    if (u != v) s.add_fact(0, {u, v});
            return s;
        };
        const bool pinned = ef_winner(clique(2), clique(3), 2) == Player::Duplicator &&
                            ef_winner(clique(2), clique(3), 3) == Player::Spoiler;
        r.pass = disagreements == 0 && pinned;
        r.metric = "classes=" + std::to_string(all.size()) + " pairs=" + std::to_string(pairs) +
                   " disagreements=" + std::to_string(disagreements) + " pinned_k2_k3=" + (pinned ? "ok" : "wrong");
    });
}

// 6. Involution and XOR-composition of F, closure sizes, and h_M on facts.
inline CriterionResult criterion_shelah_laws(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(6, "shelah-laws", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 6);
        std::size_t algebra = 0, closures = 0, reduct = 0;
        for (std::size_t i = 0; i < 1000; ++i) {
            const Nu nu = random_nu(rng, 6), mu = random_nu(rng, 6);
            const SElem x = random_selem(rng, 8);
            const bool inv = eval_F(nu, eval_F(nu, x)) == x;
            const bool comp = eval_F(mu, eval_F(nu, x)) == eval_F(xor_nu(mu, nu), x);
            if (inv && comp) ++algebra;
            else r.findings.push_back("F law fails at nu=" + nu.bits + " x=" + x.to_string());
        }
        for (std::size_t L = 0; L <= 6; ++L)
            for (std::size_t k = 0; k < 20; ++k) {
                const SElem seed = random_selem(rng, 6);
                if (closure(seed, L).size() == (std::size_t{1} << L)) ++closures;
                else r.findings.push_back("closure size wrong for L=" + std::to_string(L) + " seed=" + seed.to_string());
            }
        for (std::size_t i = 0; i < 500; ++i) {
            const std::size_t M = uniform(rng, 0, 4);
            const ReductIso h(M);
            const Nu nu = random_nu(rng, M);
            const SElem x = random_selem(rng, 6);
            const SElem y = coin(rng) ? eval_F(nu, x) : random_selem(rng, 6);
            const bool ok = holds_R(nu, x) == holds_R(nu, h(x)) && holds_graphF(nu, x, y) == holds_graphF(nu, h(x), h(y)) &&
                            h(x).tail() != x.tail();
            if (ok) ++reduct;
            else r.findings.push_back("h_M fails at M=" + std::to_string(M) + " nu=" + nu.bits + " x=" + x.to_string());
        }
        r.pass = algebra == 1000 && closures == 140 && reduct == 500;
        r.metric = "algebra=" + std::to_string(algebra) + "/1000 closure=" + std::to_string(closures) +
                   "/140 reduct=" + std::to_string(reduct) + "/500";
    });
}

// 7. decode_f(build_f(G)) == G, and induced embeddings on 30-point restrictions.
inline CriterionResult criterion_reduction_f(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(7, "reduction-f", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 7);
        ClassifyOptions opts;
        opts.nu_bound = 3;
        opts.budget = 50;
        std::size_t exact = 0;
        for (std::size_t i = 0; i < 500; ++i) {
            const DiGraph g = random_graph(rng, uniform(rng, 0, 6), std::uniform_real_distribution<>(0.1, 0.9)(rng));
            const DecodeFResult d = decode_f(build_f(g), g.size(), opts);
            if (d.complete() && d.graph == g) ++exact;
            else r.findings.push_back("graph " + std::to_string(i) + " not recovered");
        }
        std::size_t embeddings = 0;
        for (std::size_t i = 0; i < 100; ++i) {
            const DiGraph h = random_graph(rng, uniform(rng, 1, 6));
            const auto inst = embedding_into(rng, h, uniform(rng, 0, h.size()));
            const InducedEmbedding e = induced_embedding(inst.map, inst.source, inst.target);
            std::vector<std::size_t> src(30), img(30);
            for (std::size_t c = 0; c < 30; ++c) {
                src[c] = c;
                img[c] = e(c);
            }
            const auto opts_f = nu_bounded(3);
            const FinStructure a = restrict_to(build_f(inst.source), src, opts_f);
            const FinStructure b = restrict_to(build_f(inst.target), img, opts_f);
            if (is_embedding(Morphism::identity(30), a, b)) ++embeddings;
            else r.findings.push_back("induced map " + std::to_string(i) + " is not an embedding on the restriction");
        }
        r.pass = exact == 500 && embeddings == 100;
        r.metric = "round_trip=" + std::to_string(exact) + "/500 induced_embeddings=" + std::to_string(embeddings) + "/100";
    });
}

// 8. Stage nesting, classification, restriction isomorphism, jump locality.
inline CriterionResult criterion_limit_construction(const AcceptanceConfig& cfg) {
    using namespace acceptance_detail;
    return timed(8, "limit-construction", [&](CriterionResult& r) {
        Rng rng(cfg.seed + 8);
        std::size_t nesting = 0, classified = 0, iso = 0, locality = 0;
        const auto terms = terms_up_to(3);
        for (std::size_t i = 0; i < 100; ++i) {
            const std::size_t t = uniform(rng, 0, 20);
            const bool limit = coin(rng);
            BitString pattern;
            for (std::size_t j = 0; j + 1 < t; ++j) pattern.push_back(coin(rng) ? '1' : '0');
            if (t > 0) pattern.push_back(limit ? '0' : '1');
            pattern.push_back(limit ? '1' : '0');
            const Approximation approx = flip_pattern(pattern);
            const Natural stable = *approx.promised_stabilization;

            bool nested = true;
            StageStructure prev = build_stage(approx, 0, 0);
            for (Natural s = 0; s <= 30 && nested; ++s) {
                StageStructure next = build_stage(approx, 0, s + 1);
                for (const auto& e : prev.elements) nested = nested && next.has_element(e);
                for (const auto& [f, v] : prev.decided) nested = nested && next.fact(f.term, f.relation) == v;
                for (const auto& [nu, term] : prev.function_values) {
                    auto it = next.function_values.find(nu);
                    nested = nested && it != next.function_values.end() && it->second == term;
                }
                prev = std::move(next);
            }
            nesting += nested;
            if (!nested) r.findings.push_back("approximation " + std::to_string(i) + ": stages not nested");

            const LimitType expected = limit ? LimitType::S1 : LimitType::S0;
            if (classify_limit(approx, 0, stable) == expected && stable == t) ++classified;
            else r.findings.push_back("approximation " + std::to_string(i) + ": wrong classification");

            const FinStructure lim = limit_restriction(approx, 0, terms, 3);
            const SElem a = limit_element(approx, 0, stable);
            std::vector<SElem> images;
            for (const auto& tau : terms) images.push_back(eval_F(tau, a));
            const auto sb = shelah_restriction(images, 3);
            const bool in_sb = a.tail() == limit;
            if (in_sb && is_isomorphism(Morphism::identity(terms.size()), lim, sb.structure) &&
                find_isomorphism(lim, sb.structure))
                ++iso;
            else r.findings.push_back("approximation " + std::to_string(i) + ": restriction not isomorphic");

            const std::size_t s = uniform(rng, 0, 20);
            BitString shared;
            for (std::size_t j = 0; j < s; ++j) shared.push_back(coin(rng) ? '1' : '0');
            const Approximation zero = flip_pattern(shared + "0"), one = flip_pattern(shared + "1");
            const StageStructure cz = build_stage(zero, 0, s), co = build_stage(one, 0, s);
            const bool same_stage = cz.known == co.known && cz.elements == co.elements && cz.decided == co.decided &&
                                    cz.function_values == co.function_values;
            const bool opposite = classify_limit(zero, 0, s) == LimitType::S0 && classify_limit(one, 0, s) == LimitType::S1;
            if (same_stage && opposite) ++locality;
            else r.findings.push_back("approximation pair " + std::to_string(i) + ": locality check failed");
        }
        r.pass = nesting == 100 && classified == 100 && iso == 100 && locality == 100;
        r.metric = "nesting=" + std::to_string(nesting) + "/100 classification=" + std::to_string(classified) +
                   "/100 restriction_iso=" + std::to_string(iso) + "/100 jump_locality=" + std::to_string(locality) +
                   "/100";
    });
}

// Composable graph embeddings A -> B -> C.
inline std::vector<ComposablePair<DiGraph>> graph_samples(Rng& rng, std::size_t count, std::size_t max_size) {
    std::vector<ComposablePair<DiGraph>> out;
    for (std::size_t i = 0; i < count; ++i) {
        const DiGraph c = random_graph(rng, uniform(rng, 0, max_size));
        auto bc = embedding_into(rng, c, uniform(rng, 0, c.size()));
        auto ab = embedding_into(rng, bc.source, uniform(rng, 0, bc.source.size()));
        out.push_back({ab.source, bc.source, c, ab.map, bc.map});
    }
    return out;
}

inline std::vector<ComposablePair<FinStructure>> structure_samples(Rng& rng, std::size_t count, std::size_t max_size) {
    std::vector<ComposablePair<FinStructure>> out;
    for (std::size_t i = 0; i < count; ++i) {
        const Signature sig = random_signature(rng);
        const FinStructure c = random_structure(rng, sig, uniform(rng, 0, max_size));
        auto bc = embedding_into(rng, c, uniform(rng, 0, c.size()));
        auto ab = embedding_into(rng, bc.source, uniform(rng, 0, bc.source.size()));
        out.push_back({ab.source, bc.source, c, ab.map, bc.map});
    }
    return out;
}

struct FunctorSuite {
    std::vector<LawReport> laws;
    std::size_t squares = 0, squares_ok = 0;
    bool controls_detected = false;
};

inline FunctorSuite run_functor_suite(std::uint64_t seed, std::size_t corpus_size, std::size_t square_count) {
    using namespace acceptance_detail;
    FunctorSuite out;
    Rng rng(seed);
    const auto structures = structure_samples(rng, corpus_size, 4);
    const auto graphs = graph_samples(rng, corpus_size, 4);
    // encode() writes a gadget for every tuple, so H runs on a smaller shadow of f.
    const auto small_graphs = graph_samples(rng, corpus_size, 2);
    out.laws.push_back(check_functor_laws(encode_functor(), structures));
    out.laws.push_back(check_functor_laws(reduction_f_functor(), graphs));
    out.laws.push_back(check_functor_laws(h_functor(FShadow{1, 1, 1}), small_graphs));

    const auto lambda = lambda_k(scramble);
    const auto F = identity_functor<FinStructure>();
    const auto G = decode_encode_functor(scramble);
    for (std::size_t i = 0; i < square_count; ++i) {
        const Signature sig = random_signature(rng);
        const FinStructure b = random_structure(rng, sig, uniform(rng, 0, 4));
        auto inst = embedding_into(rng, b, uniform(rng, 0, b.size()));
        ++out.squares;
        if (check_commuting_square(lambda, F, G, Arrow<FinStructure>{inst.source, inst.target, inst.map}))
            ++out.squares_ok;
    }

    // Controls: a broken morphism map and a mismatched Lambda must be caught.
    auto broken = encode_functor();
    broken.morphism = [](const FinStructure& a, const Morphism& h, const FinStructure& b) {
        Morphism m = encode_morphism(h, a, b);
        auto map = m.map();
        if (map.size() >= 2) std::swap(map[0], map[1]);
        return Morphism(m.source_size(), m.target_size(), map);
    };
    const bool broken_caught = !check_functor_laws(broken, structures).violations.empty();
    EffectiveIso<FinStructure, FinStructure> twisted = [lambda](const FinStructure& s) {
        Morphism m = lambda(s);
        auto map = m.map();
        if (map.size() >= 2) std::swap(map[0], map[1]);
        return Morphism(m.source_size(), m.target_size(), map);
    };
    FinStructure path(edge_signature(), 2);
    path.add_fact(0, {0, 1});
    FinStructure two_paths(edge_signature(), 4);
    two_paths.add_fact(0, {0, 1});
    two_paths.add_fact(0, {2, 3});
    const Arrow<FinStructure> gamma{path, two_paths, Morphism(2, 4, {2, 3})};
    const bool twisted_caught = !check_commuting_square(twisted, F, G, gamma);
    out.controls_detected = broken_caught && twisted_caught;
    return out;
}

// 9. Functor laws for encode, f and H; commuting squares for Lambda_K.
inline CriterionResult criterion_functors(const AcceptanceConfig& cfg) {
    return acceptance_detail::timed(9, "functors", [&](CriterionResult& r) {
        const FunctorSuite suite = run_functor_suite(cfg.seed + 9, 100, 50);
        bool laws = true;
        std::ostringstream metric;
        for (const auto& rep : suite.laws) {
            laws = laws && rep.ok();
            metric << "laws_" << rep.name << "=" << (rep.checked - rep.violations.size()) << "/" << rep.checked << " ";
            for (const auto& v : rep.violations) r.findings.push_back(rep.name + " " + v);
        }
        metric << "squares=" << suite.squares_ok << "/" << suite.squares
               << " controls=" << (suite.controls_detected ? "detected" : "missed");
        r.pass = laws && suite.squares_ok == suite.squares && suite.controls_detected;
        r.metric = metric.str();
    });
}

using Criterion = std::function<CriterionResult(const AcceptanceConfig&)>;

inline const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> all{criterion_coding_round_trip,   criterion_iso_equivalence,
                                            criterion_embedding_transfer,  criterion_cycle_uniqueness,
                                            criterion_ef_cross_validation, criterion_shelah_laws,
                                            criterion_reduction_f,         criterion_limit_construction,
                                            criterion_functors};
    return all;
}

}  // namespace structcode

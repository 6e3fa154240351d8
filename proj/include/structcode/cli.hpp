#pragma once

// Command-line front end. run_cli parses argv, dispatches to the library and
// returns the process exit code: 0 success, 1 negative answer, 2 budget
// exhausted, 3 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "structcode/acceptance.hpp"
#include "structcode/coding_g.hpp"
#include "structcode/core.hpp"
#include "structcode/corpus.hpp"
#include "structcode/ef_games.hpp"
#include "structcode/functors.hpp"
#include "structcode/io.hpp"
#include "structcode/limit_builder.hpp"
#include "structcode/reduction_f.hpp"
#include "structcode/search.hpp"
#include "structcode/shelah.hpp"

namespace structcode {

enum ExitCode : int { exit_ok = 0, exit_negative = 1, exit_budget = 2, exit_input = 3 };

struct InputError : Error {
    using Error::Error;
};

// Which subcommand reaches each library operation. `args` is a runnable
// example; {data} stands for the sample directory data/.
struct CommandEntry {
    std::string module;
    std::string operation;
    std::string subcommand;
    std::vector<std::string> args;
};

inline const std::vector<CommandEntry>& command_table() {
    static const std::vector<CommandEntry> table{
        {"core", "atomic_diagram_prefix", "corpus", {"corpus", "--diagram", "12", "--structure", "{data}/fig1.st"}},
        {"core", "cantor_pair", "shelah", {"shelah", "pair", "3", "4"}},
        {"core", "enum_string", "shelah", {"shelah", "string", "6"}},
        {"core", "restrict", "reduce-f", {"reduce-f", "--graph", "{data}/k2.g", "--restrict", "12", "--nu-bound", "1"}},
        {"core", "parse_serialize", "corpus", {"corpus", "--normalize", "{data}/fig1.st"}},
        {"shelah", "eval_F", "shelah", {"shelah", "eval", "01", "1:0"}},
        {"shelah", "holds_R", "shelah", {"shelah", "holds-r", "10", "1:0"}},
        {"shelah", "holds_graphF", "shelah", {"shelah", "holds-graph", "1", ":0", "1:0"}},
        {"shelah", "enumerate", "shelah", {"shelah", "enumerate", "1", "8"}},
        {"shelah", "closure", "shelah", {"shelah", "closure", ":0", "3"}},
        {"shelah", "reduct_iso", "shelah", {"shelah", "reduct", "2", "01:0"}},
        {"shelah", "distinguishing_trace", "shelah", {"shelah", "trace", ":1", "3"}},
        {"reduction-f", "build_f", "reduce-f", {"reduce-f", "--graph", "{data}/k2.g", "--restrict", "20", "--nu-bound", "2"}},
        {"reduction-f", "block_type", "reduce-f", {"reduce-f", "--graph", "{data}/k2.g", "--blocks"}},
        {"reduction-f", "induced_embedding", "reduce-f",
         {"reduce-f", "--graph", "{data}/k2.g", "--embedding", "0,2", "--target", "{data}/k3.g", "--restrict", "10"}},
        {"reduction-f", "classify_block", "decode-f", {"decode-f", "--structure", "{data}/k3f.st", "--block", "0,2"}},
        {"reduction-f", "decode_f", "decode-f", {"decode-f", "--structure", "{data}/k3f.st", "--vertices", "3"}},
        {"coding-g", "encode", "encode", {"encode", "--structure", "{data}/fig1.st", "--provenance"}},
        {"coding-g", "decode", "decode", {"decode", "--graph", "{data}/fig1.g"}},
        {"coding-g", "canonical_iso", "encode", {"encode", "--structure", "{data}/fig1.st", "--canonical"}},
        {"coding-g", "encode_morphism", "encode",
         {"encode", "--structure", "{data}/k2.st", "--morphism", "1,0", "--target", "{data}/k2.st"}},
        {"coding-g", "lambda_graph", "decode", {"decode", "--graph", "{data}/fig1.g", "--lambda"}},
        {"ef-games", "partial_iso_check", "ef", {"ef", "--left", "{data}/k2.g", "--right", "{data}/k3.g", "--pebbles", "0:0,1:2"}},
        {"ef-games", "ef_winner", "ef", {"ef", "--left", "{data}/k2.g", "--right", "{data}/k3.g", "--rounds", "3", "--trace"}},
        {"ef-games", "equiv_n", "ef", {"ef", "--left", "{data}/k2.g", "--right", "{data}/k3.g", "--rounds", "2", "--back-and-forth"}},
        {"ef-games", "verify_duplicator_strategy", "shelah",
         {"shelah", "verify-strategy", "--m", "2", "--rounds", "2", "--size", "8"}},
        {"search", "find_embedding", "embed", {"embed", "--source", "{data}/k2.g", "--target", "{data}/k3.g"}},
        {"search", "find_isomorphism", "iso", {"iso", "--left", "{data}/k3.g", "--right", "{data}/k3.g"}},
        {"search", "enumerate_embeddings", "embed", {"embed", "--source", "{data}/k2.g", "--target", "{data}/k3.g", "--all", "10"}},
        {"limit-builder", "build_stage", "limit-demo", {"limit-demo", "--pattern", "1110", "--stages", "5"}},
        {"limit-builder", "query_fact", "limit-demo", {"limit-demo", "--pattern", "0", "--query", "1:1"}},
        {"limit-builder", "classify_limit", "limit-demo", {"limit-demo", "--pattern", "0101", "--stages", "2"}},
        {"functors", "functor_F", "selftest", {"selftest", "functors", "--corpus-size", "3", "--seed", "1"}},
        {"functors", "check_functor_laws", "selftest", {"selftest", "functors", "--corpus-size", "3"}},
        {"functors", "check_commuting_square", "selftest", {"selftest", "functors", "--corpus-size", "2"}},
        {"functors", "pseudo_inverse_report", "selftest", {"selftest", "functors", "--corpus-size", "4"}},
        {"cli", "selftest", "selftest", {"selftest", "6"}},
        {"cli", "corpus", "corpus", {"corpus", "--kind", "graph", "--size", "4", "--seed", "7"}},
    };
    return table;
}

namespace cli_detail {

inline std::string read_file(const std::string& path) {
    if (path == "-") return read_all(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_all(in);
}

inline bool looks_like_graph(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::getline(in, tok);
            continue;
        }
        return tok == "graph";
    }
    return false;
}

// Structure or graph file; graphs become one-binary-relation structures.
inline FinStructure load_any(const std::string& path) {
    const std::string text = read_file(path);
    return looks_like_graph(text) ? to_structure(parse_graph(text)) : parse_structure(text);
}

inline std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(item, &pos);
            if (pos != item.size()) throw InputError("bad number '" + item + "'");
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
            throw InputError("bad number '" + item + "'");
        }
    }
    return out;
}

inline Morphism parse_map(const std::string& text, std::size_t source, std::size_t target) {
    auto m = parse_list(text);
    if (m.size() != source) throw InputError("map has " + std::to_string(m.size()) + " entries, expected " + std::to_string(source));
    try {
        return Morphism(source, target, m);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline Nu parse_nu(const std::string& text) {
    try {
        return Nu(text == "eps" ? "" : text);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline SElem parse_selem(const std::string& text) {
    try {
        return SElem::parse(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline std::string show_nu(const Nu& nu) { return nu.bits.empty() ? "eps" : nu.bits; }

inline void print_map(std::ostream& out, const char* label, const std::vector<std::size_t>& m) {
    for (std::size_t i = 0; i < m.size(); ++i) out << label << ' ' << i << ' ' << m[i] << '\n';
}

inline std::size_t default_budget() {
    if (const char* env = std::getenv("STRUCTCODE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10'000'000;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"Codings between graphs, Shelah structures and finite relational structures", "structcode"};
    app.require_subcommand(1);
    app.fallthrough();
    std::size_t budget = default_budget();
    std::uint64_t seed = 1;
    app.add_option("--budget", budget, "search nodes / game states / oracle queries (env STRUCTCODE_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed");

    // encode
    auto* enc = app.add_subcommand("encode", "graph coding g(A) of a structure");
    std::string enc_structure, enc_morphism, enc_target;
    bool enc_provenance = false, enc_canonical = false;
    enc->add_option("--structure", enc_structure, "structure file")->required();
    enc->add_flag("--provenance", enc_provenance, "append the vertex roles as '# v ...' comment lines");
    enc->add_flag("--canonical", enc_canonical, "print the canonical isomorphism A -> decode(encode(A))");
    enc->add_option("--morphism", enc_morphism, "embedding A -> B as a comma list; prints the induced graph map");
    enc->add_option("--target", enc_target, "structure file B for --morphism");

    // decode
    auto* dec = app.add_subcommand("decode", "decode a coded graph back to a structure");
    std::string dec_graph, dec_sig;
    bool dec_lambda = false;
    dec->add_option("--graph", dec_graph, "graph file")->required();
    dec->add_option("--sig", dec_sig, "signature, e.g. \"R/1 E/2\" (default: inferred R<arity>)");
    dec->add_flag("--lambda", dec_lambda, "print the vertex isomorphism g -> encode(decode(g))");

    // reduce-f
    auto* red = app.add_subcommand("reduce-f", "finite restriction of f(G)");
    std::string red_graph, red_embedding, red_target;
    std::size_t red_restrict = 20, red_nu = 2, red_members = 0;
    bool red_blocks = false;
    red->add_option("--graph", red_graph, "graph file")->required();
    red->add_option("--restrict", red_restrict, "number of points")->check(CLI::NonNegativeNumber);
    red->add_option("--nu-bound", red_nu, "largest |nu| materialized");
    red->add_option("--members", red_members, "instead of --restrict: every vertex plus K members of each block");
    red->add_flag("--blocks", red_blocks, "print the type of every block (m, n)");
    red->add_option("--embedding", red_embedding, "graph embedding G -> H as a comma list");
    red->add_option("--target", red_target, "graph file H for --embedding");

    // decode-f
    auto* decf = app.add_subcommand("decode-f", "recover the graph from a restriction of f(G)");
    std::string decf_structure, decf_block;
    std::size_t decf_vertices = 0, decf_nu = 0, decf_members = 50;
    decf->add_option("--structure", decf_structure, "structure in the W/N/O/R_/gF_ language")->required();
    decf->add_option("--vertices", decf_vertices, "number of W-elements to decode (default: all)");
    decf->add_option("--nu-bound", decf_nu, "trace length L (default: longest R_ in the file)");
    decf->add_option("--members", decf_members, "block members inspected per block");
    decf->add_option("--block", decf_block, "classify one block: two W-elements as 'x,y'");

    // ef
    auto* ef = app.add_subcommand("ef", "Ehrenfeucht-Fraisse game");
    std::string ef_left, ef_right, ef_pebbles;
    std::size_t ef_rounds = 0;
    bool ef_trace = false, ef_bf = false;
    ef->add_option("--left", ef_left, "structure or graph file")->required();
    ef->add_option("--right", ef_right, "structure or graph file")->required();
    ef->add_option("--rounds", ef_rounds, "number of rounds");
    ef->add_flag("--trace", ef_trace, "print a line of play");
    ef->add_flag("--back-and-forth", ef_bf, "decide with the back-and-forth hierarchy instead");
    ef->add_option("--pebbles", ef_pebbles, "check a position 'a:b,...' for partial isomorphism");

    // embed / iso
    auto* emb = app.add_subcommand("embed", "search for an embedding");
    std::string emb_source, emb_target;
    std::size_t emb_all = 0;
    emb->add_option("--source", emb_source, "structure or graph file")->required();
    emb->add_option("--target", emb_target, "structure or graph file")->required();
    emb->add_option("--all", emb_all, "enumerate up to this many embeddings");
    auto* iso = app.add_subcommand("iso", "search for an isomorphism");
    std::string iso_left, iso_right;
    iso->add_option("--left", iso_left, "structure or graph file")->required();
    iso->add_option("--right", iso_right, "structure or graph file")->required();

    // shelah
    auto* sh = app.add_subcommand("shelah", "operations on S_0 / S_1 (elements written PREFIX:TAILBIT)");
    sh->require_subcommand(1);
    std::string sh_a, sh_b, sh_c;
    std::size_t sh_m = 2, sh_rounds = 2, sh_size = 8;
    auto* sh_eval = sh->add_subcommand("eval", "F_nu(x)");
    sh_eval->add_option("nu", sh_a)->required();
    sh_eval->add_option("x", sh_b)->required();
    auto* sh_r = sh->add_subcommand("holds-r", "R_nu(x)");
    sh_r->add_option("nu", sh_a)->required();
    sh_r->add_option("x", sh_b)->required();
    auto* sh_g = sh->add_subcommand("holds-graph", "F_nu(x) = y");
    sh_g->add_option("nu", sh_a)->required();
    sh_g->add_option("x", sh_b)->required();
    sh_g->add_option("y", sh_c)->required();
    auto* sh_enum = sh->add_subcommand("enumerate", "first n elements of S_b");
    sh_enum->add_option("b", sh_a)->required();
    sh_enum->add_option("n", sh_b)->required();
    auto* sh_cl = sh->add_subcommand("closure", "closure of x under F_nu, |nu| <= L");
    sh_cl->add_option("x", sh_a)->required();
    sh_cl->add_option("L", sh_b)->required();
    auto* sh_red = sh->add_subcommand("reduct", "h_M(x)");
    sh_red->add_option("M", sh_a)->required();
    sh_red->add_option("x", sh_b)->required();
    auto* sh_tr = sh->add_subcommand("trace", "{nu : |nu| <= L, R_nu(x)}");
    sh_tr->add_option("x", sh_a)->required();
    sh_tr->add_option("L", sh_b)->required();
    auto* sh_pair = sh->add_subcommand("pair", "Cantor pairing");
    sh_pair->add_option("m", sh_a)->required();
    sh_pair->add_option("n", sh_b)->required();
    auto* sh_unpair = sh->add_subcommand("unpair", "inverse Cantor pairing");
    sh_unpair->add_option("z", sh_a)->required();
    auto* sh_str = sh->add_subcommand("string", "k-th binary string in length-lex order");
    sh_str->add_option("k", sh_a)->required();
    auto* sh_vs = sh->add_subcommand("verify-strategy", "play every Spoiler move against the h_M strategy");
    sh_vs->add_option("--m", sh_m, "M");
    sh_vs->add_option("--rounds", sh_rounds, "rounds");
    sh_vs->add_option("--size", sh_size, "elements of each restriction (closure of the generator)");

    // limit-demo
    auto* lim = app.add_subcommand("limit-demo", "stage-wise construction from a flip pattern");
    std::string lim_pattern, lim_query;
    std::size_t lim_stages = 6;
    lim->add_option("--pattern", lim_pattern, "approximation history; the last bit repeats forever")->required();
    lim->add_option("--stages", lim_stages, "print stages 0..S");
    lim->add_option("--query", lim_query, "decide R_mu(F_tau(a)) given as 'tau:mu' (eps for the empty string)");

    // selftest
    auto* self = app.add_subcommand("selftest", "acceptance criteria");
    std::vector<int> self_ids;
    bool self_all = false;
    self->add_option("criteria", self_ids, "criterion numbers 1-9 (default: all)")->check(CLI::Range(1, 9));
    self->add_flag("--all", self_all, "run every criterion");
    auto* self_fun = self->add_subcommand("functors", "functor laws, commuting squares, pseudo-inverse report");
    std::size_t fun_size = 20, fun_squares = 10;
    self_fun->add_option("--corpus-size", fun_size, "composable samples per functor");
    self_fun->add_option("--squares", fun_squares, "sampled embeddings for the commuting square");

    // corpus
    auto* cor = app.add_subcommand("corpus", "seeded random structures and graphs");
    std::string cor_kind = "structure", cor_normalize, cor_structure;
    std::size_t cor_size = 3, cor_count = 1, cor_diagram = 0;
    cor->add_option("--kind", cor_kind, "structure | graph")->check(CLI::IsMember({"structure", "graph"}));
    cor->add_option("--size", cor_size, "number of elements");
    cor->add_option("--corpus-size", cor_count, "number of items");
    cor->add_option("--normalize", cor_normalize, "parse a file and print it in canonical form");
    cor->add_option("--diagram", cor_diagram, "print this many bits of the atomic diagram of --structure");
    cor->add_option("--structure", cor_structure, "structure file for --diagram");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        SearchOptions search;
        search.budget = budget;
        EfOptions efo;
        efo.state_cap = budget;

        if (*enc) {
            const FinStructure s = parse_structure(read_file(enc_structure));
            if (!enc_morphism.empty()) {
                if (enc_target.empty()) throw InputError("--morphism needs --target");
                const FinStructure t = parse_structure(read_file(enc_target));
                print_map(out, "map", encode_morphism(parse_map(enc_morphism, s.size(), t.size()), s, t).map());
                return exit_ok;
            }
            if (enc_canonical) {
                print_map(out, "canonical", canonical_iso(s).map());
                return exit_ok;
            }
            const CodedGraph g = encode(s);
            out << serialize(g.graph);
            if (enc_provenance) {
                std::istringstream lines(g.provenance_text());
                for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
            }
            return exit_ok;
        }
        if (*dec) {
            const DiGraph g = parse_graph(read_file(dec_graph));
            std::optional<Signature> sig;
            if (!dec_sig.empty()) sig = parse_structure("sig " + dec_sig + "\nsize 0\n").signature();
            if (dec_lambda) {
                print_map(out, "lambda", lambda_graph(g, sig).map());
                return exit_ok;
            }
            out << serialize(decode(g, sig));
            return exit_ok;
        }
        if (*red) {
            const DiGraph g = parse_graph(read_file(red_graph));
            if (red_blocks) {
                const auto edge = edge_oracle(g);
                for (std::size_t m = 0; m < g.size(); ++m)
                    for (std::size_t n = 0; n < g.size(); ++n)
                        out << "block " << m << ' ' << n << ' ' << to_string(block_type(edge, m, n)) << '\n';
                return exit_ok;
            }
            if (!red_embedding.empty()) {
                if (red_target.empty()) throw InputError("--embedding needs --target");
                const DiGraph h = parse_graph(read_file(red_target));
                const InducedEmbedding e = induced_embedding(parse_map(red_embedding, g.size(), h.size()), g, h);
                for (Natural c = 0; c < red_restrict; ++c) out << "point " << c << ' ' << e(c) << '\n';
                return exit_ok;
            }
            if (red_members > 0) {
                out << serialize(f_restriction(g, g.size(), red_members, red_nu));
                return exit_ok;
            }
            RestrictOptions opts = nu_bounded(red_nu);
            opts.query_budget = budget;
            out << serialize(restrict(build_f(g), red_restrict, opts));
            return exit_ok;
        }
        if (*decf) {
            const FinStructure s = parse_structure(read_file(decf_structure));
            ClassifyOptions opts;
            opts.nu_bound = decf_nu;
            if (decf->count("--nu-bound") == 0)
                for (std::size_t r = 0; r < s.signature().size(); ++r) {
                    const auto& name = s.signature()[r].name;
                    if (name.rfind("R_", 0) == 0) opts.nu_bound = std::max(opts.nu_bound, name.size() - 2);
                }
            if (decf->count("--vertices") == 0) {
                const auto w = s.signature().find("W");
                if (!w) throw InputError("structure has no W relation");
                for (std::size_t x = 0; x < s.size(); ++x) decf_vertices += s.holds(*w, Tuple{x});
            }
            opts.budget = decf_members;
            const AtomOracle o = c_oracle(s);
            if (!decf_block.empty()) {
                const auto xy = parse_list(decf_block);
                if (xy.size() != 2) throw InputError("--block needs two elements");
                for (auto x : xy)
                    if (x >= s.size() || !o.holds(c_lang::W, {x}))
                        throw InputError("block argument " + std::to_string(x) + " is not a W-element");
                const BlockType t = classify_block(o, xy[0], xy[1], opts);
                out << "block " << xy[0] << ' ' << xy[1] << ' ' << to_string(t) << '\n';
                return t == BlockType::Unknown ? exit_budget : exit_ok;
            }
            const DecodeFResult d = decode_f(o, decf_vertices, opts);
            out << serialize(d.graph);
            for (std::size_t i = 0; i < d.vertices.size(); ++i) out << "# vertex " << i << " element " << d.vertices[i] << '\n';
            for (auto [m, n] : d.unknown) out << "# unknown " << m << ' ' << n << '\n';
            return d.complete() ? exit_ok : exit_budget;
        }
        if (*ef) {
            const FinStructure l = load_any(ef_left), r = load_any(ef_right);
            if (!(l.signature() == r.signature())) throw InputError("structures have different signatures");
            if (!ef_pebbles.empty()) {
                std::vector<Pebble> pebbles;
                std::stringstream in(ef_pebbles);
                for (std::string item; std::getline(in, item, ',');) {
                    const auto colon = item.find(':');
                    if (colon == std::string::npos) throw InputError("pebble '" + item + "' is not a:b");
                    const auto a = parse_list(item.substr(0, colon)), b = parse_list(item.substr(colon + 1));
                    if (a.size() != 1 || b.size() != 1) throw InputError("pebble '" + item + "' is not a:b");
                    if (a[0] >= l.size() || b[0] >= r.size()) throw InputError("pebble '" + item + "' out of range");
                    pebbles.emplace_back(a[0], b[0]);
                }
                const bool ok = partial_iso_check(l, r, pebbles);
                out << "partial_iso=" << (ok ? "true" : "false") << '\n';
                return ok ? exit_ok : exit_negative;
            }
            if (ef_bf) {
                const auto profile = equiv_profile(l, r, ef_rounds, budget);
                out << "equivalent=" << (profile.back() ? "true" : "false") << " rounds=" << ef_rounds << '\n';
                return profile.back() ? exit_ok : exit_negative;
            }
            PreparedStructure pl(l, efo), pr(r, efo);
            EfSolver solver(pl, pr, efo);
            const Player w = solver.winner(ef_rounds);
            out << "winner=" << to_string(w) << " rounds=" << ef_rounds << '\n';
            if (ef_trace)
                for (const auto& line : solver.trace(ef_rounds)) out << "# " << line << '\n';
            return w == Player::Duplicator ? exit_ok : exit_negative;
        }
        if (*emb) {
            const FinStructure a = load_any(emb_source), b = load_any(emb_target);
            if (!(a.signature() == b.signature())) throw InputError("structures have different signatures");
            if (emb_all > 0) {
                const auto res = enumerate_embeddings(a, b, emb_all, search);
                for (const auto& m : res.morphisms) {
                    out << "embedding";
                    for (auto y : m.map()) out << ' ' << y;
                    out << '\n';
                }
                out << "count=" << res.morphisms.size() << (res.truncated ? " truncated=true" : "") << '\n';
                return res.morphisms.empty() ? exit_negative : exit_ok;
            }
            const auto m = find_embedding(a, b, search);
            if (!m) {
                out << "embedding=none\n";
                return exit_negative;
            }
            print_map(out, "map", m->map());
            return exit_ok;
        }
        if (*iso) {
            const FinStructure a = load_any(iso_left), b = load_any(iso_right);
            if (!(a.signature() == b.signature())) throw InputError("structures have different signatures");
            const auto m = find_isomorphism(a, b, search);
            if (!m) {
                out << "isomorphism=none\n";
                return exit_negative;
            }
            print_map(out, "map", m->map());
            return exit_ok;
        }
        if (*sh) {
            auto number = [](const std::string& s) {
                const auto v = parse_list(s);
                if (v.size() != 1) throw InputError("expected a number, got '" + s + "'");
                return v[0];
            };
            if (*sh_eval) out << eval_F(parse_nu(sh_a), parse_selem(sh_b)) << '\n';
            else if (*sh_r) {
                const bool v = holds_R(parse_nu(sh_a), parse_selem(sh_b));
                out << (v ? "true" : "false") << '\n';
                return v ? exit_ok : exit_negative;
            } else if (*sh_g) {
                const bool v = holds_graphF(parse_nu(sh_a), parse_selem(sh_b), parse_selem(sh_c));
                out << (v ? "true" : "false") << '\n';
                return v ? exit_ok : exit_negative;
            } else if (*sh_enum) {
                const auto b = number(sh_a);
                if (b > 1) throw InputError("b must be 0 or 1");
                for (const auto& x : enumerate(b == 1, number(sh_b))) out << x << '\n';
            } else if (*sh_cl) {
                for (const auto& x : closure(parse_selem(sh_a), number(sh_b))) out << x << '\n';
            } else if (*sh_red) {
                out << reduct_iso(number(sh_a))(parse_selem(sh_b)) << '\n';
            } else if (*sh_tr) {
                for (const auto& nu : distinguishing_trace(parse_selem(sh_a), number(sh_b))) out << show_nu(nu) << '\n';
            } else if (*sh_pair) {
                out << cantor_pair(number(sh_a), number(sh_b)) << '\n';
            } else if (*sh_unpair) {
                const auto [m, n] = cantor_unpair(number(sh_a));
                out << m << ' ' << n << '\n';
            } else if (*sh_str) {
                out << show_nu(Nu(enum_string(number(sh_a)))) << '\n';
            } else if (*sh_vs) {
                const std::size_t L = sh_m;
                auto left_elems = closure(SElem::constant(false), L + 1);
                auto right_elems = closure(SElem::constant(true), L + 1);
                std::vector<SElem> le(left_elems.begin(), left_elems.end()), re;
                le.resize(std::min(le.size(), sh_size));
                const ReductIso h(sh_m);
                for (const auto& x : le) re.push_back(h(x));
                const auto lr = shelah_restriction(le, sh_m), rr = shelah_restriction(re, sh_m);
                const bool ok = verify_duplicator_strategy(lr, rr, sh_m, sh_rounds);
                out << "strategy=" << (ok ? "wins" : "fails") << " M=" << sh_m << " rounds=" << sh_rounds
                    << " size=" << le.size() << '\n';
                return ok ? exit_ok : exit_negative;
            }
            return exit_ok;
        }
        if (*lim) {
            Approximation approx;
            try {
                approx = flip_pattern(lim_pattern);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            if (!lim_query.empty()) {
                const auto colon = lim_query.find(':');
                if (colon == std::string::npos) throw InputError("--query expects tau:mu");
                const LimitFact f{normal_term(parse_nu(lim_query.substr(0, colon))), parse_nu(lim_query.substr(colon + 1))};
                const bool v = query_fact(approx, 0, f);
                out << "R_" << show_nu(f.relation) << "(F_" << show_nu(f.term) << "(a))=" << (v ? "true" : "false") << '\n';
                return v ? exit_ok : exit_negative;
            }
            for (Natural s = 0; s <= lim_stages; ++s) out << build_stage(approx, 0, s).describe() << '\n';
            const Natural stable = *approx.promised_stabilization;
            out << "classification=" << to_string(classify_limit(approx, 0, stable)) << " stabilization=" << stable
                << " a=" << limit_element(approx, 0, stable) << '\n';
            return exit_ok;
        }
        if (*self) {
            if (*self_fun) {
                const FunctorSuite suite = run_functor_suite(seed, fun_size, fun_squares);
                bool ok = suite.controls_detected && suite.squares_ok == suite.squares;
                for (const auto& rep : suite.laws) {
                    out << "laws " << rep.summary() << " status=" << (rep.ok() ? "pass" : "fail") << '\n';
                    for (const auto& v : rep.violations) out << "# " << v << '\n';
                    ok = ok && rep.ok();
                }
                out << "squares checked=" << suite.squares << " commuting=" << suite.squares_ok << '\n';
                out << "controls " << (suite.controls_detected ? "detected" : "missed") << '\n';
                Rng rng(seed);
                std::vector<DiGraph> graphs{DiGraph(0)};
                for (std::size_t i = 1; i < fun_size; ++i) graphs.push_back(random_graph(rng, uniform(rng, 1, 4)));
                const PseudoInverseReport pi = pseudo_inverse_report(graphs);
                out << "pseudo_inverse graphs=" << pi.graphs << " G(F(g))=g:" << pi.graph_round_trips
                    << " F(G(A))~A:" << pi.structure_round_trips << " unknown=" << pi.unknown
                    << " failures=" << pi.failures.size() << '\n';
                out << "# " << pi.note << '\n';
                ok = ok && pi.ok();
                out << "status=" << (ok ? "pass" : "fail") << '\n';
                return ok ? exit_ok : exit_negative;
            }
            AcceptanceConfig cfg;
            if (app.get_option("--seed")->count() > 0) cfg.seed = seed;
            if (self_all || self_ids.empty()) self_ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
            bool all = true;
            for (int id : self_ids) {
                const CriterionResult r = acceptance_criteria()[static_cast<std::size_t>(id - 1)](cfg);
                out << r.line() << '\n';
                for (const auto& f : r.findings) out << "# " << f << '\n';
                out.flush();
                all = all && r.pass;
            }
            return all ? exit_ok : exit_negative;
        }
        if (*cor) {
            if (!cor_normalize.empty()) {
                const std::string text = read_file(cor_normalize);
                out << (looks_like_graph(text) ? serialize(parse_graph(text)) : serialize(parse_structure(text)));
                return exit_ok;
            }
            if (cor_diagram > 0) {
                if (cor_structure.empty()) throw InputError("--diagram needs --structure");
                const auto bits = atomic_diagram_prefix(load_any(cor_structure), cor_diagram);
                for (bool b : bits) out << (b ? '1' : '0');
                out << '\n';
                return exit_ok;
            }
            Rng rng(seed);
            for (std::size_t i = 0; i < cor_count; ++i) {
                if (i > 0) out << "# ---\n";
                if (cor_kind == "graph") out << serialize(random_graph(rng, cor_size));
                else out << serialize(random_structure(rng, random_signature(rng), cor_size));
            }
            return exit_ok;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exhausted: " << e.what() << '\n';
        return exit_budget;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_input;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const InvalidStructure& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_input;
    } catch (const MalformedCoding& e) {
        err << "malformed coding: " << e.what() << '\n';
        return exit_input;
    } catch (const NotAnEmbedding& e) {
        err << "not an embedding: " << e.what() << '\n';
        return exit_input;
    } catch (const ContradictoryEvidence& e) {
        err << "contradictory evidence: " << e.what() << '\n';
        return exit_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return exit_input;
    }
    return exit_ok;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"structcode"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace structcode

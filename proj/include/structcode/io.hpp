#pragma once

// Text formats.
//
//   structure:  sig NAME/ARITY ...      graph:  graph N
//               size N                          e U V
//               fact NAME I1 ... Ik             ...
//
// '#' starts a comment that runs to the end of the line; blank lines are ignored.

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "structcode/core.hpp"

namespace structcode {

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;  // 1-based
    std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            if (j > i) line.tokens.push_back({raw.substr(i, j - i), i + 1});
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

inline std::size_t parse_natural(const Line& line, const Token& tok, const char* what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
        throw ParseError(line.number, tok.column, std::string("expected ") + what + ", got '" + std::string(tok.text) + "'");
    return value;
}

inline void expect_keyword(const Line& line, std::string_view keyword) {
    if (line.tokens.front().text != keyword)
        throw ParseError(line.number, line.tokens.front().column,
                         "expected '" + std::string(keyword) + "', got '" + std::string(line.tokens.front().text) + "'");
}

}  // namespace detail

inline FinStructure parse_structure(std::string_view text) {
    using namespace detail;
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty input, expected 'sig'");

    const Line& sig_line = lines[0];
    expect_keyword(sig_line, "sig");
    std::vector<RelationSymbol> rels;
    for (std::size_t i = 1; i < sig_line.tokens.size(); ++i) {
        const auto& tok = sig_line.tokens[i];
        auto slash = tok.text.rfind('/');
        if (slash == std::string_view::npos || slash == 0)
            throw ParseError(sig_line.number, tok.column, "expected NAME/ARITY, got '" + std::string(tok.text) + "'");
        Token arity_tok{tok.text.substr(slash + 1), tok.column + slash + 1};
        std::size_t arity = parse_natural(sig_line, arity_tok, "arity");
        if (arity == 0) throw ParseError(sig_line.number, arity_tok.column, "arity must be positive");
        std::string name(tok.text.substr(0, slash));
        for (const auto& r : rels)
            if (r.name == name) throw ParseError(sig_line.number, tok.column, "duplicate relation " + name);
        rels.push_back({std::move(name), arity});
    }
    Signature sig(std::move(rels));

    if (lines.size() < 2) throw ParseError(sig_line.number + 1, 1, "expected 'size N'");
    const Line& size_line = lines[1];
    expect_keyword(size_line, "size");
    if (size_line.tokens.size() != 2)
        throw ParseError(size_line.number, size_line.tokens.front().column, "expected 'size N'");
    std::size_t size = parse_natural(size_line, size_line.tokens[1], "universe size");

    FinStructure s(sig, size);
    for (std::size_t li = 2; li < lines.size(); ++li) {
        const Line& line = lines[li];
        expect_keyword(line, "fact");
        if (line.tokens.size() < 2) throw ParseError(line.number, line.tokens[0].column, "missing relation name");
        const auto& name_tok = line.tokens[1];
        auto r = sig.find(std::string(name_tok.text));
        if (!r) throw ParseError(line.number, name_tok.column, "unknown relation '" + std::string(name_tok.text) + "'");
        std::size_t arity = sig[*r].arity;
        if (line.tokens.size() - 2 != arity)
            throw ParseError(line.number, name_tok.column,
                             "arity mismatch for " + sig[*r].name + ": expected " + std::to_string(arity) + ", got " +
                                 std::to_string(line.tokens.size() - 2));
        Tuple t;
        for (std::size_t k = 2; k < line.tokens.size(); ++k) {
            std::size_t x = parse_natural(line, line.tokens[k], "element index");
            if (x >= size)
                throw ParseError(line.number, line.tokens[k].column,
                                 "element " + std::to_string(x) + " out of range for size " + std::to_string(size));
            t.push_back(x);
        }
        s.add_fact(*r, std::move(t));
    }
    return s;
}

inline std::string serialize(const FinStructure& s) {
    std::ostringstream out;
    out << "sig";
    for (const auto& r : s.signature().relations()) out << ' ' << r.name << '/' << r.arity;
    out << "\nsize " << s.size() << '\n';
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.facts(r)) {
            out << "fact " << s.signature()[r].name;
            for (auto x : t) out << ' ' << x;
            out << '\n';
        }
    return out.str();
}

inline DiGraph parse_graph(std::string_view text) {
    using namespace detail;
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty input, expected 'graph N'");
    const Line& head = lines[0];
    expect_keyword(head, "graph");
    if (head.tokens.size() != 2) throw ParseError(head.number, head.tokens[0].column, "expected 'graph N'");
    std::size_t n = parse_natural(head, head.tokens[1], "vertex count");

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool loops = false;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        expect_keyword(line, "e");
        if (line.tokens.size() != 3) throw ParseError(line.number, line.tokens[0].column, "expected 'e U V'");
        std::size_t u = parse_natural(line, line.tokens[1], "vertex");
        std::size_t v = parse_natural(line, line.tokens[2], "vertex");
        if (u >= n) throw ParseError(line.number, line.tokens[1].column, "vertex " + std::to_string(u) + " out of range");
        if (v >= n) throw ParseError(line.number, line.tokens[2].column, "vertex " + std::to_string(v) + " out of range");
        loops = loops || u == v;
        edges.emplace_back(u, v);
    }
    DiGraph g(n, loops);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline std::string serialize(const DiGraph& g) {
    std::ostringstream out;
    out << "graph " << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

inline std::string read_all(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace structcode

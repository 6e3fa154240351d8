#pragma once

// Stage-wise construction of a computable structure C_i from a 0/1
// approximation f(i, s). The distinguished element a is read as the string
// j -> f(i, j); every other element is a term F_tau(a), kept in XOR-normal form
// (trailing zeros of tau removed, since F_{tau0} = F_tau). C_i is isomorphic to
// S_0 or S_1 according to the limit of f(i, .).

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "structcode/core.hpp"
#include "structcode/shelah.hpp"

namespace structcode {

struct Approximation {
    std::function<bool(Natural i, Natural s)> eval;
    std::optional<Natural> promised_stabilization;

    bool operator()(Natural i, Natural s) const { return eval(i, s); }
};

// f(i, s) = pattern[s] for s < |pattern|, then the last bit of the pattern forever.
inline Approximation flip_pattern(const BitString& pattern) {
    if (pattern.empty()) throw std::invalid_argument("flip_pattern: empty pattern");
    for (char c : pattern)
        if (c != '0' && c != '1') throw std::invalid_argument("flip_pattern: not a bit string: " + pattern);
    std::size_t stable = pattern.size() - 1;
    while (stable > 0 && pattern[stable - 1] == pattern.back()) --stable;
    return {[pattern](Natural, Natural s) { return (s < pattern.size() ? pattern[s] : pattern.back()) == '1'; },
            stable};
}

inline Approximation constant_approximation(bool b) {
    return {[b](Natural, Natural) { return b; }, Natural{0}};
}

inline Nu normal_term(const Nu& tau) {
    BitString b = tau.bits;
    while (!b.empty() && b.back() == '0') b.pop_back();
    return Nu(std::move(b));
}

// R_mu(F_tau(a)).
struct LimitFact {
    Nu term;
    Nu relation;
    auto operator<=>(const LimitFact&) const = default;
};

struct StageStructure {
    Natural stage = 0;
    BitString known;                         // a(j) for j < known.size()
    std::vector<Nu> elements;                // normalized terms; elements[0] is a
    std::map<LimitFact, bool> decided;       // every decided R fact
    std::map<Nu, Nu> function_values;        // F_nu(a) = term, for the defined nu

    bool has_element(const Nu& term) const {
        return std::find(elements.begin(), elements.end(), normal_term(term)) != elements.end();
    }

    std::optional<bool> fact(const Nu& term, const Nu& relation) const {
        auto it = decided.find({normal_term(term), relation});
        if (it == decided.end()) return std::nullopt;
        return it->second;
    }

    std::set<LimitFact> positive_facts() const {
        std::set<LimitFact> out;
        for (const auto& [f, v] : decided)
            if (v) out.insert(f);
        return out;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "stage=" << stage << " a=" << (known.empty() ? "-" : known) << " elements=" << elements.size()
           << " facts=";
        bool first = true;
        for (const auto& [f, v] : decided) {
            if (!v) continue;
            os << (first ? "" : ",") << "R_" << (f.relation.bits.empty() ? "e" : f.relation.bits) << "(F_"
               << (f.term.bits.empty() ? "e" : f.term.bits) << "a)";
            first = false;
        }
        if (first) os << "-";
        return os.str();
    }
};

namespace detail {

inline bool prefix_of_shifted(const Nu& mu, const Nu& tau, const BitString& bits) {
    for (std::size_t j = 0; j < mu.size(); ++j)
        if (mu.bit(j) != ((bits[j] == '1') != tau.bit(j))) return false;
    return true;
}

}  // namespace detail

// Stage 0 is the single element a with no facts. Stage s >= 1 looks at
// f(i, j) for j < s and applies the two clauses with parameter s.
inline StageStructure build_stage(const Approximation& approx, Natural i, Natural s) {
    StageStructure st;
    st.stage = s;
    st.elements.push_back(Nu());
    if (s == 0) return st;
    for (Natural j = 0; j < s; ++j) st.known.push_back(approx(i, j) ? '1' : '0');
    // Clause 1: R_{g(k)}(a) and F_{g(k)}(a) for k <= s, |g(k)| <= s.
    for (Natural k = 0; k <= s; ++k) {
        Nu nu(enum_string(k));
        if (nu.size() > s) continue;
        st.decided[{Nu(), nu}] = detail::prefix_of_shifted(nu, Nu(), st.known);
        Nu term = normal_term(nu);
        if (!st.has_element(term)) st.elements.push_back(term);
        st.function_values[nu] = term;
    }
    // Clause 2: R_{g(l)}(b) for every element b = F_tau(a) and l <= s.
    for (const auto& tau : st.elements)
        for (Natural l = 0; l <= s; ++l) {
            Nu mu(enum_string(l));
            if (mu.size() > s) continue;
            st.decided[{tau, mu}] = detail::prefix_of_shifted(mu, tau, st.known);
        }
    return st;
}

// Decides R_mu(F_tau(a)) from f(i, j) for j < |mu| alone.
inline bool query_fact(const Approximation& approx, Natural i, const LimitFact& fact) {
    BitString bits;
    for (std::size_t j = 0; j < fact.relation.size(); ++j) bits.push_back(approx(i, j) ? '1' : '0');
    return detail::prefix_of_shifted(fact.relation, fact.term, bits);
}

enum class LimitType { S0, S1 };

inline const char* to_string(LimitType t) { return t == LimitType::S0 ? "S0" : "S1"; }

// Needs the stabilization promise: this is the one jump the construction takes.
inline LimitType classify_limit(const Approximation& approx, Natural i, Natural stabilization_bound) {
    return approx(i, stabilization_bound) ? LimitType::S1 : LimitType::S0;
}

// The string of a in the limit, given that f(i, .) is constant from `stable` on.
inline SElem limit_element(const Approximation& approx, Natural i, Natural stable) {
    BitString p;
    for (Natural j = 0; j < stable; ++j) p.push_back(approx(i, j) ? '1' : '0');
    return SElem(std::move(p), approx(i, stable));
}

// Restriction of C_i to the given terms in the sublanguage |nu| <= nu_bound,
// computed through query_fact (R) and XOR of terms (graph of F).
inline FinStructure limit_restriction(const Approximation& approx, Natural i, const std::vector<Nu>& terms,
                                      std::size_t nu_bound) {
    FinStructure s(shelah_signature(nu_bound), terms.size());
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        Nu nu(enum_string(r / 2));
        for (std::size_t x = 0; x < terms.size(); ++x) {
            if (r % 2 == 0) {
                if (query_fact(approx, i, {normal_term(terms[x]), nu})) s.add_fact(r, {x});
                continue;
            }
            const Nu target = normal_term(xor_nu(terms[x], nu));
            for (std::size_t y = 0; y < terms.size(); ++y)
                if (normal_term(terms[y]) == target) s.add_fact(r, {x, y});
        }
    }
    return s;
}

// All normalized terms tau with |tau| <= depth (2^depth of them).
inline std::vector<Nu> terms_up_to(std::size_t depth) {
    std::vector<Nu> out;
    for (Natural k = 0; k < strings_up_to_length(depth); ++k) {
        Nu t = normal_term(Nu(enum_string(k)));
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
}

}  // namespace structcode

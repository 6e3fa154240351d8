#pragma once

// Eventually constant binary strings under the XOR functions F_nu and the
// prefix predicates R_nu. S_b is the part generated by the constant string b.

#include <deque>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "structcode/core.hpp"
#include "structcode/oracle.hpp"

namespace structcode {

// Index into {0,1}^<N naming F_nu and R_nu.
struct Nu {
    BitString bits;

    Nu() = default;
    explicit Nu(BitString b) : bits(std::move(b)) {
        for (char c : bits)
            if (c != '0' && c != '1') throw std::invalid_argument("Nu: not a bit string: " + bits);
    }
    std::size_t size() const { return bits.size(); }
    bool bit(std::size_t i) const { return i < bits.size() && bits[i] == '1'; }

    auto operator<=>(const Nu&) const = default;
};

// The infinite string prefix . tail^omega, normalized so that the prefix never
// ends with the tail bit.
class SElem {
public:
    SElem() = default;
    SElem(BitString prefix, bool tail) : prefix_(std::move(prefix)), tail_(tail) {
        for (char c : prefix_)
            if (c != '0' && c != '1') throw std::invalid_argument("SElem: not a bit string: " + prefix_);
        const char t = tail_ ? '1' : '0';
        while (!prefix_.empty() && prefix_.back() == t) prefix_.pop_back();
    }

    static SElem constant(bool b) { return SElem("", b); }

    const BitString& prefix() const { return prefix_; }
    bool tail() const { return tail_; }
    bool bit(std::size_t i) const { return i < prefix_.size() ? prefix_[i] == '1' : tail_; }

    std::string to_string() const { return prefix_ + ":" + (tail_ ? "1" : "0"); }

    static SElem parse(const std::string& text) {
        auto colon = text.find(':');
        if (colon == std::string::npos || colon + 2 != text.size() || (text.back() != '0' && text.back() != '1'))
            throw std::invalid_argument("SElem: expected PREFIX:TAILBIT, got '" + text + "'");
        return SElem(text.substr(0, colon), text.back() == '1');
    }

    auto operator<=>(const SElem&) const = default;

private:
    BitString prefix_;
    bool tail_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const SElem& x) { return os << x.to_string(); }

inline Nu xor_nu(const Nu& a, const Nu& b) {
    BitString out(std::max(a.size(), b.size()), '0');
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.bit(i) != b.bit(i)) ? '1' : '0';
    return Nu(std::move(out));
}

inline SElem eval_F(const Nu& nu, const SElem& x) {
    BitString out(std::max(nu.size(), x.prefix().size()), '0');
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x.bit(i) != nu.bit(i)) ? '1' : '0';
    return SElem(std::move(out), x.tail());
}

inline bool holds_R(const Nu& nu, const SElem& x) {
    for (std::size_t i = 0; i < nu.size(); ++i)
        if (nu.bit(i) != x.bit(i)) return false;
    return true;
}

inline bool holds_graphF(const Nu& nu, const SElem& x, const SElem& y) { return eval_F(nu, x) == y; }

// k-th element of S_b in length-lex order of normalized prefixes; element 0 is
// the constant string b.
inline SElem shelah_element(bool b, Natural k) {
    if (k == 0) return SElem::constant(b);
    std::size_t len = 0;
    while ((Natural{1} << len) <= k) ++len;  // 2^(len-1) <= k < 2^len
    const Natural offset = k - (Natural{1} << (len - 1));
    BitString p(len, '0');
    for (std::size_t i = 0; i + 1 < len; ++i) p[i] = ((offset >> (len - 2 - i)) & 1) ? '1' : '0';
    p[len - 1] = b ? '0' : '1';
    return SElem(std::move(p), b);
}

inline Natural shelah_index(const SElem& x) {
    const auto& p = x.prefix();
    if (p.empty()) return 0;
    if (p.size() >= 63) throw std::out_of_range("shelah_index: prefix too long");
    Natural offset = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) offset = (offset << 1) | (p[i] == '1' ? 1 : 0);
    return (Natural{1} << (p.size() - 1)) + offset;
}

inline std::vector<SElem> enumerate(bool b, std::size_t n) {
    std::vector<SElem> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(shelah_element(b, k));
    return out;
}

// Closure of {seed} under F_nu for all |nu| <= L.
inline std::set<SElem> closure(const SElem& seed, std::size_t L) {
    std::set<SElem> seen{seed};
    std::deque<SElem> todo{seed};
    const Natural nus = strings_up_to_length(L);
    while (!todo.empty()) {
        SElem x = todo.front();
        todo.pop_front();
        for (Natural k = 0; k < nus; ++k) {
            SElem y = eval_F(Nu(enum_string(k)), x);
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return seen;
}

// h_M: complement every bit at position >= M. Sends S_b onto S_{1-b} and
// commutes with every F_nu and R_nu with |nu| <= M.
class ReductIso {
public:
    explicit ReductIso(std::size_t M) : M_(M) {}
    std::size_t bound() const { return M_; }

    SElem operator()(const SElem& x) const {
        BitString out(std::max(M_, x.prefix().size()), '0');
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x.bit(i) != (i >= M_)) ? '1' : '0';
        return SElem(std::move(out), !x.tail());
    }

    // h_M is an involution.
    SElem inverse(const SElem& y) const { return (*this)(y); }

private:
    std::size_t M_;
};

inline ReductIso reduct_iso(std::size_t M) { return ReductIso(M); }

inline std::set<Nu> distinguishing_trace(const SElem& x, std::size_t L) {
    std::set<Nu> out;
    for (Natural k = 0; k < strings_up_to_length(L); ++k) {
        Nu nu(enum_string(k));
        if (holds_R(nu, x)) out.insert(nu);
    }
    return out;
}

// {b^k : k <= L}, the trace of the generator of S_b.
inline std::set<Nu> constant_trace(bool b, std::size_t L) {
    std::set<Nu> out;
    for (std::size_t k = 0; k <= L; ++k) out.insert(Nu(BitString(k, b ? '1' : '0')));
    return out;
}

// ---------------------------------------------------------------------------
// Relational presentation: R_nu at relation 2k, graph(F_nu) at 2k+1, where nu = enum_string(k).
// ---------------------------------------------------------------------------

inline std::string relation_name_R(const Nu& nu) { return "R_" + nu.bits; }
inline std::string relation_name_gF(const Nu& nu) { return "gF_" + nu.bits; }

inline std::size_t shelah_relation_bound(std::size_t nu_bound) {
    return static_cast<std::size_t>(2 * strings_up_to_length(nu_bound));
}

inline RelationSymbol shelah_relation(std::size_t r) {
    Nu nu(enum_string(r / 2));
    return r % 2 == 0 ? RelationSymbol{relation_name_R(nu), 1} : RelationSymbol{relation_name_gF(nu), 2};
}

inline Signature shelah_signature(std::size_t nu_bound) {
    std::vector<RelationSymbol> rels;
    for (std::size_t r = 0; r < shelah_relation_bound(nu_bound); ++r) rels.push_back(shelah_relation(r));
    return Signature(std::move(rels));
}

// Decides relation r of the relational presentation on explicit elements.
inline bool shelah_holds(std::size_t r, std::span<const SElem> xs) {
    Nu nu(enum_string(r / 2));
    if (r % 2 == 0) return holds_R(nu, xs[0]);
    return holds_graphF(nu, xs[0], xs[1]);
}

// S_b with universe N via shelah_element.
inline AtomOracle shelah_oracle(bool b) {
    return AtomOracle(shelah_relation, std::nullopt, std::nullopt, [b](std::size_t r, std::span<const std::size_t> xs) {
        std::vector<SElem> elems;
        for (auto x : xs) elems.push_back(shelah_element(b, x));
        return shelah_holds(r, elems);
    });
}

// Finite substructure over explicit elements in the sublanguage |nu| <= nu_bound.
struct ShelahRestriction {
    std::vector<SElem> elements;
    FinStructure structure;
};

inline ShelahRestriction shelah_restriction(std::vector<SElem> elements, std::size_t nu_bound) {
    FinStructure s(shelah_signature(nu_bound), elements.size());
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        std::vector<SElem> args(s.signature()[r].arity);
        for_each_tuple(elements.size(), args.size(), [&](const Tuple& t) {
            for (std::size_t i = 0; i < t.size(); ++i) args[i] = elements[t[i]];
            if (shelah_holds(r, args)) s.add_fact(r, t);
        });
    }
    return {std::move(elements), std::move(s)};
}

}  // namespace structcode

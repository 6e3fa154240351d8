#include <gtest/gtest.h>

#include <set>

#include "structcode/corpus.hpp"
#include "structcode/shelah.hpp"

using namespace structcode;

namespace {

constexpr std::size_t width = 40;

// Explicit first `width` bits of an element; the tail repeats beyond that.
std::string expand(const SElem& x) {
    std::string s = x.prefix();
    s.resize(width, x.tail() ? '1' : '0');
    return s;
}

std::string xor_oracle(const std::string& nu, const std::string& bits) {
    std::string out = bits;
    for (std::size_t i = 0; i < nu.size(); ++i)
        if (nu[i] == '1') out[i] = out[i] == '1' ? '0' : '1';
    return out;
}

SElem random_element(Rng& rng, std::size_t max_prefix) {
    std::string p;
    for (std::size_t i = uniform(rng, 0, max_prefix); i > 0; --i) p.push_back(coin(rng) ? '1' : '0');
    return SElem(p, coin(rng));
}

Nu random_nu(Rng& rng, std::size_t max_len) {
    std::string p;
    for (std::size_t i = uniform(rng, 0, max_len); i > 0; --i) p.push_back(coin(rng) ? '1' : '0');
    return Nu(p);
}

}  // namespace

TEST(SElem, NormalizationAndText) {
    EXPECT_EQ(SElem("1000", false), SElem("1", false));
    EXPECT_EQ(SElem("0111", true).prefix(), "0");
    EXPECT_EQ(SElem("1", false).to_string(), "1:0");
    EXPECT_EQ(SElem::parse(":1"), SElem::constant(true));
    EXPECT_EQ(SElem::parse("0110:0"), SElem("011", false));
    EXPECT_THROW(SElem::parse("01"), std::invalid_argument);
    EXPECT_THROW(SElem::parse("0:2"), std::invalid_argument);
}

TEST(EvalF, Examples) {
    EXPECT_EQ(eval_F(Nu("1"), SElem::constant(false)), SElem("1", false));
    EXPECT_EQ(eval_F(Nu("1"), SElem("1", false)), SElem::constant(false));
    EXPECT_EQ(eval_F(Nu("01"), SElem::constant(true)), SElem("10", true));
}

TEST(EvalF, MatchesExplicitXor) {
    Rng rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
        const SElem x = random_element(rng, 8);
        const Nu nu = random_nu(rng, 8);
        const SElem y = eval_F(nu, x);
        ASSERT_EQ(expand(y), xor_oracle(nu.bits, expand(x)));
        ASSERT_EQ(y.tail(), x.tail());
    }
}

TEST(EvalF, InvolutionAndComposition) {
    Rng rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
        const SElem x = random_element(rng, 8);
        const Nu mu = random_nu(rng, 6), nu = random_nu(rng, 6);
        ASSERT_EQ(eval_F(nu, eval_F(nu, x)), x);
        ASSERT_EQ(eval_F(mu, eval_F(nu, x)), eval_F(xor_nu(mu, nu), x));
    }
}

TEST(HoldsR, Examples) {
    EXPECT_TRUE(holds_R(Nu("00"), SElem::constant(false)));
    EXPECT_FALSE(holds_R(Nu("1"), SElem::constant(false)));
    EXPECT_TRUE(holds_R(Nu("110"), SElem("11", false)));
    EXPECT_TRUE(holds_R(Nu(), SElem::constant(true)));
}

TEST(HoldsR, MatchesExplicitPrefixTest) {
    Rng rng(23);
    for (int trial = 0; trial < 2000; ++trial) {
        const SElem x = random_element(rng, 6);
        const Nu nu = random_nu(rng, 8);
        ASSERT_EQ(holds_R(nu, x), expand(x).compare(0, nu.size(), nu.bits) == 0);
    }
}

TEST(HoldsGraphF, Examples) {
    EXPECT_TRUE(holds_graphF(Nu("1"), SElem::constant(false), SElem("1", false)));
    EXPECT_FALSE(holds_graphF(Nu("1"), SElem::constant(false), SElem::constant(false)));
    Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const SElem x = random_element(rng, 6);
        EXPECT_TRUE(holds_graphF(Nu(), x, x));
    }
}

TEST(Enumerate, Examples) {
    EXPECT_EQ(enumerate(false, 1), std::vector<SElem>{SElem::constant(false)});
    const auto three = enumerate(false, 3);
    EXPECT_EQ(three[0], SElem::constant(false));
    EXPECT_EQ(three[1], SElem("1", false));
    EXPECT_EQ(three[2], SElem("01", false));
    EXPECT_EQ(enumerate(true, 1), std::vector<SElem>{SElem::constant(true)});
}

TEST(Enumerate, LengthLexOverNormalizedPrefixes) {
    for (bool b : {false, true}) {
        // Oracle: every prefix not ending in b, in length-lex order.
        std::vector<SElem> expected;
        for (Natural k = 0; expected.size() < 500; ++k) {
            const BitString p = enum_string(k);
            if (!p.empty() && p.back() == (b ? '1' : '0')) continue;
            expected.push_back(SElem(p, b));
        }
        const auto got = enumerate(b, 500);
        EXPECT_EQ(got, expected);
        EXPECT_EQ(std::set<SElem>(got.begin(), got.end()).size(), 500u);
        for (Natural k = 0; k < 500; ++k) EXPECT_EQ(shelah_index(got[k]), k);
    }
}

TEST(Closure, Examples) {
    EXPECT_EQ(closure(SElem::constant(false), 0), std::set<SElem>{SElem::constant(false)});
    EXPECT_EQ(closure(SElem::constant(false), 1), (std::set<SElem>{SElem::constant(false), SElem("1", false)}));
}

TEST(Closure, IsTheCosetOfSize2ToTheL) {
    Rng rng(25);
    for (int seed = 0; seed < 20; ++seed) {
        const SElem x = random_element(rng, 5);
        for (std::size_t L = 0; L <= 6; ++L) {
            const auto c = closure(x, L);
            ASSERT_EQ(c.size(), std::size_t{1} << L);
            std::set<std::string> coset;
            for (unsigned m = 0; m < (1u << L); ++m) {
                std::string nu;
                for (std::size_t i = 0; i < L; ++i) nu.push_back((m >> i) & 1 ? '1' : '0');
                coset.insert(xor_oracle(nu, expand(x)));
            }
            std::set<std::string> got;
            for (const auto& y : c) got.insert(expand(y));
            ASSERT_EQ(got, coset);
        }
    }
}

TEST(ReductIso, Examples) {
    EXPECT_EQ(reduct_iso(0)(SElem::constant(false)), SElem::constant(true));
    EXPECT_EQ(reduct_iso(2)(SElem::constant(false)), SElem("00", true));
    EXPECT_TRUE(holds_R(Nu("0"), SElem::constant(false)));
    EXPECT_TRUE(holds_R(Nu("0"), reduct_iso(2)(SElem::constant(false))));
}

TEST(ReductIso, PreservesAndReflectsBoundedFacts) {
    Rng rng(26);
    for (std::size_t M = 0; M <= 4; ++M) {
        const ReductIso h(M);
        for (int trial = 0; trial < 200; ++trial) {
            const SElem x = random_element(rng, 7), y = random_element(rng, 7);
            if (x.tail() != y.tail()) continue;
            const Nu nu = random_nu(rng, M);
            ASSERT_EQ(expand(h(x)), [&] {
                std::string s = expand(x);
                for (std::size_t i = M; i < s.size(); ++i) s[i] = s[i] == '1' ? '0' : '1';
                return s;
            }());
            ASSERT_EQ(h.inverse(h(x)), x);
            ASSERT_EQ(holds_R(nu, x), holds_R(nu, h(x)));
            ASSERT_EQ(holds_graphF(nu, x, y), holds_graphF(nu, h(x), h(y)));
            ASSERT_EQ(holds_graphF(nu, x, eval_F(nu, x)), holds_graphF(nu, h(x), h(eval_F(nu, x))));
        }
    }
}

TEST(ReductIso, FailsBeyondItsBound) {
    // With |nu| = M + 1 the map is no longer an isomorphism of the reducts.
    const ReductIso h(2);
    const SElem x = SElem::constant(false);
    EXPECT_NE(holds_R(Nu("000"), x), holds_R(Nu("000"), h(x)));
}

TEST(DistinguishingTrace, Examples) {
    EXPECT_EQ(distinguishing_trace(SElem::constant(false), 2), (std::set<Nu>{Nu(""), Nu("0"), Nu("00")}));
    EXPECT_EQ(distinguishing_trace(SElem::constant(true), 2), (std::set<Nu>{Nu(""), Nu("1"), Nu("11")}));
    EXPECT_EQ(distinguishing_trace(SElem("1", false), 2), (std::set<Nu>{Nu(""), Nu("1"), Nu("10")}));
}

TEST(DistinguishingTrace, GeneratorHasTheZeroTrace) {
    for (std::size_t L = 0; L <= 8; ++L) {
        EXPECT_EQ(distinguishing_trace(SElem::constant(false), L), constant_trace(false, L));
        EXPECT_EQ(distinguishing_trace(SElem::constant(true), L), constant_trace(true, L));
    }
}

TEST(DistinguishingTrace, ShortTracesDoNotSeparate) {
    // S_1 contains 00000:1, whose length-5 trace equals the trace of the S_0 generator;
    // it is the 16th element, so L = 5 cannot separate the first 100 elements, while L >= 8 can.
    const auto s1 = enumerate(true, 100);
    EXPECT_EQ(s1[16], SElem("00000", true));
    EXPECT_EQ(distinguishing_trace(s1[16], 5), constant_trace(false, 5));
    for (std::size_t L = 8; L <= 10; ++L)
        for (const auto& x : s1) EXPECT_NE(distinguishing_trace(x, L), constant_trace(false, L)) << x;
}

TEST(Relational, SignatureAndFacts) {
    const Signature sig = shelah_signature(1);
    ASSERT_EQ(sig.size(), 6u);
    EXPECT_EQ(sig[0].name, "R_");
    EXPECT_EQ(sig[1].name, "gF_");
    EXPECT_EQ(sig[4].name, "R_1");
    EXPECT_EQ(sig[4].arity, 1u);
    EXPECT_EQ(sig[5].arity, 2u);
    const auto r = shelah_restriction(enumerate(false, 4), 1);
    // F_1 swaps 0-bar and 1:0, which are elements 0 and 1.
    EXPECT_TRUE(r.structure.holds(5, {0, 1}));
    EXPECT_TRUE(r.structure.holds(5, {1, 0}));
    EXPECT_TRUE(r.structure.holds(2, {0}));
    EXPECT_FALSE(r.structure.holds(2, {1}));
}

#include <gtest/gtest.h>

#include "structcode/corpus.hpp"
#include "structcode/limit_builder.hpp"
#include "structcode/search.hpp"

using namespace structcode;

namespace {

// R_mu(F_tau(a)) in the limit: mu is a prefix of (j -> f(j)) XOR tau, read bit by bit.
bool limit_oracle(const BitString& pattern, const BitString& tau, const BitString& mu) {
    for (std::size_t j = 0; j < mu.size(); ++j) {
        const char f = j < pattern.size() ? pattern[j] : pattern.back();
        const bool t = j < tau.size() && tau[j] == '1';
        if ((mu[j] == '1') != ((f == '1') != t)) return false;
    }
    return true;
}

BitString random_bits(Rng& rng, std::size_t n) {
    BitString s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(coin(rng) ? '1' : '0');
    return s;
}

}  // namespace

TEST(BuildStage, ConstantZeroAtStageTwo) {
    const StageStructure st = build_stage(constant_approximation(false), 0, 2);
    EXPECT_EQ(st.known, "00");
    EXPECT_EQ(st.fact(Nu(), Nu()), true);
    EXPECT_EQ(st.fact(Nu(), Nu("0")), true);
    EXPECT_EQ(st.fact(Nu(), Nu("1")), false);
    // R_00 is g(3), so stage 2 has not decided it yet; stage 3 does.
    EXPECT_EQ(st.fact(Nu(), Nu("00")), std::nullopt);
    EXPECT_EQ(build_stage(constant_approximation(false), 0, 3).fact(Nu(), Nu("00")), true);
    EXPECT_TRUE(st.has_element(Nu("1")));
    EXPECT_TRUE(st.has_element(Nu("10")));
}

TEST(BuildStage, StageZeroIsTheBareGenerator) {
    const StageStructure st = build_stage(flip_pattern("1"), 0, 0);
    EXPECT_EQ(st.elements.size(), 1u);
    EXPECT_TRUE(st.decided.empty());
    EXPECT_TRUE(st.function_values.empty());
    EXPECT_EQ(st.describe(), "stage=0 a=- elements=1 facts=-");
}

TEST(BuildStage, PatternWithLateFlip) {
    const Approximation approx = flip_pattern("1110");
    EXPECT_EQ(approx.promised_stabilization, Natural{3});
    EXPECT_EQ(build_stage(approx, 0, 1).fact(Nu(), Nu("1")), std::nullopt);
    for (Natural s = 2; s <= 8; ++s) EXPECT_EQ(build_stage(approx, 0, s).fact(Nu(), Nu("1")), true) << s;
    EXPECT_EQ(classify_limit(approx, 0, 3), LimitType::S0);
    EXPECT_EQ(limit_element(approx, 0, 3), SElem("111", false));
}

TEST(BuildStage, DecidedFactsMatchTheLimit) {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const BitString pattern = random_bits(rng, uniform(rng, 1, 8));
        const Approximation approx = flip_pattern(pattern);
        for (Natural s = 0; s <= 10; ++s) {
            const StageStructure st = build_stage(approx, 0, s);
            for (const auto& [f, v] : st.decided) ASSERT_EQ(v, limit_oracle(pattern, f.term.bits, f.relation.bits));
        }
    }
}

TEST(BuildStage, StagesAreNested) {
    Rng rng(72);
    for (int trial = 0; trial < 30; ++trial) {
        const Approximation approx = flip_pattern(random_bits(rng, uniform(rng, 1, 10)));
        for (Natural s = 0; s < 12; ++s) {
            const StageStructure a = build_stage(approx, 0, s), b = build_stage(approx, 0, s + 1);
            ASSERT_EQ(b.known.compare(0, a.known.size(), a.known), 0);
            for (const auto& e : a.elements) ASSERT_TRUE(b.has_element(e));
            for (const auto& [f, v] : a.decided) ASSERT_EQ(b.fact(f.term, f.relation), v);
            for (const auto& [nu, term] : a.function_values) ASSERT_EQ(b.function_values.at(nu), term);
        }
    }
}

TEST(QueryFact, Examples) {
    const Approximation zero = constant_approximation(false);
    EXPECT_TRUE(query_fact(zero, 0, {Nu(), Nu("000")}));
    EXPECT_FALSE(query_fact(zero, 0, {Nu(), Nu("01")}));
    EXPECT_TRUE(query_fact(zero, 0, {Nu("01"), Nu("01")}));
    EXPECT_TRUE(query_fact(flip_pattern("10"), 0, {Nu("1"), Nu("000")}));
}

TEST(QueryFact, MatchesOracle) {
    Rng rng(73);
    for (int trial = 0; trial < 1000; ++trial) {
        const BitString pattern = random_bits(rng, uniform(rng, 1, 8));
        const BitString tau = random_bits(rng, uniform(rng, 0, 6)), mu = random_bits(rng, uniform(rng, 0, 10));
        ASSERT_EQ(query_fact(flip_pattern(pattern), 0, {Nu(tau), Nu(mu)}), limit_oracle(pattern, tau, mu));
    }
}

TEST(QueryFact, ReadsOnlyTheNeededStages) {
    std::size_t calls = 0;
    Natural max_stage = 0;
    const Approximation spy{[&](Natural, Natural s) {
                                ++calls;
                                max_stage = std::max(max_stage, s);
                                return false;
                            },
                            std::nullopt};
    query_fact(spy, 0, {Nu("1"), Nu("0101")});
    EXPECT_EQ(calls, 4u);
    EXPECT_EQ(max_stage, Natural{3});
}

TEST(ClassifyLimit, FollowsTheLastBit) {
    Rng rng(74);
    for (int trial = 0; trial < 100; ++trial) {
        const BitString pattern = random_bits(rng, uniform(rng, 1, 12));
        const Approximation approx = flip_pattern(pattern);
        const Natural stable = *approx.promised_stabilization;
        ASSERT_EQ(classify_limit(approx, 0, stable), pattern.back() == '1' ? LimitType::S1 : LimitType::S0);
        ASSERT_TRUE(stable == 0 || pattern[stable - 1] != pattern.back());
    }
}

TEST(ClassifyLimit, JumpIsNotLocal) {
    // Two approximations that agree below s have identical stage-s structures but opposite limits.
    Rng rng(75);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t s = uniform(rng, 0, 12);
        const BitString shared = random_bits(rng, s);
        const Approximation zero = flip_pattern(shared + "0"), one = flip_pattern(shared + "1");
        const StageStructure a = build_stage(zero, 0, s), b = build_stage(one, 0, s);
        ASSERT_EQ(a.decided, b.decided);
        ASSERT_EQ(a.elements, b.elements);
        ASSERT_NE(classify_limit(zero, 0, s), classify_limit(one, 0, s));
    }
}

TEST(LimitRestriction, IsARestrictionOfTheShelahStructure) {
    Rng rng(76);
    for (int trial = 0; trial < 30; ++trial) {
        const BitString pattern = random_bits(rng, uniform(rng, 1, 6));
        const Approximation approx = flip_pattern(pattern);
        const auto terms = terms_up_to(3);
        ASSERT_EQ(terms.size(), 8u);
        const FinStructure lim = limit_restriction(approx, 0, terms, 2);
        const SElem a = limit_element(approx, 0, *approx.promised_stabilization);
        ASSERT_EQ(a.tail(), pattern.back() == '1');
        std::vector<SElem> images;
        for (const auto& tau : terms) images.push_back(eval_F(tau, a));
        const auto sb = shelah_restriction(images, 2);
        ASSERT_TRUE(is_isomorphism(Morphism::identity(terms.size()), lim, sb.structure));
        for (std::size_t x = 0; x < terms.size(); ++x)
            for (std::size_t r = 0; r < lim.signature().size(); r += 2)
                ASSERT_EQ(lim.holds(r, {x}), limit_oracle(pattern, terms[x].bits, enum_string(r / 2)));
    }
}

TEST(Approximation, RejectsBadPatterns) {
    EXPECT_THROW(flip_pattern(""), std::invalid_argument);
    EXPECT_THROW(flip_pattern("012"), std::invalid_argument);
}

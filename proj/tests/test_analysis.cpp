#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "sboxkit/analysis.hpp"
#include "sboxkit/dataset.hpp"
#include "sboxkit/generation.hpp"

using namespace sboxkit;

namespace {

const SBox& aes() { return get_classical("AES").table; }

std::vector<std::uint8_t> bits_of(const BooleanFunction& f) { return {f.bits().begin(), f.bits().end()}; }

double rel_diff(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

SBox permute_output_bits(const SBox& s, const std::vector<unsigned>& perm) {
    std::vector<std::uint32_t> t(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::uint32_t y = 0;
        for (unsigned b = 0; b < perm.size(); ++b) y |= ((s[x] >> b) & 1u) << perm[b];
        t[x] = y;
    }
    return SBox(s.n(), s.m(), std::move(t));
}

}  // namespace

// --- bijectivity and components -------------------------------------------

TEST(IsBijective, Examples) {
    EXPECT_TRUE(is_bijective(SBox::identity(4)));
    EXPECT_FALSE(is_bijective(SBox(2, 2, {0, 0, 1, 2})));
    EXPECT_TRUE(is_bijective(aes()));
    EXPECT_FALSE(is_bijective(SBox(2, 3, {0, 1, 2, 3})));
}

TEST(ComponentFunction, SelectsMaskedBits) {
    const SBox id = SBox::identity(2);
    EXPECT_EQ(bits_of(component_function(id, 1)), (std::vector<std::uint8_t>{0, 1, 0, 1}));
    EXPECT_EQ(bits_of(component_function(id, 2)), (std::vector<std::uint8_t>{0, 0, 1, 1}));

    const BooleanFunction f = component_function(aes(), 1);
    EXPECT_EQ(std::count(f.bits().begin(), f.bits().end(), 1), 128);
}

TEST(ComponentFunction, RejectsZeroAndOversizedMask) {
    EXPECT_THROW(component_function(SBox::identity(3), 0), Error);
    EXPECT_THROW(component_function(SBox::identity(3), 8), Error);
}

// --- Walsh spectrum ---------------------------------------------------------

TEST(Walsh, ConstantZero) {
    const WalshSpectrum w = walsh_spectrum(BooleanFunction(3, std::vector<std::uint8_t>(8, 0)));
    EXPECT_EQ(w.values, (std::vector<std::int32_t>{8, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Walsh, LowBitMatchesOneLinearMask) {
    const WalshSpectrum w = walsh_spectrum(BooleanFunction(2, {0, 1, 0, 1}));
    EXPECT_EQ(w.values, (std::vector<std::int32_t>{0, 4, 0, 0}));
}

TEST(Walsh, ExhaustiveAgainstDirectSum) {
    for (unsigned n : {2u, 4u}) {
        const std::size_t len = std::size_t{1} << n;
        for (std::uint32_t tt = 0; tt < (1u << len); ++tt) {
            std::vector<std::uint8_t> f(len);
            for (std::size_t x = 0; x < len; ++x) f[x] = (tt >> x) & 1u;
            ASSERT_EQ(walsh_spectrum(BooleanFunction(n, f)).values, oracle::walsh(f)) << "n=" << n << " tt=" << tt;
        }
    }
}

TEST(Walsh, ParsevalAndParityOnRandomFunctions) {
    RandomSource rng(7);
    for (unsigned n = 1; n <= 10; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto w = walsh_spectrum(BooleanFunction(n, oracle::random_truth_table(n, rng)));
            std::int64_t energy = 0;
            for (const auto v : w.values) {
                energy += std::int64_t{v} * v;
                EXPECT_EQ(v % 2, 0);
            }
            EXPECT_EQ(energy, std::int64_t{1} << (2 * n));
        }
    }
}

TEST(Walsh, BijectiveComponentsAreBalanced) {
    RandomSource rng(11);
    for (unsigned n : {3u, 5u, 8u}) {
        const SBox s = random_bijective(n, rng);
        for (std::uint32_t b = 1; b < (1u << n); ++b) {
            EXPECT_EQ(walsh_spectrum(component_function(s, b)).values[0], 0);
        }
    }
}

// --- nonlinearity -----------------------------------------------------------

TEST(NonlinearityBf, ConstantAndLinearAreZero) {
    EXPECT_EQ(nonlinearity(BooleanFunction(3, std::vector<std::uint8_t>(8, 0))), 0);
    for (std::uint32_t w = 0; w < 16; ++w) {
        std::vector<std::uint8_t> f(16);
        for (std::uint32_t x = 0; x < 16; ++x) f[x] = parity(w & x);
        EXPECT_EQ(nonlinearity(BooleanFunction(4, f)), 0) << "w=" << w;
    }
}

TEST(NonlinearityBf, RandomMatchesOracle) {
    RandomSource rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const auto f = oracle::random_truth_table(4, rng);
        int peak = 0;
        for (const auto v : oracle::walsh(f)) peak = std::max(peak, std::abs(v));
        EXPECT_EQ(nonlinearity(BooleanFunction(4, f)), (16 - peak) / 2);
    }
}

TEST(Nonlinearity, ClassicalValues) {
    EXPECT_EQ(nonlinearity(aes()), 112);
    EXPECT_EQ(nonlinearity(get_classical("PRESENT").table), 4);
    EXPECT_EQ(nonlinearity(get_classical("KASUMI").table), 56);
    EXPECT_EQ(nonlinearity(SBox::identity(8)), 0);
}

TEST(Nonlinearity, RandomMatchesOracle) {
    RandomSource rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const SBox s = rep % 2 ? random_bijective(5, rng) : oracle::random_table(5, 3, rng);
        EXPECT_EQ(nonlinearity(s), oracle::nonlinearity(s));
    }
}

// --- differences ------------------------------------------------------------

TEST(Ddt, IdentityConcentratesOnDiagonal) {
    const SBox id = SBox::identity(4);
    const auto ddt = difference_distribution(id);
    for (std::size_t a = 0; a < 16; ++a) {
        for (std::size_t b = 0; b < 16; ++b) EXPECT_EQ(ddt[a * 16 + b], a == b ? 16u : 0u);
    }
}

TEST(Ddt, RowSumsEvenEntriesAndOrigin) {
    RandomSource rng(13);
    for (unsigned n : {3u, 4u, 6u}) {
        const SBox s = random_bijective(n, rng);
        const std::size_t len = s.size();
        const auto ddt = difference_distribution(s);
        EXPECT_EQ(ddt[0], len);
        for (std::size_t a = 0; a < len; ++a) {
            std::uint64_t sum = 0;
            for (std::size_t b = 0; b < len; ++b) {
                sum += ddt[a * len + b];
                EXPECT_EQ(ddt[a * len + b] % 2, 0u);
            }
            EXPECT_EQ(sum, len);
        }
    }
}

TEST(Ddt, AesRowOneMaxIsFour) {
    const auto ddt = difference_distribution(aes());
    std::uint32_t direct = 0;
    for (std::uint32_t b = 0; b < 256; ++b) {
        std::uint32_t count = 0;
        for (std::uint32_t x = 0; x < 256; ++x) count += (aes()[x ^ 1] ^ aes()[x]) == b;
        EXPECT_EQ(ddt[256 + b], count);
        direct = std::max(direct, count);
    }
    EXPECT_EQ(direct, 4u);
}

TEST(Ddt, RequiresSquareShape) { EXPECT_THROW(difference_distribution(SBox(2, 3, {0, 1, 2, 7})), Error); }

TEST(DifferentialUniformity, Examples) {
    EXPECT_EQ(differential_uniformity(aes()), 4);
    EXPECT_EQ(differential_uniformity(get_classical("KASUMI").table), 2);
    EXPECT_EQ(differential_uniformity(get_classical("PRINCE").table), 4);
    EXPECT_EQ(differential_uniformity(SBox::identity(4)), 16);
}

TEST(DifferentialUniformity, RandomMatchesTripleLoop) {
    RandomSource rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const SBox s = random_bijective(4, rng);
        EXPECT_EQ(differential_uniformity(s), oracle::differential_uniformity(s));
    }
}

TEST(DifferentialUniformity, RejectsNonBijective) {
    try {
        differential_uniformity(SBox(2, 2, {0, 0, 1, 2}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::not_bijective);
    }
}

// --- CCV --------------------------------------------------------------------

TEST(Ccv, IdentityFrozenValue) {
    // 176/225, exact rational from a brute force over all 120 key pairs.
    EXPECT_DOUBLE_EQ(ccv(SBox::identity(4)), 176.0 / 225.0);
    EXPECT_NEAR(oracle::ccv_pairwise(SBox::identity(4)), 176.0 / 225.0, 1e-15);
}

TEST(Ccv, PerDifferenceMatchesPairwiseVariance) {
    RandomSource rng(19);
    for (int rep = 0; rep < 50; ++rep) {
        const SBox s = rep % 5 ? random_bijective(4, rng) : oracle::random_table(4, 4, rng);
        EXPECT_LE(rel_diff(ccv(s), oracle::ccv_pairwise(s)), 1e-9);
    }
    const SBox s6 = random_bijective(6, rng);
    EXPECT_LE(rel_diff(ccv(s6), oracle::ccv_pairwise(s6)), 1e-9);
}

TEST(Ccv, SwapChangesValueOnSeededExample) {
    RandomSource rng(2024);
    const SBox s = random_bijective(8, rng);
    const SBox t = swap(s, 0, 1);
    ASSERT_NE(popcount(s[0]), popcount(s[1]));
    const double a = ccv(s);
    const double b = ccv(t);
    EXPECT_LE(rel_diff(a, oracle::ccv_pairwise(s)), 1e-9);
    EXPECT_LE(rel_diff(b, oracle::ccv_pairwise(t)), 1e-9);
    EXPECT_NE(a, b);
}

// --- cross-correlation and transparency order --------------------------------

TEST(CrossCorrelation, DiagonalAndBounds) {
    RandomSource rng(23);
    for (unsigned n : {2u, 4u, 6u}) {
        const SBox s = random_bijective(n, rng);
        const auto t = cross_correlation(s);
        const std::int32_t len = 1 << n;
        for (unsigned i = 0; i < n; ++i) EXPECT_EQ(t.at(i, i, 0), len);
        for (const auto v : t.values()) EXPECT_LE(std::abs(v), len);
    }
}

TEST(CrossCorrelation, MatchesDirectSum) {
    RandomSource rng(29);
    for (const auto& [n, m] : {std::pair{3u, 3u}, std::pair{5u, 5u}, std::pair{4u, 2u}}) {
        const SBox s = n == m ? random_bijective(n, rng) : oracle::random_table(n, m, rng);
        const auto t = cross_correlation(s);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j)
                for (std::uint32_t a = 0; a < (1u << n); ++a)
                    ASSERT_EQ(t.at(i, j, a), oracle::cross_correlation(s, i, j, a));
    }
}

TEST(Transparency, MatchesLiteralTranscription4x4) {
    RandomSource rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const SBox s = random_bijective(4, rng);
        EXPECT_LE(rel_diff(mto(s), oracle::mto_literal(s)), 1e-9);
        EXPECT_LE(rel_diff(rto(s), oracle::rto_literal(s)), 1e-9);
    }
}

TEST(Transparency, MatchesLiteralTranscription5x5) {
    RandomSource rng(37);
    for (int rep = 0; rep < 3; ++rep) {
        const SBox s = random_bijective(5, rng);
        EXPECT_LE(rel_diff(rto(s), oracle::rto_literal(s)), 1e-9);
        EXPECT_LE(rel_diff(mto(s), oracle::mto_literal(s)), 1e-9);
    }
}

TEST(Transparency, WithinZeroAndM) {
    RandomSource rng(41);
    for (unsigned n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const SBox s = rep % 2 ? random_bijective(n, rng) : oracle::random_table(n, n, rng);
            const auto t = cross_correlation(s);
            for (const double v : {mto(t), rto(t)}) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, static_cast<double>(n));
            }
        }
    }
}

TEST(Transparency, ComplementOfBetaGivesSameInnerValue) {
    RandomSource rng(43);
    const SBox s = random_bijective(4, rng);
    const auto t = cross_correlation(s);
    for (std::uint32_t beta = 0; beta < 16; ++beta) {
        EXPECT_DOUBLE_EQ(mto_at(t, beta), mto_at(t, beta ^ 0xfu));
        EXPECT_DOUBLE_EQ(rto_at(t, beta), rto_at(t, beta ^ 0xfu));
        EXPECT_LE(rel_diff(mto_at(t, beta), oracle::mto_literal_at(s, beta)), 1e-9);
        EXPECT_LE(rel_diff(rto_at(t, beta), oracle::rto_literal_at(s, beta)), 1e-9);
    }
}

TEST(Transparency, IdentityHasZeroMto) { EXPECT_DOUBLE_EQ(mto(SBox::identity(4)), 0.0); }

TEST(Transparency, RequiresSquareShape) {
    EXPECT_THROW(mto(SBox(2, 3, {0, 1, 2, 7})), Error);
    EXPECT_THROW(rto(SBox(2, 3, {0, 1, 2, 7})), Error);
}

// --- WCF --------------------------------------------------------------------

TEST(Wcf, IdentityCubic) { EXPECT_DOUBLE_EQ(wcf(SBox::identity(4), {0, 3}), 61440.0); }

TEST(Wcf, ZerothPowerCountsTerms) {
    RandomSource rng(47);
    const SBox s = random_bijective(5, rng);
    EXPECT_DOUBLE_EQ(wcf(s, {7, 0}), 31.0 * 32.0);
}

TEST(Wcf, RandomMatchesOracle) {
    RandomSource rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        const SBox s = random_bijective(4, rng);
        EXPECT_DOUBLE_EQ(wcf(s, {4, 3}), oracle::wcf(s, 4, 3));
        EXPECT_DOUBLE_EQ(wcf(s, {0, 3}), oracle::wcf(s, 0, 3));
    }
}

TEST(Wcf, InvariantUnderInputTranslation) {
    RandomSource rng(59);
    const SBox s = random_bijective(4, rng);
    for (std::uint32_t c = 0; c < 16; ++c) EXPECT_EQ(wcf(xor_translate(s, c)), wcf(s));
}

// --- Hamming-weight classes ---------------------------------------------------

TEST(HwSignature, Identity2) {
    EXPECT_EQ(hw_signature(SBox::identity(2)), (std::vector<unsigned>{0, 1, 1, 2}));
}

TEST(HwSignature, OutputBitPermutationPreservesClass) {
    RandomSource rng(61);
    const SBox s = random_bijective(6, rng);
    std::vector<unsigned> perm(6);
    std::iota(perm.begin(), perm.end(), 0u);
    for (int rep = 0; rep < 10; ++rep) {
        for (std::size_t k = perm.size() - 1; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
        EXPECT_TRUE(same_hw_class(s, permute_output_bits(s, perm)));
    }
}

TEST(HwSignature, AesSwapOfFirstTwoEntries) {
    const SBox t = swap(aes(), 0, 1);
    const bool differ = popcount(0x63) != popcount(0x7c);
    EXPECT_EQ(!same_hw_class(aes(), t), differ);
    EXPECT_TRUE(differ);
}

// --- affine-equivalence invariance ---------------------------------------------

TEST(Invariance, ExhaustiveTranslationsAtN4) {
    RandomSource rng(67);
    for (int rep = 0; rep < 5; ++rep) {
        const SBox s = random_bijective(4, rng);
        const int nl = nonlinearity(s);
        const int du = differential_uniformity(s);
        for (std::uint32_t c = 0; c < 16; ++c) {
            for (std::uint32_t d = 0; d < 16; ++d) {
                const SBox t = xor_output(xor_translate(s, c), d);
                EXPECT_EQ(nonlinearity(t), nl);
                EXPECT_EQ(differential_uniformity(t), du);
            }
        }
    }
}

TEST(Invariance, SampledTranslationsOnAes) {
    RandomSource rng(71);
    for (int rep = 0; rep < 8; ++rep) {
        const auto c = static_cast<std::uint32_t>(rng.below(256));
        const auto d = static_cast<std::uint32_t>(rng.below(256));
        const SBox t = xor_output(xor_translate(aes(), c), d);
        EXPECT_EQ(nonlinearity(t), 112);
        EXPECT_EQ(differential_uniformity(t), 4);
    }
}

// --- report -------------------------------------------------------------------

TEST(EvaluateAll, Aes) {
    const PropertyReport r = evaluate_all(aes());
    EXPECT_TRUE(r.bijective);
    EXPECT_EQ(r.nl, 112);
    ASSERT_TRUE(r.du);
    EXPECT_EQ(*r.du, 4);
    ASSERT_TRUE(r.mto && r.rto);
    EXPECT_EQ(*r.mto, mto(aes()));
    EXPECT_EQ(*r.rto, rto(aes()));
    EXPECT_EQ(r.ccv, ccv(aes()));
    EXPECT_EQ(r.wcf, wcf(aes()));
    EXPECT_EQ(r.hw_signature, hw_signature(aes()));
    EXPECT_TRUE(r.errors.empty());
}

TEST(EvaluateAll, Identity) {
    const PropertyReport r = evaluate_all(SBox::identity(4));
    EXPECT_EQ(r.nl, 0);
    EXPECT_EQ(r.du.value_or(-1), 16);
    EXPECT_TRUE(r.bijective);
}

TEST(EvaluateAll, NonBijectiveFlagsDu) {
    const PropertyReport r = evaluate_all(SBox(2, 2, {0, 0, 1, 2}));
    EXPECT_FALSE(r.bijective);
    EXPECT_FALSE(r.du.has_value());
    EXPECT_TRUE(r.errors.contains("du"));
    EXPECT_TRUE(r.mto.has_value());
}

TEST(EvaluateAll, NonSquareFlagsTransparency) {
    const PropertyReport r = evaluate_all(SBox(2, 3, {0, 1, 2, 7}));
    EXPECT_FALSE(r.mto.has_value());
    EXPECT_FALSE(r.rto.has_value());
    EXPECT_TRUE(r.errors.contains("mto"));
    EXPECT_TRUE(r.errors.contains("du"));
}

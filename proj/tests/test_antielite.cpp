#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orddom/antielite.hpp"

namespace orddom::antielite {
namespace {

// kronecker(A, F_n) from F_n reduced mod 4A by repeated squaring; the symbol
// (A | m) for odd m > 0 only depends on m mod 4A.
int oracle_symbol(std::uint64_t A, std::uint64_t n)
{
    const Int m = from_u64(4 * A);
    Int x = 2;
    for (std::uint64_t i = 0; i < n; ++i)
        x = x * x % m;
    Int r = (x + 1) % m;
    return mpz_kronecker(from_u64(A).get_mpz_t(), r.get_mpz_t());
}

const std::vector<std::uint64_t> kListTo150 = {1,  2,  4,  8,  9,  13,  15,  16,  17,  18,  21,  25,  26,  30,
                                               32, 34, 35, 36, 42, 49,  50,  52,  60,  64,  68,  70,  72,  81,
                                               84, 97, 98, 100, 104, 117, 120, 121, 123, 128, 135, 136, 140, 144};

TEST(FermatSymbol, SpecExamples)
{
    EXPECT_EQ(fermat_symbol(2, 4), 1);
    EXPECT_EQ(fermat_symbol(3, 2), -1);
    EXPECT_EQ(fermat_symbol(17, 2), 0);
    EXPECT_EQ(fermat_symbol(1, 0), 1);
    EXPECT_EQ(fermat_symbol(3, 0), 0);
    EXPECT_THROW(fermat_symbol(0, 3), InvalidInput);
}

TEST(FermatSymbol, MatchesMaterializedFermatNumbers)
{
    std::vector<Int> F;
    for (unsigned n = 0; n <= 14; ++n)
        F.push_back(ipow(Int(2), 1UL << n) + 1);
    for (std::uint64_t A = 1; A <= 2000; ++A) {
        const FermatContext ctx(A);
        for (unsigned n = 0; n <= 14; ++n) {
            int direct = mpz_kronecker(from_u64(A).get_mpz_t(), F[n].get_mpz_t());
            ASSERT_EQ(ctx.symbol(n), direct) << "A=" << A << " n=" << n;
        }
    }
}

TEST(Classify, SpecExamples)
{
    EXPECT_TRUE(classify(2).verdict);
    auto r3 = classify(3);
    EXPECT_FALSE(r3.verdict);
    ASSERT_TRUE(r3.refuting_n);
    EXPECT_EQ(*r3.refuting_n, 2u);
    EXPECT_TRUE(classify(97).verdict);
    EXPECT_TRUE(classify(1).verdict);
}

TEST(Classify, ReportInvariants)
{
    for (std::uint64_t A = 1; A <= 3000; ++A) {
        auto r = classify(from_u64(A));
        const std::uint64_t lam = r.A1 == 1 ? 1 : oracle::group_exponent(r.A1);
        ASSERT_EQ((std::uint64_t{1} << r.t) * r.B_odd, lam) << A;
        ASSERT_EQ(r.B_odd % 2, 1u);
        ASSERT_EQ(r.period, r.B_odd == 1 ? 1 : oracle::order(2, r.B_odd));
        ASSERT_EQ(r.symbols.size(), r.period);
        bool all_one = std::all_of(r.symbols.begin(), r.symbols.end(), [](int s) { return s == 1; });
        ASSERT_EQ(r.verdict, all_one);
        if (!r.verdict) {
            ASSERT_TRUE(r.refuting_n);
            ASSERT_GE(*r.refuting_n, r.window_start);
            ASSERT_NE(fermat_symbol(from_u64(A), *r.refuting_n), 1);
        }
        for (int s : r.symbols)
            ASSERT_NE(s, 0) << A;
        ASSERT_EQ(is_anti_elite(A), r.verdict);
    }
}

TEST(Classify, WindowExtendedByTwoPeriodsAgrees)
{
    for (std::uint64_t A = 1; A <= 2000; ++A) {
        auto r = classify(from_u64(A));
        for (std::uint64_t n = r.window_start; n < r.window_start + 3 * r.period; ++n) {
            int s = oracle_symbol(A, n);
            ASSERT_EQ(s, r.symbols[(n - r.window_start) % r.period]) << "A=" << A << " n=" << n;
        }
    }
}

TEST(Classify, PowersOfTwo)
{
    for (unsigned k = 0; k < 63; ++k)
        EXPECT_TRUE(classify(from_u64(std::uint64_t{1} << k)).verdict) << k;
}

TEST(Classify, ZeroSymbolsOnlyBeforeTheWindow)
{
    // 641 | F_5, 65537 = F_4, 17 * 257 = F_2 * F_3.
    for (std::uint64_t A : {641UL, 65537UL, 17UL * 257UL, 3UL * 5UL * 17UL}) {
        auto r = classify(from_u64(A));
        ASSERT_TRUE(r.n_bad);
        for (std::uint64_t n = r.window_start; n < r.window_start + 2 * r.period; ++n)
            EXPECT_NE(oracle_symbol(A, n), 0) << A;
        EXPECT_GT(r.window_start, *r.n_bad);
        EXPECT_EQ(oracle_symbol(A, *r.n_bad), 0) << A;
    }
}

TEST(Survey, SpecExamples)
{
    EXPECT_EQ(survey(10).anti_elite, (std::vector<std::uint64_t>{1, 2, 4, 8, 9}));
    EXPECT_EQ(survey(150).anti_elite, kListTo150);
    EXPECT_EQ(survey(1).anti_elite, (std::vector<std::uint64_t>{1}));
    auto s = survey(1000);
    ASSERT_EQ(s.density.size(), 3u);
    EXPECT_EQ(s.density[0].x, 10u);
    EXPECT_EQ(s.density[0].count, 5u);
    EXPECT_EQ(s.density[2].x, 1000u);
    EXPECT_THROW(survey(0), InvalidInput);
}

TEST(FermatFactor, SmallIndices)
{
    auto f5 = fermat_factor(5);
    ASSERT_TRUE(f5.complete());
    ASSERT_EQ(f5.factors.size(), 2u);
    EXPECT_EQ(f5.factors[0].prime, 641);
    EXPECT_EQ(f5.factors[1].prime, 6700417);
    auto f6 = fermat_factor(6);
    ASSERT_TRUE(f6.complete());
    EXPECT_EQ(f6.factors[0].prime, 274177);
    for (unsigned n = 2; n <= 6; ++n) {
        auto f = fermat_factor(n);
        ASSERT_TRUE(f.complete());
        EXPECT_EQ(f.recompose(), fermat_number(n));
        for (const auto& pf : f.factors) {
            EXPECT_EQ(mod(pf.prime, ipow(Int(2), n + 2)), 1);
            EXPECT_EQ(arith::order_mod_prime(2, pf.prime), ipow(Int(2), n + 1));
        }
    }
}

TEST(FermatFactor, EightSplitsWithTheSpecialPolynomial)
{
    auto f8 = fermat_factor(8);
    ASSERT_TRUE(f8.complete());
    EXPECT_EQ(f8.factors[0].prime, Int("1238926361552897"));
}

TEST(LemmaWitness, SpecExamples)
{
    for (int A : {3, 5}) {
        auto w = lemma_witness(A, 2, 2);
        ASSERT_EQ(w.size(), 1u);
        EXPECT_EQ(w[0].p, 17);
        EXPECT_EQ(w[0].ord_a, 16);
        EXPECT_EQ(w[0].ord_b, 8);
        EXPECT_EQ(oracle::order(A, 17), 16u);
        EXPECT_EQ(oracle::order(2, 17), 8u);
    }
    EXPECT_TRUE(lemma_witness(2, 2, 9).empty());
    EXPECT_THROW(lemma_witness(3, 1, 2), InvalidInput);
    EXPECT_THROW(lemma_witness(3, 4, 3), InvalidInput);
}

TEST(LemmaWitness, StopsAtTheFirstQualifyingFactor)
{
    // F_9 = 2424833 * P49 * P99; the large factors are out of reach.
    const Int small("2424833");
    int A = 3;
    while (fermat_symbol(A, 9) != -1 ||
           mpz_kronecker(Int(A).get_mpz_t(), small.get_mpz_t()) != -1)
        ++A;
    auto w = lemma_witness(A, 9, 9);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].p, small);
    EXPECT_EQ(w[0].ord_b, 1024);
}

TEST(LemmaWitness, TwoAdicLaw)
{
    for (int A : {3, 5, 7, 11, 41, 73, 89}) {
        auto r = lemma_search(A, 2, 6);
        for (const auto& w : r.witnesses) {
            const unsigned long n = w.n.get_ui();
            EXPECT_EQ(mod(w.p, ipow(Int(2), n + 2)), 1);
            EXPECT_EQ(w.ord_b, ipow(Int(2), n + 1));
            EXPECT_EQ(v2(w.ord_a), v2(w.p - 1));
            if (w.p < 10'000'000) {
                EXPECT_EQ(w.ord_a, from_u64(oracle::order(A, w.p.get_ui())));
            }
        }
        EXPECT_TRUE(r.inconclusive.empty());
    }
}

} // namespace
} // namespace orddom::antielite

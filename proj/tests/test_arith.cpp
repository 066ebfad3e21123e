#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "orddom/arith.hpp"

namespace orddom::arith {
namespace {

FactoredInteger fact(std::uint64_t n) { return factorize(from_u64(n)); }

TEST(IsPrime, SmallCases)
{
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(0));
    EXPECT_TRUE(is_prime(641));
    EXPECT_TRUE(is_prime(-7));
    EXPECT_FALSE(is_prime(4294967297UL));
}

TEST(IsPrime, AgreesWithTrialDivisionBelowOneHundredThousand)
{
    for (std::uint64_t n = 0; n < 100000; ++n)
        ASSERT_EQ(is_prime(from_u64(n)), oracle::is_prime(n)) << n;
}

TEST(IsPrime, StrongPseudoprimesAndLargeInputs)
{
    // 3215031751 fools bases 2,3,5,7; 3825123056546413051 fools the first nine.
    EXPECT_FALSE(is_prime(from_u64(3215031751UL)));
    EXPECT_FALSE(is_prime(from_u64(3825123056546413051UL)));
    EXPECT_TRUE(is_prime(from_u64(18446744073709551557UL)));  // largest 64-bit prime
    Int m127 = ipow(Int(2), 127) - 1;
    EXPECT_TRUE(is_prime(m127));
    EXPECT_TRUE(is_prime(m127, 12345));
    EXPECT_FALSE(is_prime(m127 * 3));
    Int carmichael_big = Int("3317044064679887385961981");  // strong pseudoprime to bases <= 37
    EXPECT_FALSE(is_prime(carmichael_big));
}

TEST(Factorize, SpecExamples)
{
    auto f12 = fact(12);
    ASSERT_TRUE(f12.complete());
    ASSERT_EQ(f12.factors.size(), 2u);
    EXPECT_EQ(f12.factors[0], (PrimePower{2, 2}));
    EXPECT_EQ(f12.factors[1], (PrimePower{3, 1}));

    auto f5 = fact(4294967297UL);
    ASSERT_TRUE(f5.complete());
    ASSERT_EQ(f5.factors.size(), 2u);
    EXPECT_EQ(f5.factors[0], (PrimePower{641, 1}));
    EXPECT_EQ(f5.factors[1], (PrimePower{6700417, 1}));

    auto f1 = fact(1);
    EXPECT_TRUE(f1.factors.empty());
    EXPECT_EQ(f1.cofactor, 1);
    EXPECT_TRUE(f1.complete());
}

TEST(Factorize, RejectsNonPositive)
{
    EXPECT_THROW(factorize(0), InvalidInput);
    EXPECT_THROW(factorize(-5), InvalidInput);
}

TEST(Factorize, RhoSplitsBeyondTrialBound)
{
    // 1000003 * 1000033, both above a trial bound of 1000.
    FactorBudget b{1000, kUnlimited, kDefaultSeed};
    auto f = factorize(Int("1000036000099"), b);
    ASSERT_TRUE(f.complete());
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].prime, 1000003);
    EXPECT_EQ(f.factors[1].prime, 1000033);

    // F6 = 274177 * 67280421310721
    auto f6 = factorize(ipow(Int(2), 64) + 1);
    ASSERT_TRUE(f6.complete());
    EXPECT_EQ(f6.factors[0].prime, 274177);
    EXPECT_EQ(f6.factors[1].prime, Int("67280421310721"));
}

TEST(Factorize, BigPrimePowerAndProducts)
{
    Int p = Int("1000000000000000003");  // prime
    auto f = factorize(p * p * p * 12, FactorBudget{100, kUnlimited, kDefaultSeed});
    ASSERT_TRUE(f.complete());
    EXPECT_EQ(f.exponent_of(p), 3u);
    EXPECT_EQ(f.exponent_of(2), 2u);
}

TEST(Factorize, BudgetExhaustionLeavesCofactor)
{
    Int p = Int("1000000007"), q = Int("998244353");
    FactorBudget tiny{100, 10, kDefaultSeed};
    auto f = factorize(p * q * 4, tiny);
    EXPECT_FALSE(f.complete());
    EXPECT_EQ(f.cofactor, p * q);
    EXPECT_EQ(f.recompose(), p * q * 4);
}

TEST(Factorize, RecomposesRandomSixtyFourBitInputs)
{
    std::mt19937_64 rng(20260101);
    FactorBudget b{1000, kUnlimited, kDefaultSeed};
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t n = rng() | 1UL;
        if (i % 2)
            n = rng() >> (rng() % 60);
        if (n == 0)
            n = 1;
        auto f = factorize(from_u64(n), b);
        ASSERT_TRUE(f.complete()) << n;
        ASSERT_EQ(f.recompose(), from_u64(n)) << n;
        for (std::size_t j = 0; j < f.factors.size(); ++j) {
            ASSERT_TRUE(is_prime_u64(to_u64(f.factors[j].prime))) << n;
            ASSERT_GE(f.factors[j].exponent, 1u);
            if (j) {
                ASSERT_LT(f.factors[j - 1].prime, f.factors[j].prime);
            }
        }
    }
}

TEST(Kronecker, SpecExamples)
{
    for (int n : {-9, -4, -1, 1, 2, 7, 12})
        EXPECT_EQ(kronecker(1, n), 1) << n;
    EXPECT_EQ(kronecker(-20, -1), -1);
    EXPECT_EQ(kronecker(3, 19), -1);
    EXPECT_THROW(kronecker(3, 0), InvalidInput);
}

TEST(Kronecker, MatchesGmpOnGrid)
{
    for (int a = -60; a <= 60; ++a)
        for (int n = -60; n <= 60; ++n) {
            if (n == 0)
                continue;
            Int A(a), N(n);
            ASSERT_EQ(kronecker(A, N), mpz_kronecker(A.get_mpz_t(), N.get_mpz_t())) << a << "|" << n;
        }
}

TEST(Kronecker, EulerCriterionForOddPrimesUpToOneThousand)
{
    for (std::uint64_t p = 3; p <= 1000; ++p) {
        if (!oracle::is_prime(p))
            continue;
        for (std::int64_t a = -2 * static_cast<std::int64_t>(p); a <= 2 * static_cast<std::int64_t>(p); ++a)
            ASSERT_EQ(kronecker(from_i64(a), from_u64(p)), oracle::euler(a, p)) << a << " " << p;
    }
}

TEST(Kronecker, CompletelyMultiplicative)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        Int a = Int(static_cast<long>(rng() % 2001)) - 1000;
        Int b = Int(static_cast<long>(rng() % 2001)) - 1000;
        Int n = Int(static_cast<long>(rng() % 2001)) - 1000;
        Int m = Int(static_cast<long>(rng() % 2001)) - 1000;
        if (n == 0 || m == 0)
            continue;
        ASSERT_EQ(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
        ASSERT_EQ(kronecker(a, n * m), kronecker(a, n) * kronecker(a, m));
    }
}

TEST(MultOrder, SpecExamples)
{
    EXPECT_EQ(mult_order(2, 7, fact(6)), 3);
    EXPECT_EQ(mult_order(2, 13, fact(12)), 12);
    EXPECT_EQ(mult_order(2, 641, fact(640)), 64);
    EXPECT_EQ(oracle::order(2, 7), 3u);
    EXPECT_EQ(oracle::order(2, 13), 12u);
    EXPECT_EQ(oracle::order(2, 641), 64u);
}

TEST(MultOrder, Errors)
{
    EXPECT_THROW(mult_order(2, 8, fact(2)), InvalidInput);  // not coprime
    FactoredInteger partial = factorize(Int("1000036000099"), FactorBudget{10, 1, kDefaultSeed});
    ASSERT_FALSE(partial.complete());
    EXPECT_THROW(mult_order(2, 7, partial), InvalidInput);
}

TEST(MultOrder, PropertiesAgainstBruteForce)
{
    for (std::uint64_t n = 2; n <= 400; ++n) {
        Int lam = carmichael(from_u64(n));
        auto lf = factorize(lam);
        for (std::uint64_t a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1)
                continue;
            Int ord = mult_order(from_u64(a), from_u64(n), lf);
            ASSERT_EQ(ord, from_u64(oracle::order(static_cast<std::int64_t>(a), n)));
            ASSERT_TRUE(divides(ord, lam));
            ASSERT_EQ(powm(from_u64(a), ord, from_u64(n)), 1);
            for (const auto& q : factorize(ord).factors)
                ASSERT_NE(powm(from_u64(a), ord / q.prime, from_u64(n)), 1);
        }
    }
}

TEST(Carmichael, SpecExamples)
{
    EXPECT_EQ(carmichael(1), 1);
    EXPECT_EQ(carmichael(8), 2);
    EXPECT_EQ(carmichael(15), 4);
}

TEST(Carmichael, MatchesGroupExponentUpToTenThousand)
{
    for (std::uint64_t n = 1; n <= 10000; ++n)
        ASSERT_EQ(carmichael(from_u64(n)), from_u64(oracle::group_exponent(n))) << n;
}

TEST(Valuation, Examples)
{
    EXPECT_EQ(valuation(12, 2), 2u);
    EXPECT_EQ(valuation(12, 5), 0u);
    EXPECT_EQ(valuation(640, 2), 7u);
    EXPECT_EQ(valuation(-640, 2), 7u);
    EXPECT_THROW(valuation(0, 2), InvalidInput);
}

TEST(SqrtMod, AllResiduesSmallPrimes)
{
    for (std::uint64_t p : primes_up_to(600)) {
        for (std::uint64_t a = 0; a < p; ++a) {
            Int r = sqrt_mod(from_u64(a), from_u64(p));
            if (p > 2 && a != 0 && oracle::euler(static_cast<std::int64_t>(a), p) == -1) {
                ASSERT_EQ(r, -1);
                continue;
            }
            ASSERT_EQ(mod(r * r, from_u64(p)), from_u64(a)) << a << " mod " << p;
        }
    }
}

} // namespace
} // namespace orddom::arith

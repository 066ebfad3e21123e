#pragma once

// Integer arithmetic shared by every construction: primality, factorization,
// Kronecker symbols, multiplicative orders, Carmichael's function, valuations.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace orddom::arith {

inline constexpr std::uint64_t kDefaultSeed = 0x0dd5eedULL;
inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// Work limits for factorization. Budget exhaustion is not an error: it shows
/// up as an incomplete FactoredInteger.
struct FactorBudget {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 10'000'000;
    std::uint64_t seed = kDefaultSeed;

    static FactorBudget unlimited(std::uint64_t trial = 1'000'000)
    {
        return {trial, kUnlimited, kDefaultSeed};
    }
};

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = cofactor * prod(prime^exponent). Primes are strictly increasing.
/// A cofactor other than 1 is a composite that did not split within budget.
struct FactoredInteger {
    Int value = 1;
    std::vector<PrimePower> factors;
    Int cofactor = 1;

    bool complete() const { return cofactor == 1; }

    Int recompose() const
    {
        Int r = cofactor;
        for (const auto& f : factors)
            r *= ipow(f.prime, f.exponent);
        return r;
    }

    unsigned exponent_of(const Int& p) const
    {
        for (const auto& f : factors)
            if (f.prime == p)
                return f.exponent;
        return 0;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t low_bits(const Int& n)
{
    return mpz_getlimbn(n.get_mpz_t(), 0);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    if (m == 1)
        return 0;
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

inline bool mr_round_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s)
{
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

/// Bit sieve of Eratosthenes; returns all primes <= limit.
inline std::vector<std::uint64_t> sieve(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    if (limit < 2)
        return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

inline constexpr std::uint64_t kTableLimit = 1u << 20;

inline const std::vector<std::uint64_t>& prime_table()
{
    static const std::vector<std::uint64_t> table = sieve(kTableLimit);
    return table;
}

} // namespace detail

/// Primes p <= limit in ascending order.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    if (limit <= detail::kTableLimit) {
        const auto& t = detail::prime_table();
        return {t.begin(), std::upper_bound(t.begin(), t.end(), limit)};
    }
    return detail::sieve(limit);
}

/// Deterministic for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : bases)
        if (!detail::mr_round_u64(n, a, d, s))
            return false;
    return true;
}

/// Primality of |n|. Exact below 2^64; above, 64 Miller-Rabin rounds with
/// bases drawn from a generator seeded by (seed, n), error below 2^-128.
inline bool is_prime(const Int& n, std::uint64_t seed = kDefaultSeed)
{
    Int m = abs(n);
    if (fits_u64(m))
        return is_prime_u64(to_u64(m));
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
        if (mpz_divisible_ui_p(m.get_mpz_t(), p))
            return false;

    Int d = m - 1;
    unsigned long s = v2(d);
    d >>= s;
    const Int nm1 = m - 1;
    const Int span = m - 3;

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(static_cast<unsigned long>(detail::splitmix64(seed ^ detail::low_bits(m))));

    auto round = [&](const Int& a) {
        Int x = powm(a, d, m);
        if (x == 1 || x == nm1)
            return true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % m;
            if (x == nm1)
                return true;
        }
        return false;
    };
    if (!round(Int(2)))
        return false;
    for (int i = 0; i < 64; ++i) {
        Int a = rng.get_z_range(span) + 2;
        if (!round(a))
            return false;
    }
    return true;
}

namespace detail {

/// Brent's variant of Pollard rho on a 64-bit odd composite. Returns a
/// nontrivial factor or 0 if the budget ran out.
inline std::uint64_t rho_u64(std::uint64_t n, std::uint64_t seed, std::uint64_t& budget)
{
    if (n % 2 == 0)
        return 2;
    std::uint64_t state = splitmix64(seed ^ n);
    for (;;) {
        std::uint64_t c = state % (n - 1) + 1;
        state = splitmix64(state);
        std::uint64_t y = state % n;
        state = splitmix64(state);
        auto f = [&](std::uint64_t v) {
            auto t = static_cast<unsigned __int128>(mulmod(v, v, n)) + c;
            return static_cast<std::uint64_t>(t >= n ? t - n : t);
        };
        constexpr std::uint64_t block = 128;
        std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(block, r - k);
                if (budget < lim)
                    return 0;
                budget -= lim;
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += block;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                if (budget == 0)
                    return 0;
                --budget;
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline Int rho_big(const Int& n, std::uint64_t seed, std::uint64_t& budget)
{
    if (is_even(n))
        return 2;
    std::uint64_t state = splitmix64(seed ^ low_bits(n));
    for (;;) {
        Int c = mod(from_u64(state), n - 1) + 1;
        state = splitmix64(state);
        Int y = mod(from_u64(state), n);
        state = splitmix64(state);
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            return mod(t, n);
        };
        constexpr std::uint64_t block = 128;
        Int g = 1, q = 1, x, ys;
        std::uint64_t r = 1;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(block, r - k);
                if (budget < lim)
                    return 0;
                budget -= lim;
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mod(q * (x - y), n);
                }
                g = gcd(q, n);
                k += block;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                if (budget == 0)
                    return 0;
                --budget;
                ys = f(ys);
                g = gcd(x - ys, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void add_factor(std::map<Int, unsigned>& acc, const Int& p, unsigned e = 1)
{
    acc[p] += e;
}

inline FactoredInteger assemble(const Int& value, const std::map<Int, unsigned>& acc, const Int& cofactor)
{
    FactoredInteger out;
    out.value = value;
    out.cofactor = cofactor;
    for (const auto& [p, e] : acc)
        out.factors.push_back({p, e});
    return out;
}

} // namespace detail

/// Factors n >= 1: trial division up to budget.trial_bound, then Brent-Pollard
/// rho sharing budget.rho_iterations across all splits.
inline FactoredInteger factorize(const Int& n, const FactorBudget& budget = {})
{
    if (sgn(n) <= 0)
        throw InvalidInput("factorize expects a positive integer, got " + to_string(n));
    std::map<Int, unsigned> acc;
    Int rem = n;
    if (rem == 1)
        return detail::assemble(n, acc, 1);

    auto trial = [&](std::uint64_t p) {
        if (Int(p) * p > rem)
            return false;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rem.get_mpz_t(), p));
            detail::add_factor(acc, from_u64(p), e);
        }
        return true;
    };
    if (budget.trial_bound <= detail::kTableLimit) {
        for (std::uint64_t p : detail::prime_table())
            if (p > budget.trial_bound || !trial(p))
                break;
    } else {
        for (std::uint64_t p : detail::sieve(budget.trial_bound))
            if (!trial(p))
                break;
    }

    Int cofactor = 1;
    std::uint64_t iterations = budget.rho_iterations;
    std::vector<Int> pending;
    if (rem > 1)
        pending.push_back(rem);
    while (!pending.empty()) {
        Int m = pending.back();
        pending.pop_back();
        if (m == 1)
            continue;
        if (is_prime(m, budget.seed)) {
            detail::add_factor(acc, m);
            continue;
        }
        // Perfect powers defeat rho's cycle detection often enough to special-case.
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            for (unsigned long k = mpz_sizeinbase(m.get_mpz_t(), 2); k >= 2; --k) {
                Int root;
                if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k)) {
                    for (unsigned long i = 0; i < k; ++i)
                        pending.push_back(root);
                    m = 1;
                    break;
                }
            }
            if (m == 1)
                continue;
        }
        Int d;
        if (fits_u64(m)) {
            std::uint64_t f = detail::rho_u64(to_u64(m), budget.seed, iterations);
            d = from_u64(f);
        } else {
            d = detail::rho_big(m, budget.seed, iterations);
        }
        if (d == 0) {
            cofactor *= m;
            continue;
        }
        pending.push_back(d);
        pending.push_back(exact_div(m, d));
    }
    return detail::assemble(n, acc, cofactor);
}

/// Multiplies two factorizations; both must be complete.
inline FactoredInteger multiply(const FactoredInteger& a, const FactoredInteger& b)
{
    if (!a.complete() || !b.complete())
        throw Inconclusive("cannot combine incomplete factorizations");
    std::map<Int, unsigned> acc;
    for (const auto& f : a.factors)
        acc[f.prime] += f.exponent;
    for (const auto& f : b.factors)
        acc[f.prime] += f.exponent;
    return detail::assemble(a.value * b.value, acc, 1);
}

/// Least common multiple of complete factorizations (exponent-wise max).
inline FactoredInteger lcm(const FactoredInteger& a, const FactoredInteger& b)
{
    if (!a.complete() || !b.complete())
        throw Inconclusive("cannot combine incomplete factorizations");
    std::map<Int, unsigned> acc;
    for (const auto& f : a.factors)
        acc[f.prime] = std::max(acc[f.prime], f.exponent);
    for (const auto& f : b.factors)
        acc[f.prime] = std::max(acc[f.prime], f.exponent);
    return detail::assemble(orddom::lcm(a.value, b.value), acc, 1);
}

/// Jacobi symbol (a|n) for odd n > 0.
inline int jacobi(Int a, Int n)
{
    a = mod(a, n);
    int r = 1;
    while (a != 0) {
        unsigned long z = v2(a);
        a >>= z;
        unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
        if ((z & 1) && (n8 == 3 || n8 == 5))
            r = -r;
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            r = -r;
        std::swap(a, n);
        a = mod(a, n);
    }
    return n == 1 ? r : 0;
}

inline int jacobi_u64(std::uint64_t a, std::uint64_t n)
{
    a %= n;
    int r = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::uint64_t n8 = n & 7;
            if (n8 == 3 || n8 == 5)
                r = -r;
        }
        if ((a & 3) == 3 && (n & 3) == 3)
            r = -r;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? r : 0;
}

/// Kronecker symbol (a|n) for n != 0, including the (a|-1) sign and the
/// (a|2) supplementary rule.
inline int kronecker(const Int& a, const Int& n)
{
    if (n == 0)
        throw InvalidInput("kronecker symbol needs a nonzero lower argument");
    int r = 1;
    Int m = n;
    if (sgn(m) < 0) {
        m = -m;
        if (sgn(a) < 0)
            r = -r;
    }
    unsigned long z = v2(m);
    if (z > 0) {
        if (is_even(a))
            return 0;
        unsigned long a8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
        if ((z & 1) && (a8 == 3 || a8 == 5))
            r = -r;
        m >>= z;
    }
    if (m == 1)
        return r;
    return r * jacobi(a, m);
}

/// Least k in `exponent`'s divisor lattice with is_identity(k), found by
/// stripping prime factors from `exponent`. Requires is_identity(exponent).
template <class IsIdentity>
Int order_from_exponent(const FactoredInteger& exponent, IsIdentity&& is_identity)
{
    if (!exponent.complete())
        throw InvalidInput("group exponent factorization is incomplete");
    if (!is_identity(exponent.value))
        throw InvalidInput("element does not satisfy x^" + to_string(exponent.value) + " = 1");
    Int ord = exponent.value;
    for (const auto& f : exponent.factors) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            Int cand = exact_div(ord, f.prime);
            if (!is_identity(cand))
                break;
            ord = cand;
        }
    }
    return ord;
}

/// Multiplicative order of a mod n. group_exponent must be a complete
/// factorization of a multiple of that order (p-1 for a prime modulus).
inline Int mult_order(const Int& a, const Int& n, const FactoredInteger& group_exponent)
{
    if (n < 2)
        throw InvalidInput("modulus must be at least 2");
    if (gcd(a, n) != 1)
        throw InvalidInput(to_string(a) + " is not coprime to " + to_string(n));
    const Int base = mod(a, n);
    return order_from_exponent(group_exponent, [&](const Int& k) { return powm(base, k, n) == 1; });
}

/// Largest k with p^k | n.
inline unsigned long valuation(const Int& n, const Int& p)
{
    if (n == 0)
        throw InvalidInput("valuation of zero is undefined");
    if (p < 2)
        throw InvalidInput("valuation needs a prime, got " + to_string(p));
    Int rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

/// Factorization of lambda(n) given a complete factorization of n. Needs the
/// factorizations of q-1 for each q | n, which are computed with `budget`.
inline FactoredInteger carmichael_factored(const FactoredInteger& n, const FactorBudget& budget = {})
{
    if (!n.complete())
        throw Inconclusive("factorization of " + to_string(n.value) + " is incomplete");
    FactoredInteger acc;
    for (const auto& f : n.factors) {
        FactoredInteger part;
        if (f.prime == 2) {
            unsigned e = f.exponent == 1 ? 0 : (f.exponent == 2 ? 1 : f.exponent - 2);
            part.value = ipow(Int(2), e);
            if (e > 0)
                part.factors.push_back({2, e});
        } else {
            FactoredInteger qm1 = factorize(f.prime - 1, budget);
            if (!qm1.complete())
                throw Inconclusive("could not factor " + to_string(f.prime - 1));
            FactoredInteger pw;
            pw.value = ipow(f.prime, f.exponent - 1);
            if (f.exponent > 1)
                pw.factors.push_back({f.prime, f.exponent - 1});
            part = multiply(qm1, pw);
        }
        acc = lcm(acc, part);
    }
    return acc;
}

/// Carmichael's function: exponent of (Z/n)^x.
inline Int carmichael(const Int& n, const FactorBudget& budget = {})
{
    if (n < 1)
        throw InvalidInput("carmichael expects n >= 1");
    FactoredInteger nf = factorize(n, budget);
    return carmichael_factored(nf, budget).value;
}

/// Order of a modulo m for any m >= 1 (1 when m = 1), via lambda(m).
inline Int order_mod(const Int& a, const Int& m, const FactorBudget& budget = {})
{
    if (m < 1)
        throw InvalidInput("modulus must be positive");
    if (m == 1)
        return 1;
    FactoredInteger mf = factorize(m, budget);
    return mult_order(a, m, carmichael_factored(mf, budget));
}

/// Order of a modulo the prime p, factoring p-1 within budget.
inline Int order_mod_prime(const Int& a, const Int& p, const FactorBudget& budget = {})
{
    FactoredInteger pm1 = factorize(p - 1, budget);
    if (!pm1.complete())
        throw Inconclusive("could not factor p-1 for p = " + to_string(p));
    return mult_order(a, p, pm1);
}

using SmallFactors = std::vector<std::pair<std::uint64_t, unsigned>>;

/// Complete factorization of a 64-bit integer (n >= 1).
inline SmallFactors factor_u64(std::uint64_t n)
{
    SmallFactors out;
    for (std::uint64_t p : detail::prime_table()) {
        if (p * p > n)
            break;
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (n <= detail::kTableLimit * detail::kTableLimit || is_prime_u64(n)) {
            out.emplace_back(n, 1);
        } else {
            for (const auto& f : factorize(from_u64(n), FactorBudget::unlimited(2)).factors)
                out.emplace_back(to_u64(f.prime), f.exponent);
            std::sort(out.begin(), out.end());
        }
    }
    return out;
}

/// Order of a modulo m given a multiple `exponent` of it and its factorization.
inline std::uint64_t mult_order_u64(std::uint64_t a, std::uint64_t m, std::uint64_t exponent, const SmallFactors& ef)
{
    if (m == 1)
        return 1;
    a %= m;
    std::uint64_t ord = exponent;
    for (const auto& [q, e] : ef) {
        for (unsigned i = 0; i < e; ++i) {
            if (detail::powmod(a, ord / q, m) != 1)
                break;
            ord /= q;
        }
    }
    return ord;
}

/// Order of a modulo the prime p (a not divisible by p).
inline std::uint64_t order_mod_prime_u64(std::uint64_t a, std::uint64_t p)
{
    return mult_order_u64(a, p, p - 1, factor_u64(p - 1));
}

/// A square root of a modulo the prime p (Tonelli-Shanks), or -1 when a is a
/// non-residue.
inline Int sqrt_mod(const Int& a, const Int& p)
{
    Int x = mod(a, p);
    if (x == 0)
        return 0;
    if (p == 2)
        return x;
    if (jacobi(x, p) != 1)
        return -1;
    Int q = p - 1;
    unsigned long s = v2(q);
    q >>= s;
    if (s == 1)
        return powm(x, (p + 1) / 4, p);
    Int z = 2;
    while (jacobi(z, p) != -1)
        ++z;
    Int c = powm(z, q, p);
    Int r = powm(x, (q + 1) / 2, p);
    Int t = powm(x, q, p);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j)
            b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

} // namespace orddom::arith

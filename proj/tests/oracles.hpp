#pragma once

// Brute-force reference computations. Deliberately naive: nothing here calls
// into the library's order, symbol, or factorization code.

#include <cstdint>
#include <numeric>
#include <vector>

namespace orddom::oracle {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::uint64_t residue(std::int64_t a, std::uint64_t m)
{
    std::int64_t r = a % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

/// Least k >= 1 with a^k = 1 mod m by walking powers; 0 if a is not a unit.
inline std::uint64_t order(std::int64_t a, std::uint64_t m)
{
    if (m == 1)
        return 1;
    std::uint64_t base = residue(a, m);
    if (std::gcd(base, m) != 1)
        return 0;
    std::uint64_t x = base % m;
    for (std::uint64_t k = 1;; ++k) {
        if (x == 1 % m)
            return k;
        x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * base % m);
    }
}

/// Exponent of (Z/m)^x: the least divisor e of phi(m) with a^e = 1 for every
/// unit a, checked exhaustively.
inline std::uint64_t group_exponent(std::uint64_t m)
{
    if (m <= 2)
        return 1;
    std::vector<std::uint64_t> units;
    for (std::uint64_t a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1)
            units.push_back(a);
    const std::uint64_t phi = units.size();
    for (std::uint64_t e = 1; e <= phi; ++e) {
        if (phi % e)
            continue;
        bool all = true;
        for (std::uint64_t a : units) {
            std::uint64_t r = 1, b = a, k = e;
            while (k) {
                if (k & 1)
                    r = r * b % m;
                b = b * b % m;
                k >>= 1;
            }
            if (r != 1) {
                all = false;
                break;
            }
        }
        if (all)
            return e;
    }
    return phi;
}

/// a^e mod m by repeated multiplication.
inline std::uint64_t slow_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    for (std::uint64_t i = 0; i < e; ++i)
        r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * a % m);
    return r;
}

/// Legendre symbol by Euler's criterion, p an odd prime.
inline int euler(std::int64_t a, std::uint64_t p)
{
    std::uint64_t x = residue(a, p);
    if (x == 0)
        return 0;
    std::uint64_t e = 1, b = x, k = (p - 1) / 2;
    while (k) {
        if (k & 1)
            e = static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * b % p);
        b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % p);
        k >>= 1;
    }
    return e == 1 ? 1 : -1;
}

} // namespace orddom::oracle

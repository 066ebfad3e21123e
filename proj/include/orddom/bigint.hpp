#pragma once

// Thin helpers over GMP's mpz_class. Everything in the library that can grow
// past 64 bits is an orddom::Int.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace orddom {

using Int = mpz_class;

inline Int from_u64(std::uint64_t v)
{
    Int r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline Int from_i64(std::int64_t v)
{
    if (v >= 0)
        return from_u64(static_cast<std::uint64_t>(v));
    // -(v+1) avoids overflow at INT64_MIN
    Int r = from_u64(static_cast<std::uint64_t>(-(v + 1)));
    r += 1;
    return -r;
}

inline bool fits_u64(const Int& v)
{
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& v)
{
    if (!fits_u64(v))
        throw InvalidInput("integer " + v.get_str() + " does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline std::string to_string(const Int& v) { return v.get_str(10); }

/// Parses a base-10 integer with optional sign; rejects anything else.
inline Int parse_int(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw InvalidInput("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        throw InvalidInput("malformed integer '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw InvalidInput("malformed integer '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Int(s, 10);
}

inline Int ipow(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Int mod(const Int& a, const Int& m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// base^exp mod m with exp >= 0, m > 0; result in [0, m).
inline Int powm(const Int& base, const Int& exp, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& n, const Int& d)
{
    Int r;
    mpz_divexact(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r;
}

inline unsigned long v2(const Int& n)
{
    return sgn(n) == 0 ? 0 : mpz_scan1(n.get_mpz_t(), 0);
}

inline Int odd_part(const Int& n)
{
    Int r;
    mpz_tdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), v2(n));
    return r;
}

inline bool is_even(const Int& n) { return mpz_even_p(n.get_mpz_t()) != 0; }

} // namespace orddom

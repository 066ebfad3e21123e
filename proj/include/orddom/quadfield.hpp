#pragma once

// Imaginary quadratic fields: integers x + y*omega, prime ideals above rational
// primes, residue fields, and prime ideals at which two elements generate the
// same subgroup.

#include <algorithm>
#include <ostream>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"

namespace orddom::quadfield {

using arith::FactorBudget;
using arith::FactoredInteger;

/// O_K for K = Q(sqrt(d)), omega a root of x^2 + b x + c.
struct QuadField {
    Int d;
    Int disc;
    bool half = false;  // omega = (1 + sqrt d)/2
    Int b;
    Int c;

    std::string omega_name() const { return half ? "(1+sqrt(" + to_string(d) + "))/2" : "sqrt(" + to_string(d) + ")"; }
};

inline QuadField make_field(const Int& d)
{
    if (d >= 0)
        throw InvalidInput("d must be negative");
    const Int m = -d;
    if (m > 1) {
        const auto f = arith::factorize(m, FactorBudget::unlimited());
        for (const auto& pf : f.factors)
            if (pf.exponent > 1)
                throw InvalidInput(to_string(d) + " is not squarefree");
    }
    QuadField K;
    K.d = d;
    if (mod(d, Int(4)) == 1) {
        K.disc = d;
        K.half = true;
        K.b = -1;
        K.c = (1 - d) / 4;
    } else {
        K.disc = 4 * d;
        K.b = 0;
        K.c = -d;
    }
    return K;
}

/// x + y*omega
struct QuadInt {
    Int x = 0;
    Int y = 0;

    QuadInt() = default;
    QuadInt(Int x_, Int y_ = 0) : x(std::move(x_)), y(std::move(y_)) {}
    QuadInt(long x_, long y_ = 0) : x(x_), y(y_) {}

    bool operator==(const QuadInt&) const = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

inline std::ostream& operator<<(std::ostream& os, const QuadInt& v) { return os << v.x << "," << v.y; }

inline QuadInt add(const QuadInt& u, const QuadInt& v) { return {u.x + v.x, u.y + v.y}; }
inline QuadInt sub(const QuadInt& u, const QuadInt& v) { return {u.x - v.x, u.y - v.y}; }

inline QuadInt mul(const QuadField& K, const QuadInt& u, const QuadInt& v)
{
    Int yy = u.y * v.y;
    return {u.x * v.x - K.c * yy, u.x * v.y + u.y * v.x - K.b * yy};
}

inline QuadInt conj(const QuadField& K, const QuadInt& u) { return {u.x - K.b * u.y, -u.y}; }

inline Int norm(const QuadField& K, const QuadInt& u) { return u.x * u.x - K.b * u.x * u.y + K.c * u.y * u.y; }

inline QuadInt pow(const QuadField& K, QuadInt base, Int e)
{
    QuadInt r{1L, 0L};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = mul(K, r, base);
        e >>= 1;
        if (e > 0)
            base = mul(K, base, base);
    }
    return r;
}

/// Both coordinates reduced into [0, m).
inline QuadInt reduce_mod(const QuadInt& u, const Int& m) { return {mod(u.x, m), mod(u.y, m)}; }

inline QuadInt mul_mod(const QuadField& K, const QuadInt& u, const QuadInt& v, const Int& m)
{
    return reduce_mod(mul(K, u, v), m);
}

inline QuadInt pow_mod(const QuadField& K, QuadInt base, Int e, const Int& m)
{
    QuadInt r = reduce_mod(QuadInt{1L, 0L}, m);
    base = reduce_mod(base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = mul_mod(K, r, base, m);
        e >>= 1;
        if (e > 0)
            base = mul_mod(K, base, base, m);
    }
    return r;
}

enum class Kind { Split, Ramified, Inert };

inline const char* kind_name(Kind k)
{
    switch (k) {
    case Kind::Split: return "split";
    case Kind::Ramified: return "ramified";
    case Kind::Inert: return "inert";
    }
    return "?";
}

/// Prime ideal (p, omega - root), or (p) itself when inert.
struct PrimeIdeal {
    Int p;
    Kind kind = Kind::Inert;
    Int root = 0;

    Int norm() const { return kind == Kind::Inert ? p * p : p; }
    bool operator==(const PrimeIdeal&) const = default;
};

inline bool norm_order(const PrimeIdeal& a, const PrimeIdeal& b)
{
    Int na = a.norm(), nb = b.norm();
    if (na != nb)
        return na < nb;
    if (a.p != b.p)
        return a.p < b.p;
    return a.root < b.root;
}

inline std::ostream& operator<<(std::ostream& os, const PrimeIdeal& P)
{
    os << "(" << P.p;
    if (P.kind != Kind::Inert)
        os << ", w->" << P.root;
    return os << ")";
}

/// Prime ideals above the rational prime p.
inline std::vector<PrimeIdeal> split_prime(const QuadField& K, const Int& p)
{
    std::vector<Int> roots;
    if (p == 2) {
        for (long r = 0; r < 2; ++r)
            if (mod(Int(r * r) + K.b * r + K.c, p) == 0)
                roots.emplace_back(r);
    } else {
        int s = arith::kronecker(K.disc, p);
        if (s == -1)
            return {{p, Kind::Inert, 0}};
        Int sq = arith::sqrt_mod(K.disc, p);
        Int inv2 = (p + 1) / 2;
        roots.push_back(mod((-K.b + sq) * inv2, p));
        roots.push_back(mod((-K.b - sq) * inv2, p));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    }
    if (roots.empty())
        return {{p, Kind::Inert, 0}};
    if (roots.size() == 1)
        return {{p, Kind::Ramified, roots[0]}};
    return {{p, Kind::Split, roots[0]}, {p, Kind::Split, roots[1]}};
}

/// Image in O_K/P. Degree-one primes give (residue, 0); inert primes give the
/// pair of coordinates mod p.
inline QuadInt reduce(const QuadField&, const QuadInt& u, const PrimeIdeal& P)
{
    if (P.kind == Kind::Inert)
        return reduce_mod(u, P.p);
    return {mod(u.x + u.y * P.root, P.p), 0};
}

inline bool in_ideal(const QuadField& K, const QuadInt& u, const PrimeIdeal& P) { return reduce(K, u, P).is_zero(); }

/// Order of u in (O_K/P)^x.
inline Int ord_P(const QuadField& K, const QuadInt& u, const PrimeIdeal& P, const FactorBudget& budget = {})
{
    const QuadInt r = reduce(K, u, P);
    if (r.is_zero())
        throw InvalidInput("element lies in the prime ideal");
    const Int q = P.norm();
    if (q == 2)
        return 1;
    const FactoredInteger group = arith::factorize(q - 1, budget);
    if (!group.complete())
        throw Inconclusive("could not factor " + to_string(q - 1));
    if (P.kind != Kind::Inert)
        return arith::mult_order(r.x, P.p, group);
    return arith::order_from_exponent(group, [&](const Int& k) { return pow_mod(K, r, k, P.p) == QuadInt{1L, 0L}; });
}

/// v_P(u) for u != 0.
inline unsigned long element_valuation(const QuadField& K, const QuadInt& u, const PrimeIdeal& P)
{
    if (u.is_zero())
        throw InvalidInput("valuation of zero is undefined");
    unsigned long j = ~0UL;
    if (u.x != 0)
        j = arith::valuation(u.x, P.p);
    if (u.y != 0)
        j = std::min(j, arith::valuation(u.y, P.p));
    const Int pj = ipow(P.p, j);
    const QuadInt w{exact_div(u.x, pj), exact_div(u.y, pj)};
    unsigned long v = P.kind == Kind::Ramified ? 2 * j : j;
    // w is not divisible by p, so at most one prime above p divides it.
    if (P.kind != Kind::Inert && in_ideal(K, w, P))
        v += arith::valuation(norm(K, w), P.p);
    return v;
}

/// I = prod P^e as a list of prime ideals with exponents.
struct Ideal {
    std::vector<std::pair<PrimeIdeal, unsigned long>> parts;

    Int norm() const
    {
        Int n = 1;
        for (const auto& [P, e] : parts)
            n *= ipow(P.norm(), e);
        return n;
    }

    /// Order of (O_K/I)^x.
    Int phi() const
    {
        Int r = 1;
        for (const auto& [P, e] : parts)
            r *= (P.norm() - 1) * ipow(P.norm(), e - 1);
        return r;
    }

    bool is_unit() const { return parts.empty(); }
};

/// Every prime ideal dividing u, with multiplicity, in ascending norm order.
inline Ideal factor_element(const QuadField& K, const QuadInt& u, const FactorBudget& budget = {})
{
    const auto nf = arith::factorize(norm(K, u), budget);
    if (!nf.complete())
        throw Inconclusive("could not factor norm " + to_string(nf.value));
    Ideal out;
    for (const auto& f : nf.factors)
        for (const auto& P : split_prime(K, f.prime)) {
            unsigned long v = element_valuation(K, u, P);
            if (v)
                out.parts.push_back({P, v});
        }
    std::sort(out.parts.begin(), out.parts.end(), [](const auto& a, const auto& b) { return norm_order(a.first, b.first); });
    return out;
}

/// Largest ideal divisor of (beta - alpha) coprime to (alpha).
inline Ideal ideal_I(const QuadField& K, const QuadInt& alpha, const QuadInt& beta, const FactorBudget& budget = {})
{
    if (alpha == beta || alpha.is_zero() || beta.is_zero())
        throw InvalidInput("need distinct nonzero elements");
    Ideal all = factor_element(K, sub(beta, alpha), budget);
    Ideal out;
    for (const auto& part : all.parts)
        if (!in_ideal(K, alpha, part.first))
            out.parts.push_back(part);
    return out;
}

/// u = 1 mod I.
inline bool congruent_one(const QuadField& K, const QuadInt& u, const Ideal& I)
{
    for (const auto& [P, e] : I.parts) {
        QuadInt z = sub(u, QuadInt{1L, 0L});
        z = reduce_mod(z, ipow(P.p, e));  // preserves v_P up to e
        if (!z.is_zero() && element_valuation(K, z, P) < e)
            return false;
    }
    return true;
}

/// Order of u in (O_K/I)^x. u must be coprime to I.
inline Int ord_mod_ideal(const QuadField& K, const QuadInt& u, const Ideal& I, const FactorBudget& budget = {})
{
    if (I.is_unit())
        return 1;
    FactoredInteger group;
    for (const auto& [P, e] : I.parts) {
        auto f = arith::factorize(P.norm() - 1, budget);
        if (!f.complete())
            throw Inconclusive("could not factor " + to_string(P.norm() - 1));
        group = arith::multiply(group, f);
        if (e > 1) {
            FactoredInteger pw;
            pw.value = ipow(P.norm(), e - 1);
            pw.factors.push_back({P.p, static_cast<unsigned>((P.kind == Kind::Inert ? 2 : 1) * (e - 1))});
            group = arith::multiply(group, pw);
        }
    }
    return arith::order_from_exponent(group, [&](const Int& k) {
        for (const auto& [P, e] : I.parts) {
            Ideal single;
            single.parts.push_back({P, e});
            QuadInt pk = pow_mod(K, u, k, ipow(P.p, e));
            if (!congruent_one(K, pk, single))
                return false;
        }
        return true;
    });
}

inline constexpr unsigned long kEllSearchCap = 10'000'000;

/// Least odd prime l = -1 mod k*M with l not dividing disc * N(I), where
/// M = lcm(|disc|, ord of alpha mod I).
inline Int choose_ell(const QuadField& K, const QuadInt& alpha, const Ideal& I, unsigned long k,
                      const FactorBudget& budget = {})
{
    if (k == 0)
        throw InvalidInput("k must be positive");
    const Int M = lcm(abs(K.disc), ord_mod_ideal(K, alpha, I, budget));
    const Int step = M * k;
    const Int guard = K.disc * I.norm();
    for (unsigned long j = 1; j <= kEllSearchCap; ++j) {
        Int ell = step * j - 1;
        if (ell < 3 || is_even(ell) || orddom::divides(ell, guard))
            continue;
        if (arith::is_prime(ell, budget.seed))
            return ell;
    }
    throw Inconclusive("no suitable auxiliary prime below " + to_string(step * kEllSearchCap));
}

struct EqualOrderWitness {
    PrimeIdeal P;
    Int ell;
    Int ord;
    Int I_norm;
    QuadInt gamma;
    unsigned long k = 0;
};

inline void check_eligible(const QuadField& K, const QuadInt& alpha, const QuadInt& beta)
{
    if (alpha.is_zero() || beta.is_zero())
        throw InvalidInput("elements must be nonzero");
    if (norm(K, alpha) == 1 || norm(K, beta) == 1)
        throw InvalidInput("elements must not be roots of unity");
    if (alpha == beta)
        throw InvalidInput("elements must be distinct");
}

/// Prime ideals P | (beta alpha^l - 1)/I with N(P) != 1 mod l; at each, alpha
/// and beta generate the same subgroup of (O_K/P)^x.
inline std::vector<EqualOrderWitness> thm4_witness(const QuadField& K, const QuadInt& alpha, const QuadInt& beta,
                                                   unsigned long k, const FactorBudget& budget = {})
{
    check_eligible(K, alpha, beta);
    const Ideal I = ideal_I(K, alpha, beta, budget);
    const Int ell = choose_ell(K, alpha, I, k, budget);
    const QuadInt gamma = sub(mul(K, beta, pow(K, alpha, ell)), QuadInt{1L, 0L});
    const Int NI = I.norm();
    const Int Ng = norm(K, gamma);
    if (Ng == 0 || !orddom::divides(NI, Ng))
        throw std::logic_error("N(I) does not divide N(gamma)");
    for (const auto& [P, e] : I.parts)
        if (element_valuation(K, gamma, P) < e)
            throw std::logic_error("I does not divide gamma");

    const auto f = arith::factorize(exact_div(Ng, NI), budget);
    std::vector<EqualOrderWitness> out;
    bool uncertified = false;
    for (const auto& pf : f.factors) {
        for (const auto& P : split_prime(K, pf.prime)) {
            unsigned long vI = 0;
            for (const auto& [Q, e] : I.parts)
                if (Q == P)
                    vI = e;
            if (element_valuation(K, gamma, P) <= vI)
                continue;
            if (mod(P.norm(), ell) == 1 || in_ideal(K, alpha, P) || in_ideal(K, beta, P))
                continue;
            Int oa, ob;
            try {
                oa = ord_P(K, alpha, P, budget);
                ob = ord_P(K, beta, P, budget);
            } catch (const Inconclusive&) {
                uncertified = true;
                continue;
            }
            if (oa != ob)
                throw std::logic_error("orders differ at a constructed prime ideal");
            out.push_back({P, ell, oa, NI, gamma, k});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return norm_order(a.P, b.P); });
    if (out.empty() && (!f.complete() || uncertified))
        throw Inconclusive("no qualifying prime ideal found within budget at k = " + std::to_string(k));
    return out;
}

struct EqualOrderHit {
    PrimeIdeal P;
    Int ord;
};

/// Prime ideals of norm <= bound coprime to alpha*beta where the two orders agree.
inline std::vector<EqualOrderHit> scan_equal(const QuadField& K, const QuadInt& alpha, const QuadInt& beta,
                                             std::uint64_t bound)
{
    if (alpha.is_zero() || beta.is_zero())
        throw InvalidInput("elements must be nonzero");
    std::vector<EqualOrderHit> out;
    for (std::uint64_t q : arith::primes_up_to(bound)) {
        for (const auto& P : split_prime(K, from_u64(q))) {
            if (P.norm() > from_u64(bound) || in_ideal(K, alpha, P) || in_ideal(K, beta, P))
                continue;
            Int oa = ord_P(K, alpha, P, FactorBudget::unlimited());
            if (oa == ord_P(K, beta, P, FactorBudget::unlimited()))
                out.push_back({P, oa});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return norm_order(a.P, b.P); });
    return out;
}

} // namespace orddom::quadfield

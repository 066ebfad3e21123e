#pragma once

// Arithmetic in Z[zeta], zeta^2 + zeta + 1 = 0, the cubic residue symbol, and
// dominance witnesses for (A, -3) and (A, 3) from prime factors of A^n + 3.

#include <array>
#include <ostream>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "dominance.hpp"
#include "errors.hpp"

namespace orddom::eisenstein {

using arith::FactorBudget;
using dominance::DominanceWitness;

/// a + b*zeta
struct Eis {
    Int a = 0;
    Int b = 0;

    Eis() = default;
    Eis(Int a_, Int b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
    Eis(long a_, long b_ = 0) : a(a_), b(b_) {}

    bool operator==(const Eis&) const = default;
    bool is_zero() const { return a == 0 && b == 0; }
};

inline Eis operator+(const Eis& x, const Eis& y) { return {x.a + y.a, x.b + y.b}; }
inline Eis operator-(const Eis& x, const Eis& y) { return {x.a - y.a, x.b - y.b}; }
inline Eis operator-(const Eis& x) { return {-x.a, -x.b}; }

inline Eis operator*(const Eis& x, const Eis& y)
{
    Int bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
}

inline std::ostream& operator<<(std::ostream& os, const Eis& x) { return os << "(" << x.a << " + " << x.b << "z)"; }

inline Eis conj(const Eis& x) { return {x.a - x.b, -x.b}; }

inline Int norm(const Eis& x) { return x.a * x.a - x.a * x.b + x.b * x.b; }

inline const Eis& zeta()
{
    static const Eis z{0L, 1L};
    return z;
}

/// 1 - zeta
inline const Eis& lambda()
{
    static const Eis l{1L, -1L};
    return l;
}

/// Units in the order 1, zeta, zeta^2, -1, -zeta, -zeta^2.
inline Eis unit(unsigned j)
{
    static const std::array<Eis, 6> u = {Eis{1L, 0L}, Eis{0L, 1L}, Eis{-1L, -1L}, Eis{-1L, 0L}, Eis{0L, -1L},
                                         Eis{1L, 1L}};
    return u.at(j % 6);
}

namespace detail {

/// num/den rounded to nearest, ties toward zero (den > 0).
inline Int round_div(const Int& num, const Int& den)
{
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int twice = 2 * r;
    if (twice > den || (twice == den && sgn(q) < 0))
        q += 1;
    return q;
}

} // namespace detail

struct DivMod {
    Eis q;
    Eis r;
};

/// x = q*y + r with norm(r) < norm(y).
inline DivMod divmod(const Eis& x, const Eis& y)
{
    if (y.is_zero())
        throw InvalidInput("division by zero in Z[zeta]");
    const Int n = norm(y);
    const Eis t = x * conj(y);
    Eis q{detail::round_div(t.a, n), detail::round_div(t.b, n)};
    return {q, x - q * y};
}

inline bool divides(const Eis& d, const Eis& x) { return divmod(x, d).r.is_zero(); }

inline Eis gcd(Eis x, Eis y)
{
    while (!y.is_zero()) {
        Eis r = divmod(x, y).r;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

struct Primary {
    unsigned unit_index = 0;
    Eis value;  // unit(unit_index) * beta, congruent to -1 mod 3
};

/// The unique associate congruent to -1 modulo lambda^2 = -3 zeta.
inline Primary primary_associate(const Eis& beta)
{
    const Int n = norm(beta);
    if (n == 0)
        throw InvalidInput("zero has no primary associate");
    if (n == 1)
        throw InvalidInput("units have no primary associate");
    if (orddom::divides(Int(3), n))
        throw InvalidInput("element is divisible by 1 - zeta");
    for (unsigned j = 0; j < 6; ++j) {
        Eis c = unit(j) * beta;
        if (mod(c.a, Int(3)) == 2 && mod(c.b, Int(3)) == 0)
            return {j, c};
    }
    throw std::logic_error("no primary associate found");
}

/// zeta^exponent, or zero.
struct CubicSymbol {
    unsigned exponent = 0;
    bool zero = false;

    static CubicSymbol zero_symbol() { return {0, true}; }
    bool operator==(const CubicSymbol&) const = default;
};

inline CubicSymbol operator*(const CubicSymbol& x, const CubicSymbol& y)
{
    if (x.zero || y.zero)
        return CubicSymbol::zero_symbol();
    return {(x.exponent + y.exponent) % 3, false};
}

inline CubicSymbol pow(CubicSymbol s, unsigned long e)
{
    if (s.zero)
        return e == 0 ? CubicSymbol{} : s;
    return {static_cast<unsigned>((s.exponent * (e % 3)) % 3), false};
}

inline std::ostream& operator<<(std::ostream& os, const CubicSymbol& s)
{
    return s.zero ? os << "0" : os << "zeta^" << s.exponent;
}

/// Prime of Z[zeta] above a rational prime q != 3, with its residue field data.
struct EisPrime {
    Eis pi;
    Int q;          // rational prime below
    Int root;       // zeta = root mod pi, split primes only
    bool inert = false;
    Int field_size() const { return inert ? q * q : q; }
};

namespace detail {

/// Elements of F_q[zeta] as pairs (a, b); multiplication uses zeta^2 = -1 - zeta.
inline Eis fq2_mul(const Eis& x, const Eis& y, const Int& q)
{
    Eis z = x * y;
    return {mod(z.a, q), mod(z.b, q)};
}

inline Eis fq2_pow(Eis x, Int e, const Int& q)
{
    Eis r{1L, 0L};
    x = {mod(x.a, q), mod(x.b, q)};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = fq2_mul(r, x, q);
        x = fq2_mul(x, x, q);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// The primes above q. Split q gives two, inert q gives q itself.
inline std::vector<EisPrime> primes_above(const Int& q)
{
    if (q == 3)
        return {{lambda(), 3, 0, false}};
    if (mod(q, Int(3)) == 2)
        return {{Eis{q, 0}, q, 0, true}};
    const Int s = arith::sqrt_mod(-3, q);
    if (s < 0)
        throw std::logic_error("-3 is not a square mod " + to_string(q));
    std::vector<EisPrime> out;
    const Int inv2 = (q + 1) / 2;
    for (const Int& sr : {s, Int(q - s)}) {
        Int r = mod((sr - 1) * inv2, q);
        Eis pi = gcd(Eis{q, 0}, Eis{-r, Int(1)});
        out.push_back({pi, q, r, false});
    }
    return out;
}

/// Residue of alpha modulo a split prime, as an integer mod q.
inline Int reduce_split(const Eis& alpha, const EisPrime& P) { return mod(alpha.a + alpha.b * P.root, P.q); }

/// Euler criterion at a single prime.
inline CubicSymbol prime_symbol(const Eis& alpha, const EisPrime& P)
{
    const Int e = (P.field_size() - 1) / 3;
    if (!P.inert) {
        Int x = reduce_split(alpha, P);
        if (x == 0)
            return CubicSymbol::zero_symbol();
        Int y = powm(x, e, P.q);
        Int r = P.root, r2 = mod(P.root * P.root, P.q);
        if (y == 1)
            return {0, false};
        if (y == r)
            return {1, false};
        if (y == r2)
            return {2, false};
        throw std::logic_error("Euler criterion did not land on a cube root of unity");
    }
    Eis x{mod(alpha.a, P.q), mod(alpha.b, P.q)};
    if (x.is_zero())
        return CubicSymbol::zero_symbol();
    Eis y = detail::fq2_pow(x, e, P.q);
    for (unsigned j = 0; j < 3; ++j) {
        Eis u = unit(j);
        if (y == Eis{mod(u.a, P.q), mod(u.b, P.q)})
            return {j, false};
    }
    throw std::logic_error("Euler criterion did not land on a cube root of unity");
}

/// Multiplicity of P in beta.
inline unsigned prime_valuation(Eis beta, const EisPrime& P)
{
    unsigned v = 0;
    while (!beta.is_zero()) {
        auto dm = divmod(beta, P.pi);
        if (!dm.r.is_zero())
            break;
        beta = dm.q;
        ++v;
    }
    return v;
}

/// (alpha / beta)_3 by factoring beta and applying Euler's criterion at each prime.
inline CubicSymbol cubic_symbol(const Eis& alpha, const Eis& beta, const FactorBudget& budget = {})
{
    const Int n = norm(beta);
    if (n == 0)
        throw InvalidInput("cubic symbol modulo zero");
    if (orddom::divides(Int(3), n))
        throw InvalidInput("modulus is divisible by 1 - zeta");
    if (n == 1)
        return {};
    const auto nf = arith::factorize(n, budget);
    if (!nf.complete())
        throw Inconclusive("could not factor norm " + to_string(n));
    CubicSymbol acc;
    for (const auto& f : nf.factors) {
        for (const auto& P : primes_above(f.prime)) {
            unsigned v = prime_valuation(beta, P);
            if (v)
                acc = acc * pow(prime_symbol(alpha, P), v);
        }
    }
    return acc;
}

struct CubicWitness {
    DominanceWitness neg3;  // pair (A, -3)
    DominanceWitness pos3;  // pair (A, 3)
};

inline bool eligible(const Int& A)
{
    return abs(A) >= 2 && !orddom::divides(Int(3), A) && mod(A * A, Int(9)) != 1;
}

inline unsigned long exponent_step(const Int& A) { return mod(A, Int(3)) == 1 ? 6 : 12; }

/// Witnesses from prime factors p = 1 mod 3 of A^n + 3 at which A is not a cube.
inline std::vector<CubicWitness> thm3_witness(const Int& A, unsigned long k, const FactorBudget& budget = {})
{
    if (!eligible(A))
        throw NotApplicable("need |A| >= 2, 3 not dividing A and A^2 != 1 mod 9");
    if (k == 0)
        throw InvalidInput("k must be positive");
    const unsigned long n = k * exponent_step(A);
    const Int v = ipow(A, n) + 3;
    const auto f = arith::factorize(v, budget);

    std::vector<CubicWitness> out;
    bool uncertified = false;
    for (const auto& pf : f.factors) {
        const Int& p = pf.prime;
        if (p <= 3 || orddom::divides(p, A) || mod(p, Int(3)) != 1)
            continue;
        if (powm(mod(A, p), (p - 1) / 3, p) == 1)
            continue;
        CubicWitness w;
        try {
            w.neg3 = dominance::certify(p, A, -3, budget);
            w.pos3 = dominance::certify(p, A, 3, budget);
        } catch (const Inconclusive&) {
            uncertified = true;
            continue;
        } catch (const dominance::NotDominant& e) {
            throw std::logic_error(std::string("cubic construction produced a non-dominant prime: ") + e.what());
        }
        if (!orddom::divides(w.neg3.ord_b, w.neg3.ord_a) ||
            !orddom::divides(Int(3), exact_div(w.neg3.ord_a, w.neg3.ord_b)))
            throw std::logic_error("order ratio at p = " + to_string(p) + " is not a multiple of 3");
        if (arith::valuation(w.neg3.ord_a, 3) != arith::valuation(p - 1, 3))
            throw std::logic_error("3-adic valuation mismatch at p = " + to_string(p));
        w.neg3.construction = {dominance::Construction::Cubic, std::nullopt, 0};
        w.pos3.construction = {dominance::Construction::CubicDerived, std::nullopt, 0};
        w.neg3.n = w.pos3.n = n;
        out.push_back(std::move(w));
    }
    if (out.empty() && (!f.complete() || uncertified))
        throw Inconclusive("no qualifying factor of " + to_string(A) + "^" + std::to_string(n) + " + 3 within budget");
    return out;
}

} // namespace orddom::eisenstein

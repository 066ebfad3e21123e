#pragma once

// Witness constructions for ord_p(a) > ord_p(b), an independent certifier,
// and the brute-force prime scanner that serves as the universal oracle.
//
// Every construction follows the same pattern: pick an even exponent n that is
// divisible enough for a closed-form value V(n) to be an integer with a known
// residue; then V(n) has a prime factor p at which a fixed base is a quadratic
// non-residue, and at such p the element b lies in the index-2 subgroup of
// <a>. The certifier never trusts this argument and recomputes both orders.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"

namespace orddom::dominance {

using arith::FactorBudget;

struct Pair {
    Int a;
    Int b;

    friend bool operator==(const Pair&, const Pair&) = default;
};

/// Throws InvalidInput unless a, b are both outside {0, 1, -1}.
inline void validate(const Pair& pair)
{
    for (const Int* v : {&pair.a, &pair.b})
        if (abs(*v) <= 1)
            throw InvalidInput("pair element " + to_string(*v) + " must not be 0, 1 or -1");
}

enum class Construction {
    T1IA,      // (A^n - B)/(B - 1)
    T1IB,      // (B A^n - 1)/(B - 1)
    T1II,      // (4 * 2^n - B)/|4 - B|
    T1III_M1,  // 2 A^n - 1
    T1III_M2,  // A^n - 2
    T1IV,      // (A^(r+n) - B)/(B - A^r) for the pair (-A, B)
    Custom,    // (c A^n - d)/e
    Scan,
    Lemma,        // prime factors of Fermat numbers
    Cubic,        // prime factors of A^n + 3, pair (A, -3)
    CubicDerived  // same prime, pair (A, 3)
};

inline std::string tag_name(Construction c)
{
    switch (c) {
    case Construction::T1IA: return "t1ia";
    case Construction::T1IB: return "t1ib";
    case Construction::T1II: return "t1ii";
    case Construction::T1III_M1: return "t1iii_m1";
    case Construction::T1III_M2: return "t1iii_m2";
    case Construction::T1IV: return "t1iv";
    case Construction::Custom: return "custom";
    case Construction::Scan: return "scan";
    case Construction::Lemma: return "lemma";
    case Construction::Cubic: return "t3";
    case Construction::CubicDerived: return "t3_derived";
    }
    return "?";
}

inline Construction parse_tag(const std::string& s)
{
    for (auto c : {Construction::T1IA, Construction::T1IB, Construction::T1II, Construction::T1III_M1,
                   Construction::T1III_M2, Construction::T1IV, Construction::Custom, Construction::Scan,
                   Construction::Lemma, Construction::Cubic, Construction::CubicDerived})
        if (tag_name(c) == s)
            return c;
    throw InvalidInput("unknown construction tag '" + s + "'");
}

/// Evenness of ord_a/ord_b is guaranteed for these.
inline bool is_quadratic_construction(Construction c)
{
    switch (c) {
    case Construction::T1IA:
    case Construction::T1IB:
    case Construction::T1II:
    case Construction::T1III_M1:
    case Construction::T1III_M2:
    case Construction::T1IV:
    case Construction::Custom:
    case Construction::Lemma:
        return true;
    default:
        return false;
    }
}

/// The value (c * a^n - d) / e. Primes p | value with (a|p) = -1 witness
/// d/c = a^n, a square inside <a>.
struct CustomForm {
    Int c = 1;
    Int d = 1;
    Int e = 1;

    friend bool operator==(const CustomForm&, const CustomForm&) = default;
};

struct ConstructionId {
    Construction tag = Construction::Scan;
    std::optional<CustomForm> custom;
    unsigned offset = 0;  // T1IV only: the even exponent r

    friend bool operator==(const ConstructionId&, const ConstructionId&) = default;

    std::string name() const
    {
        std::string s = tag_name(tag);
        if (tag == Construction::T1IV && offset != 4)
            s += ":" + std::to_string(offset);
        if (custom)
            s += ":" + to_string(custom->c) + "," + to_string(custom->d) + "," + to_string(custom->e);
        return s;
    }
};

struct DominanceWitness {
    Int p;
    Pair pair;
    ConstructionId construction;
    Int n = 0;
    Int ord_a;
    Int ord_b;
    bool b_in_subgroup_of_a = false;

    /// ord_b | ord_a with an even quotient.
    bool even_ratio() const { return divides(ord_b, ord_a) && is_even(exact_div(ord_a, ord_b)); }
};

/// Thrown by certify when ord_p(a) <= ord_p(b); carries both orders.
class NotDominant : public Error {
public:
    NotDominant(Int p, Int ord_a, Int ord_b)
        : Error("not dominant at p = " + to_string(p) + ": orders (" + to_string(ord_a) + ", " +
                to_string(ord_b) + ")"),
          p(std::move(p)), ord_a(std::move(ord_a)), ord_b(std::move(ord_b))
    {
    }
    Int p, ord_a, ord_b;
};

/// Recomputes ord_p(a) and ord_p(b) from scratch and returns a witness iff
/// ord_p(a) > ord_p(b).
inline DominanceWitness certify(const Int& p, const Int& a, const Int& b, const FactorBudget& budget = {})
{
    if (!arith::is_prime(p, budget.seed))
        throw InvalidInput(to_string(p) + " is not prime");
    if (p == 2 || divides(p, a) || divides(p, b))
        throw InvalidInput(to_string(p) + " divides 2ab");
    auto pm1 = arith::factorize(p - 1, budget);
    if (!pm1.complete())
        throw Inconclusive("could not factor p-1 for p = " + to_string(p));
    DominanceWitness w;
    w.p = p;
    w.pair = {a, b};
    w.construction = {Construction::Scan, std::nullopt, 0};
    w.ord_a = arith::mult_order(a, p, pm1);
    w.ord_b = arith::mult_order(b, p, pm1);
    if (w.ord_a <= w.ord_b)
        throw NotDominant(p, w.ord_a, w.ord_b);
    w.b_in_subgroup_of_a = divides(w.ord_b, w.ord_a);
    return w;
}

namespace detail {

/// Largest divisor of n coprime to a.
inline Int coprime_part(Int n, const Int& a)
{
    n = abs(n);
    for (Int g = gcd(n, a); g > 1; g = gcd(n, g))
        n = exact_div(n, g);
    return n;
}

inline bool odd_positive(const Int& x) { return sgn(x) > 0 && !is_even(x); }

/// Least r0 >= 0 with v_q(A^r0) >= v_q(B) for every prime q | A.
inline unsigned shared_prime_threshold(const Int& A, const Int& B)
{
    unsigned r0 = 0;
    Int g = gcd(A, B);
    if (g == 1)
        return 0;
    for (const auto& f : arith::factorize(g, FactorBudget::unlimited()).factors) {
        unsigned long va = arith::valuation(A, f.prime);
        unsigned long vb = arith::valuation(B, f.prime);
        r0 = std::max<unsigned>(r0, static_cast<unsigned>((vb + va - 1) / va));
    }
    return r0;
}

} // namespace detail

/// The smallest admissible even offset r > r0 + 3 for the pair (-A, B).
inline unsigned minimal_offset(const Int& A, const Int& B)
{
    unsigned r = detail::shared_prime_threshold(A, B) + 4;
    return r % 2 ? r + 1 : r;
}

inline bool offset_admissible(const Pair& pair, unsigned r)
{
    if (sgn(pair.a) >= 0 || sgn(pair.b) <= 0)
        return false;
    const Int A = -pair.a;
    const Int& B = pair.b;
    if (A < 2 || B < 2 || r % 2)
        return false;
    return r > detail::shared_prime_threshold(A, B) + 3 && B > ipow(A, r);
}

inline std::optional<CustomForm> custom_preset(const Pair& pair)
{
    if (pair == Pair{3, 7})
        return CustomForm{7, 1, 2};
    if (pair == Pair{2, 6})
        return CustomForm{2, 3, 1};
    return std::nullopt;
}

/// Exactly the constructions whose hypotheses hold for the pair. For (-A, B)
/// the offset is the smallest admissible one; it is 4 whenever A, B are coprime.
inline std::vector<ConstructionId> applicable_constructions(const Pair& pair)
{
    validate(pair);
    std::vector<ConstructionId> out;
    const Int& a = pair.a;
    const Int& b = pair.b;
    auto add = [&](Construction c, unsigned r = 0) { out.push_back({c, std::nullopt, r}); };

    if (detail::odd_positive(a) && detail::odd_positive(b)) {
        if (arith::kronecker(-b * (1 - b), a) == -1)
            add(Construction::T1IA);
        if (arith::kronecker(1 - b, a) == -1)
            add(Construction::T1IB);
    }
    if (a == 2 && detail::odd_positive(b))
        add(Construction::T1II);
    if (b == 2 && detail::odd_positive(a)) {
        int m1 = arith::kronecker(-1, a);
        if (m1 == -1)
            add(Construction::T1III_M1);
        else if (m1 == 1 && arith::kronecker(-2, a) == -1)
            add(Construction::T1III_M2);
    }
    if (sgn(a) < 0 && sgn(b) > 0) {
        unsigned r = minimal_offset(-a, b);
        if (offset_admissible(pair, r))
            add(Construction::T1IV, r);
    }
    return out;
}

inline bool is_applicable(const ConstructionId& cid, const Pair& pair)
{
    if (cid.tag == Construction::Custom)
        return cid.custom && cid.custom->c >= 1 && cid.custom->d >= 1 && cid.custom->e >= 1;
    if (cid.tag == Construction::T1IV)
        return offset_admissible(pair, cid.offset);
    for (const auto& c : applicable_constructions(pair))
        if (c.tag == cid.tag)
            return true;
    return false;
}

/// Base whose Legendre symbol must be -1 at a useful prime factor.
inline Int symbol_base(const ConstructionId& cid, const Pair& pair)
{
    switch (cid.tag) {
    case Construction::T1II: return 2;
    case Construction::T1IV: return 4 * pair.a;  // -4A with a = -A
    default: return pair.a;
    }
}

/// Modulus M with: for n a positive multiple of M beyond the positivity
/// threshold, the construction value is an integer with its required residue.
inline Int sufficiency_modulus(const ConstructionId& cid, const Pair& pair)
{
    const Int& a = pair.a;
    const Int& b = pair.b;
    switch (cid.tag) {
    case Construction::T1IA:
    case Construction::T1IB:
        return lcm(Int(2), arith::order_mod(a, 4 * (b - 1)));
    case Construction::T1II:
        return lcm(Int(2), arith::order_mod(2, odd_part(abs(4 - b))));
    case Construction::T1III_M1:
    case Construction::T1III_M2:
        return 2;
    case Construction::T1IV: {
        const Int A = -a;
        Int m = detail::coprime_part(4 * A * (b - ipow(A, cid.offset)), A);
        return lcm(Int(2), arith::order_mod(A, m));
    }
    case Construction::Custom:
        return lcm(Int(2), arith::order_mod(a, detail::coprime_part(cid.custom->e, a)));
    default:
        throw InvalidInput("construction " + tag_name(cid.tag) + " has no closed form");
    }
}

namespace detail {

struct RawValue {
    Int numerator;
    Int denominator;
};

inline RawValue raw_value(const ConstructionId& cid, const Pair& pair, unsigned long n)
{
    const Int& a = pair.a;
    const Int& b = pair.b;
    switch (cid.tag) {
    case Construction::T1IA: return {ipow(a, n) - b, b - 1};
    case Construction::T1IB: return {b * ipow(a, n) - 1, b - 1};
    case Construction::T1II: return {4 * ipow(Int(2), n) - b, abs(4 - b)};
    case Construction::T1III_M1: return {2 * ipow(a, n) - 1, 1};
    case Construction::T1III_M2: return {ipow(a, n) - 2, 1};
    case Construction::T1IV: {
        const Int A = -a;
        const Int Ar = ipow(A, cid.offset);
        return {Ar * ipow(A, n) - b, b - Ar};
    }
    case Construction::Custom: return {cid.custom->c * ipow(a, n) - cid.custom->d, cid.custom->e};
    default: throw InvalidInput("construction " + tag_name(cid.tag) + " has no closed form");
    }
}

/// Residue condition each quadratic construction relies on.
inline bool residue_ok(const ConstructionId& cid, const Pair& pair, const Int& v)
{
    auto r = [&](unsigned long m) { return mpz_fdiv_ui(v.get_mpz_t(), m); };
    switch (cid.tag) {
    case Construction::T1IA: return r(4) == 3;
    case Construction::T1IB: return r(4) == 1;
    case Construction::T1II: return r(8) == 3 || r(8) == 5;
    case Construction::T1III_M1: return r(4) == 1;
    case Construction::T1III_M2: return r(8) == 7;
    case Construction::T1IV: return mod(v + 1, -4 * pair.a) == 0;
    default: return true;
    }
}

inline std::optional<Int> checked_value(const ConstructionId& cid, const Pair& pair, unsigned long n)
{
    if (n % 2)
        return std::nullopt;
    auto [num, den] = raw_value(cid, pair, n);
    if (sgn(den) <= 0 || sgn(num) <= 0 || !divides(den, num))
        return std::nullopt;
    Int v = exact_div(num, den);
    if (!residue_ok(cid, pair, v))
        return std::nullopt;
    return v;
}

} // namespace detail

inline constexpr unsigned long kMaxExponent = 1'000'000;

/// n = (k + s) * M, where s >= 0 is the least shift making the value a
/// positive integer with the required residue. Strictly increasing in k.
inline Int choose_exponent(const ConstructionId& cid, const Pair& pair, unsigned long k)
{
    validate(pair);
    if (k == 0)
        throw InvalidInput("k must be positive");
    if (!is_applicable(cid, pair))
        throw NotApplicable("construction " + cid.name() + " does not apply to (" + to_string(pair.a) + ", " +
                            to_string(pair.b) + ")");
    const Int M = sufficiency_modulus(cid, pair);
    if (M > kMaxExponent)
        throw Inconclusive("sufficiency modulus " + to_string(M) + " is too large");
    const unsigned long m = M.get_ui();
    unsigned tries_past_positive = 0;
    for (unsigned long s = 0; (s + 1) * m <= kMaxExponent; ++s) {
        if (detail::checked_value(cid, pair, (s + 1) * m)) {
            Int n = Int(m) * (k + s);
            if (n > kMaxExponent)
                throw Inconclusive("exponent " + to_string(n) + " is too large");
            return n;
        }
        // Past the positivity threshold, validity is periodic in s with a
        // period far below this cap.
        if (sgn(detail::raw_value(cid, pair, (s + 1) * m).numerator) > 0 && ++tries_past_positive > 64)
            break;
    }
    throw NotApplicable("construction " + cid.name() + " never yields an integer of the required shape");
}

/// The construction's value at exponent n, checked for integrality,
/// positivity and the residue condition.
inline Int construction_value(const ConstructionId& cid, const Pair& pair, const Int& n)
{
    if (sgn(n) <= 0 || n > kMaxExponent)
        throw InvalidInput("exponent out of range: " + to_string(n));
    auto v = detail::checked_value(cid, pair, n.get_ui());
    if (!v)
        throw InvalidInput("construction " + cid.name() + " is not a positive integer of the required shape at n = " +
                           to_string(n));
    return *v;
}

/// Witnesses from the prime factors of the construction value at the k-th
/// exponent. Empty means the value fully factored and nothing qualified;
/// Inconclusive means the budget ran out first.
inline std::vector<DominanceWitness> run_construction(const ConstructionId& cid, const Pair& pair, unsigned long k,
                                                      const FactorBudget& budget = {})
{
    const Int n = choose_exponent(cid, pair, k);
    const Int v = construction_value(cid, pair, n);
    const auto f = arith::factorize(v, budget);
    const Int base = symbol_base(cid, pair);

    std::vector<DominanceWitness> out;
    bool uncertified = false;
    for (const auto& pf : f.factors) {
        const Int& p = pf.prime;
        if (p == 2 || divides(p, pair.a) || divides(p, pair.b))
            continue;
        if (arith::kronecker(base, p) != -1)
            continue;
        DominanceWitness w;
        try {
            w = certify(p, pair.a, pair.b, budget);
        } catch (const Inconclusive&) {
            uncertified = true;
            continue;
        } catch (const NotDominant& e) {
            if (cid.tag == Construction::Custom)
                continue;
            throw std::logic_error("construction " + cid.name() + " produced a non-dominant prime: " + e.what());
        }
        w.construction = cid;
        w.n = n;
        if (!w.even_ratio() || !w.b_in_subgroup_of_a) {
            if (cid.tag == Construction::Custom)
                continue;
            throw std::logic_error("construction " + cid.name() + " produced an odd order ratio at p = " +
                                   to_string(p));
        }
        out.push_back(std::move(w));
    }
    if (out.empty() && (!f.complete() || uncertified))
        throw Inconclusive("construction " + cid.name() + " inconclusive at k = " + std::to_string(k) + " (n = " +
                           to_string(n) + ")");
    return out;
}

inline std::vector<DominanceWitness> custom_construction(const CustomForm& form, const Pair& pair, unsigned long k,
                                                         const FactorBudget& budget = {})
{
    validate(pair);
    if (form.c < 1 || form.d < 1 || form.e < 1)
        throw InvalidInput("custom parameters must be positive");
    return run_construction({Construction::Custom, form, 0}, pair, k, budget);
}

struct SearchResult {
    std::vector<DominanceWitness> witnesses;  // distinct p, discovery order
    std::vector<std::pair<ConstructionId, unsigned long>> inconclusive;
};

/// Accumulates distinct witnesses over k = 1..max_k, trying each construction
/// in turn, until `count` have been found.
inline SearchResult search(const Pair& pair, const std::vector<ConstructionId>& constructions, std::size_t count,
                           unsigned long max_k, const FactorBudget& budget = {})
{
    SearchResult res;
    std::set<Int> seen;
    for (unsigned long k = 1; k <= max_k && res.witnesses.size() < count; ++k) {
        for (const auto& cid : constructions) {
            if (res.witnesses.size() >= count)
                break;
            try {
                for (auto& w : run_construction(cid, pair, k, budget)) {
                    if (seen.insert(w.p).second && res.witnesses.size() < count)
                        res.witnesses.push_back(std::move(w));
                }
            } catch (const Inconclusive&) {
                res.inconclusive.emplace_back(cid, k);
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Scanner

struct Predicate {
    enum class Kind { Gt, Eq, RatioDiv } kind = Kind::Gt;
    std::uint64_t m = 0;  // RatioDiv: ord_b | ord_a and m | ord_a / ord_b

    bool operator()(std::uint64_t oa, std::uint64_t ob) const
    {
        switch (kind) {
        case Kind::Gt: return oa > ob;
        case Kind::Eq: return oa == ob;
        case Kind::RatioDiv: return oa % ob == 0 && (oa / ob) % m == 0;
        }
        return false;
    }
};

struct ScanRecord {
    std::uint64_t p;
    std::uint64_t ord_a;
    std::uint64_t ord_b;
};

struct ScanResult {
    std::vector<ScanRecord> hits;  // ascending p
    std::uint64_t primes_examined = 0;
    std::uint64_t greater = 0;
    std::uint64_t equal = 0;
    std::uint64_t less = 0;
};

/// Every prime p <= bound with p not dividing 2ab, tested with the predicate.
inline ScanResult scan(const Int& a, const Int& b, std::uint64_t bound, Predicate pred)
{
    if (bound < 3)
        throw InvalidInput("scan bound must be at least 3");
    if (pred.kind == Predicate::Kind::RatioDiv && pred.m == 0)
        throw InvalidInput("ratio predicate needs m >= 1");
    if (a == 0 || b == 0)
        throw InvalidInput("scan bases must be nonzero");
    ScanResult res;
    for (std::uint64_t p : arith::primes_up_to(bound)) {
        if (p == 2)
            continue;
        std::uint64_t ar = mpz_fdiv_ui(a.get_mpz_t(), p);
        std::uint64_t br = mpz_fdiv_ui(b.get_mpz_t(), p);
        if (ar == 0 || br == 0)
            continue;
        auto pf = arith::factor_u64(p - 1);
        std::uint64_t oa = arith::mult_order_u64(ar, p, p - 1, pf);
        std::uint64_t ob = arith::mult_order_u64(br, p, p - 1, pf);
        ++res.primes_examined;
        if (oa > ob)
            ++res.greater;
        else if (oa == ob)
            ++res.equal;
        else
            ++res.less;
        if (pred(oa, ob))
            res.hits.push_back({p, oa, ob});
    }
    return res;
}

} // namespace orddom::dominance

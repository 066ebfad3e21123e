#pragma once

// Quadratic characters of Fermat numbers, the anti-elite classifier, and
// dominance witnesses for (A, 2) drawn from Fermat factors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "dominance.hpp"
#include "errors.hpp"

namespace orddom::antielite {

using arith::FactorBudget;
using dominance::DominanceWitness;

inline constexpr unsigned kMaxFermatIndex = 20;
inline constexpr std::uint64_t kMaxPeriod = std::uint64_t{1} << 26;
inline constexpr std::size_t kMaxStoredSymbols = std::size_t{1} << 16;

inline Int fermat_number(unsigned n)
{
    if (n > kMaxFermatIndex)
        throw InvalidInput("F_" + std::to_string(n) + " is too large to materialize");
    return ipow(Int(2), 1UL << n) + 1;
}

namespace detail {

inline std::uint64_t odd_part_u64(std::uint64_t v)
{
    while (v && v % 2 == 0)
        v /= 2;
    return v;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / arith::detail::gcd_u64(a, b) * b; }

/// lambda(m) for odd m given its factorization.
inline std::uint64_t carmichael_odd(const arith::SmallFactors& f)
{
    std::uint64_t l = 1;
    for (const auto& [q, e] : f) {
        std::uint64_t part = q - 1;
        for (unsigned i = 1; i < e; ++i)
            part *= q;
        l = lcm_u64(l, part);
    }
    return l;
}

inline std::uint64_t order_of_two(std::uint64_t m)
{
    if (m == 1)
        return 1;
    const std::uint64_t l = carmichael_odd(arith::factor_u64(m));
    return arith::mult_order_u64(2, m, l, arith::factor_u64(l));
}

inline std::uint64_t checked_u64(const Int& A)
{
    if (A < 1)
        throw InvalidInput("A must be positive");
    return to_u64(A);
}

} // namespace detail

/// Precomputed data for evaluating (A | F_n) at many n.
struct FermatContext {
    std::uint64_t A = 1;
    std::uint64_t A1 = 1;  // odd part of A
    std::uint64_t d = 1;   // ord of 2 mod A1

    explicit FermatContext(std::uint64_t a) : A(a), A1(detail::odd_part_u64(a)), d(detail::order_of_two(A1))
    {
        if (a == 0)
            throw InvalidInput("A must be positive");
    }

    /// (F_n mod A1 | A1) given e = 2^n mod d.
    int symbol_from_exponent(std::uint64_t e) const
    {
        if (A1 == 1)
            return 1;
        std::uint64_t r = arith::detail::powmod(2, e, A1) + 1;
        return arith::jacobi_u64(r % A1, A1);
    }

    int symbol(std::uint64_t n) const
    {
        if (n < 2)
            return arith::kronecker(from_u64(A), Int(n == 0 ? 3 : 5));
        // (2 | F_n) = 1 and F_n = 1 mod 4, so only (F_n | A1) remains.
        return symbol_from_exponent(arith::detail::powmod(2, n, d));
    }
};

/// kronecker(A, F_n) without forming F_n.
inline int fermat_symbol(const Int& A, std::uint64_t n) { return FermatContext(detail::checked_u64(A)).symbol(n); }

struct AntiEliteReport {
    std::uint64_t A = 1;
    std::uint64_t A1 = 1;
    unsigned t = 0;
    std::uint64_t B_odd = 1;
    std::uint64_t period = 1;
    std::optional<std::uint64_t> n_bad;  // last n with gcd(A, F_n) > 1
    std::uint64_t window_start = 2;
    std::vector<int> symbols;        // from window_start; the full period unless truncated
    bool symbols_truncated = false;  // period longer than kMaxStoredSymbols
    bool verdict = false;
    std::optional<std::uint64_t> refuting_n;
};

/// Exact classification. For n >= t the exponent 2^n mod ord_{A1}(2) is purely
/// periodic with period dividing ord of 2 mod B_odd, so one period decides
/// every larger n. A zero in that range would recur forever, which pairwise
/// coprimality of Fermat numbers rules out.
inline AntiEliteReport classify(const Int& A_in, bool early_exit = false)
{
    const std::uint64_t A = detail::checked_u64(A_in);
    const FermatContext ctx(A);
    AntiEliteReport rep;
    rep.A = A;
    rep.A1 = ctx.A1;

    const auto f = arith::factor_u64(ctx.A1 == 1 ? 1 : ctx.A1);
    const std::uint64_t lam = ctx.A1 == 1 ? 1 : detail::carmichael_odd(f);
    while ((lam >> rep.t) % 2 == 0)
        ++rep.t;
    rep.B_odd = lam >> rep.t;
    rep.period = detail::order_of_two(rep.B_odd);

    for (const auto& [q, e] : f) {
        std::uint64_t o = arith::order_mod_prime_u64(2, q);
        if ((o & (o - 1)) == 0) {
            std::uint64_t m = 0;
            while ((std::uint64_t{1} << m) < o)
                ++m;
            rep.n_bad = std::max<std::uint64_t>(rep.n_bad.value_or(0), m - 1);
        }
    }
    rep.window_start = std::max<std::uint64_t>({rep.t, 2, rep.n_bad ? *rep.n_bad + 1 : 0});

    if (rep.period > kMaxPeriod && !early_exit)
        throw Inconclusive("period " + std::to_string(rep.period) + " of A = " + std::to_string(A) +
                           " is too long to enumerate");
    rep.symbols_truncated = rep.period > kMaxStoredSymbols;
    std::uint64_t e = arith::detail::powmod(2, rep.window_start, ctx.d);
    for (std::uint64_t i = 0; i < rep.period; ++i) {
        int s = ctx.symbol_from_exponent(e);
        if (!rep.symbols_truncated || rep.symbols.size() < kMaxStoredSymbols)
            rep.symbols.push_back(s);
        if (s != 1 && !rep.refuting_n) {
            rep.refuting_n = rep.window_start + i;
            if (early_exit)
                break;
        }
        e = arith::detail::mulmod(e, 2, ctx.d);
        if (i + 1 >= kMaxPeriod && !rep.refuting_n)
            throw Inconclusive("period of A = " + std::to_string(A) + " is too long to enumerate");
    }
    rep.verdict = !rep.refuting_n;
    return rep;
}

inline bool is_anti_elite(std::uint64_t A) { return classify(from_u64(A), true).verdict; }

struct DensityPoint {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
};

struct SurveyResult {
    std::vector<std::uint64_t> anti_elite;  // sorted
    std::vector<DensityPoint> density;      // at 10, 100, ... and at x
};

inline SurveyResult survey(std::uint64_t x)
{
    if (x < 1)
        throw InvalidInput("survey bound must be positive");
    SurveyResult out;
    std::uint64_t next = 10;
    for (std::uint64_t A = 1; A <= x; ++A) {
        if (is_anti_elite(A))
            out.anti_elite.push_back(A);
        if (A == next) {
            out.density.push_back({A, out.anti_elite.size()});
            next = next > x / 10 ? 0 : next * 10;
        }
    }
    if (out.density.empty() || out.density.back().x != x)
        out.density.push_back({x, out.anti_elite.size()});
    return out;
}

namespace detail {

/// Brent-Pollard rho with x -> x^K + 1, K = 2^(n+2). Prime factors of F_n are
/// 1 mod K, which shortens the expected cycle by a factor of sqrt(K).
inline Int fermat_rho(const Int& N, unsigned n, std::uint64_t& budget, std::uint64_t seed)
{
    const unsigned long K = 1UL << (n + 2);
    for (std::uint64_t attempt = 0; budget > 0; ++attempt) {
        Int y = from_u64(2 + attempt + seed % 97);
        Int x, ys, q = 1, g = 1;
        const std::uint64_t m = 128;
        auto f = [&](const Int& v) {
            Int r;
            mpz_powm_ui(r.get_mpz_t(), v.get_mpz_t(), K, N.get_mpz_t());
            r += 1;
            if (r == N)
                r = 0;
            return r;
        };
        for (std::uint64_t r = 1; g == 1; r *= 2) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                const std::uint64_t steps = std::min(m, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = f(y);
                    q = q * abs(x - y) % N;
                }
                g = gcd(q, N);
                if (g == 1 && budget <= steps)
                    return 0;
                budget -= std::min(budget, steps);
            }
        }
        if (g == N) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), N);
            } while (g == 1);
        }
        if (g != N)
            return g;
    }
    return 0;
}

} // namespace detail

/// Prime factors of F_n found within budget. Candidates k*2^(n+2) + 1 are
/// trial-divided up to budget.trial_bound, then the rest is split by rho.
/// Stops early, leaving a cofactor, once `enough` accepts a prime.
inline arith::FactoredInteger fermat_factor(unsigned n, const FactorBudget& budget = {},
                                            const std::function<bool(const Int&)>& enough = {})
{
    const Int F = fermat_number(n);
    std::map<Int, unsigned> acc;
    Int rem = F;
    if (n < 2)
        return arith::factorize(F, budget);

    const std::uint64_t step = std::uint64_t{1} << (n + 2);
    for (std::uint64_t p = step + 1; p <= budget.trial_bound && p * p <= rem; p += step) {
        if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            rem /= static_cast<unsigned long>(p);
            arith::detail::add_factor(acc, from_u64(p));
            if (enough && enough(from_u64(p)))
                return arith::detail::assemble(F, acc, rem);
        }
    }

    std::uint64_t iters = budget.rho_iterations;
    std::vector<Int> pending{rem}, stuck;
    while (!pending.empty()) {
        Int c = pending.back();
        pending.pop_back();
        if (c == 1)
            continue;
        if (arith::is_prime(c, budget.seed)) {
            arith::detail::add_factor(acc, c);
            if (enough && enough(c)) {
                for (const auto& r : pending)
                    stuck.push_back(r);
                break;
            }
            continue;
        }
        Int g = iters ? detail::fermat_rho(c, n, iters, budget.seed) : Int(0);
        if (g == 0) {
            stuck.push_back(c);
            continue;
        }
        // smaller piece on top so cheap primes surface first
        Int h = c / g;
        pending.push_back(g < h ? h : g);
        pending.push_back(g < h ? g : h);
    }
    Int cof = 1;
    for (const auto& s : stuck)
        cof *= s;
    return arith::detail::assemble(F, acc, cof);
}

struct LemmaResult {
    std::vector<DominanceWitness> witnesses;
    std::vector<std::uint64_t> inconclusive;  // indices n where F_n did not yield a usable factor
};

/// One (A, 2) witness per n in [n_lo, n_hi] with (A | F_n) = -1, taken from a
/// prime factor p of F_n with (A | p) = -1.
inline LemmaResult lemma_search(const Int& A, unsigned n_lo, unsigned n_hi, const FactorBudget& budget = {})
{
    const std::uint64_t a = detail::checked_u64(A);
    if (n_lo < 2 || n_lo > n_hi)
        throw InvalidInput("need 2 <= n_lo <= n_hi");
    if (n_hi > kMaxFermatIndex)
        throw InvalidInput("n_hi must be at most " + std::to_string(kMaxFermatIndex));
    const FermatContext ctx(a);
    LemmaResult out;
    for (unsigned n = n_lo; n <= n_hi; ++n) {
        if (ctx.symbol(n) != -1)
            continue;
        const auto f = fermat_factor(n, budget, [&](const Int& p) { return arith::kronecker(A, p) == -1; });
        bool found = false;
        for (const auto& pf : f.factors) {
            const Int& p = pf.prime;
            if (arith::kronecker(A, p) != -1)
                continue;
            DominanceWitness w;
            try {
                w = dominance::certify(p, A, 2, budget);
            } catch (const Inconclusive&) {
                continue;
            }
            const Int two_n1 = ipow(Int(2), n + 1);
            if (w.ord_b != two_n1 || !divides(2 * two_n1, p - 1))
                throw std::logic_error("Fermat factor " + to_string(p) + " violates the order law");
            w.construction = {dominance::Construction::Lemma, std::nullopt, 0};
            w.n = n;
            out.witnesses.push_back(std::move(w));
            found = true;
            break;
        }
        if (!found)
            out.inconclusive.push_back(n);
    }
    return out;
}

inline std::vector<DominanceWitness> lemma_witness(const Int& A, unsigned n_lo, unsigned n_hi,
                                                   const FactorBudget& budget = {})
{
    auto r = lemma_search(A, n_lo, n_hi, budget);
    if (r.witnesses.empty() && !r.inconclusive.empty())
        throw Inconclusive("no Fermat factor qualified for A = " + to_string(A));
    return r.witnesses;
}

} // namespace orddom::antielite

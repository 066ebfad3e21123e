#pragma once

// Command-line front end. run() takes argv-style arguments and two streams so
// that it can be driven in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "antielite.hpp"
#include "dominance.hpp"
#include "eisenstein.hpp"
#include "quadfield.hpp"
#include "record.hpp"

namespace orddom::cli {

using record::json;

enum ExitCode : int { kOk = 0, kInconclusive = 1, kInvalid = 2 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

inline std::pair<Int, Int> parse_two(const std::string& s, const char* what)
{
    auto parts = split(s, ',');
    if (parts.size() != 2)
        throw InvalidInput(std::string(what) + " must be written x,y; got '" + s + "'");
    return {parse_int(parts[0]), parse_int(parts[1])};
}

inline dominance::Pair parse_pair(const std::string& s)
{
    auto [a, b] = parse_two(s, "pair");
    dominance::Pair p{a, b};
    dominance::validate(p);
    return p;
}

inline quadfield::QuadInt parse_element(const std::string& s)
{
    auto [x, y] = parse_two(s, "element");
    return {x, y};
}

inline std::uint64_t parse_u64(const std::string& s, const char* what)
{
    Int v = parse_int(s);
    if (!fits_u64(v))
        throw InvalidInput(std::string(what) + " must be a nonnegative 64-bit integer");
    return to_u64(v);
}

inline dominance::Predicate parse_predicate(const std::string& s)
{
    using K = dominance::Predicate::Kind;
    if (s == "gt")
        return {K::Gt, 0};
    if (s == "eq")
        return {K::Eq, 0};
    if (s.rfind("ratio:", 0) == 0) {
        std::uint64_t m = parse_u64(s.substr(6), "ratio modulus");
        if (m == 0)
            throw InvalidInput("ratio modulus must be positive");
        return {K::RatioDiv, m};
    }
    throw InvalidInput("unknown predicate '" + s + "' (expected gt, eq or ratio:m)");
}

/// Explicit construction choice. "t1iii" picks whichever supplementary form applies.
inline dominance::ConstructionId parse_construction(const std::string& s, const dominance::Pair& pair)
{
    using dominance::Construction;
    if (s == "t1iii") {
        for (const auto& c : dominance::applicable_constructions(pair))
            if (c.tag == Construction::T1III_M1 || c.tag == Construction::T1III_M2)
                return c;
        throw NotApplicable("neither supplementary form applies to this pair");
    }
    if (s == "t1iv") {
        for (const auto& c : dominance::applicable_constructions(pair))
            if (c.tag == Construction::T1IV)
                return c;
        throw NotApplicable("the offset form does not apply to this pair");
    }
    if (s.rfind("t1iv:", 0) == 0) {
        unsigned r = static_cast<unsigned>(parse_u64(s.substr(5), "offset"));
        dominance::ConstructionId c{Construction::T1IV, std::nullopt, r};
        if (!dominance::is_applicable(c, pair))
            throw NotApplicable("offset " + std::to_string(r) + " is not admissible for this pair");
        return c;
    }
    if (s == "custom") {
        auto f = dominance::custom_preset(pair);
        if (!f)
            throw InvalidInput("no preset custom form for this pair; use custom:c,d,e");
        return {Construction::Custom, *f, 0};
    }
    if (s.rfind("custom:", 0) == 0) {
        auto parts = split(s.substr(7), ',');
        if (parts.size() != 3)
            throw InvalidInput("custom form must be custom:c,d,e");
        dominance::CustomForm f{parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2])};
        if (f.c < 1 || f.d < 1 || f.e < 1)
            throw InvalidInput("custom parameters must be positive");
        return {Construction::Custom, f, 0};
    }
    auto tag = dominance::parse_tag(s);
    dominance::ConstructionId c{tag, std::nullopt, 0};
    if (!dominance::is_quadratic_construction(tag) || tag == Construction::Custom || tag == Construction::Lemma)
        throw InvalidInput("construction '" + s + "' cannot be requested here");
    if (!dominance::is_applicable(c, pair))
        throw NotApplicable("construction " + s + " does not apply to this pair");
    return c;
}

struct Options {
    bool csv = false;
    bool verify = false;
    std::uint64_t seed = arith::kDefaultSeed;
    std::string trial_bound = "1000000";
    std::string rho_budget = "10000000";

    arith::FactorBudget budget() const
    {
        return {parse_u64(trial_bound, "trial bound"), parse_u64(rho_budget, "factor budget"), seed};
    }
};

class Session {
public:
    Session(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

    void add(json j) { records_.push_back(std::move(j)); }

    /// Writes the buffered records; with --verify, replays them first.
    int finish(int code)
    {
        if (opt_.csv) {
            record::CsvWriter w(out_);
            for (const auto& r : records_)
                w.write(r);
        } else {
            for (const auto& r : records_)
                out_ << r.dump() << "\n";
        }
        if (opt_.verify) {
            std::size_t bad = 0;
            for (const auto& r : records_) {
                if (auto why = record::verify(r, opt_.budget())) {
                    err_ << "verify: " << *why << "\n";
                    ++bad;
                }
            }
            if (bad) {
                err_ << "verify: " << bad << " of " << records_.size() << " records failed\n";
                return kInconclusive;
            }
        }
        return code;
    }

    std::ostream& err() { return err_; }

private:
    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
    std::vector<json> records_;
};

} // namespace detail

/// Runs the tool on argv[0..argc). Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    using detail::Options;
    using detail::Session;

    CLI::App app{"Witness search and certification for multiplicative orders", "orddom"};
    app.fallthrough();
    app.require_subcommand(1);

    Options opt;
    auto* fmt = app.add_flag("--json", "JSON-lines output (default)");
    app.add_flag("--csv", opt.csv, "CSV output")->excludes(fmt);
    app.add_option("--seed", opt.seed, "seed for randomized primality and rho");
    app.add_option("--trial-bound", opt.trial_bound, "trial division bound");
    app.add_option("--factor-budget", opt.rho_budget, "rho iteration budget per factorization");
    app.add_flag("--verify", opt.verify, "replay every emitted record through the certifiers");

    // dominance
    auto* dom = app.add_subcommand("dominance", "order-dominant pairs (A, B)");
    dom->require_subcommand(1);

    std::string pair_s, construction = "auto";
    std::size_t count = 1;
    unsigned long max_k = 20;
    unsigned max_n = 9;
    auto* search = dom->add_subcommand("search", "witnesses from the explicit constructions");
    search->add_option("--pair", pair_s, "A,B")->required();
    search->add_option("--construction", construction,
                       "auto, t1ia, t1ib, t1ii, t1iii, t1iii_m1, t1iii_m2, t1iv[:r], custom[:c,d,e] or lemma");
    search->add_option("--count", count, "number of distinct witnesses");
    search->add_option("--max-k", max_k, "largest exponent index to try");
    search->add_option("--max-n", max_n, "largest Fermat index for the lemma route");

    std::string bound_s, predicate_s = "gt";
    auto* scan = dom->add_subcommand("scan", "test every prime up to a bound");
    scan->add_option("--pair", pair_s, "A,B")->required();
    scan->add_option("--bound", bound_s, "largest prime to test")->required();
    scan->add_option("--predicate", predicate_s, "gt, eq or ratio:m");

    std::string p_s;
    auto* certify = dom->add_subcommand("certify", "check one prime");
    certify->add_option("--pair", pair_s, "A,B")->required();
    certify->add_option("--p", p_s, "prime")->required();

    // antielite
    auto* ae = app.add_subcommand("antielite", "Fermat-number characters and anti-elite integers");
    ae->require_subcommand(1);
    std::string a_s;
    bool symbols = false, list = false;
    auto* classify = ae->add_subcommand("classify", "decide whether A is anti-elite");
    classify->add_option("A", a_s, "positive integer")->required();
    classify->add_flag("--symbols", symbols, "include one period of symbols");
    auto* survey = ae->add_subcommand("survey", "all anti-elite A up to X");
    survey->add_option("X", bound_s, "upper bound")->required();
    survey->add_flag("--list", list, "one record per anti-elite integer");
    unsigned n_lo = 2, n_hi = 9;
    auto* aw = ae->add_subcommand("witness", "(A, 2) witnesses from Fermat factors");
    aw->add_option("A", a_s, "positive integer")->required();
    aw->add_option("--n-lo", n_lo, "first Fermat index");
    aw->add_option("--n-hi", n_hi, "last Fermat index");

    // cubic
    auto* cub = app.add_subcommand("cubic", "pairs (A, -3) and (A, 3)");
    cub->require_subcommand(1);
    auto* cw = cub->add_subcommand("witness", "witnesses from prime factors of A^n + 3");
    cw->add_option("--a", a_s, "A")->required();
    cw->add_option("--count", count, "number of distinct primes");
    cw->add_option("--max-k", max_k, "largest exponent index to try");

    // quad
    auto* quad = app.add_subcommand("quad", "imaginary quadratic fields");
    quad->require_subcommand(1);
    std::string d_s, alpha_s, beta_s;
    bool construct = false, do_scan = false;
    auto* qe = quad->add_subcommand("equal", "prime ideals where alpha and beta have equal order");
    qe->add_option("--d", d_s, "squarefree negative d")->required();
    qe->add_option("--alpha", alpha_s, "x,y meaning x + y*omega")->required();
    qe->add_option("--beta", beta_s, "x,y meaning x + y*omega")->required();
    auto* qc = qe->add_flag("--construct", construct, "use the explicit construction");
    auto* qs = qe->add_flag("--scan", do_scan, "scan prime ideals up to --bound");
    qc->excludes(qs);
    qe->add_option("--bound", bound_s, "norm bound for --scan");
    qe->add_option("--max-k", max_k, "largest k for --construct");
    qe->add_option("--count", count, "number of prime ideals for --construct");

    // verify
    std::string file = "-";
    auto* ver = app.add_subcommand("verify", "replay JSON-lines records through the certifiers");
    ver->add_option("file", file, "input file, - for stdin");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("orddom");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalid;
    }

    Session session(opt, out, err);
    try {
        const auto budget = opt.budget();

        if (search->parsed()) {
            const auto pair = detail::parse_pair(pair_s);
            if (count == 0)
                throw InvalidInput("count must be positive");
            std::vector<dominance::ConstructionId> cids;
            bool lemma = construction == "lemma";
            if (construction == "auto") {
                cids = dominance::applicable_constructions(pair);
                if (auto f = dominance::custom_preset(pair))
                    cids.push_back({dominance::Construction::Custom, *f, 0});
                if (cids.empty()) {
                    if (pair.b == 2 && pair.a > 1) {
                        if (antielite::classify(pair.a).verdict) {
                            err << "no applicable t1 construction; " << pair.a << " is anti-elite\n";
                            return session.finish(kInconclusive);
                        }
                        lemma = true;
                    } else {
                        err << "no applicable construction for (" << pair.a << ", " << pair.b << ")\n";
                        return session.finish(kInconclusive);
                    }
                }
            } else if (!lemma) {
                cids.push_back(detail::parse_construction(construction, pair));
            }

            std::size_t found = 0;
            bool inconclusive = false;
            if (lemma) {
                if (pair.b != 2 || pair.a < 1)
                    throw NotApplicable("the lemma route needs a pair (A, 2) with A positive");
                for (unsigned n = 2; n <= max_n && found < count; ++n) {
                    auto r = antielite::lemma_search(pair.a, n, n, budget);
                    for (const auto& w : r.witnesses) {
                        session.add(record::dominance(w));
                        ++found;
                    }
                    inconclusive |= !r.inconclusive.empty();
                }
            } else {
                auto r = dominance::search(pair, cids, count, max_k, budget);
                for (const auto& w : r.witnesses)
                    session.add(record::dominance(w));
                found = r.witnesses.size();
                inconclusive = !r.inconclusive.empty();
            }
            if (found < count) {
                err << "found " << found << " of " << count << " witnesses"
                    << (inconclusive ? " (some factorizations ran out of budget)" : "") << "\n";
                return session.finish(kInconclusive);
            }
            return session.finish(kOk);
        }

        if (scan->parsed()) {
            const auto pair = detail::parse_pair(pair_s);
            const auto pred = detail::parse_predicate(predicate_s);
            const auto bound = detail::parse_u64(bound_s, "bound");
            auto r = dominance::scan(pair.a, pair.b, bound, pred);
            for (const auto& h : r.hits)
                session.add(record::scan_hit(pair, h));
            session.add(record::scan_summary(pair, bound, pred, r));
            return session.finish(kOk);
        }

        if (certify->parsed()) {
            const auto pair = detail::parse_pair(pair_s);
            try {
                session.add(record::dominance(dominance::certify(parse_int(p_s), pair.a, pair.b, budget)));
            } catch (const dominance::NotDominant& e) {
                err << e.what() << "\n";
                return session.finish(kInconclusive);
            }
            return session.finish(kOk);
        }

        if (classify->parsed()) {
            session.add(record::anti_elite(antielite::classify(parse_int(a_s)), symbols));
            return session.finish(kOk);
        }

        if (survey->parsed()) {
            const auto x = detail::parse_u64(bound_s, "survey bound");
            auto s = antielite::survey(x);
            if (list) {
                for (auto A : s.anti_elite)
                    session.add(record::anti_elite_entry(A));
            } else {
                session.add(record::survey_summary(x, s));
            }
            return session.finish(kOk);
        }

        if (aw->parsed()) {
            const Int A = parse_int(a_s);
            auto r = antielite::lemma_search(A, n_lo, n_hi, budget);
            for (const auto& w : r.witnesses)
                session.add(record::dominance(w));
            if (r.witnesses.empty()) {
                err << (r.inconclusive.empty() ? "no Fermat index in range has (A | F_n) = -1"
                                               : "no qualifying Fermat factor found within budget")
                    << "\n";
                return session.finish(kInconclusive);
            }
            return session.finish(kOk);
        }

        if (cw->parsed()) {
            const Int A = parse_int(a_s);
            if (count == 0)
                throw InvalidInput("count must be positive");
            std::set<Int> seen;
            bool inconclusive = false;
            for (unsigned long k = 1; k <= max_k && seen.size() < count; ++k) {
                try {
                    for (const auto& w : eisenstein::thm3_witness(A, k, budget)) {
                        if (seen.size() >= count || !seen.insert(w.neg3.p).second)
                            continue;
                        session.add(record::dominance(w.neg3));
                        session.add(record::dominance(w.pos3));
                    }
                } catch (const Inconclusive&) {
                    inconclusive = true;
                }
            }
            if (seen.size() < count) {
                err << "found " << seen.size() << " of " << count << " primes"
                    << (inconclusive ? " (some factorizations ran out of budget)" : "") << "\n";
                return session.finish(kInconclusive);
            }
            return session.finish(kOk);
        }

        if (qe->parsed()) {
            if (construct == do_scan)
                throw InvalidInput("choose exactly one of --construct and --scan");
            const auto K = quadfield::make_field(parse_int(d_s));
            const auto alpha = detail::parse_element(alpha_s), beta = detail::parse_element(beta_s);
            if (do_scan) {
                if (bound_s.empty())
                    throw InvalidInput("--scan needs --bound");
                for (const auto& h : quadfield::scan_equal(K, alpha, beta, detail::parse_u64(bound_s, "bound")))
                    session.add(record::equal_order_hit(K, alpha, beta, h));
                return session.finish(kOk);
            }
            if (count == 0)
                throw InvalidInput("count must be positive");
            std::size_t found = 0;
            std::vector<quadfield::PrimeIdeal> seen;
            bool inconclusive = false;
            for (unsigned long k = 1; k <= max_k && found < count; ++k) {
                try {
                    for (const auto& w : quadfield::thm4_witness(K, alpha, beta, k, budget)) {
                        if (found >= count || std::find(seen.begin(), seen.end(), w.P) != seen.end())
                            continue;
                        seen.push_back(w.P);
                        session.add(record::equal_order(K, alpha, beta, w));
                        ++found;
                    }
                } catch (const Inconclusive&) {
                    inconclusive = true;
                }
            }
            if (found < count) {
                err << "found " << found << " of " << count << " prime ideals"
                    << (inconclusive ? " (some factorizations ran out of budget)" : "") << "\n";
                return session.finish(kInconclusive);
            }
            return session.finish(kOk);
        }

        if (ver->parsed()) {
            std::ifstream fin;
            std::istream* in = &std::cin;
            if (file != "-") {
                fin.open(file);
                if (!fin)
                    throw InvalidInput("cannot open " + file);
                in = &fin;
            }
            std::size_t total = 0, bad = 0;
            std::string line;
            while (std::getline(*in, line)) {
                if (line.empty())
                    continue;
                ++total;
                json j;
                try {
                    j = json::parse(line);
                } catch (const json::exception& e) {
                    throw InvalidInput("line " + std::to_string(total) + " is not JSON: " + e.what());
                }
                if (auto why = record::verify(j, budget)) {
                    err << "line " << total << ": " << *why << "\n";
                    ++bad;
                }
            }
            json s = record::header("verify_summary");
            s["records"] = std::to_string(total);
            s["failed"] = std::to_string(bad);
            session.add(s);
            return session.finish(bad ? kInconclusive : kOk);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const Inconclusive& e) {
        err << "inconclusive: " << e.what() << "\n";
        return session.finish(kInconclusive);
    } catch (const json::exception& e) {
        err << "error: malformed record: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}

} // namespace orddom::cli

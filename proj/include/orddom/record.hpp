#pragma once

// JSON-lines and CSV encodings of witness records, and replay of records
// through the certifiers.

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "antielite.hpp"
#include "dominance.hpp"
#include "quadfield.hpp"

namespace orddom::record {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string str(const Int& v) { return to_string(v); }
inline std::string str(std::uint64_t v) { return std::to_string(v); }

inline json header(const char* kind)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

inline json dominance(const dominance::DominanceWitness& w)
{
    json j = header("dominance");
    j["pair"] = {str(w.pair.a), str(w.pair.b)};
    j["construction"] = w.construction.name();
    j["n"] = str(w.n);
    j["p"] = str(w.p);
    j["ord_a"] = str(w.ord_a);
    j["ord_b"] = str(w.ord_b);
    return j;
}

inline json scan_hit(const dominance::Pair& pair, const dominance::ScanRecord& r)
{
    json j = header("dominance");
    j["pair"] = {str(pair.a), str(pair.b)};
    j["construction"] = "scan";
    j["n"] = "0";
    j["p"] = str(r.p);
    j["ord_a"] = str(r.ord_a);
    j["ord_b"] = str(r.ord_b);
    return j;
}

inline std::string predicate_name(const dominance::Predicate& pred)
{
    using K = dominance::Predicate::Kind;
    switch (pred.kind) {
    case K::Gt: return "gt";
    case K::Eq: return "eq";
    case K::RatioDiv: return "ratio:" + std::to_string(pred.m);
    }
    return "?";
}

inline json scan_summary(const dominance::Pair& pair, std::uint64_t bound, const dominance::Predicate& pred,
                         const dominance::ScanResult& r)
{
    json j = header("scan_summary");
    j["pair"] = {str(pair.a), str(pair.b)};
    j["bound"] = str(bound);
    j["predicate"] = predicate_name(pred);
    j["primes_examined"] = str(r.primes_examined);
    j["hits"] = str(static_cast<std::uint64_t>(r.hits.size()));
    j["greater"] = str(r.greater);
    j["equal"] = str(r.equal);
    j["less"] = str(r.less);
    return j;
}

inline json anti_elite(const antielite::AntiEliteReport& r, bool with_symbols)
{
    json j = header("anti_elite");
    j["A"] = str(r.A);
    j["verdict"] = r.verdict;
    j["A1"] = str(r.A1);
    j["t"] = r.t;
    j["B_odd"] = str(r.B_odd);
    j["period"] = str(r.period);
    j["window_start"] = str(r.window_start);
    j["refuting_n"] = r.refuting_n ? json(str(*r.refuting_n)) : json(nullptr);
    if (with_symbols) {
        j["symbols"] = r.symbols;
        j["symbols_truncated"] = r.symbols_truncated;
    }
    return j;
}

inline json anti_elite_entry(std::uint64_t A)
{
    json j = header("anti_elite");
    j["A"] = str(A);
    j["verdict"] = true;
    return j;
}

inline json survey_summary(std::uint64_t x, const antielite::SurveyResult& s)
{
    json j = header("survey_summary");
    j["x"] = str(x);
    j["count"] = str(static_cast<std::uint64_t>(s.anti_elite.size()));
    json d = json::array();
    for (const auto& pt : s.density)
        d.push_back({{"x", str(pt.x)}, {"count", str(pt.count)}});
    j["density"] = d;
    return j;
}

inline json element(const quadfield::QuadInt& u) { return {str(u.x), str(u.y)}; }

inline json prime_ideal(const quadfield::PrimeIdeal& P)
{
    json j;
    j["p"] = str(P.p);
    j["kind"] = quadfield::kind_name(P.kind);
    j["root"] = P.kind == quadfield::Kind::Inert ? json(nullptr) : json(str(P.root));
    j["norm"] = str(P.norm());
    return j;
}

inline json field(const quadfield::QuadField& K)
{
    json j;
    j["d"] = str(K.d);
    j["disc"] = str(K.disc);
    j["omega"] = K.omega_name();
    return j;
}

inline json equal_order(const quadfield::QuadField& K, const quadfield::QuadInt& alpha, const quadfield::QuadInt& beta,
                        const quadfield::EqualOrderWitness& w)
{
    json j = header("equal_order");
    j["field"] = field(K);
    j["alpha"] = element(alpha);
    j["beta"] = element(beta);
    j["source"] = "construct";
    j["k"] = str(static_cast<std::uint64_t>(w.k));
    j["ell"] = str(w.ell);
    j["gamma"] = element(w.gamma);
    j["I_norm"] = str(w.I_norm);
    j["P"] = prime_ideal(w.P);
    j["ord_a"] = str(w.ord);
    j["ord_b"] = str(w.ord);
    return j;
}

inline json equal_order_hit(const quadfield::QuadField& K, const quadfield::QuadInt& alpha,
                            const quadfield::QuadInt& beta, const quadfield::EqualOrderHit& h)
{
    json j = header("equal_order");
    j["field"] = field(K);
    j["alpha"] = element(alpha);
    j["beta"] = element(beta);
    j["source"] = "scan";
    j["P"] = prime_ideal(h.P);
    j["ord_a"] = str(h.ord);
    j["ord_b"] = str(h.ord);
    return j;
}

// ---------------------------------------------------------------------------
// CSV

inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                s += ";";
            s += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
        }
        out.emplace_back(prefix, s);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else if (j.is_null()) {
        out.emplace_back(prefix, "");
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

/// Writes records as CSV, repeating the header whenever the column set changes.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void write(const json& j)
    {
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(j, "", cells);
        std::vector<std::string> cols;
        for (const auto& c : cells)
            cols.push_back(c.first);
        if (cols != columns_) {
            columns_ = cols;
            for (std::size_t i = 0; i < cols.size(); ++i)
                os_ << (i ? "," : "") << csv_field(cols[i]);
            os_ << "\n";
        }
        for (std::size_t i = 0; i < cells.size(); ++i)
            os_ << (i ? "," : "") << csv_field(cells[i].second);
        os_ << "\n";
    }

private:
    std::ostream& os_;
    std::vector<std::string> columns_;
};

// ---------------------------------------------------------------------------
// Replay

namespace detail {

inline Int big(const json& j) { return parse_int(j.get<std::string>()); }

inline quadfield::QuadInt elt(const json& j) { return {big(j.at(0)), big(j.at(1))}; }

inline quadfield::PrimeIdeal ideal(const json& j)
{
    quadfield::PrimeIdeal P;
    P.p = big(j.at("p"));
    const auto k = j.at("kind").get<std::string>();
    P.kind = k == "split" ? quadfield::Kind::Split : k == "ramified" ? quadfield::Kind::Ramified : quadfield::Kind::Inert;
    if (!j.at("root").is_null())
        P.root = big(j.at("root"));
    return P;
}

} // namespace detail

/// Recomputes a record from scratch. Returns a description of the first
/// mismatch, or nothing when the record checks out. Summary records pass.
inline std::optional<std::string> verify(const json& j, const arith::FactorBudget& budget = {})
{
    using detail::big;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "dominance") {
        const Int a = big(j.at("pair").at(0)), b = big(j.at("pair").at(1)), p = big(j.at("p"));
        if (!arith::is_prime(p, budget.seed) || p == 2 || orddom::divides(p, a) || orddom::divides(p, b))
            return "p = " + to_string(p) + " is not an admissible prime";
        const Int oa = arith::order_mod_prime(a, p, budget), ob = arith::order_mod_prime(b, p, budget);
        if (oa != big(j.at("ord_a")) || ob != big(j.at("ord_b")))
            return "orders at p = " + to_string(p) + " are (" + to_string(oa) + ", " + to_string(ob) + ")";
        const auto tag = j.at("construction").get<std::string>();
        if (tag == "scan")
            return std::nullopt;
        if (oa <= ob)
            return "not dominant at p = " + to_string(p);
        const auto base = dominance::parse_tag(tag.substr(0, tag.find(':')));
        if (dominance::is_quadratic_construction(base) &&
            (!orddom::divides(ob, oa) || !is_even(exact_div(oa, ob))))
            return "order ratio at p = " + to_string(p) + " is not even";
        if (base == dominance::Construction::Cubic && (!orddom::divides(ob, oa) || !orddom::divides(Int(3), exact_div(oa, ob))))
            return "order ratio at p = " + to_string(p) + " is not a multiple of 3";
        return std::nullopt;
    }
    if (kind == "equal_order") {
        const auto K = quadfield::make_field(big(j.at("field").at("d")));
        const auto alpha = detail::elt(j.at("alpha")), beta = detail::elt(j.at("beta"));
        const auto P = detail::ideal(j.at("P"));
        const auto ps = quadfield::split_prime(K, P.p);
        if (std::find(ps.begin(), ps.end(), P) == ps.end())
            return "not a prime ideal of the field";
        const Int oa = quadfield::ord_P(K, alpha, P, budget), ob = quadfield::ord_P(K, beta, P, budget);
        if (oa != ob || oa != big(j.at("ord_a")) || ob != big(j.at("ord_b")))
            return "orders at P are (" + to_string(oa) + ", " + to_string(ob) + ")";
        return std::nullopt;
    }
    if (kind == "anti_elite") {
        const auto r = antielite::classify(big(j.at("A")));
        if (r.verdict != j.at("verdict").get<bool>())
            return "classification of " + std::to_string(r.A) + " differs";
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace orddom::record

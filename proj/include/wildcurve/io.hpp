#pragma once

#include <fstream>
#include <set>
#include <string>

#include "bps.hpp"
#include "json.hpp"

namespace wildcurve {

inline constexpr const char* engine_version = "1.0.0";

using nlohmann::json;

inline json partition_json(const Partition& p) { return json(p.parts()); }

inline json tuple_json(const PartitionTuple& t) {
    json a = json::array();
    for (auto& p : t) a.push_back(partition_json(p));
    return a;
}

inline PartitionTuple tuple_from_json(const json& j) {
    PartitionTuple t;
    for (auto& p : j) t.emplace_back(p.get<std::vector<int>>());
    return t;
}

// numerator terms and denominator factors on the doubled lattice
inline json rational_json(const RationalBivar& r) {
    auto [a, b] = var_names(r.vars());
    json j;
    j["text"] = r.str();
    j["variables"] = {a, b};
    j["lattice"] = 2;
    json num = json::array();
    for (auto& t : r.numerator().terms()) num.push_back({t.x, t.y, t.c.get_str()});
    j["numerator"] = num;
    j["numerator_denominator"] = r.numerator().denominator().get_str();
    json cyc = json::array();
    for (auto& [f, m] : r.cyclo_factors()) cyc.push_back({{"a", f.a}, {"b", f.b}, {"d", f.d}, {"power", m}});
    j["cyclotomic_factors"] = cyc;
    if (!r.general_factors().empty()) {
        json gen = json::array();
        for (auto& [f, m] : r.general_factors()) {
            json ts = json::array();
            for (auto& t : f.terms()) ts.push_back({t.x, t.y, t.c.get_str()});
            gen.push_back({{"terms", ts}, {"power", m}});
        }
        j["other_factors"] = gen;
    }
    return j;
}

inline json xseries_json(const XSeries& s) {
    json j;
    j["groups"] = s.shape();
    j["rmax"] = s.rmax();
    json terms = json::array();
    for (auto& [k, c] : s.terms()) {
        json key = json::array();
        int pos = 0;
        for (int l : s.shape()) {
            key.push_back(std::vector<int>(k.begin() + pos, k.begin() + pos + l));
            pos += l;
        }
        terms.push_back({{"exponents", key}, {"degree", s.degree(k)}, {"coefficient", rational_json(c)}});
    }
    j["terms"] = terms;
    return j;
}

inline json checks_json(const std::vector<CheckResult>& cs) {
    json a = json::array();
    for (auto& c : cs) a.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return a;
}

// BpsPolynomial schema: mu, n, g, d, terms [[a, b, "coeff"], ...] sorted by (a, b)
inline json bps_json(const BpsPolynomial& P) {
    json j;
    j["mu"] = tuple_json(P.mu);
    j["n"] = P.n;
    j["g"] = P.g;
    j["d"] = P.d;
    json ts = json::array();
    if (P.certified)
        for (auto& [a, b, c] : P.terms()) ts.push_back({a, b, c.get_str()});
    j["terms"] = ts;
    j["certified"] = P.certified;
    if (!P.certified) {
        j["falsification"] = P.falsification;
        j["value"] = rational_json(P.value);
    }
    return j;
}

struct GoldenPolynomial {
    PartitionTuple mu;
    std::vector<int> n;
    int g = 0, d = 0;
    std::map<std::pair<int, int>, BigInt> terms;
};

inline GoldenPolynomial golden_from_json(const json& j) {
    GoldenPolynomial G;
    G.mu = tuple_from_json(j.at("mu"));
    G.n = j.at("n").get<std::vector<int>>();
    G.g = j.at("g").get<int>();
    G.d = j.at("d").get<int>();
    for (auto& t : j.at("terms")) G.terms[{t.at(0).get<int>(), t.at(1).get<int>()}] = BigInt(t.at(2).get<std::string>());
    return G;
}

inline GoldenPolynomial load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path);
    return golden_from_json(json::parse(in));
}

struct GoldenComparison {
    bool equal = false;
    long golden_terms = 0, computed_terms = 0, mismatches = 0;
    std::string first_mismatch;
};

inline GoldenComparison compare_golden(const BpsPolynomial& P, const GoldenPolynomial& G) {
    GoldenComparison c;
    c.golden_terms = static_cast<long>(G.terms.size());
    std::map<std::pair<int, int>, BigInt> got;
    if (P.certified)
        for (auto& [a, b, v] : P.terms()) got[{a, b}] = v;
    c.computed_terms = static_cast<long>(got.size());
    std::set<std::pair<int, int>> keys;
    for (auto& [k, v] : G.terms) keys.insert(k);
    for (auto& [k, v] : got) keys.insert(k);
    for (auto& k : keys) {
        BigInt a = G.terms.count(k) ? G.terms.at(k) : BigInt(0), b = got.count(k) ? got.at(k) : BigInt(0);
        if (a != b && !c.mismatches++)
            c.first_mismatch = "u^" + std::to_string(k.first) + " v^" + std::to_string(k.second) + ": expected " + a.get_str() +
                               ", got " + b.get_str();
    }
    c.equal = P.certified && c.mismatches == 0;
    return c;
}

}  // namespace wildcurve

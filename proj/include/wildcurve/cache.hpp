#pragma once

#include <sys/file.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gw.hpp"

namespace wildcurve {

// ---- compact text forms, free of spaces, '=' and tabs ----

inline std::string serialize(const LaurentBivar& p, char sep = ',') {
    std::string s = p.denominator().get_str() + "#";
    bool first = true;
    for (auto& t : p.terms()) {
        if (!first) s += sep;
        first = false;
        s += std::to_string(t.x) + ":" + std::to_string(t.y) + ":" + t.c.get_str();
    }
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline LaurentBivar deserialize_laurent(const std::string& s, VarPair v, char sep = ',') {
    auto hash = s.find('#');
    if (hash == std::string::npos) throw std::invalid_argument("bad polynomial record");
    BigInt den(s.substr(0, hash));
    std::vector<LaurentBivar::Term> ts;
    std::string body = s.substr(hash + 1);
    if (!body.empty())
        for (auto& t : split(body, sep)) {
            auto f = split(t, ':');
            if (f.size() != 3) throw std::invalid_argument("bad term record");
            ts.push_back({std::stoi(f[0]), std::stoi(f[1]), BigInt(f[2])});
        }
    return LaurentBivar::from_integer_terms(v, std::move(ts), den);
}

// vars|numerator|a:b:d:m,...|m@poly/...
inline std::string serialize(const RationalBivar& r) {
    std::string s = std::to_string(static_cast<int>(r.vars())) + "|" + serialize(r.numerator()) + "|";
    bool first = true;
    for (auto& [f, m] : r.cyclo_factors()) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(f.a) + ":" + std::to_string(f.b) + ":" + std::to_string(f.d) + ":" + std::to_string(m);
    }
    s += "|";
    first = true;
    for (auto& [f, m] : r.general_factors()) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(m) + "@" + serialize(f, '/');
    }
    return s;
}

inline RationalBivar deserialize_rational(const std::string& s) {
    auto f = split(s, '|');
    if (f.size() != 4) throw std::invalid_argument("bad rational record");
    int vi = std::stoi(f[0]);
    if (vi < 0 || vi > static_cast<int>(VarPair::uv)) throw std::invalid_argument("bad variable tag");
    auto v = static_cast<VarPair>(vi);
    std::map<CycloFactor, int> cyc;
    if (!f[2].empty())
        for (auto& c : split(f[2], ',')) {
            auto p = split(c, ':');
            if (p.size() != 4) throw std::invalid_argument("bad factor record");
            cyc[{std::stoi(p[0]), std::stoi(p[1]), std::stoi(p[2])}] = std::stoi(p[3]);
        }
    std::map<LaurentBivar, int> gen;
    if (!f[3].empty())
        for (auto& g : split(f[3], ',')) {
            auto at = g.find('@');
            if (at == std::string::npos) throw std::invalid_argument("bad factor record");
            gen[deserialize_laurent(g.substr(at + 1), v, '/')] = std::stoi(g.substr(0, at));
        }
    return RationalBivar::from_parts(deserialize_laurent(f[1], v), std::move(cyc), std::move(gen));
}

inline std::string tuple_key(const std::vector<Partition>& ps) {
    std::string s;
    for (size_t i = 0; i < ps.size(); ++i) s += (i ? ";" : "") + ps[i].str();
    return s;
}

inline std::vector<Partition> parse_tuple_key(const std::string& s) {
    std::vector<Partition> out;
    for (auto& p : split(s, ';')) out.push_back(Partition::parse(p));
    return out;
}

template <class V, class F>
std::string serialize_map(const std::map<Partition, V>& m, F f) {
    std::string s;
    for (auto& [k, v] : m) s += (s.empty() ? "" : " ") + k.str() + "=" + f(v);
    return s;
}

template <class V, class F>
std::map<Partition, V> deserialize_map(const std::string& s, F f) {
    std::map<Partition, V> out;
    if (s.empty()) return out;
    for (auto& e : split(s, ' ')) {
        auto eq = e.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad map record");
        out.emplace(Partition::parse(e.substr(0, eq)), f(e.substr(eq + 1)));
    }
    return out;
}

inline SymFunc<RationalBivar> symfunc_from_map(int degree, const std::map<Partition, RationalBivar>& m) {
    SymFunc<RationalBivar> f(degree);
    for (auto& [k, v] : m) f.add(k, v);
    return f;
}

// Persistent table cache: a versioned header line, then one `kind:key<TAB>value`
// record per line. Loading warms the in-memory memo tables; records that fail
// to parse (a truncated last line, say) are skipped. Values are always
// re-derivable, so the cache never decides a result.
class TableCache {
public:
    static constexpr const char* header = "wildcurve-cache\t1";
    static constexpr const char* file_name = "tables.tsv";

    explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path() const { return dir_ / file_name; }
    size_t loaded() const { return known_.size(); }
    size_t skipped() const { return skipped_; }

    // returns false when the file is missing or carries another version
    bool load() {
        std::ifstream in(path(), std::ios::binary);
        if (!in) return false;
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        // a line without its newline is an interrupted append
        auto lines = split(text, '\n');
        if (!lines.empty()) {
            if (!lines.back().empty()) ++skipped_;
            lines.pop_back();
        }
        if (lines.empty() || lines[0] != header) return false;
        for (size_t i = 1; i < lines.size(); ++i) {
            const std::string& line = lines[i];
            auto tab = line.find('\t');
            if (tab == std::string::npos) {
                ++skipped_;
                continue;
            }
            try {
                apply(line.substr(0, tab), line.substr(tab + 1));
                known_.insert(line.substr(0, tab));
            } catch (const std::exception&) {
                ++skipped_;
            }
        }
        return true;
    }

    // append every memo entry not yet on disk
    size_t flush() {
        std::lock_guard lk(mu_);
        std::vector<std::pair<std::string, std::string>> recs;
        collect(recs);
        std::vector<std::pair<std::string, std::string>> fresh;
        for (auto& r : recs)
            if (!known_.count(r.first)) fresh.push_back(r);
        if (fresh.empty()) return 0;
        std::filesystem::create_directories(dir_);
        bool need_header = true;
        {
            std::ifstream in(path(), std::ios::binary);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            need_header = text.compare(0, std::string(header).size() + 1, std::string(header) + "\n") != 0;
            // drop an interrupted append rather than completing it
            if (!need_header && text.back() != '\n') std::filesystem::resize_file(path(), text.rfind('\n') + 1);
        }
        FILE* f = std::fopen(path().c_str(), need_header ? "w" : "a");
        if (!f) throw std::runtime_error("cannot write cache " + path().string());
        ::flock(fileno(f), LOCK_EX);
        std::string buf;
        if (need_header) buf += std::string(header) + "\n";
        for (auto& [k, v] : fresh) {
            buf += k + "\t" + v + "\n";
            known_.insert(k);
        }
        std::fwrite(buf.data(), 1, buf.size(), f);
        std::fflush(f);
        ::flock(fileno(f), LOCK_UN);
        std::fclose(f);
        return fresh.size();
    }

private:
    static void apply(const std::string& key, const std::string& value) {
        auto colon = key.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("bad cache key");
        std::string kind = key.substr(0, colon), k = key.substr(colon + 1);
        auto rb = [](const std::string& s) { return deserialize_rational(s); };
        if (kind == "lr") {
            lr_memo().put(parse_tuple_key(k), deserialize_map<BigInt>(value, [](const std::string& s) { return BigInt(s); }));
        } else if (kind == "macdonald_N") {
            macdonald_N_memo().put(parse_tuple_key(k), deserialize_map<RationalBivar>(value, rb));
        } else if (kind == "macdonald_P") {
            auto lam = Partition::parse(k);
            macdonald_P_memo().put(lam, symfunc_from_map(lam.size(), deserialize_map<RationalBivar>(value, rb)));
        } else if (kind == "htilde") {
            auto lam = Partition::parse(k);
            htilde_memo().put(lam, symfunc_from_map(lam.size(), deserialize_map<RationalBivar>(value, rb)));
        } else if (kind == "principal_spec") {
            principal_spec_memo().put(Partition::parse(k), deserialize_rational(value));
        } else {
            throw std::invalid_argument("unknown cache kind " + kind);
        }
    }

    static void collect(std::vector<std::pair<std::string, std::string>>& out) {
        auto rb = [](const RationalBivar& r) { return serialize(r); };
        lr_memo().for_each([&](auto& k, auto& v) {
            out.emplace_back("lr:" + tuple_key(k), serialize_map(v, [](const BigInt& c) { return c.get_str(); }));
        });
        macdonald_N_memo().for_each([&](auto& k, auto& v) { out.emplace_back("macdonald_N:" + tuple_key(k), serialize_map(v, rb)); });
        macdonald_P_memo().for_each([&](auto& k, auto& v) { out.emplace_back("macdonald_P:" + k.str(), serialize_map(v.coeffs(), rb)); });
        htilde_memo().for_each([&](auto& k, auto& v) { out.emplace_back("htilde:" + k.str(), serialize_map(v.coeffs(), rb)); });
        principal_spec_memo().for_each([&](auto& k, auto& v) { out.emplace_back("principal_spec:" + k.str(), serialize(v)); });
    }

    std::filesystem::path dir_;
    std::set<std::string> known_;
    size_t skipped_ = 0;
    std::mutex mu_;
};

}  // namespace wildcurve

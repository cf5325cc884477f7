#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wildcurve {

// Young diagram, parts weakly decreasing and strictly positive.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> p) : parts_(p) { canonicalize(); }
    explicit Partition(std::vector<int> p) : parts_(std::move(p)) { canonicalize(); }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    bool empty() const { return parts_.empty(); }
    int operator[](int i) const { return i < length() ? parts_[i] : 0; }

    Partition conjugate() const {
        std::vector<int> c;
        if (parts_.empty()) return Partition();
        c.assign(parts_[0], 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) ++c[j];
        return Partition(std::move(c));
    }

    // (arm, leg) for every box, row by row
    std::vector<std::pair<int, int>> arms_legs() const {
        std::vector<std::pair<int, int>> out;
        Partition t = conjugate();
        for (int i = 0; i < length(); ++i)
            for (int j = 0; j < parts_[i]; ++j)
                out.emplace_back(parts_[i] - j - 1, t[j] - i - 1);
        return out;
    }

    // n(λ) = Σ (i-1) λ_i
    int n() const {
        int s = 0;
        for (int i = 0; i < length(); ++i) s += i * parts_[i];
        return s;
    }

    auto operator<=>(const Partition&) const = default;
    bool operator==(const Partition&) const = default;

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

    // accepts "[3,2,1]", "3,2,1", "[]" and ""
    static Partition parse(std::string s) {
        std::vector<int> p;
        std::string tok;
        auto flush = [&] {
            if (tok.empty()) return;
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v <= 0) throw std::invalid_argument("bad partition part '" + tok + "'");
            p.push_back(v);
            tok.clear();
        };
        for (char c : s) {
            if (c == '[' || c == ']' || c == ' ') continue;
            if (c == ',') flush();
            else tok += c;
        }
        flush();
        if (!std::is_sorted(p.begin(), p.end(), std::greater<int>()))
            throw std::invalid_argument("partition parts must be weakly decreasing: " + s);
        return Partition(std::move(p));
    }

private:
    void canonicalize() {
        for (int p : parts_)
            if (p < 0) throw std::invalid_argument("negative partition part");
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }
    std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.str(); }

// c(λ) = Σ (a - l) = Σ (j - i)
inline int content(const Partition& l) {
    int c = 0;
    for (int i = 0; i < l.length(); ++i)
        for (int j = 0; j < l[i]; ++j) c += j - i;
    return c;
}

// centralizer order ∏ k_j! j^{k_j}
inline std::int64_t zeta(const Partition& rho) {
    std::map<int, int> mult;
    for (int p : rho.parts()) ++mult[p];
    std::int64_t z = 1;
    for (auto [j, k] : mult)
        for (int i = 1; i <= k; ++i) z *= static_cast<std::int64_t>(i) * j;
    return z;
}

inline Partition partition_union(const std::vector<Partition>& ps) {
    std::vector<int> all;
    for (auto& p : ps) all.insert(all.end(), p.parts().begin(), p.parts().end());
    return Partition(std::move(all));
}

// dominance order, both of the same size
inline bool dominates(const Partition& l, const Partition& m) {
    int a = 0, b = 0;
    int len = std::max(l.length(), m.length());
    for (int i = 0; i < len; ++i) {
        a += l[i];
        b += m[i];
        if (a < b) return false;
    }
    return true;
}

namespace detail {
inline void gen_partitions(int n, int maxpart, std::vector<int>& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// reverse-lexicographic: (n) first, (1^n) last
inline const std::vector<Partition>& partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative size");
    static std::shared_mutex mu;
    static std::map<int, std::vector<Partition>> memo;
    {
        std::shared_lock lk(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::gen_partitions(n, n, cur, out);
    std::unique_lock lk(mu);
    return memo.emplace(n, std::move(out)).first->second;
}

// ordered tuples (p_1, ..., p_l) of partitions, possibly empty, with total size n
inline std::vector<std::vector<Partition>> partition_tuples(int n, int l) {
    std::vector<std::vector<Partition>> out;
    if (l == 0) {
        if (n == 0) out.emplace_back();
        return out;
    }
    for (int k = n; k >= 0; --k)
        for (auto& p : partitions_of(k))
            for (auto& rest : partition_tuples(n - k, l - 1)) {
                std::vector<Partition> t{p};
                t.insert(t.end(), rest.begin(), rest.end());
                out.push_back(std::move(t));
            }
    return out;
}

// position of λ within partitions_of(|λ|)
inline int partition_index(const Partition& l) {
    const auto& ps = partitions_of(l.size());
    auto it = std::lower_bound(ps.begin(), ps.end(), l, [](const Partition& a, const Partition& b) { return a > b; });
    if (it == ps.end() || *it != l) throw std::logic_error("partition_index: not found");
    return static_cast<int>(it - ps.begin());
}

// Murnaghan-Nakayama on beta-numbers, memoized
inline std::int64_t character(const Partition& nu, const Partition& rho) {
    if (nu.size() != rho.size())
        throw std::invalid_argument("character: |nu| != |rho| (" + nu.str() + " vs " + rho.str() + ")");
    if (rho.empty()) return 1;

    static std::shared_mutex mu;
    static std::map<std::pair<Partition, Partition>, std::int64_t> memo;
    auto key = std::make_pair(nu, rho);
    {
        std::shared_lock lk(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    // strip the largest part of rho as a border strip
    int k = rho[0];
    Partition rest(std::vector<int>(rho.parts().begin() + 1, rho.parts().end()));
    int len = nu.length();
    std::vector<int> beta(len);
    for (int i = 0; i < len; ++i) beta[i] = nu[i] + (len - 1 - i);
    std::int64_t total = 0;
    for (int i = 0; i < len; ++i) {
        int nb = beta[i] - k;
        if (nb < 0) continue;
        if (std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
        // sign = (-1)^{number of beta numbers strictly between nb and beta[i]}
        int between = 0;
        for (int b : beta)
            if (b > nb && b < beta[i]) ++between;
        std::vector<int> nbeta = beta;
        nbeta[i] = nb;
        std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
        std::vector<int> parts(len);
        for (int j = 0; j < len; ++j) parts[j] = nbeta[j] - (len - 1 - j);
        std::int64_t v = character(Partition(std::move(parts)), rest);
        total += (between % 2 ? -v : v);
    }
    std::unique_lock lk(mu);
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace wildcurve

#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <vector>

#include "bigrational.hpp"

namespace wildcurve {

inline int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

inline std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// Φ_n(1): 0 for n = 1, p for n = p^k, 1 otherwise
inline int cyclotomic_at_one(int n) {
    if (n == 1) return 0;
    auto f = prime_factors(n);
    for (int p : f)
        if (p != f[0]) return 1;
    return f[0];
}

// integer coefficients of Φ_n, lowest degree first
inline const std::vector<BigInt>& cyclotomic(int n) {
    static std::shared_mutex mu;
    static std::map<int, std::vector<BigInt>> memo;
    {
        std::shared_lock lk(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    // x^n - 1 divided by Φ_d for proper divisors d
    std::vector<BigInt> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        const auto& f = cyclotomic(d);
        int e = static_cast<int>(f.size()) - 1, deg = static_cast<int>(p.size()) - 1;
        std::vector<BigInt> q(deg - e + 1, 0);
        for (int k = deg; k >= e; --k) {
            q[k - e] = p[k];
            for (int l = 0; l <= e; ++l) p[k - e + l] -= q[k - e] * f[l];
        }
        p = q;
    }
    std::unique_lock lk(mu);
    return memo.emplace(n, std::move(p)).first->second;
}

// Φ_n(x^g) as a multiset of Φ_e(x); uses Φ_n(x^p) = Φ_{np}(x) if p | n, else Φ_{np}(x) Φ_n(x)
inline std::map<int, int> cyclotomic_of_power(int n, int g) {
    std::map<int, int> cur{{n, 1}};
    for (int p : prime_factors(g)) {
        std::map<int, int> nxt;
        for (auto [m, k] : cur) {
            nxt[m * p] += k;
            if (m % p) nxt[m] += k;
        }
        cur = std::move(nxt);
    }
    return cur;
}

}  // namespace wildcurve

#pragma once

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "gw.hpp"

namespace wildcurve {

// (s, t) monomial s^α t^β with integer α, β, in (q, y)
inline RationalBivar st_int(int a, int b) { return st_monomial_in_qy(2 * a, 2 * b); }

// T_{g,λ} = ∏_{□} (q y)^{-(2a+1) g} (1 - y^{a-l} q^{h})^{2g}
inline RationalBivar genus_factor_T(int g, const Partition& lam) {
    if (g == 0) return RationalBivar(1);
    int shift = 0;
    RationalBivar v(1);
    for (auto [a, l] : lam.arms_legs()) {
        shift += (2 * a + 1) * g;
        v = v * RationalBivar(LaurentBivar::one_minus(VarPair::qy, 2 * (a + l + 1), 2 * (a - l))).pow(2 * g);
    }
    return v * RationalBivar::monomial(VarPair::qy, -2 * shift, -2 * shift);
}

// Ñ^λ_{μ_1..μ_ell}(q y, q/y)
inline RationalBivar fusion_qy(const std::vector<Partition>& mus, const Partition& lam) {
    auto ne = nonempty(mus);
    if (ne.empty()) return lam.empty() ? RationalBivar(1) : RationalBivar(0);
    const auto& N = macdonald_fusion(ne);
    auto it = N.find(lam);
    if (it == N.end()) return RationalBivar(0);
    return it->second.map_exponents(st_to_qy, VarPair::qy);
}

inline const RationalBivar& L_conj(const Partition& mu) {
    static Memo<Partition, RationalBivar> memo;
    return memo.get(mu, [&] { return specialization_L(mu.conjugate()); });
}

// G_{k,ell,λ} = Σ_{μ_1..μ_ell} Ñ^λ_μ g_λ^{-k} ∏ x_i^{|μ_i|} g_{μ_i}^k L_{μ_i^t}
inline XSeries refined_wild_factor_G(int k, int ell, const Partition& lam, int rmax,
                                     const XSeries::Key* bound = nullptr) {
    XSeries s({ell}, rmax);
    RationalBivar pre = framing_g(lam).pow(-k);
    for (auto& mus : partition_tuples(lam.size(), ell)) {
        XSeries::Key key;
        for (auto& mu : mus) key.push_back(mu.size());
        if (bound) {
            bool ok = true;
            for (int i = 0; i < ell && ok; ++i) ok = key[i] <= (*bound)[i];
            if (!ok) continue;
        }
        RationalBivar N = fusion_qy(mus, lam);
        if (N.is_zero()) continue;
        RationalBivar v = N * pre;
        for (auto& mu : mus) v = v * framing_g(mu).pow(k) * L_conj(mu);
        s.add_term(key, v);
    }
    return s;
}

// Z = 1 + Σ_λ g_λ R_λ T_{g,λ} L_{λ^t}^{1-m} ∏_a G_{n_a - 1, ell_a, λ}(x_a)
// With a key bound only terms at or below it are produced. `threads` spreads
// the partitions λ over worker threads.
inline XSeries z_pt_refined(const WildCurveData& data, int rmax, const XSeries::Key* bound = nullptr,
                            int threads = 1) {
    data.validate(1);
    int m = data.m();
    std::vector<Partition> lams;
    for (int r = 1; r <= rmax; ++r)
        for (auto& lam : partitions_of(r)) lams.push_back(lam);

    auto term = [&](const Partition& lam) {
        std::vector<XSeries> blocks;
        for (int a = 0; a < m; ++a) {
            XSeries::Key gb;
            if (bound) gb = group_bound(data.ell, *bound, a);
            blocks.push_back(refined_wild_factor_G(data.n[a] - 1, data.ell[a], lam, rmax, bound ? &gb : nullptr));
        }
        RationalBivar pre = framing_g(lam) * specialization_R(lam) * genus_factor_T(data.g, lam) * L_conj(lam).pow(1 - m);
        return XSeries::tensor(blocks, rmax).scaled(pre);
    };

    std::vector<XSeries> parts(lams.size());
    if (threads <= 1) {
        for (size_t i = 0; i < lams.size(); ++i) parts[i] = term(lams[i]);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        std::vector<std::thread> pool;
        // larger partitions first: they dominate the run time
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (size_t i; (i = next++) < lams.size();) {
                    size_t j = lams.size() - 1 - i;
                    try {
                        parts[j] = term(lams[j]);
                    } catch (...) {
                        std::lock_guard lk(err_mu);
                        if (!err) err = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    XSeries Z = XSeries::one(data.ell, rmax);
    for (auto& p : parts) Z = Z + p;
    return Z;
}

}  // namespace wildcurve

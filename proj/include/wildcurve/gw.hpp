#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsilon.hpp"
#include "symfunc.hpp"

namespace wildcurve {

// Discrete data of a wild curve: genus, and per marked point the pole order n_a
// and the number ell_a of distinct formal eigenvalues.
struct WildCurveData {
    int g = 0;
    std::vector<int> n;
    std::vector<int> ell;

    int m() const { return static_cast<int>(n.size()); }
    int n_total() const { return std::accumulate(n.begin(), n.end(), 0); }
    bool equal_n() const { return std::adjacent_find(n.begin(), n.end(), std::not_equal_to<>()) == n.end(); }

    void validate(int min_n = 2) const {
        if (g < 0) throw std::invalid_argument("genus must be >= 0");
        if (n.empty()) throw std::invalid_argument("at least one marked point is required");
        if (n.size() != ell.size()) throw std::invalid_argument("n and ell lists must have the same length");
        for (int x : n)
            if (x < min_n) throw std::invalid_argument("n_a must be >= " + std::to_string(min_n));
        for (int x : ell)
            if (x < 1) throw std::invalid_argument("ell_a must be >= 1");
    }
};

inline RationalBivar q_power(int e2) { return RationalBivar::monomial(VarPair::qy, e2, 0); }

inline Memo<Partition, RationalBivar>& principal_spec_memo() {
    static Memo<Partition, RationalBivar> memo;
    return memo;
}

// s_{ν^t}(q̲), memoized
inline const RationalBivar& schur_conj_spec(const Partition& nu) {
    auto& memo = principal_spec_memo();
    return memo.get(nu, [&] { return principal_schur(nu.conjugate()); });
}

// V_ν^{(k+1)}(q) = q^{k c(ν)} s_{ν^t}(q̲)
inline RationalBivar vertex(const Partition& nu, int k) { return q_power(2 * k * content(nu)) * schur_conj_spec(nu); }

// the (k+1)-content form q^{(k+1) c(ν)} s_ν(q̲)
inline RationalBivar vertex_content_form(const Partition& nu, int k) {
    return q_power(2 * (k + 1) * content(nu)) * principal_schur(nu);
}

inline std::vector<Partition> nonempty(const std::vector<Partition>& ps) {
    std::vector<Partition> out;
    for (auto& p : ps)
        if (!p.empty()) out.push_back(p);
    return out;
}

inline BigInt lr_tuple(const Partition& lam, const std::vector<Partition>& nus) {
    auto ne = nonempty(nus);
    if (ne.empty()) return lam.empty() ? 1 : 0;
    const auto& c = lr_coefficients(ne);
    auto it = c.find(lam);
    return it == c.end() ? BigInt(0) : it->second;
}

// F_{k,ell,λ}(x, q) = q^{-k c(λ)} Σ c^λ_{ν} ∏ x_i^{|ν_i|} q^{k c(ν_i)} s_{ν_i^t}(q̲)
inline XSeries wild_factor_F(int k, int ell, const Partition& lam, int rmax) {
    XSeries s({ell}, rmax);
    for (auto& nus : partition_tuples(lam.size(), ell)) {
        BigInt c = lr_tuple(lam, nus);
        if (c == 0) continue;
        RationalBivar v = q_power(-2 * k * content(lam)).scaled(BigRational(c));
        XSeries::Key key;
        for (auto& nu : nus) {
            v = v * vertex(nu, k);
            key.push_back(nu.size());
        }
        s.add_term(key, v);
    }
    return s;
}

inline XSeries bounded(const XSeries& s, const XSeries::Key* bound) { return bound ? s.restrict_below(*bound) : s; }

// slice of a multi-group key bound belonging to group a
inline XSeries::Key group_bound(const std::vector<int>& ell, const XSeries::Key& bound, int a) {
    int pos = std::accumulate(ell.begin(), ell.begin() + a, 0);
    return XSeries::Key(bound.begin() + pos, bound.begin() + pos + ell[a]);
}

// Z = 1 + Σ_λ s_{λ^t}(q̲)^{2-2g-m} ∏_a F_{n-1, ell_a, λ}(x_a, q)
inline XSeries z_gw(const WildCurveData& data, int rmax, const XSeries::Key* bound = nullptr) {
    data.validate(2);
    if (!data.equal_n())
        throw std::invalid_argument("the unrefined formula requires n_1 = ... = n_m; use the refined pipeline");
    int m = data.m(), k = data.n[0] - 1;
    XSeries Z = XSeries::one(data.ell, rmax);
    for (int r = 1; r <= rmax; ++r)
        for (auto& lam : partitions_of(r)) {
            std::vector<XSeries> blocks;
            for (int a = 0; a < m; ++a) {
                XSeries F = wild_factor_F(k, data.ell[a], lam, rmax);
                if (bound) {
                    auto gb = group_bound(data.ell, *bound, a);
                    F = F.restrict_below(gb);
                }
                blocks.push_back(std::move(F));
            }
            XSeries term = XSeries::tensor(blocks, rmax).scaled(schur_conj_spec(lam).pow(2 - 2 * data.g - m));
            Z = Z + term;
        }
    return Z;
}

// ---- Hurwitz numbers, rubber series, caps ----

// Σ_ν c(ν)^n χ^ν(ρ) χ^ν(μ) / (ζ(ρ) ζ(μ)): disconnected Hurwitz number with n simple branch points
inline BigRational hurwitz_by_branch_points(int n, const Partition& rho, const Partition& mu) {
    if (rho.size() != mu.size()) throw std::invalid_argument("hurwitz: |rho| != |mu|");
    if (n < 0) throw std::invalid_argument("hurwitz: negative number of simple branch points");
    BigRational s = 0;
    for (auto& nu : partitions_of(rho.size())) {
        BigInt cn;
        mpz_pow_ui(cn.get_mpz_t(), BigInt(content(nu)).get_mpz_t(), n);
        s += BigRational(cn * character(nu, rho) * character(nu, mu));
    }
    return s / BigRational(zeta(rho) * zeta(mu));
}

// H•_h(ρ, μ) with n = 2h - 2 + l(ρ) + l(μ)
inline BigRational hurwitz_double(int h, const Partition& rho, const Partition& mu) {
    return hurwitz_by_branch_points(2 * h - 2 + rho.length() + mu.length(), rho, mu);
}

// (1/d!) #{σ ∈ C_ρ, τ_1..τ_n transpositions : σ τ_1 ... τ_n ∈ C_μ}, by enumeration in S_d
inline BigRational hurwitz_bruteforce(int n, const Partition& rho, const Partition& mu) {
    int d = rho.size();
    if (mu.size() != d) throw std::invalid_argument("hurwitz: |rho| != |mu|");
    using Perm = std::vector<int>;
    auto cycle_type = [d](const Perm& p) {
        std::vector<int> seen(d, 0), parts;
        for (int i = 0; i < d; ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = p[j]) seen[j] = 1, ++len;
            parts.push_back(len);
        }
        return Partition(parts);
    };
    std::map<Perm, BigInt> dist;
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    do {
        if (cycle_type(p) == rho) dist[p] += 1;
    } while (std::next_permutation(p.begin(), p.end()));
    for (int step = 0; step < n; ++step) {
        std::map<Perm, BigInt> next;
        for (auto& [perm, c] : dist)
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    Perm q = perm;
                    std::swap(q[i], q[j]);  // right multiplication by (i j)
                    next[q] += c;
                }
        dist = std::move(next);
    }
    BigInt count = 0, fact = 1;
    for (auto& [perm, c] : dist)
        if (cycle_type(perm) == mu) count += c;
    for (int i = 2; i <= d; ++i) fact *= i;
    return BigRational(count) / BigRational(fact);
}

// R_{ρ,λ} = ε^{-(l(ρ)+l(λ))} Σ_ν (q^{-k c(ν)} - 1) χ^ν(ρ) χ^ν(λ) / (ζ(ρ) ζ(λ))
inline EpsilonTracked<RationalBivar> rubber_series(const Partition& rho, const Partition& lam, int k) {
    if (rho.size() != lam.size()) throw std::invalid_argument("rubber_series: |rho| != |lambda|");
    std::vector<RationalBivar> terms;
    BigRational z = BigRational(zeta(rho) * zeta(lam));
    for (auto& nu : partitions_of(rho.size())) {
        std::int64_t w = character(nu, rho) * character(nu, lam);
        if (w == 0) continue;
        terms.push_back((q_power(-2 * k * content(nu)) - RationalBivar(1)).scaled(BigRational(w) / z));
    }
    return {RationalBivar::sum(terms), -(rho.length() + lam.length())};
}

// S_μ = ε^{-l(μ)} Σ_ν χ^ν(μ)/ζ(μ) V_ν^{(k+1)}(q)
inline EpsilonTracked<RationalBivar> simple_S(const Partition& mu, int k) {
    if (mu.empty()) return {RationalBivar(1), 0};
    std::vector<RationalBivar> terms;
    for (auto& nu : partitions_of(mu.size())) {
        std::int64_t ch = character(nu, mu);
        if (ch) terms.push_back(vertex(nu, k).scaled(BigRational(ch) / BigRational(zeta(mu))));
    }
    return {RationalBivar::sum(terms), -mu.length()};
}

// Z_μ = ε^{-l(μ)} Σ_ν χ^ν(μ)/ζ(μ) q^{c(ν)} s_ν(q̲)
inline EpsilonTracked<RationalBivar> cap_Z(const Partition& mu) {
    std::vector<RationalBivar> terms;
    for (auto& nu : partitions_of(mu.size())) {
        std::int64_t ch = character(nu, mu);
        if (ch) terms.push_back((q_power(2 * content(nu)) * principal_schur(nu)).scaled(BigRational(ch) / BigRational(zeta(mu))));
    }
    return {RationalBivar::sum(terms), -mu.length()};
}

// S_μ + Σ_ρ ε^{2 l(ρ)} ζ(ρ) S_ρ R_{ρ,μ}
inline EpsilonTracked<RationalBivar> cap_by_convolution(const Partition& mu, int k) {
    EpsilonTracked<RationalBivar> z = simple_S(mu, k);
    for (auto& rho : partitions_of(mu.size())) {
        auto t = simple_S(rho, k) * rubber_series(rho, mu, k);
        z = z + EpsilonTracked<RationalBivar>{t.value.scaled(BigRational(zeta(rho))), t.eps + 2 * rho.length()};
    }
    return z;
}

struct SimpleAndCap {
    EpsilonTracked<RationalBivar> S, Z;
};

inline SimpleAndCap simple_and_cap(const Partition& mu, int k) {
    SimpleAndCap out{simple_S(mu, k), cap_Z(mu)};
    auto conv = cap_by_convolution(mu, k);
    if (!(conv == out.Z)) throw InternalConsistencyError("cap convolution mismatch at mu=" + mu.str());
    return out;
}

// ---- wild cap ----

enum class WildCapRoute { convolution, closed };

inline EpsilonTracked<XSeries> wildcap_closed(int k, int ell, const Partition& lam, int rmax) {
    XSeries s({ell}, rmax);
    BigRational iz = BigRational(1) / BigRational(zeta(lam));
    for (auto& nus : partition_tuples(lam.size(), ell)) {
        std::vector<RationalBivar> inner;
        for (auto& mu : partitions_of(lam.size())) {
            BigInt c = lr_tuple(mu, nus);
            std::int64_t ch = character(mu, lam);
            if (c == 0 || ch == 0) continue;
            inner.push_back(q_power(-2 * k * content(mu)).scaled(BigRational(c * ch)));
        }
        RationalBivar v = RationalBivar::sum(inner);
        if (v.is_zero()) continue;
        XSeries::Key key;
        for (auto& nu : nus) {
            v = v * vertex(nu, k);
            key.push_back(nu.size());
        }
        s.add_term(key, v.scaled(iz));
    }
    return {s, -lam.length()};
}

// S_λ(x) = Σ_{ρ_1 ∪ ... ∪ ρ_ell = λ} ∏ x_i^{|ρ_i|} S_{ρ_i}, ordered tuples, S_∅ = 1
inline EpsilonTracked<XSeries> wild_simple(int k, int ell, const Partition& lam, int rmax) {
    XSeries s({ell}, rmax);
    for (auto& rhos : partition_tuples(lam.size(), ell)) {
        if (partition_union(rhos) != lam) continue;
        RationalBivar v(1);
        XSeries::Key key;
        for (auto& r : rhos) {
            v = v * simple_S(r, k).value;
            key.push_back(r.size());
        }
        s.add_term(key, v);
    }
    return {s, -lam.length()};
}

inline EpsilonTracked<XSeries> wildcap_convolution(int k, int ell, const Partition& lam, int rmax) {
    auto W = wild_simple(k, ell, lam, rmax);
    for (auto& rho : partitions_of(lam.size())) {
        auto S = wild_simple(k, ell, rho, rmax);
        auto R = rubber_series(rho, lam, k);
        EpsilonTracked<XSeries> t{S.value.scaled(R.value.scaled(BigRational(zeta(rho)))), S.eps + R.eps + 2 * rho.length()};
        W = W + t;
    }
    return W;
}

inline EpsilonTracked<XSeries> wildcap_W(int k, int ell, const Partition& lam, WildCapRoute route, int rmax) {
    return route == WildCapRoute::closed ? wildcap_closed(k, ell, lam, rmax) : wildcap_convolution(k, ell, lam, rmax);
}

// ---- TQFT of the central component ----

// closed form: ε^{-(2g-2+m)d} s_{ρ^t}(q̲)^{-(2g-2+m)} when all λ_a = ρ, else 0
inline EpsilonTracked<RationalBivar> tqft_central(int g, const std::vector<Partition>& lams) {
    if (lams.empty()) throw std::invalid_argument("tqft_central needs m >= 1");
    int d = lams[0].size(), m = static_cast<int>(lams.size()), N = 2 * g - 2 + m;
    for (auto& l : lams)
        if (l.size() != d) throw std::invalid_argument("tqft_central: partitions of different sizes");
    for (auto& l : lams)
        if (l != lams[0]) return {RationalBivar(0), 0};
    return {schur_conj_spec(lams[0]).pow(-N), -N * d};
}

// C A^{2g-2+m} G^g P^m from the v-basis pieces; P^m is diagonal
inline EpsilonTracked<RationalBivar> tqft_central_assembled(int g, const std::vector<Partition>& lams) {
    int d = lams[0].size(), m = static_cast<int>(lams.size()), N = 2 * g - 2 + m;
    for (auto& l : lams)
        if (l.size() != d) throw std::invalid_argument("tqft_central: partitions of different sizes");
    for (auto& l : lams)
        if (l != lams[0]) return {RationalBivar(0), 0};
    BigRational z = BigRational(zeta(lams[0]));
    EpsilonTracked<RationalBivar> C{RationalBivar(1 / (z * z)), -2 * d};
    EpsilonTracked<RationalBivar> A{schur_conj_spec(lams[0]).inverse().scaled(1 / z), -d};
    EpsilonTracked<RationalBivar> G{RationalBivar(z * z), 2 * d};
    EpsilonTracked<RationalBivar> out = C;
    EpsilonTracked<RationalBivar> Ainv{A.value.inverse(), d};
    for (int i = 0; i < std::abs(N); ++i) out = out * (N > 0 ? A : Ainv);
    for (int i = 0; i < g; ++i) out = out * G;
    return out;
}

// w^λ = ζ(λ) Σ_α ε^{r + l(α)} χ^λ(α) W_α
inline EpsilonTracked<XSeries> wildcap_vbasis(int k, int ell, const Partition& lam, int rmax,
                                              WildCapRoute route = WildCapRoute::closed) {
    int r = lam.size();
    XSeries acc({ell}, rmax);
    int eps = 0;
    bool first = true;
    for (auto& alpha : partitions_of(r)) {
        std::int64_t ch = character(lam, alpha);
        if (ch == 0) continue;
        auto W = wildcap_W(k, ell, alpha, route, rmax);
        int e = W.eps + r + alpha.length();
        if (!first && e != eps) throw std::logic_error("eps bookkeeping in the v-basis change");
        eps = e;
        first = false;
        acc = acc + W.value.scaled(RationalBivar(BigRational(ch * zeta(lam))));
    }
    return {acc, eps};
}

struct AssemblyReport {
    XSeries stratum;
    bool matches = false;
    bool uniform = true;
    int eps_exponent_per_r = 0;   // naive pairing carries ε^{eps_exponent_per_r * r}
    int zeta_power = 0;           // and ζ(λ)^{zeta_power}
    std::string normalization;
};

// Degree-r stratum from the TQFT pieces, compared with z_gw. The pairing
// normalization is determined from the data and reported.
inline AssemblyReport assemble_z_r(const WildCurveData& data, int r) {
    data.validate(2);
    if (!data.equal_n()) throw std::invalid_argument("assemble_z_r requires equal n");
    int m = data.m(), k = data.n[0] - 1, g = data.g;
    AssemblyReport rep;
    rep.stratum = XSeries(data.ell, r);
    bool have_eps = false, have_zeta = false;
    for (auto& lam : partitions_of(r)) {
        std::vector<XSeries> ws, fs;
        int weps = 0;
        for (int a = 0; a < m; ++a) {
            auto w = wildcap_vbasis(k, data.ell[a], lam, r);
            weps += w.eps;
            ws.push_back(w.value);
            fs.push_back(wild_factor_F(k, data.ell[a], lam, r));
        }
        auto Zc = tqft_central(g, std::vector<Partition>(m, lam));
        XSeries naive = XSeries::tensor(ws, r).scaled(Zc.value);
        int eps = Zc.eps + weps;
        XSeries target = XSeries::tensor(fs, r).scaled(schur_conj_spec(lam).pow(2 - 2 * g - m));
        // naive = ε^eps * c * target with c a rational constant
        auto& [k0, v0] = *target.terms().begin();
        RationalBivar c = naive.coefficient(k0) / v0;
        if (!c.is_constant() || !(naive == target.scaled(c))) {
            rep.uniform = false;
            continue;
        }
        BigRational cz = c.constant_value();
        BigRational z = BigRational(zeta(lam));
        int zp = 0;
        BigRational t = cz;
        while (t != 1 && zp < 64 && z != 1) {
            t /= z;
            ++zp;
        }
        if (t != 1) rep.uniform = false;
        if (eps % r) rep.uniform = false;
        if (!have_eps) {
            rep.eps_exponent_per_r = eps / r;
            have_eps = true;
        } else if (eps != rep.eps_exponent_per_r * r) {
            rep.uniform = false;
        }
        // ζ = 1 carries no information about the power
        if (z != 1) {
            if (!have_zeta) {
                rep.zeta_power = zp;
                have_zeta = true;
            } else if (zp != rep.zeta_power) {
                rep.uniform = false;
            }
        }
        rep.stratum = rep.stratum + naive.scaled(RationalBivar(1 / cz));
    }
    XSeries Z = z_gw(data, r);
    XSeries expected(data.ell, r);
    for (auto& [key, c] : Z.terms())
        if (rep.stratum.degree(key) == r) expected.add_term(key, c);
    rep.matches = rep.uniform && rep.stratum == expected;
    rep.normalization = "eps^(" + std::to_string(-rep.eps_exponent_per_r) + "*r) * zeta(lambda)^(" +
                        std::to_string(-rep.zeta_power) + ")";
    return rep;
}

}  // namespace wildcurve

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "memo.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "xseries.hpp"

namespace wildcurve {

class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

using Matrix = std::vector<std::vector<BigRational>>;

namespace detail {

// ways to distribute the parts rho[i..] into rows with remaining capacities cap
inline long count_fillings(const std::vector<int>& rho, size_t i, std::vector<int>& cap) {
    if (i == rho.size()) {
        for (int c : cap)
            if (c) return 0;
        return 1;
    }
    long total = 0;
    for (auto& c : cap)
        if (c >= rho[i]) {
            c -= rho[i];
            total += count_fillings(rho, i + 1, cap);
            c += rho[i];
        }
    return total;
}

inline Matrix invert(Matrix a) {
    size_t n = a.size();
    Matrix inv(n, std::vector<BigRational>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw std::logic_error("singular transition matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        BigRational d = a[c][c];
        for (size_t j = 0; j < n; ++j) a[c][j] /= d, inv[c][j] /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            BigRational f = a[r][c];
            for (size_t j = 0; j < n; ++j) a[r][j] -= f * a[c][j], inv[r][j] -= f * inv[c][j];
        }
    }
    return inv;
}

// count pairs of distinct rearrangements alpha of A, beta of B with alpha + beta = target
inline long count_sums(const std::vector<int>& target, size_t pos, std::map<int, int>& A, std::map<int, int>& B) {
    if (pos == target.size()) return 1;
    long total = 0;
    for (auto& [v, ca] : A) {
        if (ca == 0 || v > target[pos]) continue;
        auto it = B.find(target[pos] - v);
        if (it == B.end() || it->second == 0) continue;
        --ca;
        --it->second;
        total += count_sums(target, pos + 1, A, B);
        ++ca;
        ++it->second;
    }
    return total;
}

}  // namespace detail

// p_rho = Σ_mu M[rho][mu] m_mu, rows and columns in partitions_of order
inline const Matrix& p_in_m(int n) {
    static Memo<int, Matrix> memo;
    return memo.get(n, [n] {
        const auto& ps = partitions_of(n);
        Matrix M(ps.size(), std::vector<BigRational>(ps.size(), 0));
        for (size_t i = 0; i < ps.size(); ++i)
            for (size_t j = 0; j < ps.size(); ++j) {
                std::vector<int> cap = ps[j].parts();
                M[i][j] = detail::count_fillings(ps[i].parts(), 0, cap);
            }
        return M;
    });
}

// m_mu = Σ_rho M[mu][rho] p_rho
inline const Matrix& m_in_p(int n) {
    static Memo<int, Matrix> memo;
    return memo.get(n, [n] {
        // p = A m with A = p_in_m, so m = A^{-1} p
        return detail::invert(p_in_m(n));
    });
}

// m_a * m_b = Σ c_lambda m_lambda, by counting exponent rearrangements
inline const std::map<Partition, long>& monomial_product(const Partition& a, const Partition& b) {
    static Memo<std::pair<Partition, Partition>, std::map<Partition, long>> memo;
    return memo.get({a, b}, [&] {
        std::map<Partition, long> out;
        int n = a.size() + b.size();
        for (auto& lam : partitions_of(n)) {
            int L = lam.length();
            if (L < std::max(a.length(), b.length()) || L > a.length() + b.length()) continue;
            std::map<int, int> A, B;
            for (int p : a.parts()) ++A[p];
            for (int p : b.parts()) ++B[p];
            if (L > a.length()) A[0] += L - a.length();
            if (L > b.length()) B[0] += L - b.length();
            long c = detail::count_sums(lam.parts(), 0, A, B);
            if (c) out[lam] = c;
        }
        return out;
    });
}

// Graded symmetric function of fixed degree, held in the monomial basis.
template <class C>
class SymFunc {
public:
    explicit SymFunc(int degree = 0) : degree_(degree) {}

    static SymFunc monomial(const Partition& mu, const C& c = C(1)) {
        SymFunc f(mu.size());
        f.add(mu, c);
        return f;
    }

    int degree() const { return degree_; }
    const std::map<Partition, C>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    C coeff(const Partition& mu) const {
        auto it = coeffs_.find(mu);
        return it == coeffs_.end() ? C(0) : it->second;
    }

    void add(const Partition& mu, const C& c) {
        if (mu.size() != degree_) throw std::invalid_argument("SymFunc: partition " + mu.str() + " has wrong size");
        if (wildcurve::is_zero(c)) return;
        auto it = coeffs_.find(mu);
        if (it == coeffs_.end()) coeffs_.emplace(mu, c);
        else {
            it->second = it->second + c;
            if (wildcurve::is_zero(it->second)) coeffs_.erase(it);
        }
    }

    friend SymFunc operator+(const SymFunc& a, const SymFunc& b) {
        if (a.degree_ != b.degree_) throw std::invalid_argument("SymFunc: adding different degrees");
        SymFunc r = a;
        for (auto& [mu, c] : b.coeffs_) r.add(mu, c);
        return r;
    }
    friend SymFunc operator-(const SymFunc& a, const SymFunc& b) { return a + b.scaled(C(-1)); }

    friend SymFunc operator*(const SymFunc& a, const SymFunc& b) {
        SymFunc r(a.degree_ + b.degree_);
        std::map<Partition, std::vector<C>> acc;
        for (auto& [mu, c] : a.coeffs_)
            for (auto& [nu, d] : b.coeffs_) {
                C cd = c * d;
                for (auto& [lam, k] : monomial_product(mu, nu)) acc[lam].push_back(cd * C(k));
            }
        for (auto& [lam, v] : acc) r.add(lam, sum_of(v));
        return r;
    }

    SymFunc scaled(const C& s) const {
        SymFunc r(degree_);
        for (auto& [mu, c] : coeffs_) r.add(mu, c * s);
        return r;
    }

    template <class D, class F>
    SymFunc<D> convert(F f) const {
        SymFunc<D> r(degree_);
        for (auto& [mu, c] : coeffs_) r.add(mu, f(c));
        return r;
    }

    // coefficients in the power-sum basis, indexed like partitions_of(degree)
    std::vector<C> to_power_sums() const {
        const auto& ps = partitions_of(degree_);
        const auto& M = m_in_p(degree_);
        std::vector<std::vector<C>> acc(ps.size());
        for (auto& [mu, c] : coeffs_) {
            int i = partition_index(mu);
            for (size_t j = 0; j < ps.size(); ++j)
                if (sgn(M[i][j]) != 0) acc[j].push_back(c * C(M[i][j]));
        }
        std::vector<C> out;
        for (auto& v : acc) out.push_back(sum_of(v));
        return out;
    }

    static SymFunc from_power_sums(int n, const std::vector<C>& pc) {
        const auto& ps = partitions_of(n);
        const auto& M = p_in_m(n);
        SymFunc r(n);
        std::vector<std::vector<C>> acc(ps.size());
        for (size_t i = 0; i < ps.size(); ++i) {
            if (wildcurve::is_zero(pc[i])) continue;
            for (size_t j = 0; j < ps.size(); ++j)
                if (sgn(M[i][j]) != 0) acc[j].push_back(pc[i] * C(M[i][j]));
        }
        for (size_t j = 0; j < ps.size(); ++j) r.add(ps[j], sum_of(acc[j]));
        return r;
    }

    friend bool operator==(const SymFunc& a, const SymFunc& b) {
        if (a.degree_ != b.degree_ || a.coeffs_.size() != b.coeffs_.size()) return false;
        for (auto& [mu, c] : a.coeffs_) {
            auto it = b.coeffs_.find(mu);
            if (it == b.coeffs_.end() || !(it->second == c)) return false;
        }
        return true;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + to_string(it->second) + ")*m" + it->first.str();
        }
        return s;
    }

    static C sum_of(const std::vector<C>& v) {
        if constexpr (std::is_same_v<C, RationalBivar>) return RationalBivar::sum(v);
        else {
            C s(0);
            for (auto& x : v) s = s + x;
            return s;
        }
    }

private:
    int degree_;
    std::map<Partition, C> coeffs_;
};

inline bool is_zero(const SymFunc<BigRational>& f) { return f.is_zero(); }

// s_λ = Σ_ρ χ^λ(ρ)/ζ(ρ) p_ρ
inline const SymFunc<BigRational>& schur(const Partition& lam) {
    static Memo<Partition, SymFunc<BigRational>> memo;
    return memo.get(lam, [&] {
        int n = lam.size();
        std::vector<BigRational> pc;
        for (auto& rho : partitions_of(n)) pc.push_back(BigRational(character(lam, rho)) / BigRational(zeta(rho)));
        return SymFunc<BigRational>::from_power_sums(n, pc);
    });
}

// expansion in the Schur basis by unitriangular back-substitution along reverse-lex order
template <class C>
std::map<Partition, C> to_schur(SymFunc<C> f) {
    std::map<Partition, C> out;
    for (auto& lam : partitions_of(f.degree())) {
        C c = f.coeff(lam);
        if (is_zero(c)) continue;
        out[lam] = c;
        f = f - schur(lam).template convert<C>([](const BigRational& x) { return C(x); }).scaled(c);
    }
    if (!f.is_zero()) throw InternalConsistencyError("Schur expansion left a remainder");
    return out;
}

// ---- Littlewood-Richardson ----

inline std::map<Partition, BigInt> lr_by_product(const std::vector<Partition>& nus) {
    SymFunc<BigRational> f = SymFunc<BigRational>::monomial(Partition(), 1);
    for (auto& nu : nus) f = f * schur(nu);
    std::map<Partition, BigInt> out;
    for (auto& [lam, c] : to_schur(f)) {
        if (c.get_den() != 1) throw InternalConsistencyError("non-integral LR coefficient");
        out[lam] = c.get_num();
    }
    return out;
}

// Σ_{ρ_i} χ^λ(∪ρ_i) ∏ χ^{ν_i}(ρ_i)/ζ(ρ_i)
inline std::map<Partition, BigInt> lr_by_characters(const std::vector<Partition>& nus) {
    int n = 0;
    for (auto& nu : nus) n += nu.size();
    std::vector<std::pair<Partition, BigRational>> unions{{Partition(), BigRational(1)}};
    for (auto& nu : nus) {
        std::vector<std::pair<Partition, BigRational>> next;
        for (auto& [rho, w] : unions)
            for (auto& r : partitions_of(nu.size())) {
                std::int64_t ch = character(nu, r);
                if (ch == 0) continue;
                next.emplace_back(partition_union({rho, r}), w * BigRational(ch) / BigRational(zeta(r)));
            }
        unions = std::move(next);
    }
    std::map<Partition, BigInt> out;
    for (auto& lam : partitions_of(n)) {
        BigRational s = 0;
        for (auto& [rho, w] : unions) s += w * BigRational(character(lam, rho));
        if (s.get_den() != 1) throw InternalConsistencyError("non-integral character LR sum");
        if (sgn(s) != 0) out[lam] = s.get_num();
    }
    return out;
}

inline Memo<std::vector<Partition>, std::map<Partition, BigInt>>& lr_memo() {
    static Memo<std::vector<Partition>, std::map<Partition, BigInt>> memo;
    return memo;
}

inline const std::map<Partition, BigInt>& lr_coefficients(const std::vector<Partition>& nus) {
    auto& memo = lr_memo();
    if (nus.empty()) throw std::invalid_argument("lr_coefficients needs at least one partition");
    return memo.get(nus, [&] {
        auto a = lr_by_product(nus);
        auto b = lr_by_characters(nus);
        if (a != b) throw InternalConsistencyError("LR routes disagree");
        return a;
    });
}

// ---- Macdonald polynomials in (s, t) ----

// ⟨p_ρ, p_ρ⟩ = ζ(ρ) ∏ (1 - s^{ρ_i}) / (1 - t^{ρ_i})
inline RationalBivar macdonald_pnorm(const Partition& rho) {
    RationalBivar w(BigRational(zeta(rho)));
    for (int r : rho.parts())
        w = w * RationalBivar(LaurentBivar::one_minus(VarPair::st, 2 * r, 0)) * RationalBivar::inv_one_minus(VarPair::st, 0, 2 * r);
    return w;
}

namespace detail {
inline RationalBivar mac_inner(const std::vector<RationalBivar>& f, const std::vector<RationalBivar>& g,
                               const std::vector<RationalBivar>& w) {
    std::vector<RationalBivar> terms;
    for (size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_zero() && !g[i].is_zero()) terms.push_back(f[i] * g[i] * w[i]);
    return RationalBivar::sum(terms);
}
}  // namespace detail

// all P_λ of degree n, in the power-sum basis; Gram-Schmidt from (1^n) upward
inline const std::map<Partition, std::vector<RationalBivar>>& macdonald_P_power_sums(int n) {
    static Memo<int, std::map<Partition, std::vector<RationalBivar>>> memo;
    return memo.get(n, [n] {
        const auto& ps = partitions_of(n);
        const auto& M = m_in_p(n);
        std::vector<RationalBivar> w;
        for (auto& rho : ps) w.push_back(macdonald_pnorm(rho));
        std::map<Partition, std::vector<RationalBivar>> P;
        std::vector<std::pair<Partition, RationalBivar>> done;  // with norms
        for (size_t idx = ps.size(); idx-- > 0;) {
            const Partition& lam = ps[idx];
            std::vector<RationalBivar> m(ps.size());
            for (size_t j = 0; j < ps.size(); ++j) m[j] = RationalBivar(M[idx][j]);
            std::vector<std::vector<RationalBivar>> acc(ps.size());
            for (size_t j = 0; j < ps.size(); ++j) acc[j].push_back(m[j]);
            for (auto& [mu, norm] : done) {
                const auto& pm = P.at(mu);
                RationalBivar c = detail::mac_inner(m, pm, w) / norm;
                if (c.is_zero()) continue;
                for (size_t j = 0; j < ps.size(); ++j)
                    if (!pm[j].is_zero()) acc[j].push_back(-(c * pm[j]));
            }
            std::vector<RationalBivar> f;
            for (auto& v : acc) f.push_back(RationalBivar::sum(v));
            RationalBivar norm = detail::mac_inner(f, f, w);
            P.emplace(lam, f);
            done.emplace_back(lam, norm);
        }
        return P;
    });
}

inline Memo<Partition, SymFunc<RationalBivar>>& macdonald_P_memo() {
    static Memo<Partition, SymFunc<RationalBivar>> memo;
    return memo;
}

inline const SymFunc<RationalBivar>& macdonald_P(const Partition& lam) {
    auto& memo = macdonald_P_memo();
    return memo.get(lam, [&] {
        return SymFunc<RationalBivar>::from_power_sums(lam.size(), macdonald_P_power_sums(lam.size()).at(lam));
    });
}

inline Memo<std::vector<Partition>, std::map<Partition, RationalBivar>>& macdonald_N_memo() {
    static Memo<std::vector<Partition>, std::map<Partition, RationalBivar>> memo;
    return memo;
}

// ∏ P_{μ_i} = Σ N^λ P_λ, solved top-down along reverse-lex order
inline const std::map<Partition, RationalBivar>& macdonald_fusion(const std::vector<Partition>& mus) {
    auto& memo = macdonald_N_memo();
    if (mus.empty()) throw std::invalid_argument("macdonald_fusion needs at least one partition");
    return memo.get(mus, [&] {
        SymFunc<RationalBivar> f = SymFunc<RationalBivar>::monomial(Partition(), RationalBivar(1));
        for (auto& mu : mus)
            if (!mu.empty()) f = f * macdonald_P(mu);
        std::map<Partition, RationalBivar> out;
        for (auto& lam : partitions_of(f.degree())) {
            RationalBivar c = f.coeff(lam);
            if (c.is_zero()) continue;
            out[lam] = c;
            f = f - macdonald_P(lam).scaled(c);
        }
        if (!f.is_zero()) throw InternalConsistencyError("Macdonald fusion left a remainder");
        return out;
    });
}

// exponent map (s, t) -> (q y, q y^{-1}) on doubled lattices
inline constexpr ExponentMap st_to_qy{1, 1, 1, -1, 1};

inline Memo<Partition, SymFunc<RationalBivar>>& htilde_memo() {
    static Memo<Partition, SymFunc<RationalBivar>> memo;
    return memo;
}

// Modified Macdonald H~_λ(X; q, t) with q, t carried by the (s, t) pair:
// t^{n(λ)} c_λ(q, 1/t) P_λ(q, 1/t)[X / (1 - 1/t)], c_λ = ∏ (1 - q^a t^{l+1}).
inline const SymFunc<RationalBivar>& modified_macdonald(const Partition& lam, int n_vars) {
    if (n_vars < lam.size()) throw std::invalid_argument("modified_macdonald: n_vars < |lambda|");
    auto& memo = htilde_memo();
    return memo.get(lam, [&] {
        int n = lam.size();
        const auto& ps = partitions_of(n);
        const ExponentMap tinv{1, 0, 0, -1, 1};
        const auto& P = macdonald_P_power_sums(n).at(lam);
        RationalBivar pre = RationalBivar::monomial(VarPair::st, 0, 2 * lam.n());
        for (auto [a, l] : lam.arms_legs()) pre = pre * RationalBivar(LaurentBivar::one_minus(VarPair::st, 2 * a, -2 * (l + 1)));
        std::vector<RationalBivar> pc;
        for (size_t i = 0; i < ps.size(); ++i) {
            RationalBivar c = P[i].map_exponents(tinv, VarPair::st);
            if (!c.is_zero()) {
                c = c * pre;
                for (int r : ps[i].parts()) c = c * RationalBivar::inv_one_minus(VarPair::st, 0, -2 * r);
            }
            pc.push_back(c);
        }
        auto H = SymFunc<RationalBivar>::from_power_sums(n, pc);
        // Schur positivity: every Schur coefficient is a polynomial with non-negative integer coefficients
        for (auto& [mu, c] : to_schur(H)) {
            if (!c.is_polynomial()) throw InternalConsistencyError("H~ Schur coefficient not polynomial: " + c.str());
            for (auto& t : c.numerator().terms())
                if (sgn(t.c) < 0 || c.numerator().denominator() != 1 || t.x < 0 || t.y < 0)
                    throw InternalConsistencyError("H~ Schur coefficient not in N[q,t]: " + c.str());
        }
        return H;
    });
}

// ---- principal specializations and framing ----

// s_ν(q^{1/2}, q^{3/2}, ...) = q^{|ν|/2 + n(ν)} ∏ 1/(1 - q^h)
inline RationalBivar principal_schur(const Partition& nu) {
    RationalBivar v = RationalBivar::monomial(VarPair::qy, nu.size() + 2 * nu.n(), 0);
    for (auto [a, l] : nu.arms_legs()) v = v * RationalBivar::inv_one_minus(VarPair::qy, 2 * (a + l + 1), 0);
    return v;
}

// s^α t^β at s = q y, t = q/y; half-integer α, β given doubled
inline RationalBivar st_monomial_in_qy(int a2, int b2) { return RationalBivar::monomial(VarPair::qy, a2 + b2, a2 - b2); }

// R_μ = t^{|μ|/2 + n(μ)} ∏ 1/(1 - s^a t^{l+1}) at (s, t) = (qy, q/y)
inline RationalBivar specialization_R(const Partition& mu) {
    RationalBivar v = st_monomial_in_qy(0, mu.size() + 2 * mu.n());
    for (auto [a, l] : mu.arms_legs()) {
        auto [x, y] = st_to_qy.apply(2 * a, 2 * (l + 1));
        v = v * RationalBivar::inv_one_minus(VarPair::qy, x, y);
    }
    return v;
}

// L_μ = s^{|μ|/2 + n(μ)} ∏ 1/(1 - t^a s^{l+1})
inline RationalBivar specialization_L(const Partition& mu) {
    RationalBivar v = st_monomial_in_qy(mu.size() + 2 * mu.n(), 0);
    for (auto [a, l] : mu.arms_legs()) {
        auto [x, y] = st_to_qy.apply(2 * (l + 1), 2 * a);
        v = v * RationalBivar::inv_one_minus(VarPair::qy, x, y);
    }
    return v;
}

// f_μ(s, t) = ∏ s^a t^{-l}
inline RationalBivar framing_f(const Partition& mu) {
    int sa = 0, tl = 0;
    for (auto [a, l] : mu.arms_legs()) sa += a, tl += l;
    return RationalBivar::monomial(VarPair::st, 2 * sa, -2 * tl);
}

inline RationalBivar framing_g(const Partition& mu) { return framing_f(mu).map_exponents(st_to_qy, VarPair::qy); }

// m_μ(x_1^k, ..., x_ell^k) as a one-group series
inline XSeries monomial_into_xseries(const Partition& mu, int ell, int k, int rmax) {
    XSeries s({ell}, rmax);
    if (mu.length() > ell) return s;
    std::vector<int> e(ell, 0);
    for (int i = 0; i < mu.length(); ++i) e[i] = k * mu[i];
    std::sort(e.begin(), e.end());
    do {
        s.add_term(e, RationalBivar(1));
    } while (std::next_permutation(e.begin(), e.end()));
    return s;
}

}  // namespace wildcurve

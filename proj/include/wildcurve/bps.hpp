#pragma once

#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "refined.hpp"

namespace wildcurve {

using PartitionTuple = std::vector<Partition>;

inline std::string tuple_str(const PartitionTuple& mus) {
    std::string s = "(";
    for (size_t i = 0; i < mus.size(); ++i) s += (i ? "," : "") + mus[i].str();
    return s + ")";
}

// d = 2 r^2 (g - 1) + Σ_a n_a (r^2 - Σ_i μ_{a,i}^2) + 2
inline int dimension_d(const PartitionTuple& mus, const std::vector<int>& n, int g) {
    if (mus.empty() || mus.size() != n.size()) throw std::invalid_argument("dimension_d: need one partition per marked point");
    int r = mus[0].size();
    for (auto& mu : mus)
        if (mu.size() != r) throw std::invalid_argument("dimension_d: partitions of unequal size in " + tuple_str(mus));
    int d = 2 * r * r * (g - 1) + 2;
    for (size_t a = 0; a < mus.size(); ++a) {
        int sq = 0;
        for (int p : mus[a].parts()) sq += p * p;
        d += n[a] * (r * r - sq);
    }
    if (d % 2) throw InternalConsistencyError("dimension_d produced an odd value");
    return d;
}

// exponent of the sorted monomial ∏_a ∏_i x_{a,i}^{μ_{a,i}}
inline XSeries::Key target_key(const PartitionTuple& mus, const std::vector<int>& ell) {
    if (mus.size() != ell.size()) throw std::invalid_argument("target has " + std::to_string(mus.size()) +
                                                              " partitions for " + std::to_string(ell.size()) + " groups");
    XSeries::Key k;
    for (size_t a = 0; a < mus.size(); ++a) {
        if (mus[a].length() > ell[a])
            throw std::invalid_argument("ell_" + std::to_string(a + 1) + " = " + std::to_string(ell[a]) +
                                        " < length of " + mus[a].str());
        for (int i = 0; i < ell[a]; ++i) k.push_back(i < mus[a].length() ? mus[a][i] : 0);
    }
    return k;
}

// μ = k μ' componentwise, for every k > 1 dividing all parts
inline std::vector<std::pair<int, PartitionTuple>> divisor_tuples(const PartitionTuple& mus) {
    int gcd = 0;
    for (auto& mu : mus)
        for (int p : mu.parts()) gcd = std::gcd(gcd, p);
    std::vector<std::pair<int, PartitionTuple>> out;
    for (int k = 2; k <= gcd; ++k) {
        if (gcd % k) continue;
        PartitionTuple sub;
        for (auto& mu : mus) {
            std::vector<int> ps;
            for (int p : mu.parts()) ps.push_back(p / k);
            sub.emplace_back(ps);
        }
        out.emplace_back(k, sub);
    }
    return out;
}

// ∏_a m_{μ_a}(x_a^k)
inline XSeries monomial_tuple_series(const PartitionTuple& mus, const std::vector<int>& ell, int k, int rmax) {
    std::vector<XSeries> blocks;
    for (size_t a = 0; a < mus.size(); ++a) blocks.push_back(monomial_into_xseries(mus[a], ell[a], k, rmax));
    return XSeries::tensor(blocks, rmax);
}

// (q, y) -> (u, v) = ((q y)^{-1}, y), i.e. q = u^{-1} v^{-1}
inline constexpr ExponentMap qy_to_uv{-1, 0, -1, 1, 1};
// P(u, v) -> P((q y)^{-k}, y^k)
inline ExponentMap uv_to_qy_power(int k) { return {-k, 0, -k, k, 1}; }

struct BpsPolynomial {
    PartitionTuple mu;
    std::vector<int> n;
    int g = 0;
    int d = 0;
    RationalBivar value;   // in (u, v)
    bool certified = false;
    std::string falsification;  // why certification failed, if it did

    // integer-lattice terms (a, b, coeff); only meaningful when certified
    std::vector<std::tuple<int, int, BigInt>> terms() const {
        std::vector<std::tuple<int, int, BigInt>> out;
        for (auto& t : value.numerator().terms()) out.emplace_back(t.x / 2, t.y / 2, t.c);
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        return out;
    }
    BigInt coeff(int a, int b) const {
        BigRational c = value.numerator().coeff(2 * a, 2 * b) / BigRational(value.numerator().denominator());
        return c.get_num();
    }
};

// Certify P is a polynomial on the integer (u, v) lattice with integer coefficients.
inline void certify(BpsPolynomial& P) {
    P.certified = false;
    if (!P.value.is_polynomial()) {
        P.falsification = "not a Laurent polynomial: " + P.value.str();
        return;
    }
    const auto& num = P.value.numerator();
    if (!num.has_integer_coefficients()) {
        P.falsification = "non-integer coefficients (common denominator " + num.denominator().get_str() + ")";
        return;
    }
    for (auto& t : num.terms())
        if (t.x % 2 || t.y % 2) {
            P.falsification = "half-integer exponent u^(" + detail::exponent_text(t.x) + ") v^(" + detail::exponent_text(t.y) + ")";
            return;
        }
    P.certified = true;
}

// Refined GV kernel at a given k: y^{-k r}(q/y)^{k d/2} / ((1 - (q y)^{-k})(1 - (q/y)^k))
inline RationalBivar gv_kernel(int k, int r, int d) {
    RationalBivar mono = RationalBivar::monomial(VarPair::qy, k * d, -2 * k * r - k * d);
    return mono * RationalBivar::inv_one_minus(VarPair::qy, -2 * k, -2 * k) * RationalBivar::inv_one_minus(VarPair::qy, 2 * k, -2 * k);
}

struct ExtractionInput {
    WildCurveData data;
    XSeries logZ;   // ln Z, exact at every key at or below the targets
};

// Layered extraction of P_μ from a precomputed ln Z. `memo` holds P for
// smaller tuples so k > 1 layers are reused.
inline BpsPolynomial gv_extract_from_log(const ExtractionInput& in, const PartitionTuple& mus,
                                         std::map<PartitionTuple, BpsPolynomial>& memo) {
    if (auto it = memo.find(mus); it != memo.end()) return it->second;
    const auto& data = in.data;
    int r = mus.at(0).size();
    int d = dimension_d(mus, data.n, data.g);
    RationalBivar c = in.logZ.coefficient(target_key(mus, data.ell));
    for (auto& [k, sub] : divisor_tuples(mus)) {
        BpsPolynomial Ps = gv_extract_from_log(in, sub, memo);
        int rs = sub[0].size();
        int ds = dimension_d(sub, data.n, data.g);
        RationalBivar Pk = Ps.value.map_exponents(uv_to_qy_power(k), VarPair::qy);
        c = c - (gv_kernel(k, rs, ds) * Pk).scaled(BigRational(-1, k));
    }
    // k = 1: c = -P((qy)^{-1}, y) y^{-r} (q/y)^{d/2} / ((1 - (qy)^{-1})(1 - q/y))
    RationalBivar P = -(c / gv_kernel(1, r, d));
    BpsPolynomial out;
    out.mu = mus;
    out.n = data.n;
    out.g = data.g;
    out.d = d;
    out.value = P.map_exponents(qy_to_uv, VarPair::uv);
    certify(out);
    memo.emplace(mus, out);
    return out;
}

// componentwise maximum of the target keys
inline XSeries::Key key_bound(const std::vector<PartitionTuple>& targets, const std::vector<int>& ell) {
    XSeries::Key b;
    for (auto& t : targets) {
        auto k = target_key(t, ell);
        if (b.empty()) b = k;
        for (size_t i = 0; i < k.size(); ++i) b[i] = std::max(b[i], k[i]);
    }
    return b;
}

struct RefinedContext {
    WildCurveData data;
    int rmax = 0;
    int threads = 1;
};

inline std::vector<BpsPolynomial> gv_extract_many(const RefinedContext& ctx, const std::vector<PartitionTuple>& targets) {
    if (targets.empty()) return {};
    int r = 0;
    for (auto& t : targets) {
        for (auto& mu : t) r = std::max(r, mu.size());
        dimension_d(t, ctx.data.n, ctx.data.g);
    }
    if (r > ctx.rmax) throw std::invalid_argument("target degree exceeds rmax");
    auto bound = key_bound(targets, ctx.data.ell);
    XSeries Z = z_pt_refined(ctx.data, r, &bound, ctx.threads);
    ExtractionInput in{ctx.data, Z.restrict_below(bound).log()};
    std::map<PartitionTuple, BpsPolynomial> memo;
    std::vector<BpsPolynomial> out;
    for (auto& t : targets) out.push_back(gv_extract_from_log(in, t, memo));
    return out;
}

inline BpsPolynomial gv_extract(const RefinedContext& ctx, const PartitionTuple& mus) { return gv_extract_many(ctx, {mus})[0]; }

// ---- HMW side ----

// Ω_λ = ∏ (-z^{2a} w^{2l})^{n-m} (z^{2a+1} - w^{2l+1})^{2g} / ((z^{2a+2} - w^{2l})(z^{2a} - w^{2l+2}))
inline RationalBivar hmw_omega(const Partition& lam, int g, int n_total, int m) {
    auto zw = [](int a, int b) { return LaurentBivar::monomial(VarPair::zw, 2 * a, 2 * b); };
    RationalBivar v(1);
    int e = n_total - m;
    for (auto [a, l] : lam.arms_legs()) {
        LaurentBivar base = -zw(a, l).pow(2);
        RationalBivar f = e >= 0 ? RationalBivar(base.pow(e)) : RationalBivar(base.pow(-e)).inverse();
        f = f * RationalBivar((zw(2 * a + 1, 0) - zw(0, 2 * l + 1)).pow(2 * g));
        f = f / RationalBivar((zw(2 * a + 2, 0) - zw(0, 2 * l)) * (zw(2 * a, 0) - zw(0, 2 * l + 2)));
        v = v * f;
    }
    return v;
}

// H~_λ(x; z^2, w^2) expanded in ell variables; `swap` exchanges the roles of q and t
inline XSeries htilde_xseries(const Partition& lam, int ell, int rmax, bool swap = false) {
    const auto& H = modified_macdonald(lam, lam.size());
    ExponentMap M = swap ? ExponentMap{0, 2, 2, 0, 1} : ExponentMap{2, 0, 0, 2, 1};
    XSeries s({ell}, rmax);
    for (auto& [nu, c] : H.coeffs()) {
        if (nu.length() > ell) continue;
        s = s + monomial_into_xseries(nu, ell, 1, rmax).scaled(c.map_exponents(M, VarPair::zw));
    }
    return s;
}

inline XSeries hmw_z(int g, int m, int n_total, int rmax, const std::vector<int>& ell, const XSeries::Key* bound = nullptr,
                     bool swap = false) {
    if (static_cast<int>(ell.size()) != m) throw std::invalid_argument("hmw_z: ell list must have length m");
    XSeries Z = XSeries::one(ell, rmax);
    for (int r = 1; r <= rmax; ++r)
        for (auto& lam : partitions_of(r)) {
            std::vector<XSeries> blocks;
            for (int a = 0; a < m; ++a) {
                XSeries b = htilde_xseries(lam, ell[a], rmax, swap);
                if (bound) b = b.restrict_below(group_bound(ell, *bound, a));
                blocks.push_back(std::move(b));
            }
            Z = Z + XSeries::tensor(blocks, rmax).scaled(hmw_omega(lam, g, n_total, m));
        }
    return Z;
}

struct HmwPolynomial {
    PartitionTuple mu;
    int n_total = 0;
    int d = 0;
    RationalBivar value;  // ℍ(z, w)
    bool laurent = false;
    std::string falsification;
};

// kernel (-1)^{(n-m) r} w^{k d} / ((1 - z^{2k})(w^{2k} - 1))
inline RationalBivar hmw_kernel(int k, int r, int d, int n_total, int m) {
    int sign = ((n_total - m) * r) % 2 ? -1 : 1;
    RationalBivar v = RationalBivar::monomial(VarPair::zw, 0, 2 * k * d, sign);
    v = v * RationalBivar::inv_one_minus(VarPair::zw, 4 * k, 0);
    return -(v * RationalBivar::inv_one_minus(VarPair::zw, 0, 4 * k));
}

// The HMW k-sum carries no 1/k, as written for ln Z_HMW; for μ_a = (1^r) only k = 1 occurs.
inline HmwPolynomial hmw_extract_from_log(const XSeries& logZ, const WildCurveData& data, const PartitionTuple& mus,
                                          std::map<PartitionTuple, HmwPolynomial>& memo) {
    if (auto it = memo.find(mus); it != memo.end()) return it->second;
    int m = data.m(), nt = data.n_total();
    int r = mus.at(0).size();
    int d = dimension_d(mus, data.n, data.g);
    RationalBivar c = logZ.coefficient(target_key(mus, data.ell));
    for (auto& [k, sub] : divisor_tuples(mus)) {
        HmwPolynomial Hs = hmw_extract_from_log(logZ, data, sub, memo);
        c = c - hmw_kernel(k, sub[0].size(), Hs.d, nt, m) * Hs.value.substitute_power(k);
    }
    HmwPolynomial out{mus, nt, d, c / hmw_kernel(1, r, d, nt, m), false, {}};
    out.laurent = out.value.is_polynomial();
    if (!out.laurent) out.falsification = "not a Laurent polynomial: " + out.value.str();
    memo.emplace(mus, out);
    return out;
}

inline HmwPolynomial hmw_extract(const WildCurveData& data, const PartitionTuple& mus, bool swap = false) {
    data.validate(1);
    int r = mus.at(0).size();
    auto bound = target_key(mus, data.ell);
    XSeries Z = hmw_z(data.g, data.m(), data.n_total(), r, data.ell, &bound, swap);
    std::map<PartitionTuple, HmwPolynomial> memo;
    return hmw_extract_from_log(Z.restrict_below(bound).log(), data, mus, memo);
}

// z^{x/2} w^{y/2} at z = u^{1/2}, w = u^{-1/2} v^{-1}
inline constexpr ExponentMap zw_to_uv{1, -1, 0, -2, 2};

struct HmwVerdict {
    bool equal = false;
    bool integer_exponents = true;
    RationalBivar substituted;   // ℍ after substitution, in (u, v)
    std::vector<std::tuple<int, int, BigRational, BigRational>> diff;  // (a, b, P coeff, ℍ coeff), doubled exponents
    std::string message;
};

inline bool is_one_r(const Partition& p) { return p.length() == p.size(); }

inline HmwVerdict compare_hmw(const BpsPolynomial& P, const HmwPolynomial& H) {
    for (auto& mu : P.mu)
        if (!is_one_r(mu)) throw std::invalid_argument("compare_hmw requires every mu_a = (1^r), got " + tuple_str(P.mu));
    HmwVerdict v;
    try {
        v.substituted = H.value.map_exponents(zw_to_uv, VarPair::uv);
    } catch (const std::domain_error& e) {
        v.integer_exponents = false;
        v.message = std::string("substitution left the lattice: ") + e.what();
        return v;
    }
    for (auto& t : v.substituted.numerator().terms())
        if (t.x % 2 || t.y % 2) v.integer_exponents = false;
    RationalBivar delta = P.value - v.substituted;
    v.equal = delta.is_zero();
    if (!v.equal) {
        if (P.value.is_polynomial() && v.substituted.is_polynomial()) {
            std::map<std::pair<int, int>, std::pair<BigRational, BigRational>> cells;
            for (auto& t : P.value.numerator().terms()) cells[{t.x, t.y}].first = P.value.numerator().coeff_of(t);
            for (auto& t : v.substituted.numerator().terms())
                cells[{t.x, t.y}].second = v.substituted.numerator().coeff_of(t);
            for (auto& [k, cc] : cells)
                if (cc.first != cc.second) v.diff.emplace_back(k.first, k.second, cc.first, cc.second);
        }
        v.message = "P - H(substituted) = " + delta.str();
    } else {
        v.message = "equal";
    }
    return v;
}

// ---- structural checks ----

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::vector<CheckResult> structural_checks(const BpsPolynomial& P) {
    std::vector<CheckResult> out;
    if (!P.certified) {
        out.push_back({"integrality", false, P.falsification});
        return out;
    }
    // negative expected dimension: the extraction must return exactly zero
    if (P.value.is_zero()) {
        bool empty = P.d < 0;
        std::string why = empty ? "P = 0 with d = " + std::to_string(P.d) + " < 0 (empty moduli space)"
                                : "P = 0 but d = " + std::to_string(P.d) + " >= 0";
        for (const char* name : {"bidegree", "palindromic", "curious_duality", "integrality", "constant_term"})
            out.push_back({name, empty, why});
        return out;
    }
    if (P.d < 0) out.push_back({"bidegree", false, "nonzero P with d = " + std::to_string(P.d) + " < 0"});
    auto ts = P.terms();
    int amax = INT32_MIN, bmax = INT32_MIN, amin = INT32_MAX, bmin = INT32_MAX;
    std::map<std::pair<int, int>, BigInt> cf;
    for (auto& [a, b, c] : ts) {
        amax = std::max(amax, a), bmax = std::max(bmax, b), amin = std::min(amin, a), bmin = std::min(bmin, b);
        cf[{a, b}] = c;
    }
    auto at = [&](int a, int b) {
        auto it = cf.find({a, b});
        return it == cf.end() ? BigInt(0) : it->second;
    };
    {
        std::ostringstream s;
        s << "bidegree (" << amax << "," << bmax << "), d = " << P.d;
        if (amin < 0 || bmin < 0) s << "; negative exponents present";
        out.push_back({"bidegree", amax == P.d && bmax == P.d, s.str()});
    }
    {
        int bad = 0;
        std::string first;
        for (auto& [k, c] : cf)
            if (at(P.d - k.first, P.d - k.second) != c) {
                if (!bad++) first = "coeff(" + std::to_string(k.first) + "," + std::to_string(k.second) + ") = " + c.get_str() +
                                    " but coeff(" + std::to_string(P.d - k.first) + "," + std::to_string(P.d - k.second) +
                                    ") = " + at(P.d - k.first, P.d - k.second).get_str();
            }
        out.push_back({"palindromic", bad == 0, bad ? std::to_string(bad) + " mismatched terms, e.g. " + first : "coeff(a,b) = coeff(d-a,d-b)"});
    }
    {
        int bad = 0;
        for (auto& [k, c] : cf)
            if (at(P.d - k.first, P.d - 2 * k.first + k.second) != c) ++bad;
        out.push_back({"curious_duality", bad == 0,
                       bad ? std::to_string(bad) + " mismatched terms" : "coeff(a,b) = coeff(d-a,d-2a+b)"});
    }
    out.push_back({"integrality", true, "integer coefficients, integer exponents"});
    out.push_back({"constant_term", at(0, 0) == 1, "constant term " + at(0, 0).get_str()});
    return out;
}

// ---- synthetic round trip ----

// All m-tuples of partitions of r with l(μ_a) <= ell_a.
inline std::vector<PartitionTuple> all_targets(int r, const std::vector<int>& ell) {
    std::vector<PartitionTuple> out{{}};
    for (int l : ell) {
        std::vector<PartitionTuple> next;
        for (auto& t : out)
            for (auto& p : partitions_of(r))
                if (p.length() <= l) {
                    auto u = t;
                    u.push_back(p);
                    next.push_back(u);
                }
        out = std::move(next);
    }
    return out;
}

// ln Z = -Σ_k Σ_μ ∏_a m_{μ_a}(x_a^k) / k · kernel_k(r, d) · P_μ((q y)^{-k}, y^k)
inline XSeries gv_log_from_plant(const WildCurveData& data, const std::map<PartitionTuple, RationalBivar>& plant, int rmax) {
    XSeries L(data.ell, rmax);
    for (auto& [mus, P] : plant) {
        int r = mus[0].size(), d = dimension_d(mus, data.n, data.g);
        for (int k = 1; k * r <= rmax; ++k) {
            RationalBivar c = (gv_kernel(k, r, d) * P.map_exponents(uv_to_qy_power(k), VarPair::qy)).scaled(BigRational(-1, k));
            L = L + monomial_tuple_series(mus, data.ell, k, rmax).scaled(c);
        }
    }
    return L;
}

inline std::map<PartitionTuple, RationalBivar> random_plant(const WildCurveData& data, int rmax, unsigned seed, int max_deg = 3) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_deg);
    std::map<PartitionTuple, RationalBivar> plant;
    for (int r = 1; r <= rmax; ++r)
        for (auto& t : all_targets(r, data.ell)) {
            std::vector<LaurentBivar::Term> ts;
            int na = deg(rng), nb = deg(rng);
            for (int a = 0; a <= na; ++a)
                for (int b = 0; b <= nb; ++b)
                    if (int c = coef(rng)) ts.push_back({2 * a, 2 * b, BigInt(c)});
            plant[t] = RationalBivar(LaurentBivar::from_integer_terms(VarPair::uv, ts));
        }
    return plant;
}

struct RoundTripReport {
    bool pass = true;
    int planted = 0;
    std::string first_failure;
};

// plant -> ln Z -> exp -> log -> extract, must recover the plant
inline RoundTripReport synthetic_round_trip(const WildCurveData& data, int rmax, unsigned seed) {
    auto plant = random_plant(data, rmax, seed);
    XSeries Z = gv_log_from_plant(data, plant, rmax).exp();
    ExtractionInput in{data, Z.log()};
    std::map<PartitionTuple, BpsPolynomial> memo;
    RoundTripReport rep;
    for (auto& [mus, P] : plant) {
        ++rep.planted;
        auto got = gv_extract_from_log(in, mus, memo);
        if (!got.certified || !(got.value == P)) {
            if (rep.pass) rep.first_failure = tuple_str(mus) + ": planted " + P.str() + ", got " + got.value.str();
            rep.pass = false;
        }
    }
    return rep;
}

// Re-sum extracted P_μ through the GV expansion, exponentiate, compare with Z.
inline bool round_trip_closure(const RefinedContext& ctx) {
    XSeries Z = z_pt_refined(ctx.data, ctx.rmax, nullptr, ctx.threads);
    ExtractionInput in{ctx.data, Z.log()};
    std::map<PartitionTuple, BpsPolynomial> memo;
    std::map<PartitionTuple, RationalBivar> found;
    for (int r = 1; r <= ctx.rmax; ++r)
        for (auto& t : all_targets(r, ctx.data.ell)) found[t] = gv_extract_from_log(in, t, memo).value;
    return gv_log_from_plant(ctx.data, found, ctx.rmax).exp() == Z;
}

}  // namespace wildcurve

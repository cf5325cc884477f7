#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bps.hpp"

namespace wildcurve {

struct IdentityResult {
    std::string id;
    std::string description;
    std::string sizes;
    bool pass = false;
    long checked = 0;
    double seconds = 0;
    std::string detail;
};

struct SelftestSizes {
    int fusion_n = 6, fusion_ell = 3;
    int cap_mu = 4, cap_k = 3;
    int wildcap_lam = 4, wildcap_ell = 3, wildcap_k = 3;
    int hurwitz_d = 4, hurwitz_n = 4;
    int vertex_nu = 6;
    int collapse_r = 3, collapse_g = 2;
    int closure_r = 3;
    int synthetic_r = 4;

    static SelftestSizes named(const std::string& name) {
        SelftestSizes s;
        if (name == "small") {
            s = {4, 2, 3, 2, 3, 2, 2, 3, 3, 4, 2, 1, 2, 3};
        } else if (name == "large") {
            s = {7, 3, 5, 4, 5, 3, 4, 5, 5, 8, 4, 3, 4, 5};
        } else if (name != "default") {
            throw std::invalid_argument("unknown size preset '" + name + "' (small, default, large)");
        }
        return s;
    }
};

namespace detail {

// runs f, which returns the number of cases checked and throws or fills `fail` on mismatch
inline IdentityResult timed(std::string id, std::string desc, std::string sizes, const std::function<long(std::string&)>& f) {
    IdentityResult r{std::move(id), std::move(desc), std::move(sizes), false, 0, 0, {}};
    auto t0 = std::chrono::steady_clock::now();
    std::string fail;
    try {
        r.checked = f(fail);
        r.pass = fail.empty();
        r.detail = fail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline void note(std::string& fail, const std::string& what) {
    if (fail.empty()) fail = what;
}

}  // namespace detail

// LR coefficients from the character formula against products of Schur functions
inline IdentityResult check_fusion_characters(int nmax, int ellmax) {
    return detail::timed("fusion_characters", "LR coefficients: character formula vs Schur products",
                         "|lambda| <= " + std::to_string(nmax) + ", ell <= " + std::to_string(ellmax), [&](std::string& fail) {
                             long n = 0;
                             for (int ell = 2; ell <= ellmax; ++ell)
                                 for (int tot = 1; tot <= nmax; ++tot)
                                     for (auto& nus : partition_tuples(tot, ell)) {
                                         auto ne = nonempty(nus);
                                         if (ne.size() < 2) continue;
                                         ++n;
                                         if (lr_by_product(ne) != lr_by_characters(ne)) detail::note(fail, "mismatch at " + tuple_str(ne));
                                     }
                             return n;
                         });
}

inline IdentityResult check_cap_convolution(int mumax, int kmax) {
    return detail::timed("cap_convolution", "cap from simple caps and rubber series equals the closed cap",
                         "|mu| <= " + std::to_string(mumax) + ", k <= " + std::to_string(kmax), [&](std::string& fail) {
                             long n = 0;
                             for (int k = 1; k <= kmax; ++k)
                                 for (int d = 1; d <= mumax; ++d)
                                     for (auto& mu : partitions_of(d)) {
                                         ++n;
                                         if (!(cap_by_convolution(mu, k) == cap_Z(mu)))
                                             detail::note(fail, "mu=" + mu.str() + " k=" + std::to_string(k));
                                     }
                             return n;
                         });
}

inline IdentityResult check_wildcap_convolution(int lammax, int ellmax, int kmax) {
    return detail::timed("wildcap_convolution", "wild cap by convolution equals the closed wild cap",
                         "|lambda| <= " + std::to_string(lammax) + ", ell <= " + std::to_string(ellmax) +
                             ", k <= " + std::to_string(kmax),
                         [&](std::string& fail) {
                             long n = 0;
                             for (int k = 1; k <= kmax; ++k)
                                 for (int ell = 1; ell <= ellmax; ++ell)
                                     for (int d = 1; d <= lammax; ++d)
                                         for (auto& lam : partitions_of(d)) {
                                             ++n;
                                             auto a = wildcap_W(k, ell, lam, WildCapRoute::convolution, d);
                                             auto b = wildcap_W(k, ell, lam, WildCapRoute::closed, d);
                                             if (!(a == b))
                                                 detail::note(fail, "lambda=" + lam.str() + " ell=" + std::to_string(ell) +
                                                                        " k=" + std::to_string(k));
                                         }
                             return n;
                         });
}

inline IdentityResult check_hurwitz(int dmax, int nmax) {
    return detail::timed("hurwitz_bruteforce", "Hurwitz character formula equals factorization counts in S_d",
                         "d <= " + std::to_string(dmax) + ", n <= " + std::to_string(nmax), [&](std::string& fail) {
                             long c = 0;
                             for (int d = 1; d <= dmax; ++d)
                                 for (auto& rho : partitions_of(d))
                                     for (auto& mu : partitions_of(d))
                                         for (int n = 0; n <= nmax; ++n) {
                                             ++c;
                                             if (hurwitz_by_branch_points(n, rho, mu) != hurwitz_bruteforce(n, rho, mu))
                                                 detail::note(fail, "rho=" + rho.str() + " mu=" + mu.str() + " n=" + std::to_string(n));
                                         }
                             return c;
                         });
}

inline IdentityResult check_vertex_dual(int numax) {
    return detail::timed("vertex_dual", "q^{k c} s_{nu^t} equals q^{(k+1) c} s_nu", "|nu| <= " + std::to_string(numax),
                         [&](std::string& fail) {
                             long n = 0;
                             for (int d = 1; d <= numax; ++d)
                                 for (auto& nu : partitions_of(d))
                                     for (int k = 0; k <= 3; ++k) {
                                         ++n;
                                         if (!(vertex(nu, k) == vertex_content_form(nu, k)))
                                             detail::note(fail, "nu=" + nu.str() + " k=" + std::to_string(k));
                                     }
                             return n;
                         });
}

inline IdentityResult check_content_transpose(int numax) {
    return detail::timed("content_transpose", "q^{c(nu)} s_nu equals s_{nu^t}", "|nu| <= " + std::to_string(numax),
                         [&](std::string& fail) {
                             long n = 0;
                             for (int d = 1; d <= numax; ++d)
                                 for (auto& nu : partitions_of(d)) {
                                     ++n;
                                     if (!(q_power(2 * content(nu)) * principal_schur(nu) == principal_schur(nu.conjugate())))
                                         detail::note(fail, "nu=" + nu.str());
                                 }
                             return n;
                         });
}

// refined partition function at y = 1 against the unrefined one
struct CollapseReport {
    bool exact = true;          // equal with no normalization at all
    bool uniform = true;        // equal up to one λ-independent monomial
    std::string monomial = "1";
    long compared = 0;
    std::string detail;
};

inline CollapseReport refined_collapse(const WildCurveData& data, int rmax) {
    static constexpr ExponentMap y_to_one{1, 0, 0, 0, 1};
    XSeries Zr = z_pt_refined(data, rmax), Zg = z_gw(data, rmax);
    CollapseReport rep;
    std::optional<RationalBivar> ratio;
    std::set<XSeries::Key> keys;
    for (auto& [k, c] : Zr.terms()) keys.insert(k);
    for (auto& [k, c] : Zg.terms()) keys.insert(k);
    for (auto& k : keys) {
        if (Zg.degree(k) == 0) continue;
        ++rep.compared;
        RationalBivar a = Zr.coefficient(k).map_exponents(y_to_one, VarPair::qy), b = Zg.coefficient(k);
        if (a == b) {
            if (ratio && !(*ratio == RationalBivar(1))) rep.uniform = false;
            ratio = RationalBivar(1);
            continue;
        }
        rep.exact = false;
        if (b.is_zero() || a.is_zero()) {
            rep.uniform = false;
            rep.detail = "support differs at " + Zg.key_str(k);
            continue;
        }
        RationalBivar q = a / b;
        if (!q.is_polynomial() || q.numerator().size() != 1 || (ratio && !(*ratio == q))) {
            rep.uniform = false;
            if (rep.detail.empty()) rep.detail = "ratio at " + Zg.key_str(k) + " is " + q.str();
        }
        ratio = q;
    }
    if (rep.uniform && !rep.exact && ratio) rep.monomial = ratio->str();
    return rep;
}

inline IdentityResult check_collapse(int rmax, int gmax) {
    return detail::timed("refined_collapse", "refined partition function at y = 1 equals the unrefined one",
                         "r <= " + std::to_string(rmax) + ", g <= " + std::to_string(gmax) + ", m <= 2",
                         [&](std::string& fail) {
                             long n = 0;
                             for (int g = 0; g <= gmax; ++g)
                                 for (int m = 1; m <= 2; ++m)
                                     for (int nv = 2; nv <= 3; ++nv) {
                                         WildCurveData d{g, std::vector<int>(m, nv), std::vector<int>(m, 2)};
                                         auto rep = refined_collapse(d, rmax);
                                         n += rep.compared;
                                         if (!rep.exact)
                                             detail::note(fail, "g=" + std::to_string(g) + " m=" + std::to_string(m) + " n=" +
                                                                    std::to_string(nv) + ": " +
                                                                    (rep.uniform ? "normalization " + rep.monomial : rep.detail));
                                     }
                             return n;
                         });
}

inline IdentityResult check_closure(int rmax) {
    return detail::timed("round_trip_closure", "re-summing extracted P through the GV expansion gives back Z",
                         "r <= " + std::to_string(rmax), [&](std::string& fail) {
                             long n = 0;
                             for (auto& d : {WildCurveData{1, {2, 3}, {2, 2}}, WildCurveData{0, {3}, {3}}}) {
                                 ++n;
                                 if (!round_trip_closure(RefinedContext{d, rmax, 1}))
                                     detail::note(fail, "closure fails for g=" + std::to_string(d.g));
                             }
                             return n;
                         });
}

inline IdentityResult check_synthetic(int rmax) {
    return detail::timed("synthetic_round_trip", "planted integer polynomials are recovered by the extraction",
                         "r <= " + std::to_string(rmax), [&](std::string& fail) {
                             long n = 0;
                             for (unsigned seed = 1; seed <= 3; ++seed) {
                                 auto rep = synthetic_round_trip(WildCurveData{1, {3, 4}, {2, 2}}, rmax, seed);
                                 n += rep.planted;
                                 if (!rep.pass) detail::note(fail, rep.first_failure);
                             }
                             return n;
                         });
}

inline IdentityResult check_tqft_assembly(int rmax) {
    return detail::timed("tqft_assembly", "TQFT pieces reassemble the unrefined partition function",
                         "r <= " + std::to_string(rmax), [&](std::string& fail) {
                             long n = 0;
                             for (auto& d : {WildCurveData{1, {2, 2}, {2, 1}}, WildCurveData{0, {3}, {2}}})
                                 for (int r = 1; r <= rmax; ++r) {
                                     ++n;
                                     auto rep = assemble_z_r(d, r);
                                     if (!rep.matches) detail::note(fail, "g=" + std::to_string(d.g) + " r=" + std::to_string(r));
                                 }
                             return n;
                         });
}

inline std::vector<IdentityResult> run_selftest(const SelftestSizes& s) {
    std::vector<IdentityResult> out;
    out.push_back(check_fusion_characters(s.fusion_n, s.fusion_ell));
    out.push_back(check_cap_convolution(s.cap_mu, s.cap_k));
    out.push_back(check_wildcap_convolution(s.wildcap_lam, s.wildcap_ell, s.wildcap_k));
    out.push_back(check_hurwitz(s.hurwitz_d, s.hurwitz_n));
    out.push_back(check_vertex_dual(s.vertex_nu));
    out.push_back(check_content_transpose(s.vertex_nu));
    out.push_back(check_collapse(s.collapse_r, s.collapse_g));
    out.push_back(check_closure(s.closure_r));
    out.push_back(check_synthetic(s.synthetic_r));
    out.push_back(check_tqft_assembly(std::min(3, s.closure_r)));
    return out;
}

}  // namespace wildcurve

#pragma once

#include <compare>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "laurent.hpp"

namespace wildcurve {

// Φ_d(X^a Y^b) on the doubled lattice with a > 0 or (a == 0 and b > 0); (a, b) is primitive,
// or twice a primitive vector when the factor lives on integer powers of the nominal variables.
struct CycloFactor {
    int a, b, d;
    auto operator<=>(const CycloFactor&) const = default;
};

inline LaurentBivar cyclo_poly(const CycloFactor& f, VarPair v) {
    const auto& phi = cyclotomic(f.d);
    std::vector<LaurentBivar::Term> ts;
    for (size_t k = 0; k < phi.size(); ++k)
        if (sgn(phi[k]) != 0) ts.push_back({int(k) * f.a, int(k) * f.b, phi[k]});
    return LaurentBivar::from_integer_terms(v, std::move(ts));
}

struct Factorization {
    LaurentBivar unit;                       // scalar times monomial
    std::map<CycloFactor, int> cyclo;
    std::map<LaurentBivar, int> general;     // primitive, shifted to the positive quadrant
};

namespace detail {

inline std::pair<int, int> primitive_dir(long dx, long dy, int& steps) {
    long g = std::gcd(std::labs(dx), std::labs(dy));
    steps = static_cast<int>(g);
    dx /= g;
    dy /= g;
    if (dx < 0 || (dx == 0 && dy < 0)) dx = -dx, dy = -dy;
    return {static_cast<int>(dx), static_cast<int>(dy)};
}

// base direction for cyclotomic factors: the primitive vector, doubled when the
// whole exponent vector lies on the even sublattice (integer powers of q, y)
inline std::pair<int, int> factor_base(long dx, long dy, int& power) {
    int g;
    auto dir = primitive_dir(dx, dy, g);
    if (g % 2 == 0) {
        power = g / 2;
        return {2 * dir.first, 2 * dir.second};
    }
    power = g;
    return dir;
}

// edge directions of the Newton polygon with their lengths in primitive steps
inline std::map<std::pair<int, int>, int> newton_edges(const LaurentBivar& p) {
    std::vector<std::pair<long, long>> pts;
    for (auto& t : p.terms()) pts.emplace_back(t.x, t.y);  // already sorted
    std::map<std::pair<int, int>, int> out;
    if (pts.size() < 2) return out;
    auto cross = [](auto o, auto a, auto b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<long, long>> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 1) h.push_back(pts.back());
    for (size_t i = 0; i < h.size(); ++i) {
        auto a = h[i], b = h[(i + 1) % h.size()];
        if (a == b) continue;
        int steps;
        auto dir = primitive_dir(b.first - a.first, b.second - a.second, steps);
        out[dir] = std::max(out[dir], steps);
    }
    return out;
}

}  // namespace detail

inline Factorization factorize(const LaurentBivar& p) {
    if (p.is_zero()) throw std::domain_error("division by zero rational function");
    Factorization F;
    VarPair v = p.vars();
    BigRational c = p.content();
    int x0 = p.min_x(), y0 = p.min_y();
    F.unit = LaurentBivar::monomial(v, x0, y0, c);
    LaurentBivar r = p.scaled(1 / c).shifted(-x0, -y0);
    if (r.is_constant()) return F;
    auto& ts = r.terms();
    // binomial 1 - m^g (up to the unit already stripped)
    if (ts.size() == 2 && ts[0].c == -ts[1].c) {
        int steps;
        auto [a, b] = detail::factor_base(ts[1].x - ts[0].x, ts[1].y - ts[0].y, steps);
        for (int d = 1; d <= steps; ++d)
            if (steps % d == 0) F.cyclo[{a, b, d}] += 1;
        // r = ±(m^g - 1) relative to the lower term, lex order puts (a,b) upward
        if (sgn(ts[1].c) < 0) F.unit = -F.unit;
        F.unit = F.unit.shifted(ts[0].x, ts[0].y);
        return F;
    }
    for (auto [dir0, len0] : detail::newton_edges(r)) {
        // integer-lattice factors first, then half-lattice ones
        for (int e : {2, 1}) {
            int len = len0 / e;
            std::pair<int, int> dir{dir0.first * e, dir0.second * e};
            int dmax = std::min(2 * len * len + 2, 400);
            for (int d = 1; d <= dmax; ++d) {
                if (euler_phi(d) > len) continue;
                const auto& phi = cyclotomic(d);
                while (r.size() > 1) {
                    auto q = r.divide_along(dir.first, dir.second, phi);
                    if (!q) break;
                    r = *q;
                    F.cyclo[{dir.first, dir.second, d}] += 1;
                }
            }
        }
    }
    // leftover: strip unit again
    BigRational c2 = r.content();
    int x1 = r.min_x(), y1 = r.min_y();
    F.unit = F.unit * LaurentBivar::monomial(v, x1, y1, c2);
    r = r.scaled(1 / c2).shifted(-x1, -y1);
    if (!r.is_constant()) F.general[r] += 1;
    return F;
}

// Exact rational function: numerator over a product of irreducible-by-construction
// cyclotomic factors plus a fallback list of unfactored polynomials.
class RationalBivar {
public:
    RationalBivar() = default;
    RationalBivar(long c) : num_(LaurentBivar::constant(BigRational(c))) {}            // NOLINT
    RationalBivar(const BigRational& c) : num_(LaurentBivar::constant(c)) {}           // NOLINT
    RationalBivar(const LaurentBivar& p) : num_(p) {}                                  // NOLINT

    static RationalBivar monomial(VarPair v, int x2, int y2, const BigRational& c = 1) {
        return RationalBivar(LaurentBivar::monomial(v, x2, y2, c));
    }
    // 1 / (1 - X^x2 Y^y2)
    static RationalBivar inv_one_minus(VarPair v, int x2, int y2) {
        return RationalBivar(LaurentBivar::one_minus(v, x2, y2)).inverse();
    }

    // reassemble from stored parts; the caller guarantees they are already reduced
    static RationalBivar from_parts(LaurentBivar num, std::map<CycloFactor, int> cyc, std::map<LaurentBivar, int> gen = {}) {
        RationalBivar r;
        r.num_ = std::move(num);
        if (r.num_.is_zero()) return r;
        r.cyc_ = std::move(cyc);
        for (auto& [f, m] : gen) r.gen_[f.with_vars(r.num_.vars())] = m;
        return r;
    }

    VarPair vars() const { return num_.vars(); }
    const LaurentBivar& numerator() const { return num_; }
    const std::map<CycloFactor, int>& cyclo_factors() const { return cyc_; }
    const std::map<LaurentBivar, int>& general_factors() const { return gen_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return cyc_.empty() && gen_.empty(); }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }
    BigRational constant_value() const {
        if (!is_constant()) throw std::logic_error("not a constant: " + str());
        return num_.constant_term();
    }

    LaurentBivar denominator() const {
        LaurentBivar d = LaurentBivar::constant(1, vars());
        for (auto& [f, m] : cyc_) d *= cyclo_poly(f, vars()).pow(m);
        for (auto& [f, m] : gen_) d *= f.with_vars(vars()).pow(m);
        return d;
    }

    RationalBivar operator-() const {
        RationalBivar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalBivar operator*(const RationalBivar& a, const RationalBivar& b) {
        RationalBivar r;
        r.num_ = a.num_ * b.num_;
        if (r.num_.is_zero()) return r;
        r.cyc_ = a.cyc_;
        r.gen_ = a.gen_;
        for (auto& [f, m] : b.cyc_) r.cyc_[f] += m;
        for (auto& [f, m] : b.gen_) r.gen_[f] += m;
        // a reduced operand times a monomial polynomial cannot create cancellations
        bool trivial = (a.is_polynomial() && a.num_.is_monomial()) || (b.is_polynomial() && b.num_.is_monomial());
        if (!r.is_polynomial() && !trivial) r.reduce();
        return r;
    }

    friend RationalBivar operator+(const RationalBivar& a, const RationalBivar& b) { return add(a, b, false); }
    friend RationalBivar operator-(const RationalBivar& a, const RationalBivar& b) { return add(a, b, true); }
    friend RationalBivar operator/(const RationalBivar& a, const RationalBivar& b) { return a * b.inverse(); }

    RationalBivar& operator+=(const RationalBivar& o) { return *this = *this + o; }
    RationalBivar& operator-=(const RationalBivar& o) { return *this = *this - o; }
    RationalBivar& operator*=(const RationalBivar& o) { return *this = *this * o; }
    RationalBivar& operator/=(const RationalBivar& o) { return *this = *this / o; }

    RationalBivar scaled(const BigRational& c) const {
        RationalBivar r = *this;
        r.num_ = r.num_.scaled(c);
        if (r.num_.is_zero()) r.cyc_.clear(), r.gen_.clear();
        return r;
    }

    RationalBivar inverse() const {
        Factorization F = factorize(num_);
        RationalBivar r;
        LaurentBivar unit_inv = LaurentBivar::monomial(vars(), -F.unit.terms()[0].x, -F.unit.terms()[0].y,
                                                       1 / F.unit.coeff_of(F.unit.terms()[0]));
        r.num_ = unit_inv * denominator();
        r.cyc_ = std::move(F.cyclo);
        for (auto& [f, m] : F.general) r.gen_[f.with_vars(VarPair::none)] += m;
        r.reduce();
        return r;
    }

    RationalBivar pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        if (e == 0) return is_zero() ? throw std::domain_error("0^0") : RationalBivar(1);
        RationalBivar r;
        r.num_ = num_.pow(static_cast<unsigned>(e));
        if (r.num_.is_zero()) return r;
        for (auto& [f, m] : cyc_) r.cyc_[f] = m * e;
        for (auto& [f, m] : gen_) r.gen_[f] = m * e;
        return r;
    }

    RationalBivar map_exponents(const ExponentMap& M, VarPair target) const {
        RationalBivar r;
        r.num_ = num_.map_exponents(M, target);
        if (r.num_.is_zero()) return r;
        for (auto& [f, m] : cyc_) {
            auto [a2, b2] = M.apply(f.a, f.b);
            if (a2 == 0 && b2 == 0) {
                int v = cyclotomic_at_one(f.d);
                if (v == 0) throw std::domain_error("specialization hits a pole: " + str());
                r.num_ = r.num_.scaled(BigRational(1) / rational_pow(BigRational(v), m));
                continue;
            }
            int g;
            auto dir = detail::factor_base(a2, b2, g);
            bool flip = long(dir.first) * g != a2 || long(dir.second) * g != b2;
            if (flip) {
                // Φ_d(m^{-g}) = -m^{-g} Φ_1(m^g) for d = 1, m^{-gφ(d)} Φ_d(m^g) otherwise
                int e = f.d == 1 ? g : g * euler_phi(f.d);
                LaurentBivar u_inv = LaurentBivar::monomial(target, e * dir.first, e * dir.second, f.d == 1 ? -1 : 1);
                r.num_ *= u_inv.pow(m);
            }
            for (auto [e, k] : cyclotomic_of_power(f.d, g)) r.cyc_[{dir.first, dir.second, e}] += k * m;
        }
        for (auto& [f, m] : gen_) {
            Factorization F = factorize(f.map_exponents(M, target));
            auto& t = F.unit.terms()[0];
            r.num_ *= LaurentBivar::monomial(target, -t.x, -t.y, 1 / F.unit.coeff_of(t)).pow(m);
            for (auto& [c, k] : F.cyclo) r.cyc_[c] += k * m;
            for (auto& [c, k] : F.general) r.gen_[c.with_vars(VarPair::none)] += k * m;
        }
        r.reduce();
        return r;
    }

    RationalBivar substitute_power(int k) const { return map_exponents({k, 0, 0, k, 1}, vars()); }

    BigRational eval(const BigRational& X, const BigRational& Y) const {
        BigRational d = denominator().eval(X, Y);
        if (sgn(d) == 0) throw std::domain_error("evaluation at a pole");
        return num_.eval(X, Y) / d;
    }

    friend bool operator==(const RationalBivar& a, const RationalBivar& b) {
        if (a.cyc_ == b.cyc_ && a.gen_ == b.gen_) return a.num_ == b.num_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const RationalBivar& a, const RationalBivar& b) { return !(a == b); }

    // equality by clearing denominators, independent of normalization
    static bool equal_cross(const RationalBivar& a, const RationalBivar& b) {
        return a.num_ * b.denominator() == b.num_ * a.denominator();
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        std::string d;
        for (auto& [f, m] : cyc_) {
            if (!d.empty()) d += "*";
            d += "(" + cyclo_poly(f, vars()).str() + ")";
            if (m > 1) d += "^" + std::to_string(m);
        }
        for (auto& [f, m] : gen_) {
            if (!d.empty()) d += "*";
            d += "(" + f.with_vars(vars()).str() + ")";
            if (m > 1) d += "^" + std::to_string(m);
        }
        return "(" + num_.str() + ")/(" + d + ")";
    }

    // sum of many terms over one common denominator, reduced once
    static RationalBivar sum(const std::vector<RationalBivar>& xs) {
        std::vector<const RationalBivar*> nz;
        for (auto& x : xs)
            if (!x.is_zero()) nz.push_back(&x);
        if (nz.empty()) return RationalBivar();
        if (nz.size() == 1) return *nz[0];
        RationalBivar r;
        VarPair v = VarPair::none;
        for (auto* x : nz) {
            v = join_vars(v, x->vars());
            for (auto& [f, m] : x->cyc_) r.cyc_[f] = std::max(r.cyc_[f], m);
            for (auto& [f, m] : x->gen_) r.gen_[f] = std::max(r.gen_[f], m);
        }
        using Key = std::pair<std::map<CycloFactor, int>, std::map<LaurentBivar, int>>;
        std::map<Key, LaurentBivar> acc;
        for (auto* x : nz) {
            Key k{x->cyc_, x->gen_};
            auto it = acc.find(k);
            if (it == acc.end()) acc.emplace(std::move(k), x->num_);
            else it->second += x->num_;
        }
        LaurentBivar total = LaurentBivar::constant(0, v);
        for (auto& [k, num] : acc) {
            LaurentBivar c = LaurentBivar::constant(1, v);
            for (auto& [f, m] : r.cyc_) {
                auto it = k.first.find(f);
                int e = m - (it == k.first.end() ? 0 : it->second);
                if (e) c *= cyclo_poly(f, v).pow(e);
            }
            for (auto& [f, m] : r.gen_) {
                auto it = k.second.find(f);
                int e = m - (it == k.second.end() ? 0 : it->second);
                if (e) c *= f.with_vars(v).pow(e);
            }
            total += num * c;
        }
        r.num_ = std::move(total);
        r.reduce();
        return r;
    }

    // cancel every denominator factor that divides the numerator
    void reduce() {
        if (num_.is_zero()) {
            cyc_.clear();
            gen_.clear();
            return;
        }
        for (auto it = cyc_.begin(); it != cyc_.end();) {
            const auto& phi = cyclotomic(it->first.d);
            while (it->second > 0 && num_.size() >= phi.size() - 1) {
                auto q = num_.divide_along(it->first.a, it->first.b, phi);
                if (!q) break;
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? cyc_.erase(it) : std::next(it);
        }
        for (auto it = gen_.begin(); it != gen_.end();) {
            while (it->second > 0) {
                auto q = try_exact_divide(num_, it->first.with_vars(num_.vars()));
                if (!q) break;
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? gen_.erase(it) : std::next(it);
        }
    }

private:
    static RationalBivar add(const RationalBivar& a, const RationalBivar& b, bool negate) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return negate ? -b : b;
        RationalBivar r;
        if (a.cyc_ == b.cyc_ && a.gen_ == b.gen_) {
            r.num_ = negate ? a.num_ - b.num_ : a.num_ + b.num_;
            r.cyc_ = a.cyc_;
            r.gen_ = a.gen_;
        } else {
            VarPair v = join_vars(a.vars(), b.vars());
            r.cyc_ = a.cyc_;
            for (auto& [f, m] : b.cyc_) r.cyc_[f] = std::max(r.cyc_[f], m);
            r.gen_ = a.gen_;
            for (auto& [f, m] : b.gen_) r.gen_[f] = std::max(r.gen_[f], m);
            auto cofactor = [&](const RationalBivar& x) {
                LaurentBivar c = LaurentBivar::constant(1, v);
                for (auto& [f, m] : r.cyc_) {
                    auto it = x.cyc_.find(f);
                    int k = m - (it == x.cyc_.end() ? 0 : it->second);
                    if (k) c *= cyclo_poly(f, v).pow(k);
                }
                for (auto& [f, m] : r.gen_) {
                    auto it = x.gen_.find(f);
                    int k = m - (it == x.gen_.end() ? 0 : it->second);
                    if (k) c *= f.with_vars(v).pow(k);
                }
                return c;
            };
            LaurentBivar na = a.num_ * cofactor(a), nb = b.num_ * cofactor(b);
            r.num_ = negate ? na - nb : na + nb;
        }
        r.reduce();
        return r;
    }

    LaurentBivar num_;
    std::map<CycloFactor, int> cyc_;
    std::map<LaurentBivar, int> gen_;
};

inline bool is_zero(const RationalBivar& r) { return r.is_zero(); }
inline std::string to_string(const RationalBivar& r) { return r.str(); }

}  // namespace wildcurve

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bigrational.hpp"

namespace wildcurve {

// Variable pair carried by a Laurent polynomial. `none` marks a constant that
// adopts whatever pair it is combined with.
enum class VarPair : std::uint8_t { none, qy, st, zw, uv };

inline std::pair<const char*, const char*> var_names(VarPair v) {
    switch (v) {
        case VarPair::qy: return {"q", "y"};
        case VarPair::st: return {"s", "t"};
        case VarPair::zw: return {"z", "w"};
        case VarPair::uv: return {"u", "v"};
        default: return {"x", "x"};
    }
}

class VariableMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InexactDivision : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline VarPair join_vars(VarPair a, VarPair b) {
    if (a == VarPair::none) return b;
    if (b == VarPair::none || a == b) return a;
    throw VariableMismatch(std::string("variable pair mismatch: (") + var_names(a).first + "," +
                           var_names(a).second + ") vs (" + var_names(b).first + "," + var_names(b).second + ")");
}

// Integer matrix acting on doubled exponent pairs, divided by `den`.
struct ExponentMap {
    long a11 = 1, a12 = 0, a21 = 0, a22 = 1, den = 1;
    std::pair<int, int> apply(int x, int y) const {
        long nx = a11 * x + a12 * y, ny = a21 * x + a22 * y;
        if (nx % den || ny % den) throw std::domain_error("exponent map leaves the doubled lattice");
        return {static_cast<int>(nx / den), static_cast<int>(ny / den)};
    }
};

// Sparse bivariate Laurent polynomial. Exponents live on the doubled lattice:
// the stored pair (x, y) means first^(x/2) * second^(y/2). Coefficients are
// integers over one common positive denominator.
class LaurentBivar {
public:
    struct Term {
        int x, y;
        BigInt c;
    };

    LaurentBivar() = default;
    LaurentBivar(long c) { *this = constant(BigRational(c)); }          // NOLINT
    LaurentBivar(const BigRational& c) { *this = constant(c); }         // NOLINT

    static LaurentBivar constant(const BigRational& c, VarPair v = VarPair::none) {
        LaurentBivar p;
        p.vars_ = v;
        if (sgn(c) != 0) {
            p.terms_.push_back({0, 0, c.get_num()});
            p.den_ = c.get_den();
        }
        return p;
    }

    // first^(x2/2) second^(y2/2)
    static LaurentBivar monomial(VarPair v, int x2, int y2, const BigRational& c = 1) {
        LaurentBivar p = constant(c, v);
        if (!p.terms_.empty()) {
            p.terms_[0].x = x2;
            p.terms_[0].y = y2;
        }
        return p;
    }

    // 1 - first^(x2/2) second^(y2/2)
    static LaurentBivar one_minus(VarPair v, int x2, int y2) {
        return constant(1, v) - monomial(v, x2, y2);
    }

    static LaurentBivar from_terms(VarPair v, std::vector<std::tuple<int, int, BigRational>> ts) {
        LaurentBivar p;
        p.vars_ = v;
        BigInt den = 1;
        for (auto& t : ts) den = lcm(den, BigInt(std::get<2>(t).get_den()));
        std::map<std::pair<int, int>, BigInt> acc;
        for (auto& [x, y, c] : ts) acc[{x, y}] += BigInt(c.get_num() * (den / c.get_den()));
        for (auto& [k, c] : acc)
            if (sgn(c) != 0) p.terms_.push_back({k.first, k.second, c});
        p.den_ = den;
        p.normalize_den();
        return p;
    }

    // integer coefficients over a given denominator; terms need not be sorted
    static LaurentBivar from_integer_terms(VarPair v, std::vector<Term> ts, BigInt den = 1) {
        LaurentBivar p;
        p.vars_ = v;
        p.terms_ = std::move(ts);
        p.den_ = std::move(den);
        p.sort_and_merge();
        p.normalize_den();
        return p;
    }

    VarPair vars() const { return vars_; }
    LaurentBivar with_vars(VarPair v) const {
        LaurentBivar p = *this;
        p.vars_ = v;
        return p;
    }
    const std::vector<Term>& terms() const { return terms_; }
    const BigInt& denominator() const { return den_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].x == 0 && terms_[0].y == 0); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool has_integer_coefficients() const { return den_ == 1; }

    BigRational coeff_of(const Term& t) const {
        BigRational r(t.c, den_);
        r.canonicalize();
        return r;
    }
    BigRational coeff(int x2, int y2) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(x2, y2),
                                   [](const Term& t, const std::pair<int, int>& k) { return std::make_pair(t.x, t.y) < k; });
        if (it == terms_.end() || it->x != x2 || it->y != y2) return 0;
        return coeff_of(*it);
    }
    BigRational constant_term() const { return coeff(0, 0); }

    int min_x() const { return fold([](int a, const Term& t) { return std::min(a, t.x); }, INT32_MAX); }
    int max_x() const { return fold([](int a, const Term& t) { return std::max(a, t.x); }, INT32_MIN); }
    int min_y() const { return fold([](int a, const Term& t) { return std::min(a, t.y); }, INT32_MAX); }
    int max_y() const { return fold([](int a, const Term& t) { return std::max(a, t.y); }, INT32_MIN); }

    // ---- arithmetic ----
    LaurentBivar operator-() const {
        LaurentBivar p = *this;
        for (auto& t : p.terms_) t.c = -t.c;
        return p;
    }

    friend LaurentBivar operator+(const LaurentBivar& a, const LaurentBivar& b) { return add(a, b, false); }
    friend LaurentBivar operator-(const LaurentBivar& a, const LaurentBivar& b) { return add(a, b, true); }

    friend LaurentBivar operator*(const LaurentBivar& a, const LaurentBivar& b) {
        LaurentBivar out;
        out.vars_ = join_vars(a.vars_, b.vars_);
        if (a.is_zero() || b.is_zero()) return out;
        out.den_ = a.den_ * b.den_;
        if (a.size() == 1 || b.size() == 1) {
            const LaurentBivar& m = a.size() == 1 ? a : b;
            const LaurentBivar& o = a.size() == 1 ? b : a;
            out.terms_.reserve(o.size());
            for (auto& t : o.terms_) out.terms_.push_back({t.x + m.terms_[0].x, t.y + m.terms_[0].y, t.c * m.terms_[0].c});
            out.normalize_den();
            return out;
        }
        mul_terms(a, b, out.terms_);
        out.normalize_den();
        return out;
    }

    LaurentBivar& operator+=(const LaurentBivar& o) { return *this = *this + o; }
    LaurentBivar& operator-=(const LaurentBivar& o) { return *this = *this - o; }
    LaurentBivar& operator*=(const LaurentBivar& o) { return *this = *this * o; }

    LaurentBivar scaled(const BigRational& c) const {
        if (sgn(c) == 0) return constant(0, vars_);
        LaurentBivar p = *this;
        for (auto& t : p.terms_) t.c *= c.get_num();
        p.den_ *= c.get_den();
        p.normalize_den();
        return p;
    }

    LaurentBivar pow(unsigned e) const {
        LaurentBivar out = constant(1, vars_), base = *this;
        while (e) {
            if (e & 1) out *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return out;
    }

    // (first, second) -> (first^k, second^k)
    LaurentBivar substitute_power(int k) const {
        if (k < 1) throw std::invalid_argument("substitute_power needs k >= 1");
        LaurentBivar p = *this;
        for (auto& t : p.terms_) {
            t.x *= k;
            t.y *= k;
        }
        return p;
    }

    LaurentBivar shifted(int dx, int dy) const {
        LaurentBivar p = *this;
        for (auto& t : p.terms_) {
            t.x += dx;
            t.y += dy;
        }
        return p;
    }

    LaurentBivar map_exponents(const ExponentMap& m, VarPair target) const {
        LaurentBivar p;
        p.vars_ = is_zero() ? VarPair::none : target;
        p.den_ = den_;
        p.terms_.reserve(terms_.size());
        for (auto& t : terms_) {
            auto [nx, ny] = m.apply(t.x, t.y);
            p.terms_.push_back({nx, ny, t.c});
        }
        p.sort_and_merge();
        p.normalize_den();
        if (p.is_zero()) p.vars_ = target;
        return p;
    }

    // evaluation at values of the internal (square-root) variables
    BigRational eval(const BigRational& X, const BigRational& Y) const {
        BigRational s = 0;
        for (auto& t : terms_) s += BigRational(t.c) * rational_pow(X, t.x) * rational_pow(Y, t.y);
        return s / BigRational(den_);
    }

    // content as (gcd of integer numerators)/den, sign of the lex-leading term
    BigRational content() const {
        if (terms_.empty()) return 0;
        BigInt g = 0;
        for (auto& t : terms_) g = gcd(g, t.c);
        if (sgn(terms_.back().c) < 0) g = -g;
        BigRational r(g, den_);
        r.canonicalize();
        return r;
    }

    friend bool operator==(const LaurentBivar& a, const LaurentBivar& b) {
        if (a.terms_.size() != b.terms_.size() || a.den_ != b.den_) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].x != b.terms_[i].x || a.terms_[i].y != b.terms_[i].y || a.terms_[i].c != b.terms_[i].c)
                return false;
        return a.is_zero() || a.vars_ == b.vars_ || a.vars_ == VarPair::none || b.vars_ == VarPair::none;
    }
    friend bool operator!=(const LaurentBivar& a, const LaurentBivar& b) { return !(a == b); }

    // total order used for canonical factor bookkeeping
    friend bool operator<(const LaurentBivar& a, const LaurentBivar& b) {
        if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
        for (size_t i = 0; i < a.terms_.size(); ++i) {
            auto& s = a.terms_[i];
            auto& t = b.terms_[i];
            if (s.x != t.x) return s.x < t.x;
            if (s.y != t.y) return s.y < t.y;
            if (s.c != t.c) return s.c < t.c;
        }
        return a.den_ < b.den_;
    }

    std::string str() const;
    static LaurentBivar parse(const std::string& text, VarPair v);

    // divide exactly by Φ(first^(a/2) second^(b/2)) where phi holds the integer
    // coefficients of a monic polynomial with phi[0] = ±1; (a, b) primitive.
    std::optional<LaurentBivar> divide_along(int a, int b, const std::vector<BigInt>& phi) const;

private:
    template <class F>
    int fold(F f, int init) const {
        int v = init;
        for (auto& t : terms_) v = f(v, t);
        return terms_.empty() ? 0 : v;
    }

    void sort_and_merge() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& s, const Term& t) { return s.x != t.x ? s.x < t.x : s.y < t.y; });
        size_t w = 0;
        for (size_t i = 0; i < terms_.size();) {
            size_t j = i;
            BigInt c = terms_[i].c;
            while (++j < terms_.size() && terms_[j].x == terms_[i].x && terms_[j].y == terms_[i].y) c += terms_[j].c;
            if (sgn(c) != 0) {
                terms_[w] = {terms_[i].x, terms_[i].y, c};
                ++w;
            }
            i = j;
        }
        terms_.resize(w);
    }

    void normalize_den() {
        if (terms_.empty()) {
            den_ = 1;
            return;
        }
        if (den_ == 1) return;
        BigInt g = den_;
        for (auto& t : terms_) {
            if (g == 1) break;
            g = gcd(g, t.c);
        }
        if (g != 1) {
            for (auto& t : terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    static LaurentBivar add(const LaurentBivar& a, const LaurentBivar& b, bool negate) {
        LaurentBivar out;
        out.vars_ = join_vars(a.vars_, b.vars_);
        if (b.is_zero()) {
            out.terms_ = a.terms_;
            out.den_ = a.den_;
            return out;
        }
        BigInt d = a.den_ == b.den_ ? a.den_ : BigInt(lcm(a.den_, b.den_));
        BigInt fa = d / a.den_, fb = d / b.den_;
        if (negate) fb = -fb;
        out.terms_.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            bool takeA, takeB;
            if (i == a.size()) takeA = false, takeB = true;
            else if (j == b.size()) takeA = true, takeB = false;
            else {
                auto ka = std::make_pair(a.terms_[i].x, a.terms_[i].y);
                auto kb = std::make_pair(b.terms_[j].x, b.terms_[j].y);
                takeA = ka <= kb;
                takeB = kb <= ka;
            }
            if (takeA && takeB) {
                BigInt c = a.terms_[i].c * fa + b.terms_[j].c * fb;
                if (sgn(c) != 0) out.terms_.push_back({a.terms_[i].x, a.terms_[i].y, c});
                ++i, ++j;
            } else if (takeA) {
                out.terms_.push_back({a.terms_[i].x, a.terms_[i].y, a.terms_[i].c * fa});
                ++i;
            } else {
                out.terms_.push_back({b.terms_[j].x, b.terms_[j].y, b.terms_[j].c * fb});
                ++j;
            }
        }
        out.den_ = d;
        out.normalize_den();
        return out;
    }

    // product of integer coefficient arrays; dense accumulation on the
    // smallest sublattice containing both supports when that box is small
    static void mul_terms(const LaurentBivar& a, const LaurentBivar& b, std::vector<Term>& out) {
        int ax0 = a.min_x(), ay0 = a.min_y(), bx0 = b.min_x(), by0 = b.min_y();
        long gx = 0, gy = 0;
        for (auto& t : a.terms_) gx = std::gcd(gx, long(t.x - ax0)), gy = std::gcd(gy, long(t.y - ay0));
        for (auto& t : b.terms_) gx = std::gcd(gx, long(t.x - bx0)), gy = std::gcd(gy, long(t.y - by0));
        if (gx == 0) gx = 1;
        if (gy == 0) gy = 1;
        long W = (a.max_x() - ax0) / gx + (b.max_x() - bx0) / gx + 1;
        long H = (a.max_y() - ay0) / gy + (b.max_y() - by0) / gy + 1;
        double pairs = double(a.size()) * double(b.size());
        if (double(W) * double(H) <= 4.0 * pairs + 4096 && double(W) * double(H) < 2.0e7) {
            std::vector<mpz_class> acc(static_cast<size_t>(W * H));
            std::vector<std::pair<long, const BigInt*>> bi;
            bi.reserve(b.size());
            for (auto& t : b.terms_) bi.emplace_back(((t.x - bx0) / gx) * H + (t.y - by0) / gy, &t.c);
            for (auto& s : a.terms_) {
                long base = ((s.x - ax0) / gx) * H + (s.y - ay0) / gy;
                for (auto& [off, c] : bi) mpz_addmul(acc[base + off].get_mpz_t(), s.c.get_mpz_t(), c->get_mpz_t());
            }
            for (long i = 0; i < W; ++i)
                for (long j = 0; j < H; ++j) {
                    auto& c = acc[i * H + j];
                    if (sgn(c) != 0)
                        out.push_back({static_cast<int>(ax0 + bx0 + i * gx), static_cast<int>(ay0 + by0 + j * gy), std::move(c)});
                }
            return;
        }
        std::unordered_map<std::int64_t, mpz_class> acc;
        acc.reserve(static_cast<size_t>(std::min(pairs, 4.0e6)));
        for (auto& s : a.terms_)
            for (auto& t : b.terms_) {
                std::int64_t key = (std::int64_t(s.x + t.x) << 32) + std::int64_t(std::uint32_t(s.y + t.y));
                mpz_addmul(acc[key].get_mpz_t(), s.c.get_mpz_t(), t.c.get_mpz_t());
            }
        out.reserve(acc.size());
        for (auto& [k, c] : acc)
            if (sgn(c) != 0) out.push_back({static_cast<int>(k >> 32), static_cast<int>(std::int32_t(k & 0xffffffff)), c});
        std::sort(out.begin(), out.end(), [](const Term& s, const Term& t) { return s.x != t.x ? s.x < t.x : s.y < t.y; });
    }

    VarPair vars_ = VarPair::none;
    std::vector<Term> terms_;  // sorted by (x, y), nonzero
    BigInt den_ = 1;
};

namespace detail {

inline std::string exponent_text(int e2) {
    if (e2 == 2) return "";
    if (e2 % 2 == 0) {
        int e = e2 / 2;
        return e < 0 ? "^(" + std::to_string(e) + ")" : "^" + std::to_string(e);
    }
    return "^(" + std::to_string(e2) + "/2)";
}

inline int parse_exponent2(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw std::invalid_argument("bad exponent " + s);
        t = t.substr(1, t.size() - 2);
    }
    auto slash = t.find('/');
    if (slash == std::string::npos) return 2 * std::stoi(t);
    int num = std::stoi(t.substr(0, slash)), den = std::stoi(t.substr(slash + 1));
    if (den == 1) return 2 * num;
    if (den != 2) throw std::invalid_argument("only half-integer exponents supported: " + s);
    return num;
}

}  // namespace detail

inline std::string LaurentBivar::str() const {
    if (terms_.empty()) return "0";
    auto [nx, ny] = var_names(vars_);
    std::string out;
    bool first = true;
    for (auto& t : terms_) {
        BigRational c = coeff_of(t);
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        std::string mono;
        if (t.x != 0) mono += std::string(nx) + detail::exponent_text(t.x);
        if (t.y != 0) mono += (mono.empty() ? "" : "*") + std::string(ny) + detail::exponent_text(t.y);
        std::string body;
        if (mono.empty()) body = c.get_str();
        else if (c == 1) body = mono;
        else body = c.get_str() + "*" + mono;
        if (first) out += (neg ? "-" : "") + body;
        else out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

inline LaurentBivar LaurentBivar::parse(const std::string& text, VarPair v) {
    auto [nx, ny] = var_names(v);
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    std::vector<std::tuple<int, int, BigRational>> ts;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        size_t j = i;
        int depth = 0;
        while (j < s.size()) {
            if (s[j] == '(') ++depth;
            else if (s[j] == ')') --depth;
            else if (depth == 0 && (s[j] == '+' || s[j] == '-') && j > i && s[j - 1] != '^') break;
            ++j;
        }
        std::string term = s.substr(i, j - i);
        i = j;
        BigRational c = sign;
        int x = 0, y = 0;
        size_t p = 0;
        while (p <= term.size()) {
            size_t q = p;
            depth = 0;
            while (q < term.size() && !(depth == 0 && term[q] == '*')) {
                if (term[q] == '(') ++depth;
                if (term[q] == ')') --depth;
                ++q;
            }
            std::string f = term.substr(p, q - p);
            if (f.empty()) throw std::invalid_argument("bad term in '" + text + "'");
            auto caret = f.find('^');
            std::string base = f.substr(0, caret);
            int e2 = caret == std::string::npos ? 2 : detail::parse_exponent2(f.substr(caret + 1));
            if (base == nx) x += e2;
            else if (base == ny) y += e2;
            else c *= parse_rational(f);
            p = q + 1;
        }
        ts.emplace_back(x, y, c);
    }
    return from_terms(v, std::move(ts));
}

inline std::optional<LaurentBivar> LaurentBivar::divide_along(int a, int b, const std::vector<BigInt>& phi) const {
    if (terms_.empty()) return *this;
    int e = static_cast<int>(phi.size()) - 1;
    // line invariant x*b - y*a; position along the line by x (a > 0) or y
    struct Ref {
        long inv;
        int res;
        int pos;
        const Term* t;
    };
    // (a, b) may be a multiple of a primitive vector, so cosets split by residue too
    int step = a != 0 ? a : b;
    std::vector<Ref> refs;
    refs.reserve(terms_.size());
    for (auto& t : terms_) {
        int pos = a != 0 ? t.x : t.y;
        refs.push_back({long(t.x) * b - long(t.y) * a, ((pos % step) + step) % step, pos, &t});
    }
    std::sort(refs.begin(), refs.end(), [](const Ref& r, const Ref& s) {
        return r.inv != s.inv ? r.inv < s.inv : r.res != s.res ? r.res < s.res : r.pos < s.pos;
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    std::vector<BigInt> poly, quo;
    for (size_t i = 0; i < refs.size();) {
        size_t j = i;
        while (j < refs.size() && refs[j].inv == refs[i].inv && refs[j].res == refs[i].res) ++j;
        const Term* base = refs[i].t;
        int deg = (refs[j - 1].pos - refs[i].pos) / step;
        if (deg < e) return std::nullopt;
        poly.assign(deg + 1, 0);
        for (size_t k = i; k < j; ++k) poly[(refs[k].pos - refs[i].pos) / step] = refs[k].t->c;
        quo.assign(deg - e + 1, 0);
        for (int k = deg; k >= e; --k) {
            if (sgn(poly[k]) == 0) continue;
            BigInt qk = poly[k];
            if (phi[e] != 1) {
                if (!mpz_divisible_p(qk.get_mpz_t(), phi[e].get_mpz_t())) return std::nullopt;
                qk /= phi[e];
            }
            quo[k - e] = qk;
            for (int l = 0; l <= e; ++l)
                if (sgn(phi[l]) != 0) mpz_submul(poly[k - e + l].get_mpz_t(), qk.get_mpz_t(), phi[l].get_mpz_t());
        }
        for (int k = 0; k < e; ++k)
            if (sgn(poly[k]) != 0) return std::nullopt;
        for (int k = 0; k <= deg - e; ++k)
            if (sgn(quo[k]) != 0) out.push_back({base->x + k * a, base->y + k * b, quo[k]});
        i = j;
    }
    return from_integer_terms(vars_, std::move(out), den_);
}

// Exact division in the Laurent ring. Returns nullopt when den does not divide num.
inline std::optional<LaurentBivar> try_exact_divide(const LaurentBivar& num, const LaurentBivar& den) {
    if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
    VarPair v = join_vars(num.vars(), den.vars());
    if (num.is_zero()) return LaurentBivar::constant(0, v);
    if (den.is_monomial()) {
        auto& t = den.terms()[0];
        BigRational c = den.coeff_of(t);
        return num.shifted(-t.x, -t.y).scaled(1 / c).with_vars(v);
    }
    // quotient exponents are confined to a box fixed by the extremes
    int qx0 = num.min_x() - den.min_x(), qx1 = num.max_x() - den.max_x();
    int qy0 = num.min_y() - den.min_y(), qy1 = num.max_y() - den.max_y();
    if (qx0 > qx1 || qy0 > qy1) return std::nullopt;
    std::map<std::pair<int, int>, BigRational> rem;
    for (auto& t : num.terms()) rem[{t.x, t.y}] = num.coeff_of(t);
    const auto& lt = den.terms().back();
    BigRational lc = den.coeff_of(lt);
    std::vector<std::tuple<int, int, BigRational>> q;
    std::vector<std::pair<std::pair<int, int>, BigRational>> dterms;
    for (auto& t : den.terms()) dterms.push_back({{t.x, t.y}, den.coeff_of(t)});
    while (!rem.empty()) {
        auto it = std::prev(rem.end());
        int ex = it->first.first - lt.x, ey = it->first.second - lt.y;
        if (ex < qx0 || ex > qx1 || ey < qy0 || ey > qy1) return std::nullopt;
        BigRational c = it->second / lc;
        q.emplace_back(ex, ey, c);
        for (auto& [k, dc] : dterms) {
            auto key = std::make_pair(k.first + ex, k.second + ey);
            auto f = rem.find(key);
            if (f == rem.end()) rem.emplace(key, -c * dc);
            else {
                f->second -= c * dc;
                if (sgn(f->second) == 0) rem.erase(f);
            }
        }
    }
    return LaurentBivar::from_terms(v, std::move(q));
}

inline LaurentBivar exact_divide(const LaurentBivar& num, const LaurentBivar& den) {
    auto q = try_exact_divide(num, den);
    if (!q) throw InexactDivision("inexact division: (" + num.str() + ") / (" + den.str() + ")");
    return *q;
}

}  // namespace wildcurve

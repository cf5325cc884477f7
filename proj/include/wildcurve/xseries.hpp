#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace wildcurve {

// Truncated series in grouped variables x_{a,i}. A key lists the exponents of
// all variables, group after group. Only balanced keys are stored: every group
// carries the same total degree r <= rmax.
class XSeries {
public:
    using Key = std::vector<int>;

    XSeries() = default;
    XSeries(std::vector<int> shape, int rmax) : shape_(std::move(shape)), rmax_(rmax) {
        for (int l : shape_)
            if (l < 1) throw std::invalid_argument("XSeries: each group needs at least one variable");
    }

    static XSeries one(std::vector<int> shape, int rmax) {
        XSeries s(std::move(shape), rmax);
        s.add_term(Key(s.nvars(), 0), RationalBivar(1));
        return s;
    }

    const std::vector<int>& shape() const { return shape_; }
    int groups() const { return static_cast<int>(shape_.size()); }
    int nvars() const { return std::accumulate(shape_.begin(), shape_.end(), 0); }
    int rmax() const { return rmax_; }
    const std::map<Key, RationalBivar>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // common group degree of a key, or -1 if unbalanced
    int degree(const Key& k) const {
        if (static_cast<int>(k.size()) != nvars()) throw std::invalid_argument("XSeries key has wrong length");
        int pos = 0, r = -1;
        for (int l : shape_) {
            int s = 0;
            for (int i = 0; i < l; ++i) {
                if (k[pos + i] < 0) return -1;
                s += k[pos + i];
            }
            pos += l;
            if (r < 0) r = s;
            else if (r != s) return -1;
        }
        return r;
    }

    RationalBivar coefficient(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? RationalBivar() : it->second;
    }
    RationalBivar constant_term() const { return coefficient(Key(nvars(), 0)); }

    // unbalanced or over-degree keys are dropped: they can never reach an extraction target
    void add_term(const Key& k, const RationalBivar& c) {
        int r = degree(k);
        if (r < 0 || r > rmax_ || c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_.emplace(k, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    XSeries operator-() const {
        XSeries s = *this;
        for (auto& [k, c] : s.terms_) c = -c;
        return s;
    }
    friend XSeries operator+(const XSeries& a, const XSeries& b) {
        check_shape(a, b);
        XSeries s = a;
        s.rmax_ = std::min(a.rmax_, b.rmax_);
        for (auto& [k, c] : b.terms_) s.add_term(k, c);
        s.drop_above();
        return s;
    }
    friend XSeries operator-(const XSeries& a, const XSeries& b) { return a + (-b); }

    friend XSeries operator*(const XSeries& a, const XSeries& b) {
        check_shape(a, b);
        XSeries s(a.shape_, std::min(a.rmax_, b.rmax_));
        std::map<Key, std::vector<RationalBivar>> acc;
        Key k(a.nvars());
        for (auto& [ka, ca] : a.terms_) {
            int ra = a.degree(ka);
            for (auto& [kb, cb] : b.terms_) {
                if (ra + b.degree(kb) > s.rmax_) continue;
                for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
                acc[k].push_back(ca * cb);
            }
        }
        for (auto& [key, v] : acc) {
            RationalBivar c = RationalBivar::sum(v);
            if (!c.is_zero()) s.terms_.emplace(key, std::move(c));
        }
        return s;
    }

    XSeries scaled(const RationalBivar& c) const {
        XSeries s(shape_, rmax_);
        for (auto& [k, v] : terms_) s.add_term(k, v * c);
        return s;
    }

    template <class F>
    XSeries map_coefficients(F f) const {
        XSeries s(shape_, rmax_);
        for (auto& [k, v] : terms_) s.add_term(k, f(v));
        return s;
    }

    // keep only keys bounded componentwise by `bound`; enough to determine
    // every coefficient at or below `bound` in products, log and exp
    XSeries restrict_below(const Key& bound) const {
        XSeries s(shape_, rmax_);
        for (auto& [k, v] : terms_) {
            bool ok = true;
            for (size_t i = 0; i < k.size() && ok; ++i) ok = k[i] <= bound[i];
            if (ok) s.terms_.emplace(k, v);
        }
        return s;
    }

    XSeries truncated(int r) const {
        XSeries s = *this;
        s.rmax_ = std::min(r, rmax_);
        s.drop_above();
        return s;
    }

    // ln(1 + S) = Σ (-1)^{j+1} S^j / j
    XSeries log() const {
        RationalBivar c0 = constant_term();
        if (!(c0 == RationalBivar(1))) throw std::domain_error("log of a series whose constant term is " + c0.str());
        XSeries S = *this;
        S.terms_.erase(Key(nvars(), 0));
        XSeries out(shape_, rmax_), P = S;
        for (int j = 1; j <= rmax_ && !P.is_zero(); ++j) {
            out = out + P.scaled(RationalBivar(BigRational(j % 2 ? 1 : -1, j)));
            if (j < rmax_) P = P * S;
        }
        return out;
    }

    XSeries exp() const {
        if (!constant_term().is_zero()) throw std::domain_error("exp of a series with nonzero constant term");
        XSeries out = one(shape_, rmax_), P = one(shape_, rmax_);
        BigRational fact = 1;
        for (int j = 1; j <= rmax_; ++j) {
            P = P * *this;
            if (P.is_zero()) break;
            fact *= j;
            out = out + P.scaled(RationalBivar(1 / fact));
        }
        return out;
    }

    // tensor product of one-group blocks, each homogeneous per degree; only
    // combinations with equal degree in every block survive
    static XSeries tensor(const std::vector<XSeries>& blocks, int rmax) {
        std::vector<int> shape;
        for (auto& b : blocks) {
            if (b.groups() != 1) throw std::invalid_argument("tensor expects one-group blocks");
            shape.push_back(b.shape_[0]);
        }
        XSeries s(shape, rmax);
        std::vector<std::map<int, std::vector<const std::pair<const Key, RationalBivar>*>>> byDeg(blocks.size());
        for (size_t a = 0; a < blocks.size(); ++a)
            for (auto& kv : blocks[a].terms_) byDeg[a][blocks[a].degree(kv.first)].push_back(&kv);
        if (blocks.empty()) return s;
        for (auto& [r, first] : byDeg[0]) {
            if (r > rmax) continue;
            std::vector<const std::vector<const std::pair<const Key, RationalBivar>*>*> lists;
            bool ok = true;
            for (auto& m : byDeg) {
                auto it = m.find(r);
                if (it == m.end()) {
                    ok = false;
                    break;
                }
                lists.push_back(&it->second);
            }
            if (!ok) continue;
            std::vector<size_t> idx(lists.size(), 0);
            while (true) {
                Key k;
                RationalBivar c(1);
                for (size_t a = 0; a < lists.size(); ++a) {
                    auto* kv = (*lists[a])[idx[a]];
                    k.insert(k.end(), kv->first.begin(), kv->first.end());
                    c = c * kv->second;
                }
                s.add_term(k, c);
                size_t a = 0;
                while (a < lists.size() && ++idx[a] == lists[a]->size()) idx[a++] = 0;
                if (a == lists.size()) break;
            }
        }
        return s;
    }

    friend bool operator==(const XSeries& a, const XSeries& b) {
        if (a.shape_ != b.shape_ || a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (auto& [k, c] : a.terms_) {
            if (k != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }

    std::string key_str(const Key& k) const {
        std::string s = "[";
        int pos = 0;
        for (size_t a = 0; a < shape_.size(); ++a) {
            if (a) s += ",";
            s += "[";
            for (int i = 0; i < shape_[a]; ++i) s += (i ? "," : "") + std::to_string(k[pos + i]);
            pos += shape_[a];
            s += "]";
        }
        return s + "]";
    }

private:
    static void check_shape(const XSeries& a, const XSeries& b) {
        if (a.shape_ != b.shape_) throw std::invalid_argument("XSeries group shapes differ");
    }
    void drop_above() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = degree(it->first) > rmax_ ? terms_.erase(it) : std::next(it);
    }

    std::vector<int> shape_;
    int rmax_ = 0;
    std::map<Key, RationalBivar> terms_;
};

inline bool is_zero(const XSeries& s) { return s.is_zero(); }

}  // namespace wildcurve

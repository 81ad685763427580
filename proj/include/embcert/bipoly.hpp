#pragma once

#include <map>
#include <string>
#include <utility>

#include "embcert/unipoly.hpp"

namespace embcert {

/// Sparse bivariate polynomial over Q(i) in an ordered variable pair (s, t).
class BiPoly {
public:
    using Key = std::pair<int, int>; // (deg_s, deg_t)

    BiPoly() : sv_("s"), tv_("t") {}
    BiPoly(std::string sv, std::string tv) : sv_(std::move(sv)), tv_(std::move(tv)) {}

    static BiPoly constant(const G& c, const std::string& sv = "s", const std::string& tv = "t") {
        BiPoly p(sv, tv);
        p.set_coeff(0, 0, c);
        return p;
    }
    /// Lift a univariate polynomial into the first/second slot.
    static BiPoly from_s(const UniPoly& p, const std::string& sv = "s", const std::string& tv = "t") {
        BiPoly r(sv, tv);
        for (const auto& [d, c] : p.terms()) r.terms_[{d, 0}] = c;
        return r;
    }
    static BiPoly from_t(const UniPoly& p, const std::string& sv = "s", const std::string& tv = "t") {
        BiPoly r(sv, tv);
        for (const auto& [d, c] : p.terms()) r.terms_[{0, d}] = c;
        return r;
    }

    const std::string& svar() const { return sv_; }
    const std::string& tvar() const { return tv_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_nonzero_constant() const { return terms_.size() == 1 && terms_.begin()->first == Key{0, 0}; }
    bool is_constant() const { return terms_.empty() || is_nonzero_constant(); }

    int deg_s() const {
        int d = kZeroPolyDegree;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int deg_t() const {
        int d = kZeroPolyDegree;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    G coeff(int ds, int dt) const {
        auto it = terms_.find({ds, dt});
        return it == terms_.end() ? G(0) : it->second;
    }
    void set_coeff(int ds, int dt, const G& c) {
        if (ds < 0 || dt < 0) throw DegenerateInputError("negative degree");
        if (c.is_zero())
            terms_.erase({ds, dt});
        else
            terms_[{ds, dt}] = c;
    }

    const std::map<Key, G>& terms() const { return terms_; }

    BiPoly operator-() const {
        BiPoly r(sv_, tv_);
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) {
            auto it = terms_.find(k);
            if (it == terms_.end()) {
                terms_[k] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) { return *this += -o; }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r(a.sv_, a.tv_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                G prod = ca * cb;
                if (prod.is_zero()) continue;
                Key k{ka.first + kb.first, ka.second + kb.second};
                auto it = r.terms_.find(k);
                if (it == r.terms_.end()) {
                    r.terms_[k] = prod;
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }
    BiPoly& operator*=(const G& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend BiPoly operator*(BiPoly p, const G& c) { return p *= c; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    /// Coefficient of t^k as a polynomial in s.
    UniPoly coeff_of_t(int k) const {
        UniPoly r(sv_);
        for (const auto& [key, c] : terms_)
            if (key.second == k) r.set_coeff(key.first, c);
        return r;
    }
    UniPoly coeff_of_s(int k) const {
        UniPoly r(tv_);
        for (const auto& [key, c] : terms_)
            if (key.first == k) r.set_coeff(key.second, c);
        return r;
    }

    BiPoly swap_vars() const {
        BiPoly r(tv_, sv_);
        for (const auto& [k, c] : terms_) r.terms_[{k.second, k.first}] = c;
        return r;
    }

    /// Restriction to the diagonal s = t, as a polynomial in the s variable.
    UniPoly diagonal() const {
        UniPoly r(sv_);
        for (const auto& [k, c] : terms_) {
            int d = k.first + k.second;
            r.set_coeff(d, r.coeff(d) + c);
        }
        return r;
    }

    G eval(const G& s, const G& t) const {
        G acc(0);
        for (const auto& [k, c] : terms_) acc += c * s.pow(k.first) * t.pow(k.second);
        return acc;
    }

    /// Substitute exact values/polynomials: p(s := a(u), t := b(u)).
    UniPoly eval_poly(const UniPoly& a, const UniPoly& b) const {
        UniPoly acc(a.var());
        for (const auto& [k, c] : terms_)
            acc += UniPoly::constant(c, a.var()) * a.pow(k.first) * b.pow(k.second);
        return acc;
    }

    BiPoly derivative_s() const {
        BiPoly r(sv_, tv_);
        for (const auto& [k, c] : terms_)
            if (k.first > 0) r.terms_[{k.first - 1, k.second}] = c * G(k.first);
        return r;
    }
    BiPoly derivative_t() const {
        BiPoly r(sv_, tv_);
        for (const auto& [k, c] : terms_)
            if (k.second > 0) r.terms_[{k.first, k.second - 1}] = c * G(k.second);
        return r;
    }

    bool divisible_by_diag() const { return diagonal().is_zero(); }

    /// Exact division by (s - t); the caller must know the diagonal divides.
    BiPoly div_diag() const {
        // Long division in t with leading coefficient -1 on the divisor (s - t).
        BiPoly q(sv_, tv_), r = *this;
        while (!r.is_zero()) {
            int dt = r.deg_t();
            if (dt > 0) {
                UniPoly lead = r.coeff_of_t(dt); // in s
                // term = -lead * t^{dt-1}; r -= term * (s - t)
                for (const auto& [ds, c] : lead.terms()) {
                    q.set_coeff(ds, dt - 1, q.coeff(ds, dt - 1) - c);
                    // subtract (-c) * t^{dt-1} * s  and add (-c)*t^dt
                    r.set_coeff(ds + 1, dt - 1, r.coeff(ds + 1, dt - 1) + c);
                    r.set_coeff(ds, dt, G(0));
                }
            } else {
                // Remainder free of t must be zero for exact division.
                if (!r.is_zero()) throw DegenerateInputError("div_diag: (s-t) does not divide");
            }
        }
        return q;
    }

    std::string str() const;

private:
    std::string sv_;
    std::string tv_;
    std::map<Key, G> terms_;
};

/// q with q(s,t) * (s - t) = P(s) - P(t); removes the diagonal factor of a difference.
BiPoly divided_difference(const UniPoly& p, const std::string& sv = "s", const std::string& tv = "t");

/// Raw difference P(s) - Q(t) as a bivariate polynomial.
BiPoly cross_difference(const UniPoly& p, const UniPoly& q,
                        const std::string& sv = "s", const std::string& tv = "t");

} // namespace embcert

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "embcert/rational.hpp"

namespace embcert {

/// Degree assigned to the zero polynomial.
inline constexpr int kZeroPolyDegree = -1;

/// Sparse univariate polynomial over Q(i); no zero coefficients are stored.
class UniPoly {
public:
    UniPoly() : var_("t") {}
    explicit UniPoly(std::string var) : var_(std::move(var)) {}
    UniPoly(std::string var, const G& c) : var_(std::move(var)) { set_coeff(0, c); }

    static UniPoly constant(const G& c, const std::string& var = "t") { return {var, c}; }
    static UniPoly variable(const std::string& var = "t") {
        UniPoly p(var);
        p.set_coeff(1, G(1));
        return p;
    }
    static UniPoly monomial(int deg, const G& c, const std::string& var = "t") {
        UniPoly p(var);
        p.set_coeff(deg, c);
        return p;
    }

    const std::string& var() const { return var_; }
    void set_var(const std::string& v) { var_ = v; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || degree() == 0; }
    bool is_nonzero_constant() const { return degree() == 0; }

    int degree() const { return terms_.empty() ? kZeroPolyDegree : terms_.rbegin()->first; }

    G coeff(int deg) const {
        auto it = terms_.find(deg);
        return it == terms_.end() ? G(0) : it->second;
    }
    G leading_coeff() const { return terms_.empty() ? G(0) : terms_.rbegin()->second; }
    G constant_term() const { return coeff(0); }

    void set_coeff(int deg, const G& c) {
        if (deg < 0) throw DegenerateInputError("negative degree");
        if (c.is_zero())
            terms_.erase(deg);
        else
            terms_[deg] = c;
    }

    const std::map<int, G>& terms() const { return terms_; }

    UniPoly operator-() const {
        UniPoly r(var_);
        for (const auto& [d, c] : terms_) r.terms_[d] = -c;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o) {
        adopt_var(o);
        for (const auto& [d, c] : o.terms_) {
            auto it = terms_.find(d);
            if (it == terms_.end()) {
                terms_[d] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) { return *this += -o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.terms_.empty() ? b.var_ : a.var_);
        for (const auto& [da, ca] : a.terms_)
            for (const auto& [db, cb] : b.terms_) {
                G prod = ca * cb;
                if (prod.is_zero()) continue;
                auto it = r.terms_.find(da + db);
                if (it == r.terms_.end()) {
                    r.terms_[da + db] = prod;
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }

    UniPoly& operator*=(const G& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [d, v] : terms_) v *= c;
        return *this;
    }
    friend UniPoly operator*(UniPoly p, const G& c) { return p *= c; }
    friend UniPoly operator*(const G& c, UniPoly p) { return p *= c; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    G eval(const G& x) const {
        // Horner from the top stored degree down.
        G acc(0);
        int prev = -1;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (prev >= 0) acc = acc * x.pow(prev - it->first);
            acc += it->second;
            prev = it->first;
        }
        if (prev > 0) acc = acc * x.pow(prev);
        return acc;
    }

    UniPoly derivative() const {
        UniPoly r(var_);
        for (const auto& [d, c] : terms_)
            if (d > 0) r.terms_[d - 1] = c * G(d);
        return r;
    }

    /// P(Q): substitute another polynomial for the variable.
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc(q.var());
        int prev = -1;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (prev >= 0)
                for (int k = 0; k < prev - it->first; ++k) acc = acc * q;
            acc += UniPoly::constant(it->second, q.var());
            prev = it->first;
        }
        if (prev > 0)
            for (int k = 0; k < prev; ++k) acc = acc * q;
        return acc;
    }

    UniPoly pow(int e) const {
        UniPoly acc = UniPoly::constant(G(1), var_);
        for (int k = 0; k < e; ++k) acc = acc * *this;
        return acc;
    }

    /// Quotient and remainder over the field Q(i).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw DegenerateInputError("division by zero polynomial");
        UniPoly q(var_), r = *this;
        const int dd = d.degree();
        const G dl = d.leading_coeff();
        while (!r.is_zero() && r.degree() >= dd) {
            int k = r.degree() - dd;
            G c = r.leading_coeff() / dl;
            q.set_coeff(k, c);
            r -= d * UniPoly::monomial(k, c, var_);
        }
        return {q, r};
    }

    /// Division that must be exact; throws if a remainder survives.
    UniPoly exact_div(const UniPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw DegenerateInputError("inexact polynomial division");
        return q;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * leading_coeff().inverse();
    }

    /// Smallest positive integer D with D*p having Gaussian-integer coefficients.
    Rat denominator_lcm() const {
        mpz_class l(1);
        for (const auto& [d, c] : terms_) {
            mpz_class g;
            mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), c.re().get_den().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), g.get_mpz_t(), c.im().get_den().get_mpz_t());
        }
        return Rat(l);
    }

    std::string str() const;

private:
    void adopt_var(const UniPoly& o) {
        if (terms_.empty() && !o.terms_.empty()) var_ = o.var_;
    }

    std::string var_;
    std::map<int, G> terms_;
};

} // namespace embcert

#pragma once

#include <map>
#include <string>
#include <vector>

#include "embcert/unipoly.hpp"

namespace embcert {

/// Sparse polynomial in m named variables; used for shear profiles and
/// generic parsing. Exponent vectors are kept at a fixed length.
class MultiPoly {
public:
    using Key = std::vector<int>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(const G& c, std::vector<std::string> vars) {
        MultiPoly p(std::move(vars));
        p.set_coeff(Key(p.vars_.size(), 0), c);
        return p;
    }
    static MultiPoly variable(std::size_t idx, std::vector<std::string> vars) {
        MultiPoly p(std::move(vars));
        Key k(p.vars_.size(), 0);
        k.at(idx) = 1;
        p.set_coeff(k, G(1));
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::map<Key, G>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        for (const auto& [k, c] : terms_)
            for (int e : k)
                if (e != 0) return false;
        return true;
    }
    G constant_term() const {
        auto it = terms_.find(Key(vars_.size(), 0));
        return it == terms_.end() ? G(0) : it->second;
    }

    int total_degree() const {
        int d = kZeroPolyDegree;
        for (const auto& [k, c] : terms_) {
            int s = 0;
            for (int e : k) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    /// True when the variable at idx appears in no term.
    bool independent_of(std::size_t idx) const {
        for (const auto& [k, c] : terms_)
            if (k.at(idx) != 0) return false;
        return true;
    }

    void set_coeff(const Key& k, const G& c) {
        if (c.is_zero())
            terms_.erase(k);
        else
            terms_[k] = c;
    }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
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
    MultiPoly& operator-=(const MultiPoly& o) { return *this += -o; }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.vars_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                G prod = ca * cb;
                if (prod.is_zero()) continue;
                Key k = ka;
                for (std::size_t j = 0; j < k.size(); ++j) k[j] += kb[j];
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
    MultiPoly& operator*=(const G& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator*(MultiPoly p, const G& c) { return p *= c; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    G eval(const std::vector<G>& point) const {
        if (point.size() != vars_.size()) throw DimensionError("MultiPoly::eval arity");
        G acc(0);
        for (const auto& [k, c] : terms_) {
            G term = c;
            for (std::size_t j = 0; j < k.size(); ++j)
                if (k[j] > 0) term *= point[j].pow(k[j]);
            acc += term;
        }
        return acc;
    }

    /// Substitute a univariate polynomial for every variable.
    UniPoly compose(const std::vector<UniPoly>& subs) const {
        if (subs.size() != vars_.size()) throw DimensionError("MultiPoly::compose arity");
        std::string var = subs.empty() ? "t" : subs.front().var();
        UniPoly acc(var);
        for (const auto& [k, c] : terms_) {
            UniPoly term = UniPoly::constant(c, var);
            for (std::size_t j = 0; j < k.size(); ++j)
                if (k[j] > 0) term = term * subs[j].pow(k[j]);
            acc += term;
        }
        return acc;
    }

    MultiPoly partial(std::size_t idx) const {
        MultiPoly r(vars_);
        for (const auto& [k, c] : terms_) {
            if (k.at(idx) == 0) continue;
            Key nk = k;
            nk[idx] -= 1;
            auto it = r.terms_.find(nk);
            G add = c * G(k[idx]);
            if (it == r.terms_.end())
                r.terms_[nk] = add;
            else {
                it->second += add;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }

    std::string str() const;

private:
    std::vector<std::string> vars_;
    std::map<Key, G> terms_;
};

} // namespace embcert

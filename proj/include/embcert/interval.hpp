#pragma once

#include <optional>
#include <string>

#include "embcert/bipoly.hpp"
#include "embcert/rational.hpp"
#include "embcert/unipoly.hpp"

namespace embcert {

/// Closed rational interval [lo, hi].
struct RatInterval {
    Rat lo;
    Rat hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw DegenerateInputError("interval endpoints out of order");
    }
    static RatInterval point(const Rat& v) { return {v, v}; }

    Rat width() const { return canonical(hi - lo); }
    Rat mid() const { return canonical((lo + hi) / 2); }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool subset_of(const RatInterval& o) const { return o.lo <= lo && hi <= o.hi; }
    bool strict_subset_of(const RatInterval& o) const { return o.lo < lo && hi < o.hi; }
    bool intersects(const RatInterval& o) const { return !(hi < o.lo || o.hi < lo); }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
        Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
        return {canonical(lo), canonical(hi)};
    }

    RatInterval square() const {
        Rat a = lo * lo, b = hi * hi;
        if (contains_zero()) return {Rat(0), std::max(a, b)};
        return {std::min(a, b), std::max(a, b)};
    }
};

RatInterval intersect(const RatInterval& a, const RatInterval& b);
RatInterval hull(const RatInterval& a, const RatInterval& b);
/// Outward rounding to dyadic endpoints with denominator 2^bits.
RatInterval round_out(const RatInterval& a, unsigned bits);

/// Axis-aligned rectangle in the complex plane with exact rational corners.
struct CBox {
    RatInterval re;
    RatInterval im;

    CBox() = default;
    CBox(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}
    static CBox point(const G& z) { return {RatInterval::point(z.re()), RatInterval::point(z.im())}; }
    static CBox centered(const G& z, const Rat& radius) {
        return {RatInterval(z.re() - radius, z.re() + radius),
                RatInterval(z.im() - radius, z.im() + radius)};
    }

    G center() const { return {re.mid(), im.mid()}; }
    Rat width() const { return std::max(re.width(), im.width()); }
    bool is_point() const { return re.lo == re.hi && im.lo == im.hi; }
    bool contains(const G& z) const { return re.contains(z.re()) && im.contains(z.im()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool subset_of(const CBox& o) const { return re.subset_of(o.re) && im.subset_of(o.im); }
    bool strict_subset_of(const CBox& o) const {
        return re.strict_subset_of(o.re) && im.strict_subset_of(o.im);
    }
    bool intersects(const CBox& o) const { return re.intersects(o.re) && im.intersects(o.im); }

    friend CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
    friend CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }
    friend CBox operator-(const CBox& a) { return {-a.re, -a.im}; }
    friend CBox operator*(const CBox& a, const CBox& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    CBox conj() const { return {re, -im}; }
    /// Enclosure of |z|^2 over the box.
    RatInterval norm() const { return re.square() + im.square(); }
};

std::optional<CBox> intersect(const CBox& a, const CBox& b);
CBox round_out(const CBox& a, unsigned bits);

/// Enclosure of a/b; empty when 0 may lie in b.
std::optional<CBox> divide(const CBox& a, const CBox& b);

/// Interval Horner evaluation.
CBox eval_interval(const UniPoly& p, const CBox& x);
CBox eval_interval(const BiPoly& p, const CBox& s, const CBox& t);

} // namespace embcert

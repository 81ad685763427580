#include "embcert/interval.hpp"

namespace embcert {

RatInterval intersect(const RatInterval& a, const RatInterval& b) {
    Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw DegenerateInputError("empty interval intersection");
    return {lo, hi};
}

RatInterval hull(const RatInterval& a, const RatInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

namespace {
Rat scale_floor(const Rat& q, unsigned bits) {
    mpz_class two_b;
    mpz_ui_pow_ui(two_b.get_mpz_t(), 2, bits);
    mpz_class num = q.get_num() * two_b;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    Rat r(fl, two_b);
    r.canonicalize();
    return r;
}
Rat scale_ceil(const Rat& q, unsigned bits) {
    mpz_class two_b;
    mpz_ui_pow_ui(two_b.get_mpz_t(), 2, bits);
    mpz_class num = q.get_num() * two_b;
    mpz_class cl;
    mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    Rat r(cl, two_b);
    r.canonicalize();
    return r;
}
} // namespace

RatInterval round_out(const RatInterval& a, unsigned bits) {
    return {scale_floor(a.lo, bits), scale_ceil(a.hi, bits)};
}

CBox round_out(const CBox& a, unsigned bits) {
    return {round_out(a.re, bits), round_out(a.im, bits)};
}

std::optional<CBox> intersect(const CBox& a, const CBox& b) {
    if (!a.intersects(b)) return std::nullopt;
    return CBox(intersect(a.re, b.re), intersect(a.im, b.im));
}

std::optional<CBox> divide(const CBox& a, const CBox& b) {
    RatInterval n = b.norm();
    if (n.lo <= 0) return std::nullopt;
    CBox num = a * b.conj();
    RatInterval inv(canonical(Rat(1) / n.hi), canonical(Rat(1) / n.lo));
    return CBox(num.re * inv, num.im * inv);
}

CBox eval_interval(const UniPoly& p, const CBox& x) {
    CBox acc = CBox::point(G(0));
    int prev = -1;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (prev >= 0)
            for (int k = 0; k < prev - it->first; ++k) acc = acc * x;
        acc = acc + CBox::point(it->second);
        prev = it->first;
    }
    if (prev > 0)
        for (int k = 0; k < prev; ++k) acc = acc * x;
    return acc;
}

CBox eval_interval(const BiPoly& p, const CBox& s, const CBox& t) {
    // Horner in t with interval coefficients in s.
    CBox acc = CBox::point(G(0));
    int dt = p.deg_t();
    if (dt < 0) return acc;
    for (int k = dt; k >= 0; --k) {
        acc = acc * t + eval_interval(p.coeff_of_t(k), s);
    }
    return acc;
}

} // namespace embcert

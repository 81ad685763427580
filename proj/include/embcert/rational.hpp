#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "embcert/common.hpp"

namespace embcert {

using Rat = mpq_class;

/// Reduce to lowest terms with positive denominator.
inline Rat canonical(Rat q) {
    q.canonicalize();
    return q;
}

/// Element of Q(i), the coefficient field of every certificate.
///
/// Both parts are kept in lowest terms with positive denominator, so
/// equality is plain structural equality.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long re) : re_(re), im_(0) {}          // NOLINT(google-explicit-constructor)
    GaussianRational(const Rat& re) : re_(canonical(re)), im_(0) {}  // NOLINT
    GaussianRational(Rat re, Rat im) : re_(canonical(std::move(re))), im_(canonical(std::move(im))) {}
    GaussianRational(long re_num, long re_den, long im_num, long im_den)
        : re_(re_num, re_den), im_(im_num, im_den) {
        if (re_den == 0 || im_den == 0) throw DegenerateInputError("zero denominator");
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rat(0), Rat(1)}; }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2 as an exact rational.
    Rat norm() const { return canonical(re_ * re_ + im_ * im_); }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw DegenerateInputError("division by zero in Q(i)");
        Rat n = o.norm();
        Rat r = (re_ * o.re_ + im_ * o.im_) / n;
        Rat i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = canonical(std::move(r));
        im_ = canonical(std::move(i));
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    /// Lexicographic order on (re, im); used for deterministic containers only.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    GaussianRational inverse() const {
        GaussianRational one(1);
        return one / *this;
    }

    GaussianRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        GaussianRational acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    double re_d() const { return re_.get_d(); }
    double im_d() const { return im_.get_d(); }

    /// Canonical "a+bi" string with reduced fractions; see the text grammar.
    std::string str() const;

private:
    Rat re_;
    Rat im_;
};

using G = GaussianRational;

std::string rat_str(const Rat& q);

inline std::string GaussianRational::str() const {
    if (is_zero()) return "0";
    if (im_ == 0) return rat_str(re_);
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else {
        imag = rat_str(im_) + "i";
    }
    if (re_ == 0) return imag;
    if (imag[0] == '-') return rat_str(re_) + imag;
    return rat_str(re_) + "+" + imag;
}

inline std::string rat_str(const Rat& q) {
    return q.get_str();
}

} // namespace embcert

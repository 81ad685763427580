#include "embcert/elimination.hpp"

#include <algorithm>
#include <utility>

namespace embcert {

namespace {

// Fraction-free determinant (Bareiss). Works over any integral domain in
// which the Sylvester-style exact divisions are available.
template <class R, class IsZero, class ExactDiv>
R bareiss_det(std::vector<std::vector<R>> a, const R& one, IsZero is_zero, ExactDiv exact_div) {
    const std::size_t n = a.size();
    if (n == 0) return one;
    bool negate = false;
    R prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(a[k][k])) {
            std::size_t sel = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (!is_zero(a[i][k])) {
                    sel = i;
                    break;
                }
            if (sel == n) return a[k][k] - a[k][k]; // zero of R
            std::swap(a[k], a[sel]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                R num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = exact_div(num, prev);
            }
            a[i][k] = a[i][k] - a[i][k];
        }
        prev = a[k][k];
    }
    R d = a[n - 1][n - 1];
    if (negate) d = one - one - d; // -d without requiring unary minus on R
    return d;
}

std::vector<std::vector<G>> sylvester_scalar(const UniPoly& p, const UniPoly& q) {
    const int m = p.degree(), n = q.degree();
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<G>> a(size, std::vector<G>(size, G(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) a[r][r + k] = p.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) a[n + r][r + k] = q.coeff(n - k);
    return a;
}

UniPoly lift_s(const UniPoly& f) { return f; } // coefficients of BiPoly in t are already UniPoly in s

} // namespace

G resultant(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() && q.is_zero()) throw DegenerateInputError("resultant of two zero polynomials");
    if (p.is_zero() || q.is_zero()) return G(0);
    if (p.is_constant() && q.is_constant()) return G(1);
    auto a = sylvester_scalar(p, q);
    return bareiss_det<G>(
        std::move(a), G(1), [](const G& x) { return x.is_zero(); },
        [](const G& x, const G& y) { return x / y; });
}

UniPoly resultant_elim_t(const BiPoly& p, const BiPoly& q) {
    const std::string& sv = p.svar();
    if (p.is_zero() || q.is_zero()) return UniPoly(sv);
    const int m = p.deg_t(), n = q.deg_t();
    if (m == 0 && n == 0) return UniPoly::constant(G(1), sv);
    const std::size_t size = static_cast<std::size_t>(m + n);
    UniPoly one = UniPoly::constant(G(1), sv);
    std::vector<std::vector<UniPoly>> a(size, std::vector<UniPoly>(size, UniPoly(sv)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) a[r][r + k] = lift_s(p.coeff_of_t(m - k));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) a[n + r][r + k] = lift_s(q.coeff_of_t(n - k));
    return bareiss_det<UniPoly>(
        std::move(a), one, [](const UniPoly& x) { return x.is_zero(); },
        [](const UniPoly& x, const UniPoly& y) { return x.exact_div(y); });
}

UniPoly resultant_elim_s(const BiPoly& p, const BiPoly& q) {
    return resultant_elim_t(p.swap_vars(), q.swap_vars());
}

namespace {

UniPoly pseudo_rem(const UniPoly& a, const UniPoly& b) {
    int d = a.degree() - b.degree();
    G mult = b.leading_coeff().pow(d + 1);
    return (a * mult).divmod(b).second;
}

UniPoly clear_denominators(const UniPoly& p) {
    Rat l = p.denominator_lcm();
    return p * G(l);
}

} // namespace

UniPoly gcd_poly(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) return a;
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    UniPoly p = clear_denominators(a), q = clear_denominators(b);
    if (p.degree() < q.degree()) std::swap(p, q);
    G g(1), h(1);
    while (true) {
        int d = p.degree() - q.degree();
        UniPoly r = pseudo_rem(p, q);
        if (r.is_zero()) return q.monic();
        if (r.degree() == 0) return UniPoly::constant(G(1), a.is_zero() ? b.var() : a.var());
        p = q;
        G divisor = g * h.pow(d);
        q = r * divisor.inverse();
        g = p.leading_coeff();
        if (d > 0) h = g.pow(d) / h.pow(d - 1);
    }
}

UniPoly gcd_poly(const std::vector<UniPoly>& ps) {
    UniPoly acc;
    bool first = true;
    for (const auto& p : ps) {
        if (first) {
            acc = p.is_zero() ? p : p.monic();
            first = false;
        } else {
            acc = gcd_poly(acc, p);
        }
        if (acc.is_nonzero_constant()) return acc;
    }
    return acc;
}

namespace {

// Content of a BiPoly with respect to the main variable t: the univariate
// gcd of its t-coefficients (polynomials in s).
UniPoly content_t(const BiPoly& p) {
    std::vector<UniPoly> cs;
    for (int k = 0; k <= p.deg_t(); ++k) {
        UniPoly c = p.coeff_of_t(k);
        if (!c.is_zero()) cs.push_back(c);
    }
    return gcd_poly(cs);
}

BiPoly mul_by_s_poly(const BiPoly& p, const UniPoly& f) {
    return p * BiPoly::from_s(f, p.svar(), p.tvar());
}

BiPoly exact_div_by_s_poly(const BiPoly& p, const UniPoly& f) {
    BiPoly r(p.svar(), p.tvar());
    for (int k = 0; k <= p.deg_t(); ++k) {
        UniPoly c = p.coeff_of_t(k);
        if (c.is_zero()) continue;
        UniPoly q = c.exact_div(f);
        for (const auto& [d, coef] : q.terms()) r.set_coeff(d, k, coef);
    }
    return r;
}

BiPoly primitive_part_t(const BiPoly& p) {
    UniPoly c = content_t(p);
    if (c.is_zero()) return p;
    return exact_div_by_s_poly(p, c);
}

// Pseudo-remainder in the main variable t over the ring Q(i)[s].
BiPoly pseudo_rem_t(const BiPoly& a, const BiPoly& b) {
    const int db = b.deg_t();
    UniPoly lb = b.coeff_of_t(db);
    BiPoly r = a;
    int e = a.deg_t() - db + 1;
    while (!r.is_zero() && r.deg_t() >= db) {
        int dr = r.deg_t();
        UniPoly lr = r.coeff_of_t(dr);
        BiPoly shift(r.svar(), r.tvar());
        shift.set_coeff(0, dr - db, G(1));
        r = mul_by_s_poly(r, lb) - mul_by_s_poly(shift * b, lr);
        --e;
    }
    for (; e > 0; --e) r = mul_by_s_poly(r, lb);
    return r;
}

BiPoly normalize_bipoly(const BiPoly& p) {
    if (p.is_zero()) return p;
    UniPoly lead = p.coeff_of_t(p.deg_t());
    G lc = lead.leading_coeff();
    BiPoly r = p;
    r *= lc.inverse();
    return r;
}

} // namespace

BiPoly gcd_poly(const BiPoly& a, const BiPoly& b) {
    const std::string sv = a.svar(), tv = a.tvar();
    if (a.is_zero() && b.is_zero()) return a;
    if (a.is_zero()) return normalize_bipoly(b);
    if (b.is_zero()) return normalize_bipoly(a);
    if (a.deg_t() == 0 && b.deg_t() == 0)
        return BiPoly::from_s(gcd_poly(a.coeff_of_t(0), b.coeff_of_t(0)), sv, tv);
    if (a.deg_t() == 0) return BiPoly::from_s(gcd_poly(a.coeff_of_t(0), content_t(b)), sv, tv);
    if (b.deg_t() == 0) return BiPoly::from_s(gcd_poly(b.coeff_of_t(0), content_t(a)), sv, tv);

    UniPoly ca = content_t(a), cb = content_t(b);
    UniPoly c = gcd_poly(ca, cb);
    BiPoly p = exact_div_by_s_poly(a, ca);
    BiPoly q = exact_div_by_s_poly(b, cb);
    if (p.deg_t() < q.deg_t()) std::swap(p, q);
    UniPoly g = UniPoly::constant(G(1), sv), h = g;
    while (true) {
        int d = p.deg_t() - q.deg_t();
        BiPoly r = pseudo_rem_t(p, q);
        if (r.is_zero()) {
            BiPoly result = mul_by_s_poly(primitive_part_t(q), c);
            return normalize_bipoly(result);
        }
        if (r.deg_t() == 0) return normalize_bipoly(BiPoly::from_s(c, sv, tv));
        p = q;
        UniPoly divisor = g;
        for (int k = 0; k < d; ++k) divisor = divisor * h;
        q = exact_div_by_s_poly(r, divisor);
        g = p.coeff_of_t(p.deg_t());
        if (d > 0) {
            UniPoly gd = UniPoly::constant(G(1), sv);
            for (int k = 0; k < d; ++k) gd = gd * g;
            UniPoly hd = UniPoly::constant(G(1), sv);
            for (int k = 0; k < d - 1; ++k) hd = hd * h;
            h = gd.exact_div(hd);
        }
    }
}

BiPoly gcd_poly(const std::vector<BiPoly>& ps) {
    BiPoly acc;
    bool first = true;
    for (const auto& p : ps) {
        if (first) {
            acc = p;
            first = false;
        } else {
            acc = gcd_poly(acc, p);
        }
        if (acc.is_nonzero_constant()) return acc;
    }
    return acc;
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw DegenerateInputError("squarefree part of the zero polynomial");
    if (p.degree() == 0) return p.monic();
    UniPoly g = gcd_poly(p, p.derivative());
    return p.exact_div(g).monic();
}

std::pair<BiPoly, int> strip_diagonal(const BiPoly& p) {
    BiPoly r = p;
    int k = 0;
    while (!r.is_zero() && r.divisible_by_diag()) {
        r = r.div_diag();
        ++k;
    }
    return {r, k};
}

} // namespace embcert

#include "embcert/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "embcert/elimination.hpp"

namespace embcert {

namespace {

using CD = std::complex<double>;

std::vector<CD> to_double_coeffs(const UniPoly& p) {
    std::vector<CD> c(static_cast<std::size_t>(p.degree()) + 1, CD(0, 0));
    for (const auto& [d, g] : p.terms()) c[static_cast<std::size_t>(d)] = CD(g.re_d(), g.im_d());
    return c;
}

CD eval_poly(const std::vector<CD>& c, CD z) {
    CD acc(0, 0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

// Durand-Kerner simultaneous iteration on the monic normalization.
std::vector<CD> durand_kerner(std::vector<CD> c) {
    const std::size_t n = c.size() - 1;
    CD lead = c.back();
    for (auto& x : c) x /= lead;
    for (const auto& x : c)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return {};
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
    radius = 1.0 + radius;
    std::vector<CD> z(n);
    const CD seed(0.4, 0.9);
    CD acc(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        acc *= seed;
        z[k] = radius * acc / std::abs(acc) * (0.5 + 0.5 * (double(k) + 1.0) / double(n));
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            CD denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) < 1e-300) {
                z[k] += CD(1e-8 * (double(k) + 1), 1e-8);
                max_step = 1.0;
                continue;
            }
            CD step = eval_poly(c, z[k]) / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-15) break;
    }
    // Newton polish sharpens each root independently.
    std::vector<CD> dc(n);
    for (std::size_t k = 1; k <= n; ++k) dc[k - 1] = c[k] * double(k);
    for (auto& zk : z) {
        for (int it = 0; it < 8; ++it) {
            CD d = eval_poly(dc, zk);
            if (std::abs(d) < 1e-280) break;
            CD step = eval_poly(c, zk) / d;
            zk -= step;
            if (std::abs(step) < 1e-16) break;
        }
    }
    return z;
}

// Continued-fraction rational reconstruction near x with denominator cap.
Rat rationalize(double x, double tol, unsigned long max_den) {
    if (!std::isfinite(x)) return Rat(0);
    if (std::abs(x) < tol) return Rat(0);
    bool neg = x < 0;
    double v = std::abs(x);
    unsigned long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int k = 0; k < 40; ++k) {
        double fl = std::floor(frac);
        if (fl > 9e18) break;
        unsigned long a = static_cast<unsigned long>(fl);
        unsigned long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rat(0);
    Rat r(static_cast<long>(p1), static_cast<long>(q1));
    r.canonicalize();
    if (neg) r = -r;
    return r;
}

unsigned precision_bits(const Rat& precision) {
    // smallest b with 2^-b <= precision, plus guard bits
    unsigned b = 1;
    Rat v(1, 2);
    while (v > precision && b < 4096) {
        v /= 2;
        ++b;
    }
    return b + 16;
}

Rat round_to_bits(const Rat& q, unsigned bits) {
    mpz_class two_b;
    mpz_ui_pow_ui(two_b.get_mpz_t(), 2, bits);
    mpz_class num = q.get_num() * 2 * two_b + q.get_den();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), mpz_class(q.get_den() * 2).get_mpz_t());
    Rat out(r, two_b);
    out.canonicalize();
    return out;
}

G round_point(const G& z, unsigned bits) {
    return {round_to_bits(z.re(), bits), round_to_bits(z.im(), bits)};
}

Rat dyadic(unsigned bits) {
    mpz_class two_b;
    mpz_ui_pow_ui(two_b.get_mpz_t(), 2, bits);
    Rat r(mpz_class(1), two_b);
    return r;
}

/// Fallback for roots the double-precision seed cannot certify: exact Newton
/// iteration with rounded intermediates at escalating working precision,
/// followed by the usual contraction test.
std::optional<CBox> polish_and_certify(const UniPoly& sf, const UniPoly& dsf, const G& seed,
                                       const Rat& precision) {
    for (unsigned bits : {128U, 256U, 512U}) {
        G x = round_point(seed, 64);
        for (int k = 0; k < 24; ++k) {
            G px = sf.eval(x);
            if (px.is_zero()) break;
            G dx = dsf.eval(x);
            if (dx.is_zero()) break;
            x = round_point(x - px / dx, bits);
        }
        CBox box = CBox::centered(x, dyadic(bits - 16));
        auto contracted = newton_contract(sf, dsf, box);
        if (!contracted) continue;
        auto meet = intersect(*contracted, box);
        if (!meet) continue;
        auto refined = newton_refine(sf, dsf, *meet, precision);
        if (refined) return refined;
    }
    return std::nullopt;
}

} // namespace

std::optional<CBox> newton_contract(const UniPoly& p, const UniPoly& dp, const CBox& b) {
    CBox deriv = eval_interval(dp, b);
    G mid = b.center();
    CBox pm = CBox::point(p.eval(mid));
    auto quotient = divide(pm, deriv);
    if (!quotient) return std::nullopt;
    CBox n = CBox::point(mid) - *quotient;
    if (!n.strict_subset_of(b)) return std::nullopt;
    return n;
}

std::optional<CBox> newton_refine(const UniPoly& p, const UniPoly& dp, CBox b, const Rat& precision) {
    // Keep endpoints dyadic with a bounded denominator: raw contraction
    // output carries huge rationals that poison all later arithmetic.
    const unsigned bits = precision_bits(precision);
    b = round_out(b, bits);
    for (int iter = 0; iter < 64; ++iter) {
        if (b.width() <= precision) return b;
        auto n = newton_contract(p, dp, b);
        if (!n) return std::nullopt;
        auto meet = intersect(round_out(*n, bits), b);
        if (!meet) return std::nullopt;
        b = *meet;
    }
    return b.width() <= precision ? std::optional<CBox>(b) : std::nullopt;
}

IsolationResult isolate_roots(const UniPoly& p, const Rat& precision) {
    if (p.is_zero()) throw DegenerateInputError("root isolation of the zero polynomial");
    IsolationResult out;
    UniPoly sf = squarefree_part(p);
    const int n = sf.degree();
    if (n <= 0) return out;
    if (n == 1) {
        G root = -sf.coeff(0) / sf.coeff(1);
        out.roots.push_back(RootBox{CBox::point(root), true, root});
        return out;
    }
    UniPoly dsf = sf.derivative();
    std::vector<CD> approx = durand_kerner(to_double_coeffs(sf));
    std::sort(approx.begin(), approx.end(), [](CD a, CD b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    std::vector<G> exact_found;
    for (CD z : approx) {
        // Try to pin the root to an exact rational point first.
        bool snapped = false;
        for (unsigned long cap : {64UL, 10000UL, 1000000000UL}) {
            Rat re = rationalize(z.real(), 1e-9, cap);
            Rat im = rationalize(z.imag(), 1e-9, cap);
            G cand(re, im);
            double dr = re.get_d() - z.real(), di = im.get_d() - z.imag();
            if (dr * dr + di * di > 1e-14) continue;
            if (sf.eval(cand).is_zero()) {
                if (std::find(exact_found.begin(), exact_found.end(), cand) == exact_found.end()) {
                    exact_found.push_back(cand);
                    out.roots.push_back(RootBox{CBox::point(cand), true, cand});
                }
                snapped = true;
                break;
            }
        }
        if (snapped) continue;

        G center(rationalize(z.real(), 0.0, 1000000000UL), rationalize(z.imag(), 0.0, 1000000000UL));
        bool certified = false;
        for (double radius : {1e-9, 1e-7, 1e-11, 1e-5, 1e-3}) {
            Rat r = rationalize(radius, 0.0, 4000000000UL);
            if (r == 0) continue;
            CBox box = CBox::centered(center, r);
            auto contracted = newton_contract(sf, dsf, box);
            if (!contracted) continue;
            auto meet = intersect(*contracted, box);
            if (!meet) continue;
            auto refined = newton_refine(sf, dsf, *meet, precision);
            if (refined) {
                out.roots.push_back(RootBox{*refined, true, std::nullopt});
                certified = true;
                break;
            }
        }
        if (!certified) {
            auto polished = polish_and_certify(sf, dsf, center, precision);
            if (polished) {
                out.roots.push_back(RootBox{*polished, true, std::nullopt});
                certified = true;
            }
        }
        if (!certified) {
            Rat r = rationalize(1e-8, 0.0, 1000000000UL);
            out.roots.push_back(RootBox{CBox::centered(center, r), false, std::nullopt});
            out.all_certified = false;
        }
    }

    // Distinct certified roots must be pairwise separated: boxed roots by
    // disjoint boxes, exact roots by not lying in any other root's box.
    for (std::size_t a = 0; a < out.roots.size(); ++a)
        for (std::size_t b = a + 1; b < out.roots.size(); ++b) {
            RootBox& ra = out.roots[a];
            RootBox& rb = out.roots[b];
            if (!ra.certified || !rb.certified) continue;
            bool clash;
            if (ra.exact && rb.exact)
                clash = *ra.exact == *rb.exact; // deduped earlier; belt and braces
            else
                clash = ra.box.intersects(rb.box);
            if (clash) {
                ra.certified = rb.certified = false;
                out.all_certified = false;
            }
        }

    if (static_cast<int>(out.roots.size()) != n) {
        out.all_certified = false;
        out.warning = "isolation budget exceeded: expected " + std::to_string(n) + " roots, found " +
                      std::to_string(out.roots.size());
    } else if (!out.all_certified) {
        out.warning = "some boxes could not be certified";
    }
    return out;
}

} // namespace embcert

#pragma once

#include <vector>

#include "embcert/bipoly.hpp"
#include "embcert/unipoly.hpp"

namespace embcert {

/// Sylvester resultant of two univariate polynomials, as a fraction-free
/// (Bareiss) determinant. Vanishes iff the inputs share a root over the
/// algebraic closure (nonzero leading coefficients).
G resultant(const UniPoly& p, const UniPoly& q);

/// Resultant eliminating the t variable: a polynomial in s whose roots
/// cover the s-coordinates of all common zeros of p and q.
UniPoly resultant_elim_t(const BiPoly& p, const BiPoly& q);
/// Same, eliminating s; result is a polynomial in t.
UniPoly resultant_elim_s(const BiPoly& p, const BiPoly& q);

/// Subresultant-PRS gcd, normalized monic. gcd(p, 0) = monic p; gcd(0,0) = 0.
UniPoly gcd_poly(const UniPoly& a, const UniPoly& b);
UniPoly gcd_poly(const std::vector<UniPoly>& ps);

/// Bivariate gcd (main variable t, coefficients in Q(i)[s]); primitive
/// content, leading coefficient of the leading coefficient normalized to 1.
BiPoly gcd_poly(const BiPoly& a, const BiPoly& b);
BiPoly gcd_poly(const std::vector<BiPoly>& ps);

/// p / gcd(p, p'), monic: same roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// Remove all (s - t) factors; returns the stripped polynomial and the
/// number of factors removed.
std::pair<BiPoly, int> strip_diagonal(const BiPoly& p);

} // namespace embcert

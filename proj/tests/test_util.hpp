#pragma once

#include "embcert/grammar.hpp"
#include "embcert/rng.hpp"
#include "embcert/unipoly.hpp"

namespace embcert::testutil {

/// Random polynomial with small Gaussian-integer coefficients; degree is
/// exact (leading coefficient forced nonzero).
inline UniPoly random_poly(Rng& rng, int degree, long coeff_box = 5,
                           const std::string& var = "x") {
    UniPoly p(var);
    for (int d = 0; d < degree; ++d) p.set_coeff(d, rng.next_gaussian_int(coeff_box));
    G lead = rng.next_gaussian_int(coeff_box);
    while (lead.is_zero()) lead = rng.next_gaussian_int(coeff_box);
    p.set_coeff(degree, lead);
    return p;
}

inline UniPoly random_nonzero_poly(Rng& rng, int max_degree, long coeff_box = 5,
                                   const std::string& var = "x") {
    return random_poly(rng, static_cast<int>(rng.next_int(0, max_degree)), coeff_box, var);
}

inline G random_nonzero_scalar(Rng& rng, long box = 5) {
    G c = rng.next_gaussian_int(box);
    while (c.is_zero()) c = rng.next_gaussian_int(box);
    return c;
}

} // namespace embcert::testutil

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "embcert/analysis.hpp"
#include "embcert/elimination.hpp"
#include "embcert/grammar.hpp"
#include "embcert/interval.hpp"
#include "embcert/roots.hpp"
#include "test_util.hpp"

using namespace embcert;
using embcert::testutil::random_nonzero_poly;
using embcert::testutil::random_poly;

namespace {
UniPoly P(const std::string& s) { return parse_unipoly(s, "x"); }
} // namespace

TEST_CASE("gaussian rational canonical forms") {
    G a(Rat(2, 6), Rat(0));
    CHECK(a == G(Rat(1, 3)));
    CHECK(a.str() == "1/3");
    G z(Rat(1, 2), Rat(-3, 4));
    CHECK(z.str() == "1/2-3/4i");
    CHECK((z * z.conj()).is_real());
    CHECK(z.norm() == Rat(13, 16));
    CHECK((z / z).is_one());
    CHECK(G::i() * G::i() == G(-1));
    CHECK(G(5).pow(3) == G(125));
    CHECK(G::i().pow(-1) == -G::i());
}

TEST_CASE("grammar parses and prints canonically") {
    CHECK(P("x^2 - 1").str() == "x^2 - 1");
    CHECK(P("3x").str() == "3*x");
    CHECK(P("(1+2i)x^2").coeff(2) == G(Rat(1), Rat(2)));
    CHECK(P("1/2 x - 3/4i").str() == "1/2*x - 3/4i");
    CHECK(P("x*x*x") == P("x^3"));
    CHECK(P("-x^2").leading_coeff() == G(-1));
    CHECK_THROWS_AS(P("e^x"), ParseError);
    CHECK_THROWS_AS(P("x^y"), ParseError);
    CHECK_THROWS_AS(P("x/(x+1)"), ParseError);
    CHECK_THROWS_AS(P("y + 1"), ParseError);
}

TEST_CASE("grammar round trip on random polynomials") {
    Rng rng(2024);
    for (int k = 0; k < 200; ++k) {
        UniPoly p = random_nonzero_poly(rng, 9);
        CHECK(parse_unipoly(p.str(), "x") == p);
    }
}

TEST_CASE("polynomial division") {
    auto [q, r] = P("x^3 - 1").divmod(P("x - 1"));
    CHECK(q == P("x^2 + x + 1"));
    CHECK(r.is_zero());
    CHECK_THROWS_AS(P("x").divmod(UniPoly("x")), DegenerateInputError);
    CHECK_THROWS_AS(P("x^2+1").exact_div(P("x-1")), DegenerateInputError);
}

TEST_CASE("resultant examples") {
    // shared root at 0
    CHECK(resultant(P("x"), P("x")) == G(0));
    // 3x3 Sylvester determinant; equals q(1)*q(-1) = (-1)*(-3)
    CHECK(resultant(P("x^2-1"), P("x-2")) == G(3));
    CHECK(resultant(P("x^2+1"), P("x^2+1")) == G(0));
    CHECK_THROWS_AS(resultant(UniPoly("x"), UniPoly("x")), DegenerateInputError);
}

TEST_CASE("resultant multiplicativity, 200 seeded cases") {
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        UniPoly p = random_poly(rng, static_cast<int>(rng.next_int(1, 6)));
        UniPoly q = random_poly(rng, static_cast<int>(rng.next_int(0, 3)));
        UniPoly r = random_poly(rng, static_cast<int>(rng.next_int(0, 3)));
        CHECK(resultant(p, q * r) == resultant(p, q) * resultant(p, r));
    }
}

TEST_CASE("resultant vanishes exactly on shared roots") {
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        UniPoly common = random_poly(rng, 1);
        UniPoly p = random_poly(rng, 2) * common;
        UniPoly q = random_poly(rng, 3) * common;
        CHECK(resultant(p, q) == G(0));
    }
}

TEST_CASE("gcd examples") {
    CHECK(gcd_poly(P("x^2-1"), P("x-1")) == P("x-1"));
    CHECK(gcd_poly(P("x^2+1"), P("x^2-1")) == P("1"));
    UniPoly zero("x");
    CHECK(gcd_poly(zero, zero).is_zero());
    CHECK(gcd_poly(zero, P("2x-2")) == P("x-1")); // gcd(p, 0) = normalized p
}

TEST_CASE("gcd divides both inputs exactly, 200 seeded cases") {
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        UniPoly p = random_nonzero_poly(rng, 6);
        UniPoly q = random_nonzero_poly(rng, 6);
        UniPoly g = gcd_poly(p, q);
        CHECK_FALSE(g.is_zero());
        CHECK(p.divmod(g).second.is_zero());
        CHECK(q.divmod(g).second.is_zero());
    }
}

TEST_CASE("gcd finds planted common factors") {
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        UniPoly h = random_poly(rng, 2);
        UniPoly p = random_poly(rng, 3) * h;
        UniPoly q = random_poly(rng, 3) * h;
        UniPoly g = gcd_poly(p, q);
        CHECK(g.divmod(h.monic()).second.is_zero()); // h | gcd
    }
}

TEST_CASE("divided difference examples") {
    BiPoly q1 = divided_difference(parse_unipoly("t^3", "t"));
    CHECK(q1 == parse_bipoly("s^2 + s*t + t^2", "s", "t"));
    BiPoly q2 = divided_difference(parse_unipoly("t", "t"));
    CHECK(q2 == parse_bipoly("1", "s", "t"));
    BiPoly q3 = divided_difference(parse_unipoly("t^2 - 1", "t"));
    CHECK(q3 == parse_bipoly("s + t", "s", "t"));
}

TEST_CASE("divided difference identity q(s,t)(s-t) = P(s) - P(t), 200 seeded cases") {
    Rng rng(19);
    BiPoly s_minus_t = parse_bipoly("s - t", "s", "t");
    for (int k = 0; k < 200; ++k) {
        UniPoly p = random_nonzero_poly(rng, 10, 5, "t");
        BiPoly q = divided_difference(p);
        CHECK(q * s_minus_t == BiPoly::from_s(p) - BiPoly::from_t(p));
        CHECK(q == q.swap_vars()); // symmetric
    }
}

TEST_CASE("squarefree part examples") {
    CHECK(squarefree_part(P("x^2 - 2x + 1")) == P("x - 1"));
    CHECK(squarefree_part(P("x^2 + 1")) == P("x^2 + 1"));
    CHECK(squarefree_part(P("x^3 - x^2")) == P("x^2 - x"));
    CHECK_THROWS_AS(squarefree_part(UniPoly("x")), DegenerateInputError);
}

TEST_CASE("squarefree part is idempotent and squarefree, 200 seeded cases") {
    Rng rng(23);
    for (int k = 0; k < 200; ++k) {
        UniPoly p = random_poly(rng, static_cast<int>(rng.next_int(1, 8)));
        if (rng.next_int(0, 1) == 0) p = p * p; // plant multiplicity
        UniPoly sf = squarefree_part(p);
        CHECK(squarefree_part(sf) == sf);
        CHECK(gcd_poly(sf, sf.derivative()).is_nonzero_constant());
        CHECK(p.divmod(sf).second.is_zero());
    }
}

TEST_CASE("bivariate gcd and diagonal stripping") {
    BiPoly a = parse_bipoly("(s - t)^2 (s + t)", "s", "t");
    auto [stripped, removed] = strip_diagonal(a);
    CHECK(removed == 2);
    CHECK(stripped == parse_bipoly("s + t", "s", "t"));

    BiPoly f = parse_bipoly("(s + t)(s*t - 1)", "s", "t");
    BiPoly g = parse_bipoly("(s + t)(s - 2t)", "s", "t");
    BiPoly d = gcd_poly(f, g);
    CHECK(d == parse_bipoly("s + t", "s", "t"));

    BiPoly coprime = gcd_poly(parse_bipoly("s^2 + t", "s", "t"), parse_bipoly("s - t^2 + 1", "s", "t"));
    CHECK(coprime.is_nonzero_constant());
}

TEST_CASE("bivariate resultant eliminates one variable") {
    // common zeros of {s + t, s^2 + t^2 - 2} have s in {1, -1}
    BiPoly f = parse_bipoly("s + t", "s", "t");
    BiPoly g = parse_bipoly("s^2 + t^2 - 2", "s", "t");
    UniPoly es = resultant_elim_t(f, g);
    CHECK(es.monic() == parse_unipoly("s^2 - 1", "s"));
    UniPoly et = resultant_elim_s(f, g);
    CHECK(et.monic() == parse_unipoly("t^2 - 1", "t"));
}

TEST_CASE("interval arithmetic encloses exact evaluation") {
    Rng rng(29);
    for (int k = 0; k < 100; ++k) {
        UniPoly p = random_nonzero_poly(rng, 6);
        G x = rng.next_gaussian_int(4);
        Rat r(1, 64);
        CBox box = CBox::centered(x, r);
        CBox val = eval_interval(p, box);
        CHECK(val.contains(p.eval(x)));
    }
}

TEST_CASE("root isolation: known roots") {
    IsolationResult ir = isolate_roots(P("x^2 + 1"), default_precision());
    REQUIRE(ir.roots.size() == 2);
    CHECK(ir.all_certified);
    bool found_i = false, found_minus_i = false;
    for (const auto& r : ir.roots) {
        if (r.exact && *r.exact == G::i()) found_i = true;
        if (r.exact && *r.exact == -G::i()) found_minus_i = true;
    }
    CHECK(found_i);
    CHECK(found_minus_i);

    IsolationResult lin = isolate_roots(P("x - 3"), default_precision());
    REQUIRE(lin.roots.size() == 1);
    CHECK(lin.roots[0].exact.has_value());
    CHECK(*lin.roots[0].exact == G(3));
}

TEST_CASE("root isolation: sqrt(2) against a bisection oracle") {
    // independent oracle: bisection on x^2 - 2 over [1, 2]
    Rat lo(1), hi(2);
    for (int k = 0; k < 120; ++k) {
        Rat mid = canonical((lo + hi) / 2);
        if (mid * mid < 2)
            lo = mid;
        else
            hi = mid;
    }
    IsolationResult ir = isolate_roots(P("x^2 - 2"), default_precision());
    REQUIRE(ir.roots.size() == 2);
    CHECK(ir.all_certified);
    bool found = false;
    for (const auto& r : ir.roots) {
        if (r.box.re.lo > 0) {
            found = true;
            // both intervals contain sqrt(2), so they must meet
            CHECK(r.box.re.intersects(RatInterval(lo, hi)));
            CHECK(r.box.width() <= default_precision());
            CHECK(r.box.im.contains(Rat(0)));
        }
    }
    CHECK(found);
}

TEST_CASE("root isolation: box count equals squarefree degree, seeded") {
    Rng rng(31);
    int checked = 0;
    for (int k = 0; k < 30; ++k) {
        UniPoly p = random_poly(rng, static_cast<int>(rng.next_int(1, 9)), 6);
        UniPoly sf = squarefree_part(p);
        IsolationResult ir = isolate_roots(p, default_precision());
        CHECK(static_cast<int>(ir.roots.size()) == sf.degree());
        // residual check: every box center nearly annihilates p
        for (const auto& r : ir.roots) {
            CBox residual = eval_interval(sf, r.box);
            CHECK(residual.contains_zero());
        }
        ++checked;
    }
    CHECK(checked == 30);
}

TEST_CASE("certified boxes of one polynomial are pairwise disjoint") {
    IsolationResult ir = isolate_roots(P("x^5 - x^3 + 2x - 7"), default_precision());
    REQUIRE(ir.roots.size() == 5);
    for (std::size_t a = 0; a < ir.roots.size(); ++a)
        for (std::size_t b = a + 1; b < ir.roots.size(); ++b)
            CHECK_FALSE(ir.roots[a].box.intersects(ir.roots[b].box));
}

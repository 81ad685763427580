#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "embcert/automorphism.hpp"
#include "embcert/fixtures.hpp"
#include "embcert/grammar.hpp"
#include "test_util.hpp"

using namespace embcert;

namespace {

Matrix mat2(long a, long b, long c, long d) {
    return Matrix(std::vector<Vec>{{G(a), G(b)}, {G(c), G(d)}});
}

Matrix product(const std::vector<Transvection>& ts, std::size_t m) {
    Matrix acc = Matrix::identity(m);
    for (const auto& t : ts) acc = acc * t.matrix(m);
    return acc;
}

/// Random SL matrix assembled from a few transvections with small entries.
Matrix random_sl(Rng& rng, std::size_t m, int factors) {
    Matrix acc = Matrix::identity(m);
    for (int k = 0; k < factors; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.next_int(0, static_cast<long>(m) - 1));
        std::size_t j = static_cast<std::size_t>(rng.next_int(0, static_cast<long>(m) - 1));
        if (i == j) continue;
        G num = rng.next_gaussian_int(3);
        G den = G(rng.next_int(1, 3));
        Transvection t{i, j, num / den};
        acc = acc * t.matrix(m);
    }
    return acc;
}

Vec random_point(Rng& rng, std::size_t m) {
    Vec p(m);
    for (auto& c : p) c = rng.next_gaussian_int(4);
    return p;
}

} // namespace

TEST_CASE("sl_decompose examples") {
    CHECK(sl_decompose(Matrix::identity(2)).empty());
    CHECK(sl_decompose(Matrix::identity(3)).empty());

    // [[0,1],[-1,0]] = E01(1) E10(-1) E01(1)
    Matrix rot = mat2(0, 1, -1, 0);
    auto ts = sl_decompose(rot);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0].matrix(2) == mat2(1, 1, 0, 1));
    CHECK(ts[1].matrix(2) == mat2(1, 0, -1, 1));
    CHECK(ts[2].matrix(2) == mat2(1, 1, 0, 1));
    CHECK(product(ts, 2) == rot);

    // diag(2, 1/2): four transvections
    Matrix diag(std::vector<Vec>{{G(2), G(0)}, {G(0), G(Rat(1, 2))}});
    auto ds = sl_decompose(diag);
    CHECK(ds.size() == 4);
    CHECK(product(ds, 2) == diag);

    CHECK_THROWS_AS(sl_decompose(mat2(2, 0, 0, 2)), DegenerateInputError);
}

TEST_CASE("sl_decompose reconstructs 100 seeded SL2 and SL3 matrices") {
    Rng rng(101);
    for (int k = 0; k < 100; ++k) {
        std::size_t m = (k % 2 == 0) ? 2 : 3;
        Matrix a = random_sl(rng, m, 6);
        auto ts = sl_decompose(a);
        CHECK(product(ts, m) == a);
        CHECK(ts.size() <= m * m + m + 2);
    }
}

TEST_CASE("cubic shear fixes 0 and 1 with the prescribed jets") {
    ElementaryShear sh = ElementaryShear::cubic(3, 0, 1, G(Rat(5, 3)));
    PolynomialAutomorphism phi(3);
    phi.push(sh);
    Vec zero(3, G(0)), ones(3, G(1));
    CHECK(phi.evaluate(zero) == zero);
    CHECK(phi.evaluate(ones) == ones);
    CHECK(phi.jacobian(zero).is_identity());
    Matrix j1 = phi.jacobian(ones);
    CHECK(j1.at(0, 1) == G(Rat(5, 3)));
    j1.at(0, 1) = G(0);
    CHECK(j1.is_identity());
    CHECK_THROWS_AS(ElementaryShear::cubic(3, 1, 1, G(1)), DegenerateInputError);
}

TEST_CASE("prescribed_jet: the single-shear instance in m = 2") {
    Vec p1{G(0), G(0)}, p2{G(1), G(1)};
    Matrix a1 = Matrix::identity(2);
    Matrix a2 = mat2(1, 1, 0, 1);
    PolynomialAutomorphism phi = prescribed_jet(p1, p2, a1, a2);
    REQUIRE(phi.factors().size() == 1);
    REQUIRE(std::holds_alternative<ElementaryShear>(phi.factors()[0]));
    const auto& sh = std::get<ElementaryShear>(phi.factors()[0]);
    CHECK(sh.target == 0);
    CHECK(sh.lambda == G(1));
    CHECK(phi.evaluate(p1) == p1);
    CHECK(phi.evaluate(p2) == p2);
    CHECK(phi.jacobian(p1) == a1);
    CHECK(phi.jacobian(p2) == a2);
}

TEST_CASE("prescribed_jet: identity jets give the identity") {
    Vec p1{G(2), G(-1), G(0)}, p2{G(0), G(3), G(5)};
    PolynomialAutomorphism phi = prescribed_jet(p1, p2, Matrix::identity(3), Matrix::identity(3));
    CHECK(phi.factors().empty());
}

TEST_CASE("prescribed_jet satisfies its post-conditions on seeded instances") {
    Rng rng(103);
    for (int k = 0; k < 60; ++k) {
        std::size_t m = (k % 2 == 0) ? 2 : 3;
        Vec p1 = random_point(rng, m);
        Vec p2 = random_point(rng, m);
        if (p1 == p2) continue;
        Matrix a1 = random_sl(rng, m, 4);
        Matrix a2 = random_sl(rng, m, 4);
        PolynomialAutomorphism phi = prescribed_jet(p1, p2, a1, a2);
        CHECK(phi.evaluate(p1) == p1);
        CHECK(phi.evaluate(p2) == p2);
        CHECK(phi.jacobian(p1) == a1);
        CHECK(phi.jacobian(p2) == a2);
    }
}

TEST_CASE("prescribed_jet rejects degenerate inputs") {
    Vec p{G(0), G(0)};
    CHECK_THROWS_AS(prescribed_jet(p, p, Matrix::identity(2), Matrix::identity(2)),
                    DegenerateInputError);
    CHECK_THROWS_AS(prescribed_jet(p, Vec{G(1), G(1)}, mat2(2, 0, 0, 1), Matrix::identity(2)),
                    DegenerateInputError);
}

TEST_CASE("random repair shear shape") {
    PolynomialAutomorphism phi = random_repair_shear(3, 1, 42, 2);
    REQUIRE(phi.factors().size() == 1);
    const auto& sh = std::get<ElementaryShear>(phi.factors()[0]);
    CHECK(sh.target < 2);
    CHECK(phi.fixes_last(1));
    // profile uses only the last coordinate
    CHECK(sh.profile.independent_of(0));
    CHECK(sh.profile.independent_of(1));
    CHECK_FALSE(sh.profile.is_zero());
    CHECK(sh.profile.total_degree() >= 1);
    CHECK(sh.profile.total_degree() <= 2);
    // no constant term: a translation cannot separate
    CHECK(sh.profile.constant_term().is_zero());

    CHECK_THROWS_AS(random_repair_shear(3, 1, 1, 0), DegenerateInputError);
    CHECK_THROWS_AS(random_repair_shear(3, 3, 1, 2), DegenerateInputError);
}

TEST_CASE("compose, invert, evaluate") {
    Rng rng(107);
    PolynomialAutomorphism phi(3);
    phi.push(ElementaryShear::cubic(3, 0, 1, G(2)));
    phi.push(AffineMap(Matrix(std::vector<Vec>{{G(1), G(1), G(0)},
                                               {G(0), G(1), G(0)},
                                               {G(0), G(0), G(1)}}),
                       Vec{G(1), G(0), G(-2)}));
    phi.push(ElementaryShear::cubic(3, 2, 0, G(-1)));

    PolynomialAutomorphism inv = phi.inverse();
    for (int k = 0; k < 10; ++k) {
        Vec p = random_point(rng, 3);
        CHECK(inv.evaluate(phi.evaluate(p)) == p);
        CHECK(compose(phi, inv).evaluate(p) == p);
    }
    // shear inverse flips lambda
    const auto& sh = std::get<ElementaryShear>(inv.factors().back());
    CHECK(sh.lambda == G(-2));

    // the Jacobian determinant is the product of the linear factors'
    CHECK(phi.jacobian_determinant() == G(1));
    Vec sample = random_point(rng, 3);
    CHECK(det(phi.jacobian(sample)) == G(1));
}

TEST_CASE("fixes_last predicate") {
    PolynomialAutomorphism phi = random_repair_shear(3, 2, 7, 3);
    CHECK(phi.fixes_last(2));
    CHECK(phi.fixes_last(1));
    PolynomialAutomorphism bad(3);
    bad.push(ElementaryShear::cubic(3, 2, 0, G(1)));
    CHECK_FALSE(bad.fixes_last(1));
}

TEST_CASE("automorphism serialization round trip") {
    PolynomialAutomorphism phi = prescribed_jet(Vec{G(0), G(1), G(2)}, Vec{G(1), G(1), G(1)},
                                                Matrix::identity(3),
                                                Matrix(std::vector<Vec>{{G(1), G(2), G(0)},
                                                                        {G(0), G(1), G(0)},
                                                                        {G(0), G(0), G(1)}}));
    Json j = phi.to_json();
    PolynomialAutomorphism back = PolynomialAutomorphism::from_json(j);
    Rng rng(109);
    for (int k = 0; k < 10; ++k) {
        Vec p = random_point(rng, 3);
        CHECK(back.evaluate(p) == phi.evaluate(p));
    }
    // round trip through the curve side as well
    ParametricCurve moved = apply_automorphism(twisted_cubic(), phi);
    ParametricCurve moved_back = apply_automorphism(moved, phi.inverse());
    CHECK(moved_back == twisted_cubic());
}

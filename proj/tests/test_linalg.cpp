#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "embcert/curve.hpp"
#include "embcert/linalg.hpp"
#include "test_util.hpp"

using namespace embcert;

namespace {
Matrix random_matrix(Rng& rng, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.next_gaussian_int(4);
    return m;
}
} // namespace

TEST_CASE("rref and kernel") {
    Matrix m(std::vector<Vec>{{G(1), G(2), G(3)}, {G(2), G(4), G(6)}});
    RrefResult rr = rref(m);
    CHECK(rr.rank == 1);
    auto ker = kernel_basis(m);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        Vec image = m.apply(v);
        for (const auto& c : image) CHECK(c.is_zero());
    }
}

TEST_CASE("determinant and inverse on random matrices") {
    Rng rng(41);
    for (int k = 0; k < 100; ++k) {
        Matrix m = random_matrix(rng, 3);
        G d = det(m);
        if (d.is_zero()) {
            CHECK_THROWS_AS(inverse(m), DegenerateInputError);
            continue;
        }
        Matrix inv = inverse(m);
        CHECK((m * inv).is_identity());
        CHECK((inv * m).is_identity());
    }
}

TEST_CASE("solve") {
    Matrix m(std::vector<Vec>{{G(1), G(1)}, {G(1), G(-1)}, {G(2), G(0)}});
    Vec b{G(3), G(1), G(4)};
    Vec x = solve(m, b);
    CHECK(x == Vec{G(2), G(1)});
    Vec bad{G(3), G(1), G(5)};
    CHECK_THROWS_AS(solve(m, bad), DegenerateInputError);
}

TEST_CASE("direction canonicalization is projective") {
    Rng rng(43);
    for (int k = 0; k < 50; ++k) {
        Vec v(3);
        bool zero = true;
        for (auto& c : v) {
            c = rng.next_gaussian_int(5);
            if (!c.is_zero()) zero = false;
        }
        if (zero) continue;
        G lambda = testutil::random_nonzero_scalar(rng);
        Vec w(3);
        for (std::size_t j = 0; j < 3; ++j) w[j] = lambda * v[j];
        CHECK(Direction(v) == Direction(w));
    }
    CHECK_THROWS_AS(Direction(Vec{G(0), G(0), G(0)}), DegenerateInputError);
}

TEST_CASE("canonical quotient examples") {
    // kernel e3: projection (x,y,z) -> (x,y)
    LinearProjection p = canonical_quotient({{G(0), G(0), G(1)}}, 3);
    CHECK(p.matrix() == Matrix(std::vector<Vec>{{G(1), G(0), G(0)}, {G(0), G(1), G(0)}}));

    // kernel {e1, e2}: projection (x,y,z) -> z
    LinearProjection p1 = canonical_quotient({{G(1), G(0), G(0)}, {G(0), G(1), G(0)}}, 3);
    CHECK(p1.matrix() == Matrix(std::vector<Vec>{{G(0), G(0), G(1)}}));

    // kernel (1,0,1): matrix annihilates it exactly
    LinearProjection p2 = canonical_quotient({{G(1), G(0), G(1)}}, 3);
    Vec image = p2.matrix().apply({G(1), G(0), G(1)});
    for (const auto& c : image) CHECK(c.is_zero());
    CHECK(rank(p2.matrix()) == 2);

    CHECK_THROWS_AS(canonical_quotient({{G(1), G(0), G(0)}, {G(2), G(0), G(0)}}, 3),
                    DegenerateInputError);
}

TEST_CASE("canonical quotient is idempotent under canonicalization") {
    Rng rng(47);
    for (int k = 0; k < 50; ++k) {
        Vec v(3);
        bool zero = true;
        for (auto& c : v) {
            c = rng.next_gaussian_int(4);
            if (!c.is_zero()) zero = false;
        }
        if (zero) continue;
        LinearProjection p = canonical_quotient({v}, 3);
        // rebuilding from the same kernel reproduces the matrix exactly
        LinearProjection q = canonical_quotient({v}, 3);
        CHECK(p.matrix() == q.matrix());
        // and rebuilding from the matrix's own kernel reproduces it too
        LinearProjection r = canonical_quotient(kernel_basis(p.matrix()), 3);
        CHECK(r.matrix() == p.matrix());
    }
}

TEST_CASE("flag validation") {
    Flag flag({{G(1), G(0), G(0)}, {G(0), G(1), G(0)}}, 3);
    CHECK(flag.subspace(1).size() == 1);
    CHECK(flag.subspace(2).size() == 2);
    CHECK_THROWS_AS(Flag({{G(1), G(0), G(0)}, {G(2), G(0), G(0)}}, 3), DegenerateInputError);
    CHECK_THROWS_AS(Flag({{G(1), G(0), G(0)}}, 3), DimensionError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "embcert/automorphism.hpp"
#include "embcert/document.hpp"
#include "embcert/fixtures.hpp"
#include "embcert/grammar.hpp"
#include "test_util.hpp"

using namespace embcert;

TEST_CASE("parse curve documents") {
    ParametricCurve c = parse_curve(R"({
        "ambient_dim": 3,
        "parameter": "t",
        "components": [["t", "t^2", "t^3"]]
    })");
    CHECK(c == twisted_cubic());

    ParametricCurve three = parse_curve(R"({
        "ambient_dim": 3,
        "parameter": "t",
        "components": [["1", "t", "-t"], ["0", "0", "t"], ["-1", "t", "t"]]
    })");
    CHECK(three == three_lines());
    CHECK(three.num_components() == 3);
}

TEST_CASE("parser rejections") {
    // transcendental entry
    CHECK_THROWS_AS(parse_curve(R"({"ambient_dim":3,"components":[["t","e^t","0"]]})"), ParseError);
    // constant component
    CHECK_THROWS_AS(parse_curve(R"({"ambient_dim":3,"components":[["1","2","3"]]})"),
                    DegenerateInputError);
    // dimension mismatch
    CHECK_THROWS_AS(parse_curve(R"({"ambient_dim":3,"components":[["t","t^2"]]})"), DimensionError);
    // not JSON at all
    CHECK_THROWS_AS(parse_curve("t -> (t, t^2, t^3)"), ParseError);
    // rational function entry
    CHECK_THROWS_AS(parse_curve(R"x({"ambient_dim":3,"components":[["t","t/(t+1)","0"]]})x"),
                    ParseError);
}

TEST_CASE("curve document round trip") {
    for (const auto& c : {twisted_cubic(), standard_line(), three_lines()}) {
        Json j = to_json(c);
        CHECK(curve_from_json(j) == c);
    }
}

TEST_CASE("projection of curves") {
    // twisted cubic along kernel e1 -> (t^2, t^3)
    ParametricCurve img = project(twisted_cubic(), canonical_quotient({{G(1), G(0), G(0)}}, 3));
    CHECK(img.ambient_dim() == 2);
    CHECK(img.component(0)[0] == parse_unipoly("t^2", "t"));
    CHECK(img.component(0)[1] == parse_unipoly("t^3", "t"));

    // node projection with explicit (non-canonical) quotient rows (0,1,0), (-1,0,1)
    Matrix rows(std::vector<Vec>{{G(0), G(1), G(0)}, {G(-1), G(0), G(1)}});
    LinearProjection proj(rows, {{G(1), G(0), G(1)}});
    ParametricCurve node = project(twisted_cubic(), proj);
    CHECK(node.component(0)[0] == parse_unipoly("t^2", "t"));
    CHECK(node.component(0)[1] == parse_unipoly("t^3 - t", "t"));

    // three lines along kernel e2 (v = (0:1:0)) -> (1,-t), (0,t), (-1,t)
    ParametricCurve tl = project(three_lines(), canonical_quotient({{G(0), G(1), G(0)}}, 3));
    CHECK(tl.component(0)[0] == parse_unipoly("1", "t"));
    CHECK(tl.component(0)[1] == parse_unipoly("-t", "t"));
    CHECK(tl.component(1)[1] == parse_unipoly("t", "t"));
    CHECK(tl.component(2)[0] == parse_unipoly("-1", "t"));
}

TEST_CASE("apply automorphism to curves") {
    // identity
    PolynomialAutomorphism id(3);
    CHECK(apply_automorphism(twisted_cubic(), id) == twisted_cubic());

    // cubic shear (x,y,z) -> (x + (y^3 - y^2), y, z) on t -> (t,t,t)
    ParametricCurve diag(3, "t",
                         {{parse_unipoly("t", "t"), parse_unipoly("t", "t"),
                           parse_unipoly("t", "t")}});
    PolynomialAutomorphism shear(3);
    shear.push(ElementaryShear::cubic(3, 0, 1, G(1)));
    ParametricCurve sheared = apply_automorphism(diag, shear);
    CHECK(sheared.component(0)[0] == parse_unipoly("t + t^3 - t^2", "t"));
    CHECK(sheared.component(0)[1] == parse_unipoly("t", "t"));

    // linear coordinate swap permutes the tuple
    Matrix swap(std::vector<Vec>{{G(0), G(1), G(0)}, {G(1), G(0), G(0)}, {G(0), G(0), G(1)}});
    PolynomialAutomorphism lin(3);
    lin.push(AffineMap::linear(swap));
    ParametricCurve swapped = apply_automorphism(twisted_cubic(), lin);
    CHECK(swapped.component(0)[0] == parse_unipoly("t^2", "t"));
    CHECK(swapped.component(0)[1] == parse_unipoly("t", "t"));
}

TEST_CASE("projection commutes with automorphism composition") {
    // project(apply(phi, curve)) equals the curve of the composed coordinates
    Rng rng(53);
    PolynomialAutomorphism phi(3);
    phi.push(ElementaryShear::cubic(3, 0, 2, G(2)));
    phi.push(ElementaryShear::cubic(3, 1, 0, G(-1)));
    ParametricCurve moved = apply_automorphism(twisted_cubic(), phi);
    LinearProjection proj = canonical_quotient({{G(1), G(1), G(1)}}, 3);
    ParametricCurve a = project(moved, proj);
    // manual composition: apply the matrix to the moved coordinates
    for (std::size_t i = 0; i < 2; ++i) {
        UniPoly expect("t");
        for (std::size_t j = 0; j < 3; ++j)
            expect += moved.component(0)[j] * proj.matrix().at(i, j);
        CHECK(a.component(0)[i] == expect);
    }
}

TEST_CASE("strict validation") {
    CHECK_NOTHROW(twisted_cubic().validate_strict());
    ParametricCurve constant(3, "t",
                             {{parse_unipoly("1", "t"), parse_unipoly("0", "t"),
                               parse_unipoly("2", "t")}});
    CHECK_THROWS_AS(constant.validate_strict(), DegenerateInputError);
}

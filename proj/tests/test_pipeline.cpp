#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "embcert/fixtures.hpp"
#include "embcert/grammar.hpp"
#include "embcert/pipeline.hpp"
#include "test_util.hpp"

using namespace embcert;

namespace {
ParametricCurve curve3(const std::string& x, const std::string& y, const std::string& z) {
    return {3, "t", {{parse_unipoly(x, "t"), parse_unipoly(y, "t"), parse_unipoly(z, "t")}}};
}

UniPoly row_on_component(const Vec& row, const Component& comp) {
    UniPoly acc(comp[0].var());
    for (std::size_t j = 0; j < row.size(); ++j) acc += comp[j] * row[j];
    return acc;
}
} // namespace

TEST_CASE("verify_embedding accepts the fixtures") {
    CHECK(verify_embedding(twisted_cubic()).passed());
    CHECK(verify_embedding(standard_line()).passed());
    CHECK(verify_embedding(three_lines()).passed());
}

TEST_CASE("verify_embedding reports planar degeneracy") {
    ParametricCurve planar = curve3("t", "t^2", "0");
    CHECK(is_planar_degenerate(planar));
    CHECK_FALSE(is_planar_degenerate(twisted_cubic()));
    CHECK_FALSE(is_planar_degenerate(three_lines()));
    Certificate c = verify_embedding(planar);
    CHECK(c.passed());
    bool noted = false;
    for (const auto& entry : c.trace)
        if (entry.at("label") == "planar-degenerate") noted = true;
    CHECK(noted);
}

TEST_CASE("verify_embedding rejects a cuspidal curve") {
    Certificate c = verify_embedding(curve3("t^2", "t^3", "0"));
    CHECK(c.failed());
    CHECK(c.witness.at("reason").get<std::string>() ==
          "not immersive: coordinate derivatives share a root");
}

TEST_CASE("verify_embedding rejects a nodal curve") {
    // (t^2 - 1, t^3 - t, 0) glues t = -1 and t = 1
    Certificate c = verify_embedding(curve3("t^2 - 1", "t^3 - t", "0"));
    CHECK(c.failed());
    CHECK(c.witness.at("reason").get<std::string>().find("self-intersection") != std::string::npos);
}

TEST_CASE("verify_embedding rejects colliding components") {
    ParametricCurve collide(3, "t",
                            {{parse_unipoly("t", "t"), parse_unipoly("0", "t"),
                              parse_unipoly("0", "t")},
                             {parse_unipoly("t", "t"), parse_unipoly("t^2", "t"),
                              parse_unipoly("0", "t")}});
    Certificate c = verify_embedding(collide);
    CHECK(c.failed());
    CHECK(c.witness.at("reason").get<std::string>().find("image-collision") != std::string::npos);
}

TEST_CASE("certify_flag on a concrete flag for the standard line") {
    // W1 = span(e3), W2 = span(e3, e2): projections t and (t, 0)... both fine
    Flag flag({{G(0), G(0), G(1)}, {G(0), G(1), G(0)}}, 3);
    FlagCertificate fc = certify_flag(standard_line(), flag);
    CHECK(fc.valid());
}

TEST_CASE("adversarial flag fails property (4) on the twisted cubic") {
    // W1 = span(e1): p_{W1} o g = (t^2, t^3) is not immersive
    Flag flag({{G(1), G(0), G(0)}, {G(0), G(1), G(0)}}, 3);
    FlagCertificate fc = certify_flag(twisted_cubic(), flag);
    CHECK_FALSE(fc.valid());
    CHECK(fc.prop_imm.failed());
}

TEST_CASE("choose_flag finds a certified flag") {
    FlagSearchResult r = choose_flag(twisted_cubic(), 2, 64);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->valid());
    FlagSearchResult r2 = choose_flag(standard_line(), 3, 64);
    REQUIRE(r2.certificate.has_value());
}

TEST_CASE("separation certificates") {
    // node double point {(-1, 1)}; d(t) = t separates
    DoublePointSystem dps = double_points(twisted_cubic(), canonical_quotient({{G(1), G(0), G(1)}}, 3));
    ParametricCurve g = standard_line();
    Certificate ok = certify_separation(dps, g, Vec{G(1), G(0), G(0)});
    CHECK(ok.passed());
    // e = e2: d = e2 o g = 0 identically; cannot separate
    Certificate bad = certify_separation(dps, g, Vec{G(0), G(1), G(0)});
    CHECK(bad.failed());
}

TEST_CASE("kaliman_step on the node projection") {
    // f = twisted cubic, v = (1:0:1), e o g with d(t) = t
    PipelineStep step = kaliman_step(twisted_cubic(), 0, Direction(Vec{G(1), G(0), G(1)}),
                                     Vec{G(1), G(0), G(0)}, standard_line());
    REQUIRE(step.accepted);
    CHECK(step.good_cert.passed());
    CHECK(step.separation_cert.passed());
    CHECK(step.embedding_cert.passed());
    // output last coordinate equals e o g = t exactly
    CHECK(step.output.component(0)[2] == parse_unipoly("t", "t"));
    // one double point, so one holomorphic-equivalence note with rho != 0
    REQUIRE(step.holo_notes.size() == 1);
    CHECK(step.holo_notes[0].at("ratio_nonzero").get<bool>());
}

TEST_CASE("kaliman_step rejects a bad direction with the failing certificate") {
    PipelineStep step = kaliman_step(twisted_cubic(), 0, Direction(Vec{G(1), G(0), G(0)}),
                                     Vec{G(1), G(0), G(0)}, standard_line());
    CHECK_FALSE(step.accepted);
    CHECK(step.good_cert.failed());
}

TEST_CASE("separation of a conjugate algebraic double point is exact") {
    // (t, t^2, t^3 + t) projected along (1,0,0) has its node at t = +-i
    ParametricCurve f = curve3("t", "t^2", "t^3 + t");
    REQUIRE(verify_embedding(f).passed());
    LinearProjection proj = canonical_quotient({{G(1), G(0), G(0)}}, 3);
    DoublePointSystem dps = double_points(f, proj);
    REQUIRE(dps.count() == 1);
    const DoublePointIsolate& iso = dps.pairs[0].isolates[0];
    REQUIRE(iso.s.exact.has_value());
    REQUIRE(iso.t.exact.has_value());
    bool conj = (*iso.s.exact == G::i() && *iso.t.exact == -G::i()) ||
                (*iso.s.exact == -G::i() && *iso.t.exact == G::i());
    CHECK(conj);
    // d(t) = t separates: d(i) - d(-i) = 2i != 0, certified exactly
    Certificate sep = certify_separation(dps, standard_line(), Vec{G(1), G(0), G(0)});
    CHECK(sep.passed());
}

TEST_CASE("kaliman_step guards against a colliding complementary coordinate") {
    // a nodal (non-embedded) f_l: the projection is good and the separation
    // passes, but h(s1) = h(s2) at the double point exposes the inconsistency
    ParametricCurve nodal = curve3("t^2 - 1", "t^3 - t", "0");
    PipelineStep step = kaliman_step(nodal, 0, Direction(Vec{G(0), G(0), G(1)}),
                                     Vec{G(1), G(0), G(0)}, standard_line());
    CHECK_FALSE(step.accepted);
    CHECK(step.good_cert.passed());
    CHECK(step.separation_cert.passed());
    CHECK(step.embedding_cert.status == CertStatus::Inconclusive);
}

TEST_CASE("separation demands a finite double-point system") {
    // target C^1: the double-point set is positive-dimensional
    LinearProjection p1 = canonical_quotient({{G(1), G(0), G(0)}, {G(0), G(1), G(0)}}, 3);
    DoublePointSystem dps = double_points(three_lines(), p1);
    CHECK_FALSE(dps.finite());
    Certificate sep = certify_separation(dps, three_lines(), Vec{G(0), G(0), G(1)});
    CHECK(sep.status == CertStatus::Inconclusive);
}

TEST_CASE("separating_functional resolves the completing row") {
    DoublePointSystem dps =
        double_points(twisted_cubic(), canonical_quotient({{G(1), G(0), G(1)}}, 3));
    FlagSearchResult fr = choose_flag(standard_line(), 21, 64);
    REQUIRE(fr.certificate.has_value());
    SeparatingFunctionalResult r =
        separating_functional(dps, standard_line(), *fr.certificate, 0, 5, 16);
    REQUIRE(r.functional.has_value());
    CHECK(r.certificate.passed());
    // level 1 as well, against the same flag
    SeparatingFunctionalResult r2 =
        separating_functional(dps, standard_line(), *fr.certificate, 1, 5, 16);
    if (r2.functional) CHECK(r2.certificate.passed());
}

TEST_CASE("kaliman_step with no double points has vacuous separation") {
    PipelineStep step = kaliman_step(standard_line(), 0, Direction(Vec{G(0), G(0), G(1)}),
                                     Vec{G(0), G(0), G(0)}, standard_line());
    // e = 0 would fail separation only if double points existed; none do
    REQUIRE(step.accepted);
    CHECK(step.holo_notes.empty());
}

TEST_CASE("pipeline end-to-end: twisted cubic vs standard line, seed 7") {
    EquivalenceLedger ledger = run_pipeline(twisted_cubic(), standard_line(), 7);
    REQUIRE(ledger.complete);
    REQUIRE(ledger.steps.size() == 2);
    CHECK(ledger.steps[0].accepted);
    CHECK(ledger.steps[1].accepted);
    CHECK(ledger.final_cert.passed());

    // inductive invariant: last l coordinates of f_l equal r_l o g exactly
    for (std::size_t c = 0; c < ledger.g.num_components(); ++c) {
        CHECK(ledger.steps[0].output.component(c)[2] ==
              row_on_component(ledger.r1.row(0), ledger.g.component(c)));
        CHECK(ledger.steps[1].output.component(c)[1] ==
              row_on_component(ledger.r2.row(0), ledger.g.component(c)));
        CHECK(ledger.steps[1].output.component(c)[2] ==
              row_on_component(ledger.r2.row(1), ledger.g.component(c)));
    }

    // every f_l passes verify_embedding
    CHECK(verify_embedding(ledger.steps[0].output).passed());
    CHECK(verify_embedding(ledger.steps[1].output).passed());

    // degree growth is logged and bounded
    for (const auto& step : ledger.steps) {
        REQUIRE_FALSE(step.degree_log.is_null());
        CHECK(step.degree_log.at("output").get<int>() <= step.degree_log.at("bound").get<int>());
    }

    // determinism: identical seed gives an identical ledger document
    EquivalenceLedger again = run_pipeline(twisted_cubic(), standard_line(), 7);
    CHECK(again.to_json() == ledger.to_json());

    // the independent checker accepts it
    CHECK(check_ledger(ledger).passed());

    // and a serialization round trip preserves everything checkable
    EquivalenceLedger back = EquivalenceLedger::from_json(ledger.to_json());
    CHECK(check_ledger(back).passed());
}

TEST_CASE("pipeline on identical degenerate inputs") {
    EquivalenceLedger ledger = run_pipeline(standard_line(), standard_line(), 11);
    REQUIRE(ledger.complete);
    CHECK(check_ledger(ledger).passed());
    // no double points anywhere: every step's notes are empty
    for (const auto& step : ledger.steps) CHECK(step.holo_notes.empty());
}

TEST_CASE("pipeline with f = g = twisted cubic") {
    EquivalenceLedger ledger = run_pipeline(twisted_cubic(), twisted_cubic(), 13);
    REQUIRE(ledger.complete);
    CHECK(check_ledger(ledger).passed());
}

TEST_CASE("pipeline rejects non-embedding input") {
    EquivalenceLedger ledger = run_pipeline(curve3("t^2", "t^3", "0"), standard_line(), 1);
    CHECK_FALSE(ledger.complete);
    CHECK(ledger.diagnosis.at("error").get<std::string>() == "invalid-input");
    CHECK(ledger.diagnosis.at("f").at("status").get<std::string>() == "fail");
}

TEST_CASE("check_ledger flags tampering") {
    EquivalenceLedger ledger = run_pipeline(twisted_cubic(), standard_line(), 7);
    REQUIRE(ledger.complete);
    Json doc = ledger.to_json();
    // corrupt one coefficient of the step-1 output
    std::string poly = doc["steps"][0]["output"]["components"][0][0].get<std::string>();
    doc["steps"][0]["output"]["components"][0][0] = poly + " + 1";
    EquivalenceLedger tampered = EquivalenceLedger::from_json(doc);
    Certificate verdict = check_ledger(tampered);
    CHECK(verdict.failed());

    // an empty ledger fails with a missing chain
    EquivalenceLedger empty;
    empty.f = twisted_cubic();
    empty.g = standard_line();
    CHECK(check_ledger(empty).failed());
}

TEST_CASE("pipeline multi-component: three lines vs three parallel lines") {
    ParametricCurve g(3, "t",
                      {{parse_unipoly("t", "t"), parse_unipoly("0", "t"), parse_unipoly("0", "t")},
                       {parse_unipoly("t", "t"), parse_unipoly("1", "t"), parse_unipoly("0", "t")},
                       {parse_unipoly("t", "t"), parse_unipoly("2", "t"), parse_unipoly("0", "t")}});
    REQUIRE(verify_embedding(g).passed());
    EquivalenceLedger ledger = run_pipeline(three_lines(), g, 7);
    if (ledger.complete) {
        CHECK(check_ledger(ledger).passed());
    } else {
        // budget exhaustion is the only acceptable non-complete outcome here
        CHECK(ledger.diagnosis.at("error").get<std::string>() == "budget-exhausted");
    }
}

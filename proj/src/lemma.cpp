#include "embcert/lemma.hpp"

#include "embcert/rng.hpp"

namespace embcert {

LemmaId lemma_from_string(const std::string& s) {
    if (s == "immersion") return LemmaId::Immersion;
    if (s == "properness") return LemmaId::Properness;
    if (s == "transversality") return LemmaId::Transversality;
    if (s == "2-transversality") return LemmaId::TwoTransversality;
    throw DegenerateInputError("unknown lemma id: " + s);
}

std::string to_string(LemmaId id) {
    switch (id) {
        case LemmaId::Immersion: return "immersion";
        case LemmaId::Properness: return "properness";
        case LemmaId::Transversality: return "transversality";
        case LemmaId::TwoTransversality: return "2-transversality";
    }
    return "?";
}

namespace {

RootBox rootbox_from_json(const Json& j) {
    RootBox rb;
    rb.box = cbox_from_json(j.at("box"));
    rb.certified = j.at("certified").get<bool>();
    if (j.contains("exact")) rb.exact = g_from_json(j.at("exact"));
    return rb;
}

/// 2x2 minors of [v; w(s,t)] for a bivariate vector w: zero exactly when the
/// secant vector w is parallel to v.
std::vector<BiPoly> secant_minors(const Direction& v, const Component& fa, const Component& fb) {
    std::vector<BiPoly> w;
    for (std::size_t j = 0; j < 3; ++j) w.push_back(cross_difference(fa[j], fb[j]));
    const Vec& c = v.coords();
    std::vector<BiPoly> minors;
    minors.push_back(w[1] * c[0] - w[0] * c[1]);
    minors.push_back(w[2] * c[0] - w[0] * c[2]);
    minors.push_back(w[2] * c[1] - w[1] * c[2]);
    return minors;
}

/// det [ v ; f_a'(s) ; f_b'(t) ]: vanishes exactly when the two tangent
/// spaces fail to span the quotient along v.
BiPoly tangent_span_det(const Direction& v, const Component& fa, const Component& fb) {
    std::vector<BiPoly> A, B;
    for (std::size_t j = 0; j < 3; ++j) {
        A.push_back(BiPoly::from_s(fa[j].derivative()));
        B.push_back(BiPoly::from_t(fb[j].derivative()));
    }
    const Vec& c = v.coords();
    return (A[1] * B[2] - A[2] * B[1]) * c[0] - (A[0] * B[2] - A[2] * B[0]) * c[1] +
           (A[0] * B[1] - A[1] * B[0]) * c[2];
}

/// Does every polynomial vanish at the witness parameters? Exact at exact
/// parameters, enclosure containment otherwise.
bool vanish_at(const std::vector<BiPoly>& polys, const RootBox& s, const RootBox& t) {
    for (const auto& p : polys) {
        if (s.exact && t.exact) {
            if (!p.eval(*s.exact, *t.exact).is_zero()) return false;
        } else {
            if (!eval_interval(p, s.box, t.box).contains_zero()) return false;
        }
    }
    return true;
}

bool classify_tangent(const ParametricCurve& curve, const Direction& v, Json* explanation) {
    for (std::size_t k = 0; k < curve.num_components(); ++k) {
        std::vector<UniPoly> d = curve.derivative(k);
        const Vec& c = v.coords();
        std::vector<UniPoly> minors = {d[1] * c[0] - d[0] * c[1], d[2] * c[0] - d[0] * c[2],
                                       d[2] * c[1] - d[1] * c[2]};
        std::vector<UniPoly> nonzero;
        for (const auto& m : minors)
            if (!m.is_zero()) nonzero.push_back(m);
        if (nonzero.empty()) {
            *explanation = Json{{"bad_locus", "tangent"},
                                {"component", k + 1},
                                {"evidence", "tangent vector is parallel to v identically"}};
            return true;
        }
        UniPoly g = gcd_poly(nonzero);
        if (!g.is_nonzero_constant()) {
            *explanation = Json{{"bad_locus", "tangent"},
                                {"component", k + 1},
                                {"tangent_eliminant_gcd", g.str()}};
            return true;
        }
    }
    return false;
}

bool classify_asymptotic(const ParametricCurve& curve, const Direction& v, Json* explanation) {
    for (const auto& dir : asymptotic_directions(curve)) {
        if (dir == v) {
            *explanation = Json{{"bad_locus", "asymptotic"}, {"omega1_member", to_json(dir)}};
            return true;
        }
    }
    return false;
}

bool classify_secant_degenerate(const ParametricCurve& curve, const Direction& v,
                                const Json& witness, Json* explanation) {
    if (!witness.contains("pair") || !witness.contains("isolate")) return false;
    std::size_t a = witness.at("pair").at(0).get<std::size_t>() - 1;
    std::size_t b = witness.at("pair").at(1).get<std::size_t>() - 1;
    RootBox s = rootbox_from_json(witness.at("isolate").at("s"));
    RootBox t = rootbox_from_json(witness.at("isolate").at("t"));
    std::vector<BiPoly> system = secant_minors(v, curve.component(a), curve.component(b));
    system.push_back(tangent_span_det(v, curve.component(a), curve.component(b)));
    if (vanish_at(system, s, t)) {
        *explanation = Json{{"bad_locus", "degenerate-secant"},
                            {"pair", Json::array({a + 1, b + 1})},
                            {"evidence",
                             "secant through the witness is parallel to v and the two tangents "
                             "do not span the quotient"}};
        return true;
    }
    return false;
}

bool classify_triple_secant(const ParametricCurve& curve, const Direction& v, const Json& witness,
                            Json* explanation) {
    if (!witness.contains("components") || !witness.contains("parameters")) return false;
    std::size_t a = witness.at("components").at(0).get<std::size_t>() - 1;
    std::size_t b = witness.at("components").at(1).get<std::size_t>() - 1;
    std::size_t c = witness.at("components").at(2).get<std::size_t>() - 1;
    RootBox ps = rootbox_from_json(witness.at("parameters").at(0));
    RootBox pt = rootbox_from_json(witness.at("parameters").at(1));
    RootBox pu = rootbox_from_json(witness.at("parameters").at(2));
    bool first = vanish_at(secant_minors(v, curve.component(a), curve.component(b)), ps, pt);
    bool second = vanish_at(secant_minors(v, curve.component(b), curve.component(c)), pt, pu);
    if (first && second) {
        *explanation = Json{{"bad_locus", "double-secant"},
                            {"components", Json::array({a + 1, b + 1, c + 1})},
                            {"evidence", "both secants through the witness are parallel to v"}};
        return true;
    }
    return false;
}

} // namespace

bool direction_on_bad_locus(const ParametricCurve& curve, const Direction& v, LemmaId id,
                            const Certificate& failure, Json* explanation) {
    switch (id) {
        case LemmaId::Immersion: return classify_tangent(curve, v, explanation);
        case LemmaId::Properness: return classify_asymptotic(curve, v, explanation);
        case LemmaId::Transversality:
            return classify_secant_degenerate(curve, v, failure.witness, explanation);
        case LemmaId::TwoTransversality: {
            const Json& w = failure.witness;
            if (w.contains("reason") && w.at("reason").get<std::string>() == "triple point")
                return classify_triple_secant(curve, v, w, explanation);
            // otherwise a non-transversal double point surfaced the failure
            return classify_secant_degenerate(curve, v, w, explanation);
        }
    }
    return false;
}

LemmaExperimentReport run_lemma_experiment(const ParametricCurve& curve, LemmaId id, int samples,
                                           std::uint64_t seed, std::size_t fixed_last) {
    if (fixed_last >= curve.ambient_dim())
        throw DegenerateInputError("constraint leaves no free coordinates");
    LemmaExperimentReport report;
    report.lemma = to_string(id);
    Rng rng(seed);
    long box = 2;
    int drawn = 0;
    while (drawn < samples) {
        if (samples >= 4 && drawn > 0 && drawn % (samples / 4) == 0 && box < (1L << 20)) box *= 2;
        Vec coords(curve.ambient_dim(), G(0));
        bool zero = true;
        for (std::size_t k = 0; k + fixed_last < curve.ambient_dim(); ++k) {
            coords[k] = rng.next_gaussian_int(box);
            if (!coords[k].is_zero()) zero = false;
        }
        if (zero) continue;
        ++drawn;
        Direction v(coords);
        LinearProjection proj = canonical_quotient(v);
        Certificate cert;
        switch (id) {
            case LemmaId::Immersion: cert = certify_immersive(curve, proj); break;
            case LemmaId::Properness: cert = certify_proper(curve, proj); break;
            case LemmaId::Transversality: cert = certify_transversal(curve, proj); break;
            case LemmaId::TwoTransversality: cert = certify_2transversal(curve, proj); break;
        }
        ++report.samples;
        if (cert.passed()) {
            ++report.passes;
            continue;
        }
        ++report.failures;
        Json record;
        record["direction"] = to_json(v);
        record["status"] = to_string(cert.status);
        record["witness"] = cert.witness;
        Json explanation;
        bool explained =
            cert.failed() && direction_on_bad_locus(curve, v, id, cert, &explanation);
        record["explained"] = explained;
        if (explained) record["explanation"] = explanation;
        if (!explained) ++report.unexplained_failures;
        report.failure_records.push_back(record);
    }
    return report;
}

Json LemmaExperimentReport::to_json() const {
    Json j;
    j["lemma"] = lemma;
    j["samples"] = samples;
    j["passes"] = passes;
    j["failures"] = failures;
    j["unexplained_failures"] = unexplained_failures;
    j["failure_records"] = failure_records;
    return j;
}

} // namespace embcert

#include "embcert/pipeline.hpp"

#include <cmath>
#include <complex>

#include "embcert/grammar.hpp"
#include "embcert/rng.hpp"

namespace embcert {

namespace {

Json isolate_to_json(const DoublePointIsolate& iso) {
    Json j;
    j["s"] = to_json(iso.s);
    j["t"] = to_json(iso.t);
    j["confirmed"] = iso.confirmed;
    return j;
}

/// d(x) != d(y) on every recorded double point, for d given per component.
Certificate separation_for_polys(const DoublePointSystem& dps, const std::vector<UniPoly>& d,
                                 const std::string& label) {
    Certificate cert = Certificate::pass(CertKind::Separation);
    cert.note("functional", label);
    bool any_inconclusive = false;
    for (const auto& pair : dps.pairs) {
        if (pair.status == PairStatus::Infinite || pair.status == PairStatus::Unresolved) {
            return Certificate::inconclusive(CertKind::Separation,
                                             "double-point system is not finite");
        }
        if (pair.isolates.empty()) continue;
        BiPoly phi = cross_difference(d.at(pair.comp_a), d.at(pair.comp_b));
        NonvanishingOutcome nv = nonvanishing_on_pair(pair, phi);
        cert.note("pair-check", Json{{"pair", Json::array({pair.comp_a + 1, pair.comp_b + 1})},
                                     {"difference", phi.str()},
                                     {"trace", nv.trace}});
        if (nv.status == CertStatus::Fail) {
            Json witness;
            witness["reason"] = "functional does not separate a double point";
            witness["pair"] = Json::array({pair.comp_a + 1, pair.comp_b + 1});
            witness["isolate"] = isolate_to_json(pair.isolates[*nv.witness_index]);
            Certificate fail = Certificate::fail(CertKind::Separation, witness);
            fail.trace = cert.trace;
            return fail;
        }
        if (nv.status == CertStatus::Inconclusive) any_inconclusive = true;
    }
    if (any_inconclusive)
        return Certificate::inconclusive(CertKind::Separation, "separation could not be settled");
    return cert;
}

std::vector<UniPoly> functional_on_curve(const ParametricCurve& curve, const Vec& row) {
    if (row.size() != curve.ambient_dim()) throw DimensionError("functional arity");
    std::vector<UniPoly> d;
    for (const auto& comp : curve.components()) {
        UniPoly acc(curve.parameter());
        for (std::size_t j = 0; j < row.size(); ++j) acc += comp[j] * row[j];
        d.push_back(acc);
    }
    return d;
}

std::vector<Vec> standard_basis(std::size_t m, std::size_t count) {
    std::vector<Vec> basis;
    for (std::size_t k = 0; k < count; ++k) {
        Vec e(m, G(0));
        e[k] = G(1);
        basis.push_back(e);
    }
    return basis;
}

} // namespace

Certificate certify_separation(const DoublePointSystem& dps, const ParametricCurve& g,
                               const Vec& e_row) {
    return separation_for_polys(dps, functional_on_curve(g, e_row), "e o g");
}

Certificate verify_embedding(const ParametricCurve& curve) {
    if (curve.ambient_dim() != 3)
        throw DimensionError("embedding verification is specialized to ambient dimension 3");
    Certificate cert = Certificate::pass(CertKind::Embedding);
    const Rat prec = default_precision();

    for (std::size_t k = 0; k < curve.num_components(); ++k) {
        if (curve.component_is_constant(k)) {
            Json witness;
            witness["component"] = k + 1;
            witness["reason"] = "constant component is not proper";
            Certificate fail = Certificate::fail(CertKind::Embedding, witness);
            fail.trace = cert.trace;
            return fail;
        }
        UniPoly dgcd = gcd_poly(curve.derivative(k));
        cert.note("immersion-gcd", Json{{"component", k + 1}, {"gcd", dgcd.str()}});
        if (!dgcd.is_nonzero_constant()) {
            Json witness;
            witness["component"] = k + 1;
            witness["reason"] = "not immersive: coordinate derivatives share a root";
            witness["gcd"] = dgcd.str();
            if (!dgcd.is_zero()) {
                IsolationResult roots = isolate_roots(dgcd, prec);
                Json boxes = Json::array();
                for (const auto& r : roots.roots) boxes.push_back(to_json(r));
                witness["critical_parameters"] = boxes;
            }
            Certificate fail = Certificate::fail(CertKind::Embedding, witness);
            fail.trace = cert.trace;
            return fail;
        }
    }

    bool any_inconclusive = false;
    for (std::size_t a = 0; a < curve.num_components(); ++a)
        for (std::size_t b = a; b < curve.num_components(); ++b) {
            PairSystem ps =
                build_pair_system(curve.component(a), curve.component(b), a, b, prec);
            const char* what = (a == b) ? "self-intersection" : "image-collision";
            if (ps.status == PairStatus::Infinite) {
                Json witness;
                witness["reason"] = std::string(what) + ": positive-dimensional coincidence set";
                witness["pair"] = Json::array({a + 1, b + 1});
                if (!ps.common_factor.is_zero()) witness["common_factor"] = ps.common_factor.str();
                Certificate fail = Certificate::fail(CertKind::Embedding, witness);
                fail.trace = cert.trace;
                return fail;
            }
            if (ps.status == PairStatus::Unresolved) {
                any_inconclusive = true;
                continue;
            }
            if (!ps.isolates.empty()) {
                // any confirmed isolate is an exact witness; unconfirmed ones
                // leave the verdict open rather than overclaiming
                for (const auto& iso : ps.isolates)
                    if (iso.confirmed) {
                        Json witness;
                        witness["reason"] = std::string(what) + ": two points share their image";
                        witness["pair"] = Json::array({a + 1, b + 1});
                        witness["isolate"] = isolate_to_json(iso);
                        Certificate fail = Certificate::fail(CertKind::Embedding, witness);
                        fail.trace = cert.trace;
                        return fail;
                    }
                any_inconclusive = true;
            }
            cert.note("pair-system", Json{{"pair", Json::array({a + 1, b + 1})},
                                          {"status", ps.isolates.empty() ? "empty" : "ambiguous"}});
        }
    if (any_inconclusive)
        return Certificate::inconclusive(CertKind::Embedding,
                                         "coincidence systems could not be fully settled");
    cert.note("proper", "all components are nonconstant polynomial maps");
    if (is_planar_degenerate(curve))
        cert.note("planar-degenerate",
                  "the image lies in a proper affine subspace; its secant directions do not "
                  "fill the projective plane");
    return cert;
}

FlagCertificate certify_flag(const ParametricCurve& g, const Flag& flag) {
    LinearProjection p_w1 = canonical_quotient(flag.subspace(1), 3);
    LinearProjection p_w2 = canonical_quotient(flag.subspace(2), 3);

    Certificate t1 = certify_transversal(g, p_w1);
    Certificate t2 = certify_transversal(g, p_w2);
    Certificate prop_trans = Certificate::pass(CertKind::FlagProperty);
    prop_trans.note("p_W1-transversal", t1.to_json());
    prop_trans.note("p_W2-transversal", t2.to_json());
    if (t1.failed() || t2.failed()) {
        Json witness;
        witness["reason"] = "flag property (1) fails: a quotient is not transversal";
        witness["witness"] = t1.failed() ? t1.witness : t2.witness;
        Json trace = prop_trans.trace;
        prop_trans = Certificate::fail(CertKind::FlagProperty, witness);
        prop_trans.trace = trace;
    } else if (t1.status == CertStatus::Inconclusive || t2.status == CertStatus::Inconclusive) {
        prop_trans.status = CertStatus::Inconclusive;
    }

    Certificate prop_2trans = certify_2transversal(g, p_w1);
    Certificate prop_proper = certify_proper(g, p_w2);

    CriticalLocus cl1 = critical_locus(g, p_w1); // l = 2: empty required
    CriticalLocus cl2 = critical_locus(g, p_w2); // l = 1: finite allowed
    Certificate prop_imm = Certificate::pass(CertKind::FlagProperty);
    prop_imm.note("X0(p_W1 o g)", cl1.to_json());
    prop_imm.note("X0(p_W2 o g)", cl2.to_json());
    if (!cl1.hypothesis_pass || !cl2.hypothesis_pass) {
        Json witness;
        witness["reason"] = "flag property (4) fails: critical locus exceeds the dimension bound";
        witness["X0_pW1"] = cl1.to_json();
        witness["X0_pW2"] = cl2.to_json();
        Json trace = prop_imm.trace;
        prop_imm = Certificate::fail(CertKind::FlagProperty, witness);
        prop_imm.trace = trace;
    }

    return FlagCertificate{flag, prop_trans, prop_2trans, prop_proper, prop_imm};
}

FlagSearchResult choose_flag(const ParametricCurve& g, std::uint64_t seed, int budget) {
    FlagSearchResult out;
    Rng rng(seed);
    long box = 2;
    for (int k = 0; k < budget; ++k) {
        if (budget >= 4 && k > 0 && k % (budget / 4) == 0) box *= 2;
        Vec v1(3), v2(3);
        for (auto& c : v1) c = rng.next_gaussian_int(box);
        for (auto& c : v2) c = rng.next_gaussian_int(box);
        bool z1 = true;
        for (const auto& c : v1)
            if (!c.is_zero()) z1 = false;
        if (z1) continue;
        Matrix m(std::vector<Vec>{v1, v2});
        if (rank(m) != 2) continue;
        ++out.samples_tried;
        Flag flag({v1, v2}, 3);
        FlagCertificate fc = certify_flag(g, flag);
        if (fc.valid()) {
            out.certificate = fc;
            return out;
        }
        Json failure;
        failure["flag"] = to_json(flag);
        failure["prop_trans"] = to_string(fc.prop_trans.status);
        failure["prop_2trans"] = to_string(fc.prop_2trans.status);
        failure["prop_proper"] = to_string(fc.prop_proper.status);
        failure["prop_imm"] = to_string(fc.prop_imm.status);
        out.failures.push_back(failure);
    }
    return out;
}

namespace {

Vec r1_row_of(const Flag& flag) {
    return canonical_quotient(flag.subspace(2), 3).matrix().row(0);
}

/// First canonical-quotient row of W1 that is independent of r1; this is the
/// functional completing r_1 to r_2 = (r_1, e) with kernel W_1.
Vec separating_row(const Flag& flag, const Vec& r1row) {
    Matrix q = canonical_quotient(flag.subspace(1), 3).matrix();
    for (std::size_t r = 0; r < q.rows(); ++r) {
        Matrix two(std::vector<Vec>{r1row, q.row(r)});
        if (rank(two) == 2) return q.row(r);
    }
    throw Error("no separating row: flag levels are degenerate");
}

Vec complementary_row(const Matrix& r2) {
    for (std::size_t i = 0; i < 3; ++i) {
        Vec e(3, G(0));
        e[i] = G(1);
        Matrix full(std::vector<Vec>{r2.row(0), r2.row(1), e});
        if (!det(full).is_zero()) return e;
    }
    throw Error("no complementary coordinate row");
}

std::string complex_decimal(double re, double im) {
    return std::to_string(re) + (im < 0 ? "" : "+") + std::to_string(im) + "i";
}

} // namespace

SeparatingFunctionalResult separating_functional(const DoublePointSystem& dps,
                                                 const ParametricCurve& g,
                                                 const FlagCertificate& flag_cert, int level,
                                                 std::uint64_t seed, int budget) {
    if (level != 0 && level != 1) throw DegenerateInputError("level must be 0 or 1 for n = 1");
    SeparatingFunctionalResult out;
    Rng rng(seed);
    FlagCertificate current = flag_cert;

    for (int round = 0; round < budget; ++round) {
        ++out.rounds;
        Vec candidate = (level == 0) ? r1_row_of(current.flag)
                                     : separating_row(current.flag, r1_row_of(current.flag));
        Certificate sep = certify_separation(dps, g, candidate);
        if (sep.passed()) {
            out.functional = candidate;
            out.certificate = sep;
            if (round > 0) out.flag_certificate = current;
            return out;
        }
        out.certificate = sep;
        out.failures.push_back(
            Json{{"flag", to_json(current.flag)}, {"separation", sep.to_json()}});

        // perturb the flag within the freedom this level allows, then
        // re-certify all four properties before trying again
        bool moved = false;
        if (level == 0) {
            FlagSearchResult fr = choose_flag(g, rng.next_u64(), 64);
            if (fr.certificate) {
                current = *fr.certificate;
                moved = true;
            }
        } else {
            const Flag& cur = current.flag;
            Vec b1 = cur.vectors()[0], b2 = cur.vectors()[1];
            for (int tries = 0; tries < 32 && !moved; ++tries) {
                G alpha = rng.next_gaussian_int(4), beta = rng.next_gaussian_int(4);
                if (alpha.is_zero() && beta.is_zero()) continue;
                Vec w1(3);
                for (std::size_t j = 0; j < 3; ++j) w1[j] = alpha * b1[j] + beta * b2[j];
                Vec second = b1;
                if (rank(Matrix(std::vector<Vec>{w1, second})) != 2) {
                    second = b2;
                    if (rank(Matrix(std::vector<Vec>{w1, second})) != 2) continue;
                }
                Flag movedflag({w1, second}, 3);
                FlagCertificate fc = certify_flag(g, movedflag);
                if (!fc.valid()) continue;
                current = fc;
                moved = true;
            }
        }
        if (!moved) break;
    }
    return out;
}

PipelineStep kaliman_step(const ParametricCurve& f_l, int level, const Direction& v,
                          const Vec& e_row, const ParametricCurve& g) {
    if (f_l.ambient_dim() != 3 || g.ambient_dim() != 3)
        throw DimensionError("kaliman step is specialized to ambient dimension 3");
    if (level < 0 || level > 1) throw DegenerateInputError("level must be 0 or 1 for n = 1");
    for (int k = 0; k < level; ++k)
        if (!v.coords()[2 - k].is_zero())
            throw DegenerateInputError("direction must have its last " + std::to_string(level) +
                                       " coordinates zero");
    if (f_l.num_components() != g.num_components())
        throw DimensionError("f_l and g must parametrize the same abstract curve");

    PipelineStep step;
    step.level = level;
    step.input = f_l;
    step.direction = v;
    step.functional = e_row;

    step.good_cert = certify_good(f_l, v);
    if (!step.good_cert.passed()) return step;

    LinearProjection proj = canonical_quotient(v);
    DoublePointSystem dps = double_points(f_l, proj);

    step.separation_cert = certify_separation(dps, g, e_row);
    if (!step.separation_cert.passed()) return step;

    // Projection matrix that keeps the locked trailing coordinates intact.
    Matrix M(2, 3);
    if (level == 0) {
        M = proj.matrix();
    } else {
        Vec wrow{G(0), G(0), G(1)};
        const Matrix& q = proj.matrix();
        // express the extraction row in the canonical rows, then keep the
        // canonical row that remains independent
        Matrix cols(3, 2);
        for (std::size_t i = 0; i < 3; ++i) {
            cols.at(i, 0) = q.at(0, i);
            cols.at(i, 1) = q.at(1, i);
        }
        Vec ab = solve(cols, wrow);
        Vec pick = !ab[1].is_zero() ? q.row(0) : q.row(1);
        M = Matrix(std::vector<Vec>{pick, wrow});
    }
    step.projection = M;

    // f_{l+1} = (p_v o f_l, e o g)
    std::vector<UniPoly> appended = functional_on_curve(g, e_row);
    std::vector<Component> comps;
    for (std::size_t c = 0; c < f_l.num_components(); ++c) {
        Component out(3, UniPoly(f_l.parameter()));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) out[i] += f_l.component(c)[j] * M.at(i, j);
        out[2] = appended[c];
        comps.push_back(std::move(out));
    }
    step.output = ParametricCurve(3, f_l.parameter(), comps);

    step.embedding_cert = verify_embedding(step.output);
    if (!step.embedding_cert.passed()) return step;

    // degree growth is bounded by construction; log and enforce it
    int bound = std::max(f_l.degree(), g.degree());
    step.degree_log = Json{{"input", f_l.degree()},
                           {"appended", g.degree()},
                           {"output", step.output.degree()},
                           {"bound", bound}};
    if (step.output.degree() > bound) throw Error("degree growth bound violated");

    // Existence data for the holomorphic equivalence: the overshear
    // interpolation values a_s per double point, and the extension note.
    std::size_t hi = 0;
    while (hi < 3 && v.coords()[hi].is_zero()) ++hi;
    Vec hrow(3, G(0));
    hrow[hi] = G(1);
    std::vector<UniPoly> d = appended;
    std::vector<UniPoly> h = functional_on_curve(f_l, hrow);

    for (const auto& pair : dps.pairs) {
        if (pair.isolates.empty()) continue;
        BiPoly h_diff = cross_difference(h.at(pair.comp_a), h.at(pair.comp_b));
        NonvanishingOutcome guard = nonvanishing_on_pair(pair, h_diff);
        if (guard.status == CertStatus::Fail) {
            // h(s1) = h(s2) at a double point contradicts f_l being injective
            step.embedding_cert = Certificate::inconclusive(
                CertKind::Embedding,
                "internal consistency: complementary coordinate collides on a double point");
            return step;
        }
        for (const auto& iso : pair.isolates) {
            Json note;
            note["pair"] = Json::array({pair.comp_a + 1, pair.comp_b + 1});
            note["isolate"] = isolate_to_json(iso);
            double rho_re, rho_im;
            if (iso.s.exact && iso.t.exact) {
                G num = d.at(pair.comp_a).eval(*iso.s.exact) - d.at(pair.comp_b).eval(*iso.t.exact);
                G den = h.at(pair.comp_a).eval(*iso.s.exact) - h.at(pair.comp_b).eval(*iso.t.exact);
                G rho = num / den;
                note["ratio"] = rho.str();
                note["ratio_nonzero"] = !rho.is_zero();
                rho_re = rho.re_d();
                rho_im = rho.im_d();
            } else {
                // the separation certificate pins the numerator away from
                // zero and the guard above pins the denominator; the
                // enclosure itself is advisory
                note["ratio_nonzero"] = true;
                CBox num = eval_interval(cross_difference(d.at(pair.comp_a), d.at(pair.comp_b)),
                                         iso.s.box, iso.t.box);
                CBox den = eval_interval(h_diff, iso.s.box, iso.t.box);
                auto quot = divide(num, den);
                if (quot) {
                    note["ratio"] = to_json(round_out(*quot, 80));
                    G c = quot->center();
                    rho_re = c.re_d();
                    rho_im = c.im_d();
                } else {
                    note["ratio"] = Json{{"numerator", to_json(num)}, {"denominator", to_json(den)}};
                    G cn = num.center(), cd = den.center();
                    std::complex<double> q(cn.re_d(), cn.im_d());
                    std::complex<double> dd(cd.re_d(), cd.im_d());
                    std::complex<double> rr = (std::abs(dd) > 0) ? q / dd : std::complex<double>();
                    rho_re = rr.real();
                    rho_im = rr.imag();
                }
            }
            std::complex<double> rho(rho_re, rho_im);
            std::complex<double> a_s = std::log(rho);
            note["a_s"] = Json{{"decimal", complex_decimal(a_s.real(), a_s.imag())},
                               {"branch", "principal"},
                               {"normative", false},
                               {"comment", "any a_s with e^{a_s} = ratio works; branch is a choice"}};
            note["psi2"] = "existence only: the overshear multiplier interpolates a_s at the "
                           "double-point images; the additive shear extends off the closed image "
                           "curve holomorphically (Cartan Theorem B)";
            step.holo_notes.push_back(note);
        }
    }

    step.accepted = true;
    return step;
}

EquivalenceLedger run_pipeline(const ParametricCurve& f, const ParametricCurve& g,
                               std::uint64_t seed, const PipelineBudgets& budgets) {
    EquivalenceLedger ledger;
    ledger.f = f;
    ledger.g = g;

    Certificate fcert = verify_embedding(f);
    Certificate gcert = verify_embedding(g);
    if (!fcert.passed() || !gcert.passed()) {
        ledger.diagnosis = Json{{"stage", "verify-embedding"},
                                {"f", fcert.to_json()},
                                {"g", gcert.to_json()},
                                {"error", "invalid-input"}};
        return ledger;
    }
    if (f.num_components() != g.num_components()) {
        ledger.diagnosis = Json{{"stage", "verify-embedding"},
                                {"error", "invalid-input"},
                                {"reason", "f and g must parametrize the same abstract curve"}};
        return ledger;
    }

    Rng root(seed);
    Rng flag_rng = root.fork("flag");
    Rng dir1_rng = root.fork("direction-1");
    Rng dir2_rng = root.fork("direction-2");
    Rng repair_rng = root.fork("repair");
    Rng sep1_rng = root.fork("separation-1");
    Rng sep2_rng = root.fork("separation-2");

    // stage 1 direction: v_1 generic in P^2
    SearchResult sd1 = search_direction(f, standard_basis(3, 3), dir1_rng.next_u64(),
                                        budgets.direction);
    if (!sd1.direction) {
        ledger.diagnosis = Json{{"stage", "direction-search-1"},
                                {"error", "budget-exhausted"},
                                {"failures", sd1.failures}};
        return ledger;
    }
    const Direction v1 = *sd1.direction;
    DoublePointSystem dps1 = double_points(f, canonical_quotient(v1));

    // flag with properties (1)-(4) whose r_1 o g separates the stage-1 double
    // points; on separation failure the whole flag is re-drawn and re-certified
    FlagSearchResult fr = choose_flag(g, flag_rng.next_u64(), budgets.flag);
    if (!fr.certificate) {
        ledger.diagnosis = Json{{"stage", "flag-search"},
                                {"error", "budget-exhausted"},
                                {"failures", fr.failures}};
        return ledger;
    }
    ledger.flag_certificate = *fr.certificate;

    SeparatingFunctionalResult sep1 = separating_functional(
        dps1, g, ledger.flag_certificate, 0, sep1_rng.next_u64(), budgets.separation);
    if (!sep1.functional) {
        ledger.diagnosis = Json{{"stage", "separation-1"},
                                {"error", "budget-exhausted"},
                                {"failures", sep1.failures}};
        return ledger;
    }
    if (sep1.flag_certificate) ledger.flag_certificate = *sep1.flag_certificate;
    Vec r1row = *sep1.functional;
    ledger.r1 = Matrix(std::vector<Vec>{r1row});

    PipelineStep step1 = kaliman_step(f, 0, v1, r1row, g);
    if (!step1.accepted) {
        ledger.steps.push_back(step1);
        ledger.diagnosis = Json{{"stage", "step-1"}, {"error", "rejected-step"}};
        return ledger;
    }
    ledger.steps.push_back(step1);

    // stage 2: v_2 in P^1 (last coordinate zero), repairing with a seeded
    // coordinate-fixing shear when the constrained search exhausts
    ParametricCurve f1 = step1.output;
    ParametricCurve f1_cur = f1;
    std::optional<PolynomialAutomorphism> repair;
    std::optional<Direction> v2;
    SearchResult sd2_last;
    for (int rep = 0; rep <= budgets.repair && !v2; ++rep) {
        SearchResult sd2 = search_direction(f1_cur, standard_basis(3, 2), dir2_rng.next_u64(),
                                            budgets.direction);
        if (sd2.direction) {
            v2 = sd2.direction;
            break;
        }
        sd2_last = sd2;
        if (rep == budgets.repair) break;
        PolynomialAutomorphism phi =
            random_repair_shear(3, 1, repair_rng.next_u64(), budgets.repair_degree);
        ParametricCurve candidate = apply_automorphism(f1, phi);
        if (!verify_embedding(candidate).passed()) continue;
        f1_cur = candidate;
        repair = phi;
    }
    if (!v2) {
        ledger.diagnosis = Json{{"stage", "direction-search-2"},
                                {"error", "budget-exhausted"},
                                {"failures", sd2_last.failures}};
        return ledger;
    }

    DoublePointSystem dps2 = double_points(f1_cur, canonical_quotient(*v2));
    SeparatingFunctionalResult sep2 = separating_functional(
        dps2, g, ledger.flag_certificate, 1, sep2_rng.next_u64(), budgets.separation);
    if (!sep2.functional) {
        ledger.diagnosis = Json{{"stage", "separation-2"},
                                {"error", "budget-exhausted"},
                                {"failures", sep2.failures}};
        return ledger;
    }
    if (sep2.flag_certificate) {
        ledger.flag_certificate = *sep2.flag_certificate;
        // W_2 was held fixed, so r_1 is untouched; stage-1 separation still
        // rests on the same functional
        if (r1_row_of(ledger.flag_certificate.flag) != r1row)
            throw Error("flag perturbation moved the fixed subspace");
    }
    Vec e_row = *sep2.functional;

    PipelineStep step2 = kaliman_step(f1_cur, 1, *v2, e_row, g);
    step2.repair = repair;
    ledger.steps.push_back(step2);
    if (!step2.accepted) {
        ledger.diagnosis = Json{{"stage", "step-2"}, {"error", "rejected-step"}};
        return ledger;
    }

    ledger.r2 = Matrix(std::vector<Vec>{r1row, e_row});

    // closing argument: r_2 o g is a good projection and both closing
    // functionals separate its double points
    Vec w1_kernel = ledger.flag_certificate.flag.vectors()[0];
    LinearProjection r2_proj(ledger.r2, {w1_kernel});
    Certificate close_proper = certify_proper(g, r2_proj);
    Certificate close_imm = certify_immersive(g, r2_proj);
    Certificate close_2trans = certify_2transversal(g, r2_proj);
    DoublePointSystem dps_g = double_points(g, r2_proj);

    std::vector<UniPoly> f2_first;
    for (const auto& comp : step2.output.components()) f2_first.push_back(comp[0]);
    Certificate close_sep_f = separation_for_polys(dps_g, f2_first, "first coordinate of f_2");
    Vec hg = complementary_row(ledger.r2);
    Certificate close_sep_g =
        separation_for_polys(dps_g, functional_on_curve(g, hg), "complementary coordinate of g");

    Certificate final_cert = Certificate::pass(CertKind::Good);
    final_cert.note("r2", to_json(ledger.r2));
    final_cert.note("proper", close_proper.to_json());
    final_cert.note("immersive", close_imm.to_json());
    final_cert.note("2-transversal", close_2trans.to_json());
    final_cert.note("separation-f2-first-coordinate", close_sep_f.to_json());
    final_cert.note("separation-g-complementary", close_sep_g.to_json());
    const Certificate* parts[] = {&close_proper, &close_imm, &close_2trans, &close_sep_f,
                                  &close_sep_g};
    for (const Certificate* c : parts) {
        if (c->failed()) {
            Json witness;
            witness["failed_condition"] = to_string(c->kind);
            witness["witness"] = c->witness;
            Json trace = final_cert.trace;
            final_cert = Certificate::fail(CertKind::Good, witness);
            final_cert.trace = trace;
            break;
        }
        if (c->status == CertStatus::Inconclusive) final_cert.status = CertStatus::Inconclusive;
    }
    ledger.final_cert = final_cert;
    ledger.complete = final_cert.passed();
    if (!ledger.complete && ledger.diagnosis.is_null())
        ledger.diagnosis = Json{{"stage", "final"}, {"error", "closing-certificates"}};
    return ledger;
}

namespace {

bool curves_equal(const ParametricCurve& a, const ParametricCurve& b) { return a == b; }

Certificate ledger_mismatch(const std::string& check, Json detail) {
    Json witness;
    witness["check"] = check;
    witness["detail"] = std::move(detail);
    return Certificate::fail(CertKind::Good, witness);
}

} // namespace

Certificate check_ledger(const EquivalenceLedger& ledger) {
    if (ledger.steps.empty())
        return ledger_mismatch("chain", "ledger has no steps; missing certificate chain");

    Certificate out = Certificate::pass(CertKind::Good);

    Certificate fcert = verify_embedding(ledger.f);
    Certificate gcert = verify_embedding(ledger.g);
    out.note("f-embedding", to_string(fcert.status));
    out.note("g-embedding", to_string(gcert.status));
    if (!fcert.passed()) return ledger_mismatch("f-embedding", fcert.to_json());
    if (!gcert.passed()) return ledger_mismatch("g-embedding", gcert.to_json());

    FlagCertificate fc = certify_flag(ledger.g, ledger.flag_certificate.flag);
    if (!fc.valid()) return ledger_mismatch("flag-properties", "re-certification failed");
    auto same_status = [](const Certificate& a, const Certificate& b) {
        return a.status == b.status;
    };
    if (!same_status(fc.prop_trans, ledger.flag_certificate.prop_trans) ||
        !same_status(fc.prop_2trans, ledger.flag_certificate.prop_2trans) ||
        !same_status(fc.prop_proper, ledger.flag_certificate.prop_proper) ||
        !same_status(fc.prop_imm, ledger.flag_certificate.prop_imm))
        return ledger_mismatch("flag-properties", "stored statuses do not reproduce");
    out.note("flag-properties", "reproduced");

    // chain consistency and full step re-execution
    for (std::size_t k = 0; k < ledger.steps.size(); ++k) {
        const PipelineStep& step = ledger.steps[k];
        if (k == 0) {
            if (!curves_equal(step.input, ledger.f))
                return ledger_mismatch("chain", "step 1 input differs from f");
        } else {
            ParametricCurve expected = ledger.steps[k - 1].output;
            if (step.repair) expected = apply_automorphism(expected, *step.repair);
            if (!curves_equal(step.input, expected))
                return ledger_mismatch("chain", "step " + std::to_string(k + 1) +
                                                    " input differs from repaired previous output");
            if (step.repair && !step.repair->fixes_last(static_cast<std::size_t>(step.level)))
                return ledger_mismatch("repair", "repair automorphism does not fix the locked "
                                                 "coordinates");
        }
        PipelineStep redo = kaliman_step(step.input, step.level, step.direction, step.functional,
                                         ledger.g);
        if (!redo.accepted)
            return ledger_mismatch("step-" + std::to_string(k + 1), "re-execution was rejected");
        if (!curves_equal(redo.output, step.output))
            return ledger_mismatch("step-" + std::to_string(k + 1),
                                   "recomputed output embedding differs");
        if (redo.projection != step.projection)
            return ledger_mismatch("step-" + std::to_string(k + 1),
                                   "recomputed projection matrix differs");
        if (redo.good_cert.status != step.good_cert.status ||
            redo.separation_cert.status != step.separation_cert.status ||
            redo.embedding_cert.status != step.embedding_cert.status)
            return ledger_mismatch("step-" + std::to_string(k + 1),
                                   "certificate statuses do not reproduce");
        out.note("step-" + std::to_string(k + 1), "reproduced");
    }

    // the inductive coordinate identity: last l coordinates of f_l = r_l o g
    const Matrix* rs[] = {&ledger.r1, &ledger.r2};
    for (std::size_t k = 0; k < ledger.steps.size(); ++k) {
        const Matrix& r = *rs[k];
        const ParametricCurve& fl = ledger.steps[k].output;
        for (std::size_t c = 0; c < fl.num_components(); ++c) {
            for (std::size_t row = 0; row < r.rows(); ++row) {
                UniPoly expected(ledger.g.parameter());
                for (std::size_t j = 0; j < 3; ++j)
                    expected += ledger.g.component(c)[j] * r.at(row, j);
                const UniPoly& actual = fl.component(c)[3 - r.rows() + row];
                if (actual != expected)
                    return ledger_mismatch(
                        "coordinate-identity",
                        Json{{"step", k + 1},
                             {"component", c + 1},
                             {"coordinate", 3 - r.rows() + row + 1},
                             {"expected", expected.str()},
                             {"actual", actual.str()}});
            }
        }
        out.note("coordinate-identity-step-" + std::to_string(k + 1), "exact");
    }

    if (ledger.complete) {
        if (ledger.steps.size() != 2)
            return ledger_mismatch("chain", "complete ledger must contain both steps");
        Vec w1_kernel = ledger.flag_certificate.flag.vectors()[0];
        LinearProjection r2_proj(ledger.r2, {w1_kernel});
        Certificate close_2trans = certify_2transversal(ledger.g, r2_proj);
        if (close_2trans.status != CertStatus::Pass)
            return ledger_mismatch("final", "closing 2-transversality does not reproduce");
        if (!ledger.final_cert.passed())
            return ledger_mismatch("final", "complete ledger with non-passing final certificate");
        out.note("final", "reproduced");
    }

    return out;
}

// ---- serialization ----

Json FlagCertificate::to_json() const {
    Json j;
    j["flag"] = embcert::to_json(flag);
    j["prop_trans"] = prop_trans.to_json();
    j["prop_2trans"] = prop_2trans.to_json();
    j["prop_proper"] = prop_proper.to_json();
    j["prop_imm"] = prop_imm.to_json();
    return j;
}

FlagCertificate FlagCertificate::from_json(const Json& j) {
    return FlagCertificate{flag_from_json(j.at("flag")),
                           Certificate::from_json(j.at("prop_trans")),
                           Certificate::from_json(j.at("prop_2trans")),
                           Certificate::from_json(j.at("prop_proper")),
                           Certificate::from_json(j.at("prop_imm"))};
}

Json PipelineStep::to_json() const {
    Json j;
    j["level"] = level;
    j["input"] = embcert::to_json(input);
    if (repair) j["repair"] = repair->to_json();
    j["direction"] = embcert::to_json(direction);
    j["projection"] = embcert::to_json(projection);
    j["functional"] = embcert::to_json(functional);
    j["good_cert"] = good_cert.to_json();
    j["separation_cert"] = separation_cert.to_json();
    j["embedding_cert"] = embedding_cert.to_json();
    j["output"] = embcert::to_json(output);
    j["holo_notes"] = holo_notes;
    j["degree_log"] = degree_log;
    j["accepted"] = accepted;
    return j;
}

PipelineStep PipelineStep::from_json(const Json& j) {
    PipelineStep s;
    s.level = j.at("level").get<int>();
    s.input = curve_from_json(j.at("input"));
    if (j.contains("repair")) s.repair = PolynomialAutomorphism::from_json(j.at("repair"));
    s.direction = Direction(vec_from_json(j.at("direction")));
    s.projection = matrix_from_json(j.at("projection"));
    s.functional = vec_from_json(j.at("functional"));
    s.good_cert = Certificate::from_json(j.at("good_cert"));
    s.separation_cert = Certificate::from_json(j.at("separation_cert"));
    s.embedding_cert = Certificate::from_json(j.at("embedding_cert"));
    s.output = curve_from_json(j.at("output"));
    s.holo_notes = j.at("holo_notes");
    s.degree_log = j.value("degree_log", Json());
    s.accepted = j.at("accepted").get<bool>();
    return s;
}

Json EquivalenceLedger::to_json() const {
    Json j;
    j["f"] = embcert::to_json(f);
    j["g"] = embcert::to_json(g);
    j["flag_certificate"] = flag_certificate.to_json();
    Json steps_json = Json::array();
    for (const auto& s : steps) steps_json.push_back(s.to_json());
    j["steps"] = steps_json;
    j["r1"] = embcert::to_json(r1);
    j["r2"] = embcert::to_json(r2);
    j["final_cert"] = final_cert.to_json();
    j["complete"] = complete;
    j["diagnosis"] = diagnosis;
    return j;
}

EquivalenceLedger EquivalenceLedger::from_json(const Json& j) {
    EquivalenceLedger l;
    l.f = curve_from_json(j.at("f"));
    l.g = curve_from_json(j.at("g"));
    l.flag_certificate = FlagCertificate::from_json(j.at("flag_certificate"));
    for (const auto& s : j.at("steps")) l.steps.push_back(PipelineStep::from_json(s));
    l.r1 = matrix_from_json(j.at("r1"));
    l.r2 = matrix_from_json(j.at("r2"));
    l.final_cert = Certificate::from_json(j.at("final_cert"));
    l.complete = j.at("complete").get<bool>();
    l.diagnosis = j.at("diagnosis");
    return l;
}

} // namespace embcert

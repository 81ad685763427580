#include "embcert/analysis.hpp"

#include <algorithm>
#include <set>

#include "embcert/grammar.hpp"
#include "embcert/rng.hpp"

namespace embcert {

namespace {

Json isolate_json(const DoublePointIsolate& iso) {
    Json j;
    j["s"] = to_json(iso.s);
    j["t"] = to_json(iso.t);
    j["confirmed"] = iso.confirmed;
    return j;
}

bool refine_rootbox(const UniPoly& sf, const UniPoly& dsf, RootBox& rb, const Rat& target) {
    if (rb.exact) return true;
    auto refined = newton_refine(sf, dsf, rb.box, target);
    if (!refined) return false;
    rb.box = *refined;
    return true;
}

enum class CandState { Rejected, Validated, Ambiguous };

/// Exact/interval evaluation of one generator at a candidate point.
/// Returns Rejected when the value provably differs from zero, Validated when
/// it is a literal zero at exact parameters.
CandState eval_generator(const BiPoly& g, const RootBox& s, const RootBox& t) {
    if (s.exact && t.exact) {
        return g.eval(*s.exact, *t.exact).is_zero() ? CandState::Validated : CandState::Rejected;
    }
    CBox e = eval_interval(g, s.box, t.box);
    return e.contains_zero() ? CandState::Ambiguous : CandState::Rejected;
}

struct CandidateResult {
    CandState state = CandState::Rejected;
    bool confirmed = false;
};

CandidateResult validate_candidate(const std::vector<BiPoly>& gens, const UniPoly& sfs,
                                   const UniPoly& dsfs, const UniPoly& sft, const UniPoly& dsft,
                                   RootBox& s, RootBox& t) {
    constexpr int kRounds = 5;
    for (int round = 0;; ++round) {
        bool all_exact_zero = true;
        bool any_ambiguous = false;
        for (const auto& g : gens) {
            CandState st = eval_generator(g, s, t);
            if (st == CandState::Rejected) return {CandState::Rejected, false};
            if (st == CandState::Ambiguous) {
                all_exact_zero = false;
                any_ambiguous = true;
            }
        }
        if (all_exact_zero && !any_ambiguous) return {CandState::Validated, true};
        if (round >= kRounds) return {CandState::Ambiguous, false};
        Rat target = std::max(s.box.width(), t.box.width());
        target = canonical(target / 65536);
        bool ok_s = refine_rootbox(sfs, dsfs, s, target);
        bool ok_t = refine_rootbox(sft, dsft, t, target);
        if (!ok_s && !ok_t) return {CandState::Ambiguous, false};
    }
}

/// Projected coordinate tuples per component, collapse check included.
std::vector<Component> projected_components(const ParametricCurve& curve,
                                            const LinearProjection& proj) {
    ParametricCurve img = project(curve, proj);
    std::vector<Component> out = img.components();
    return out;
}

void require_no_collapse(const std::vector<Component>& comps) {
    for (std::size_t k = 0; k < comps.size(); ++k) {
        bool constant = true;
        for (const auto& p : comps[k])
            if (p.degree() > 0) constant = false;
        if (constant) throw CollapseError(k);
    }
}

/// Transversality determinant det( h_a'(s) | h_b'(t) ) for a planar pair.
BiPoly pair_determinant(const Component& a, const Component& b) {
    if (a.size() != 2 || b.size() != 2) throw DimensionError("pair determinant needs a planar image");
    BiPoly d = BiPoly::from_s(a[0].derivative()) * BiPoly::from_t(b[1].derivative()) -
               BiPoly::from_s(a[1].derivative()) * BiPoly::from_t(b[0].derivative());
    return d;
}

} // namespace

PairSystem build_pair_system(const Component& a, const Component& b, std::size_t idx_a,
                             std::size_t idx_b, const Rat& precision) {
    PairSystem ps;
    ps.comp_a = idx_a;
    ps.comp_b = idx_b;
    const bool same = idx_a == idx_b;

    if (a.size() != b.size()) throw DimensionError("pair system coordinate arity mismatch");
    for (std::size_t j = 0; j < a.size(); ++j) {
        BiPoly g = same ? divided_difference(a[j]) : cross_difference(a[j], b[j]);
        if (same) {
            auto [stripped, k] = strip_diagonal(g);
            ps.diag_factors_removed += k;
            g = stripped;
        }
        ps.generators.push_back(std::move(g));
    }

    std::vector<BiPoly> nz;
    for (const auto& g : ps.generators)
        if (!g.is_zero()) nz.push_back(g);

    if (nz.empty()) {
        ps.status = PairStatus::Infinite;
        ps.trace.push_back(Json{{"label", "identical-images"},
                                {"data", "all generators vanish identically"}});
        return ps;
    }
    for (const auto& g : nz)
        if (g.is_nonzero_constant()) {
            ps.status = PairStatus::Empty;
            ps.eliminant_s = UniPoly::constant(G(1), "s");
            ps.eliminant_t = UniPoly::constant(G(1), "t");
            ps.trace.push_back(Json{{"label", "constant-generator"}, {"data", g.str()}});
            return ps;
        }
    if (nz.size() == 1) {
        // one nonconstant constraint in two unknowns: a curve of solutions
        ps.status = PairStatus::Infinite;
        ps.common_factor = nz[0];
        ps.trace.push_back(Json{{"label", "one-dimensional"}, {"data", nz[0].str()}});
        return ps;
    }

    BiPoly d = gcd_poly(nz);
    if (!d.is_constant()) {
        ps.status = PairStatus::Infinite;
        ps.common_factor = d;
        ps.trace.push_back(Json{{"label", "common-factor"}, {"data", d.str()}});
        return ps;
    }

    std::vector<UniPoly> es_list, et_list;
    for (std::size_t i = 0; i < nz.size(); ++i)
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
            UniPoly rs = resultant_elim_t(nz[i], nz[j]);
            if (!rs.is_zero()) es_list.push_back(rs);
            UniPoly rt = resultant_elim_s(nz[i], nz[j]);
            if (!rt.is_zero()) et_list.push_back(rt);
        }
    if (es_list.empty() || et_list.empty()) {
        ps.status = PairStatus::Unresolved;
        ps.trace.push_back(Json{{"label", "elimination-degenerate"},
                                {"data", "all pairwise resultants vanish"}});
        return ps;
    }
    ps.eliminant_s = gcd_poly(es_list);
    ps.eliminant_t = gcd_poly(et_list);
    ps.trace.push_back(Json{{"label", "eliminant-s"}, {"data", ps.eliminant_s.str()}});
    ps.trace.push_back(Json{{"label", "eliminant-t"}, {"data", ps.eliminant_t.str()}});

    if (ps.eliminant_s.is_nonzero_constant() || ps.eliminant_t.is_nonzero_constant()) {
        ps.status = PairStatus::Empty;
        return ps;
    }

    UniPoly sfs = squarefree_part(ps.eliminant_s);
    UniPoly sft = squarefree_part(ps.eliminant_t);
    UniPoly dsfs = sfs.derivative(), dsft = sft.derivative();
    IsolationResult iso_s = isolate_roots(sfs, precision);
    IsolationResult iso_t = same ? iso_s : isolate_roots(sft, precision);
    if (!iso_s.all_certified || !iso_t.all_certified) {
        ps.status = PairStatus::Unresolved;
        ps.trace.push_back(Json{{"label", "isolation-incomplete"},
                                {"data", iso_s.warning + " " + iso_t.warning}});
        return ps;
    }

    for (std::size_t i = 0; i < iso_s.roots.size(); ++i) {
        std::size_t j_begin = same ? i + 1 : 0;
        for (std::size_t j = j_begin; j < iso_t.roots.size(); ++j) {
            RootBox s = iso_s.roots[i];
            RootBox t = iso_t.roots[j];
            CandidateResult res =
                validate_candidate(ps.generators, sfs, dsfs, same ? sfs : sft,
                                   same ? dsfs : dsft, s, t);
            if (res.state == CandState::Rejected) continue;
            DoublePointIsolate iso{s, t, res.confirmed};
            ps.trace.push_back(Json{{"label", "isolate"}, {"data", isolate_json(iso)}});
            ps.isolates.push_back(std::move(iso));
        }
    }
    ps.status = PairStatus::Finite;
    return ps;
}

Json DoublePointSystem::to_json() const {
    Json out;
    out["finite"] = finite();
    out["count"] = count();
    Json j = Json::array();
    for (const auto& p : pairs) {
        Json pj;
        pj["components"] = Json::array({p.comp_a + 1, p.comp_b + 1});
        switch (p.status) {
            case PairStatus::Empty: pj["status"] = "empty"; break;
            case PairStatus::Finite: pj["status"] = "finite"; break;
            case PairStatus::Infinite: pj["status"] = "infinite"; break;
            case PairStatus::Unresolved: pj["status"] = "unresolved"; break;
        }
        Json gens = Json::array();
        for (const auto& g : p.generators) gens.push_back(g.str());
        pj["generators"] = gens;
        pj["diagonal_factors_removed"] = p.diag_factors_removed;
        if (p.status == PairStatus::Infinite && !p.common_factor.is_zero())
            pj["common_factor"] = p.common_factor.str();
        pj["eliminant_s"] = p.eliminant_s.str();
        pj["eliminant_t"] = p.eliminant_t.str();
        Json isos = Json::array();
        for (const auto& iso : p.isolates) isos.push_back(isolate_json(iso));
        pj["isolates"] = isos;
        pj["trace"] = p.trace;
        j.push_back(pj);
    }
    out["pairs"] = j;
    return out;
}

std::vector<Direction> asymptotic_directions(const ParametricCurve& curve) {
    std::vector<Direction> out;
    for (std::size_t k = 0; k < curve.num_components(); ++k) {
        const Component& comp = curve.component(k);
        int dmax = 0;
        for (const auto& p : comp) dmax = std::max(dmax, p.degree());
        if (dmax <= 0) continue; // constant component has no direction at infinity
        Vec lead;
        for (const auto& p : comp) lead.push_back(p.coeff(dmax));
        Direction d(lead);
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
}

bool is_planar_degenerate(const ParametricCurve& curve) {
    // the affine hull of the image is spanned by all nonconstant coefficient
    // vectors together with differences of the components' base points
    std::vector<Vec> spanning;
    const std::size_t m = curve.ambient_dim();
    std::optional<Vec> base;
    for (const auto& comp : curve.components()) {
        Vec point(m, G(0));
        int dmax = 0;
        for (const auto& p : comp) dmax = std::max(dmax, p.degree());
        for (int d = 1; d <= dmax; ++d) {
            Vec coeff(m);
            bool nonzero = false;
            for (std::size_t j = 0; j < m; ++j) {
                coeff[j] = comp[j].coeff(d);
                if (!coeff[j].is_zero()) nonzero = true;
            }
            if (nonzero) spanning.push_back(coeff);
        }
        for (std::size_t j = 0; j < m; ++j) point[j] = comp[j].coeff(0);
        if (!base) {
            base = point;
        } else {
            Vec diff(m);
            for (std::size_t j = 0; j < m; ++j) diff[j] = point[j] - (*base)[j];
            spanning.push_back(diff);
        }
    }
    if (spanning.empty()) return true;
    return rank(Matrix(spanning)) < m;
}

Certificate certify_proper(const ParametricCurve& curve, const LinearProjection& proj) {
    if (proj.source_dim() != curve.ambient_dim())
        throw DimensionError("projection/curve dimension mismatch");
    ParametricCurve img = project(curve, proj);

    // The asymptotic-avoidance criterion (sufficient): does the kernel contain
    // a component's direction at infinity? Reported per component; the degree
    // test below is the sharp criterion and decides the verdict.
    Certificate cert = Certificate::pass(CertKind::Proper);
    for (std::size_t k = 0; k < curve.num_components(); ++k) {
        const Component& comp = curve.component(k);
        int dmax = 0;
        for (const auto& p : comp) dmax = std::max(dmax, p.degree());
        if (dmax <= 0) continue;
        Vec lead;
        for (const auto& p : comp) lead.push_back(p.coeff(dmax));
        Direction dir(lead);
        Matrix stack(proj.kernel().size() + 1, curve.ambient_dim());
        for (std::size_t i = 0; i < proj.kernel().size(); ++i)
            for (std::size_t j = 0; j < curve.ambient_dim(); ++j)
                stack.at(i, j) = proj.kernel()[i][j];
        for (std::size_t j = 0; j < curve.ambient_dim(); ++j)
            stack.at(proj.kernel().size(), j) = dir.coords()[j];
        bool in_kernel = rank(stack) == proj.kernel().size();
        cert.note("omega1-avoidance",
                  Json{{"component", k + 1},
                       {"direction_at_infinity", to_json(dir)},
                       {"kernel_meets_omega1", in_kernel}});
    }
    for (std::size_t k = 0; k < img.num_components(); ++k) {
        if (img.component_is_constant(k)) {
            Json witness;
            witness["component"] = k + 1;
            witness["reason"] = "component maps to a point";
            Certificate fail = Certificate::fail(CertKind::Proper, witness);
            fail.trace = cert.trace;
            fail.note("degree-test", Json{{"component", k + 1}, {"max_degree", 0}});
            return fail;
        }
        int dmax = 0;
        for (const auto& p : img.component(k)) dmax = std::max(dmax, p.degree());
        cert.note("degree-test", Json{{"component", k + 1}, {"max_degree", dmax}});
    }
    return cert;
}

Certificate certify_immersive(const ParametricCurve& curve, const LinearProjection& proj) {
    if (proj.source_dim() != curve.ambient_dim())
        throw DimensionError("projection/curve dimension mismatch");
    ParametricCurve img = project(curve, proj);
    Certificate cert = Certificate::pass(CertKind::Immersive);
    for (std::size_t k = 0; k < img.num_components(); ++k) {
        std::vector<UniPoly> ders = img.derivative(k);
        UniPoly g = gcd_poly(ders);
        if (g.is_nonzero_constant()) {
            cert.note("derivative-gcd", Json{{"component", k + 1}, {"gcd", g.str()}});
            continue;
        }
        Json witness;
        witness["component"] = k + 1;
        if (g.is_zero()) {
            witness["reason"] = "projected derivative vanishes identically";
            witness["gcd"] = "0";
        } else {
            witness["reason"] = "projected derivative tuple has a common root";
            witness["gcd"] = g.str();
            IsolationResult roots = isolate_roots(g, default_precision());
            Json boxes = Json::array();
            for (const auto& r : roots.roots) boxes.push_back(to_json(r));
            witness["critical_parameters"] = boxes;
        }
        Certificate fail = Certificate::fail(CertKind::Immersive, witness);
        fail.trace = cert.trace;
        fail.note("derivative-gcd", Json{{"component", k + 1}, {"gcd", g.str()}});
        return fail;
    }
    return cert;
}

DoublePointSystem double_points(const ParametricCurve& curve, const LinearProjection& proj,
                                const Rat& precision) {
    if (proj.source_dim() != curve.ambient_dim())
        throw DimensionError("projection/curve dimension mismatch");
    std::vector<Component> comps = projected_components(curve, proj);
    require_no_collapse(comps);
    DoublePointSystem dps;
    for (std::size_t a = 0; a < comps.size(); ++a)
        for (std::size_t b = a; b < comps.size(); ++b)
            dps.pairs.push_back(build_pair_system(comps[a], comps[b], a, b, precision));
    return dps;
}

NonvanishingOutcome nonvanishing_on_pair(const PairSystem& pair, const BiPoly& phi) {
    NonvanishingOutcome out;
    if (pair.status == PairStatus::Infinite || pair.status == PairStatus::Unresolved) {
        out.status = CertStatus::Inconclusive;
        out.trace.push_back(Json{{"label", "unresolved-pair"}, {"data", Json()}});
        return out;
    }
    if (pair.isolates.empty()) {
        out.status = CertStatus::Pass;
        out.trace.push_back(Json{{"label", "vacuous"}, {"data", "no double points"}});
        return out;
    }

    BiPoly phi_test = phi;
    if (pair.same_component()) phi_test = strip_diagonal(phi).first;

    UniPoly sfs, sft, dsfs, dsft;
    bool have_sf = false;
    auto ensure_sf = [&]() {
        if (have_sf) return;
        sfs = squarefree_part(pair.eliminant_s);
        sft = squarefree_part(pair.eliminant_t);
        dsfs = sfs.derivative();
        dsft = sft.derivative();
        have_sf = true;
    };

    // Exact emptiness route for { generators, phi }: gcd of the eliminant with
    // the resultants of each generator against phi. A constant gcd proves that
    // phi misses every common zero of the system.
    auto gcd_route = [&](bool t_side) -> std::optional<UniPoly> {
        std::vector<UniPoly> parts;
        for (const auto& g : pair.generators) {
            if (g.is_zero()) continue;
            UniPoly r = t_side ? resultant_elim_s(g, phi_test) : resultant_elim_t(g, phi_test);
            if (!r.is_zero()) parts.push_back(r);
        }
        if (parts.empty()) return std::nullopt;
        parts.push_back(t_side ? pair.eliminant_t : pair.eliminant_s);
        return gcd_poly(parts);
    };

    std::optional<UniPoly> gamma_s, gamma_t;
    bool gcd_done = false;
    auto run_gcd_route = [&]() {
        if (gcd_done) return;
        gcd_done = true;
        gamma_s = gcd_route(false);
        gamma_t = gcd_route(true);
        if (gamma_s)
            out.trace.push_back(Json{{"label", "gcd-cross-check-s"}, {"data", gamma_s->str()}});
        if (gamma_t)
            out.trace.push_back(Json{{"label", "gcd-cross-check-t"}, {"data", gamma_t->str()}});
    };

    bool any_inconclusive = false;
    for (std::size_t idx = 0; idx < pair.isolates.size(); ++idx) {
        RootBox s = pair.isolates[idx].s;
        RootBox t = pair.isolates[idx].t;
        if (s.exact && t.exact) {
            G value = phi.eval(*s.exact, *t.exact);
            out.trace.push_back(Json{{"label", "value"},
                                     {"data", Json{{"isolate", idx}, {"value", value.str()}}}});
            if (value.is_zero()) {
                out.status = CertStatus::Fail;
                out.witness_index = idx;
                return out;
            }
            continue;
        }
        // interval route with refinement
        ensure_sf();
        bool settled = false;
        for (int round = 0; round < 6 && !settled; ++round) {
            CBox e = eval_interval(phi, s.box, t.box);
            if (!e.contains_zero()) {
                out.trace.push_back(
                    Json{{"label", "value-enclosure-nonzero"}, {"data", Json{{"isolate", idx}}}});
                settled = true;
                break;
            }
            Rat target = canonical(std::max(s.box.width(), t.box.width()) / 65536);
            bool ok_s = refine_rootbox(sfs, dsfs, s, target);
            bool ok_t = refine_rootbox(pair.same_component() ? sfs : sft,
                                       pair.same_component() ? dsfs : dsft, t, target);
            if (!ok_s && !ok_t) break;
        }
        if (settled) continue;
        // cross-check: does the exact elimination data place a common zero of
        // { generators, phi } at exactly this isolate's coordinates?
        run_gcd_route();
        auto gamma_hits = [](const UniPoly& gamma, const RootBox& target) {
            UniPoly sf = squarefree_part(gamma);
            UniPoly dsf = sf.derivative();
            Rat goal = canonical(target.box.width() / 4096);
            for (RootBox r : isolate_roots(sf, default_precision()).roots) {
                if (r.exact) {
                    if (target.box.contains(*r.exact)) return true;
                    continue;
                }
                refine_rootbox(sf, dsf, r, goal);
                if (r.box.subset_of(target.box)) return true;
            }
            return false;
        };
        bool s_on_gamma = false, t_on_gamma = false;
        if (gamma_s && !gamma_s->is_nonzero_constant() && !gamma_s->is_zero())
            s_on_gamma = gamma_hits(*gamma_s, s);
        if (gamma_t && !gamma_t->is_nonzero_constant() && !gamma_t->is_zero())
            t_on_gamma = gamma_hits(*gamma_t, t);
        if ((gamma_s && gamma_s->is_nonzero_constant()) ||
            (gamma_t && gamma_t->is_nonzero_constant())) {
            // proven: phi cannot vanish on the system at all
            out.trace.push_back(
                Json{{"label", "gcd-route-pass"}, {"data", Json{{"isolate", idx}}}});
            continue;
        }
        if (s_on_gamma && t_on_gamma) {
            out.status = CertStatus::Fail;
            out.witness_index = idx;
            out.trace.push_back(Json{{"label", "gcd-route-fail"}, {"data", Json{{"isolate", idx}}}});
            return out;
        }
        any_inconclusive = true;
        out.trace.push_back(Json{{"label", "unsettled"}, {"data", Json{{"isolate", idx}}}});
    }
    out.status = any_inconclusive ? CertStatus::Inconclusive : CertStatus::Pass;
    return out;
}

namespace {

Certificate transversal_planar(const ParametricCurve& curve, const LinearProjection& proj,
                               const DoublePointSystem& dps) {
    ParametricCurve img = project(curve, proj);
    Certificate cert = Certificate::pass(CertKind::Transversal);
    bool any_inconclusive = false;
    for (const auto& pair : dps.pairs) {
        if (pair.status == PairStatus::Infinite) {
            return Certificate::inconclusive(
                CertKind::Transversal,
                "positive-dimensional double-point set on components (" +
                    std::to_string(pair.comp_a + 1) + "," + std::to_string(pair.comp_b + 1) + ")");
        }
        if (pair.status == PairStatus::Unresolved) {
            any_inconclusive = true;
            continue;
        }
        if (pair.isolates.empty()) continue;
        BiPoly det = pair_determinant(img.component(pair.comp_a), img.component(pair.comp_b));
        NonvanishingOutcome nv = nonvanishing_on_pair(pair, det);
        Json entry;
        entry["pair"] = Json::array({pair.comp_a + 1, pair.comp_b + 1});
        entry["determinant"] = det.str();
        entry["check"] = nv.trace;
        cert.note("tangent-determinant", entry);
        if (nv.status == CertStatus::Fail) {
            const auto& iso = pair.isolates[*nv.witness_index];
            Json witness;
            witness["reason"] = "non-transversal double point";
            witness["pair"] = Json::array({pair.comp_a + 1, pair.comp_b + 1});
            witness["isolate"] = isolate_json(iso);
            Certificate fail = Certificate::fail(CertKind::Transversal, witness);
            fail.trace = cert.trace;
            return fail;
        }
        if (nv.status == CertStatus::Inconclusive) any_inconclusive = true;
    }
    if (any_inconclusive)
        return Certificate::inconclusive(CertKind::Transversal,
                                         "double-point data could not be fully settled");
    return cert;
}

Certificate transversal_line(const ParametricCurve& curve, const LinearProjection& proj) {
    // Target C^1: a double point (x, y) is transversal iff the two projected
    // derivatives do not vanish simultaneously.
    ParametricCurve img = project(curve, proj);
    Certificate cert = Certificate::pass(CertKind::Transversal);
    const std::size_t n = img.num_components();

    struct CritData {
        bool constant_map = false;
        UniPoly q;
        UniPoly dq;
        IsolationResult crit;
    };
    std::vector<CritData> data(n);
    for (std::size_t k = 0; k < n; ++k) {
        data[k].q = img.component(k)[0];
        data[k].dq = data[k].q.derivative();
        if (data[k].dq.is_zero()) {
            data[k].constant_map = true;
            continue;
        }
        UniPoly sf = squarefree_part(data[k].dq);
        if (sf.is_nonzero_constant()) continue; // no critical points
        data[k].crit = isolate_roots(data[k].dq, default_precision());
        cert.note("critical-parameters",
                  Json{{"component", k + 1}, {"derivative", data[k].dq.str()},
                       {"count", data[k].crit.roots.size()}});
    }

    bool any_inconclusive = false;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const bool same = a == b;
            if (data[a].constant_map || data[b].constant_map) {
                if (same) {
                    Json witness;
                    witness["reason"] = "component projects to a constant; every fiber is infinite "
                                        "and nowhere transversal";
                    witness["component"] = a + 1;
                    Certificate fail = Certificate::fail(CertKind::Transversal, witness);
                    fail.trace = cert.trace;
                    return fail;
                }
                // cross pair with one constant side: critical partners of the
                // other side must miss the constant's value
                const std::size_t cst = data[a].constant_map ? a : b;
                const std::size_t oth = a + b - cst;
                if (data[oth].constant_map) {
                    // both constant: equal values give an infinite fiber
                    if (data[cst].q.constant_term() == data[oth].q.constant_term()) {
                        Json witness;
                        witness["reason"] = "two components project to the same constant";
                        witness["components"] = Json::array({a + 1, b + 1});
                        Certificate fail = Certificate::fail(CertKind::Transversal, witness);
                        fail.trace = cert.trace;
                        return fail;
                    }
                    continue;
                }
                UniPoly shifted = data[oth].q - UniPoly::constant(data[cst].q.constant_term(),
                                                                  data[oth].q.var());
                UniPoly bad = gcd_poly(shifted, data[oth].dq);
                cert.note("constant-side-check",
                          Json{{"components", Json::array({a + 1, b + 1})}, {"gcd", bad.str()}});
                if (!bad.is_nonzero_constant()) {
                    Json witness;
                    witness["reason"] = "critical point over a constant component's image";
                    witness["components"] = Json::array({a + 1, b + 1});
                    witness["gcd"] = bad.str();
                    Certificate fail = Certificate::fail(CertKind::Transversal, witness);
                    fail.trace = cert.trace;
                    return fail;
                }
                continue;
            }
            const auto& ra = data[a].crit.roots;
            const auto& rb = data[b].crit.roots;
            if (ra.empty() || rb.empty()) continue;
            if (!data[a].crit.all_certified || !data[b].crit.all_certified) {
                any_inconclusive = true;
                continue;
            }
            for (std::size_t i = 0; i < ra.size(); ++i) {
                for (std::size_t j = same ? i + 1 : 0; j < rb.size(); ++j) {
                    // is q_a(root_i) == q_b(root_j)?
                    bool equal_possible;
                    bool confirmed = false;
                    if (ra[i].exact && rb[j].exact) {
                        equal_possible =
                            data[a].q.eval(*ra[i].exact) == data[b].q.eval(*rb[j].exact);
                        confirmed = equal_possible;
                    } else {
                        CBox va = eval_interval(data[a].q, ra[i].box);
                        CBox vb = eval_interval(data[b].q, rb[j].box);
                        equal_possible = va.intersects(vb);
                    }
                    if (!equal_possible) continue;
                    if (confirmed) {
                        Json witness;
                        witness["reason"] = "double point with both derivatives vanishing";
                        witness["components"] = Json::array({a + 1, b + 1});
                        witness["s"] = to_json(ra[i]);
                        witness["t"] = to_json(rb[j]);
                        Certificate fail = Certificate::fail(CertKind::Transversal, witness);
                        fail.trace = cert.trace;
                        return fail;
                    }
                    any_inconclusive = true;
                }
            }
        }
    }
    if (any_inconclusive)
        return Certificate::inconclusive(CertKind::Transversal,
                                         "critical-point coincidences could not be settled");
    return cert;
}

} // namespace

Certificate certify_transversal(const ParametricCurve& curve, const LinearProjection& proj) {
    if (proj.target_dim() == 1) return transversal_line(curve, proj);
    if (proj.target_dim() != 2)
        throw DimensionError("transversality certifier expects a planar or line target");
    try {
        DoublePointSystem dps = double_points(curve, proj);
        return transversal_planar(curve, proj, dps);
    } catch (const CollapseError& e) {
        return Certificate::inconclusive(CertKind::Transversal,
                                         std::string("projection collapses a component: ") +
                                             e.what());
    }
}

namespace {

bool same_box(const CBox& x, const CBox& y) {
    return x.re.lo == y.re.lo && x.re.hi == y.re.hi && x.im.lo == y.im.lo && x.im.hi == y.im.hi;
}

/// Isolate slot paired with the squarefree eliminant its box came from, so
/// the box can be re-refined on demand.
struct SlotRef {
    RootBox box;
    const UniPoly* sf;
    const UniPoly* dsf;
};

/// Triple points chained through the middle component. Returns fail with a
/// witness, pass when provably none exist, inconclusive otherwise.
Certificate triples_certificate(const ParametricCurve& img, const DoublePointSystem& dps) {
    const std::size_t n = img.num_components();
    auto pair_of = [&](std::size_t a, std::size_t b) -> const PairSystem& {
        for (const auto& p : dps.pairs)
            if (p.comp_a == a && p.comp_b == b) return p;
        throw Error("pair system missing");
    };

    Certificate cert = Certificate::pass(CertKind::TwoTransversal);
    bool any_inconclusive = false;

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c) {
                const PairSystem& ab = pair_of(a, b);
                const PairSystem& bc = pair_of(b, c);
                if (ab.status == PairStatus::Infinite || bc.status == PairStatus::Infinite ||
                    ab.status == PairStatus::Unresolved || bc.status == PairStatus::Unresolved) {
                    any_inconclusive = true;
                    continue;
                }
                if (ab.isolates.empty() || bc.isolates.empty()) continue;

                // middle parameter: t-coordinate of an (a,b) double point and
                // s-coordinate of a (b,c) double point
                UniPoly gamma = gcd_poly(ab.eliminant_t, bc.eliminant_s);
                cert.note("triple-chain",
                          Json{{"triple", Json::array({a + 1, b + 1, c + 1})},
                               {"middle_gcd", gamma.str()}});
                if (gamma.is_nonzero_constant()) continue;

                UniPoly gamma_sf = squarefree_part(gamma);
                UniPoly gamma_dsf = gamma_sf.derivative();
                IsolationResult gamma_roots = isolate_roots(gamma_sf, default_precision());

                UniPoly ab_sfs = squarefree_part(ab.eliminant_s);
                UniPoly ab_sft = squarefree_part(ab.eliminant_t);
                UniPoly bc_sfs = squarefree_part(bc.eliminant_s);
                UniPoly bc_sft = squarefree_part(bc.eliminant_t);
                UniPoly ab_dsfs = ab_sfs.derivative(), ab_dsft = ab_sft.derivative();
                UniPoly bc_dsfs = bc_sfs.derivative(), bc_dsft = bc_sft.derivative();

                // Certified equality of the two middle parameters: exact when
                // both are pinned; via a refined gamma-root inclusion else
                // (a gamma root inside an isolating box IS that box's root).
                auto matches_middle = [&](SlotRef x, SlotRef y) -> std::optional<bool> {
                    if (x.box.exact && y.box.exact) return *x.box.exact == *y.box.exact;
                    if (same_box(x.box.box, y.box.box)) return true;
                    if (!x.box.box.intersects(y.box.box)) return false;
                    if (!gamma_roots.all_certified) return std::nullopt;
                    refine_rootbox(*x.sf, *x.dsf, x.box, canonical(x.box.box.width() / 1024));
                    refine_rootbox(*y.sf, *y.dsf, y.box, canonical(y.box.box.width() / 1024));
                    if (!x.box.box.intersects(y.box.box)) return false;
                    Rat target = canonical(std::min(x.box.box.width(), y.box.box.width()) / 4096);
                    for (RootBox r : gamma_roots.roots) {
                        if (r.exact) {
                            if (x.box.box.contains(*r.exact) && y.box.box.contains(*r.exact))
                                return true;
                            continue;
                        }
                        refine_rootbox(gamma_sf, gamma_dsf, r, target);
                        if (r.box.subset_of(x.box.box) && r.box.subset_of(y.box.box)) return true;
                    }
                    return std::nullopt;
                };

                for (std::size_t i = 0; i < ab.isolates.size(); ++i) {
                    std::vector<std::pair<SlotRef, SlotRef>> ab_variants;
                    ab_variants.push_back({{ab.isolates[i].s, &ab_sfs, &ab_dsfs},
                                           {ab.isolates[i].t, &ab_sft, &ab_dsft}});
                    if (ab.same_component())
                        ab_variants.push_back({{ab.isolates[i].t, &ab_sft, &ab_dsft},
                                               {ab.isolates[i].s, &ab_sfs, &ab_dsfs}});
                    for (std::size_t j = 0; j < bc.isolates.size(); ++j) {
                        std::vector<std::pair<SlotRef, SlotRef>> bc_variants;
                        bc_variants.push_back({{bc.isolates[j].s, &bc_sfs, &bc_dsfs},
                                               {bc.isolates[j].t, &bc_sft, &bc_dsft}});
                        if (bc.same_component())
                            bc_variants.push_back({{bc.isolates[j].t, &bc_sft, &bc_dsft},
                                                   {bc.isolates[j].s, &bc_sfs, &bc_dsfs}});
                        for (const auto& [as, at] : ab_variants)
                            for (const auto& [bs, bu] : bc_variants) {
                                auto mid = matches_middle(at, bs);
                                if (!mid.has_value()) {
                                    any_inconclusive = true;
                                    continue;
                                }
                                if (!*mid) continue;
                                // distinctness of the outer points when they
                                // live on the same component
                                if (a == c) {
                                    if (as.box.exact && bu.box.exact) {
                                        if (*as.box.exact == *bu.box.exact) continue;
                                    } else if (same_box(as.box.box, bu.box.box)) {
                                        continue; // same isolated root, not three points
                                    } else if (as.box.box.intersects(bu.box.box)) {
                                        any_inconclusive = true;
                                        continue;
                                    }
                                }
                                Json witness;
                                witness["reason"] = "triple point";
                                witness["components"] = Json::array({a + 1, b + 1, c + 1});
                                witness["parameters"] = Json::array(
                                    {to_json(as.box), to_json(at.box), to_json(bu.box)});
                                if (as.box.exact) witness["image"] = to_json(img.eval(a, *as.box.exact));
                                Certificate fail =
                                    Certificate::fail(CertKind::TwoTransversal, witness);
                                fail.trace = cert.trace;
                                return fail;
                            }
                    }
                }
            }
    if (any_inconclusive)
        return Certificate::inconclusive(CertKind::TwoTransversal,
                                         "triple-point chaining could not be settled");
    return cert;
}

} // namespace

Certificate certify_2transversal(const ParametricCurve& curve, const LinearProjection& proj) {
    if (proj.target_dim() != 2)
        throw DimensionError("2-transversality certifier expects a planar target");
    DoublePointSystem dps;
    try {
        dps = double_points(curve, proj);
    } catch (const CollapseError& e) {
        return Certificate::inconclusive(CertKind::TwoTransversal,
                                         std::string("projection collapses a component: ") +
                                             e.what());
    }
    ParametricCurve img = project(curve, proj);

    Certificate trans = transversal_planar(curve, proj, dps);
    if (trans.failed()) {
        Certificate fail = Certificate::fail(CertKind::TwoTransversal, trans.witness);
        fail.note("transversal", trans.to_json());
        return fail;
    }

    Certificate triples = triples_certificate(img, dps);
    Certificate out = triples; // carries pass/fail/inconclusive and the chain trace
    out.note("transversal", trans.to_json());
    if (trans.status == CertStatus::Inconclusive && out.passed())
        out = Certificate::inconclusive(CertKind::TwoTransversal,
                                        "transversality could not be settled");
    return out;
}

Certificate certify_good(const ParametricCurve& curve, const Direction& v) {
    if (v.dim() != curve.ambient_dim()) throw DimensionError("direction/curve dimension mismatch");
    LinearProjection proj = canonical_quotient(v);
    Certificate proper = certify_proper(curve, proj);
    Certificate immersive = certify_immersive(curve, proj);
    Certificate two_trans = certify_2transversal(curve, proj);

    Certificate out = Certificate::pass(CertKind::Good);
    out.note("direction", to_json(v));
    out.note("proper", proper.to_json());
    out.note("immersive", immersive.to_json());
    out.note("2-transversal", two_trans.to_json());

    auto worst = CertStatus::Pass;
    const Certificate* failed = nullptr;
    for (const Certificate* c : {&proper, &immersive, &two_trans}) {
        if (c->failed() && !failed) failed = c;
        if (c->status == CertStatus::Inconclusive && worst == CertStatus::Pass)
            worst = CertStatus::Inconclusive;
    }
    if (failed) {
        Json witness;
        witness["failed_condition"] = to_string(failed->kind);
        witness["witness"] = failed->witness;
        Certificate fail = Certificate::fail(CertKind::Good, witness);
        fail.trace = out.trace;
        return fail;
    }
    out.status = worst;
    return out;
}

CriticalLocus critical_locus(const ParametricCurve& curve, const LinearProjection& proj) {
    ParametricCurve img = project(curve, proj);
    CriticalLocus cl;
    const long l = static_cast<long>(proj.target_dim());
    for (std::size_t k = 0; k < img.num_components(); ++k) {
        CriticalLocus::PerComponent pc;
        pc.locus_gcd = gcd_poly(img.derivative(k));
        if (pc.locus_gcd.is_zero()) {
            pc.dim = CriticalLocus::Dim::OneDimensional;
        } else if (pc.locus_gcd.is_nonzero_constant()) {
            pc.dim = CriticalLocus::Dim::Empty;
        } else {
            pc.dim = CriticalLocus::Dim::Finite;
            pc.count = squarefree_part(pc.locus_gcd).degree();
        }
        cl.components.push_back(std::move(pc));
    }
    // n = 1, i = 0: require dim X_0 <= n + i - l = 1 - l.
    const long bound = 1 - l;
    for (const auto& pc : cl.components) {
        long dim;
        switch (pc.dim) {
            case CriticalLocus::Dim::Empty: dim = -1; break;
            case CriticalLocus::Dim::Finite: dim = 0; break;
            default: dim = 1; break;
        }
        if (dim > bound) cl.hypothesis_pass = false;
    }
    return cl;
}

Json CriticalLocus::to_json() const {
    Json j;
    Json comps = Json::array();
    for (const auto& pc : components) {
        Json c;
        c["gcd"] = pc.locus_gcd.str();
        switch (pc.dim) {
            case Dim::Empty: c["dim"] = "empty"; break;
            case Dim::Finite:
                c["dim"] = "finite";
                c["count"] = pc.count;
                break;
            case Dim::OneDimensional: c["dim"] = "one-dimensional"; break;
        }
        comps.push_back(c);
    }
    j["components"] = comps;
    j["hypothesis_pass"] = hypothesis_pass;
    return j;
}

SearchResult search_direction(const ParametricCurve& curve, const std::vector<Vec>& subspace_basis,
                              std::uint64_t seed, int budget) {
    if (subspace_basis.empty()) throw DimensionError("empty constraint subspace");
    const std::size_t m = curve.ambient_dim();
    for (const auto& v : subspace_basis)
        if (v.size() != m) throw DimensionError("constraint basis arity");

    SearchResult result;
    Rng rng(seed);
    std::set<Direction> seen;
    long box = 2;
    for (int k = 0; k < budget; ++k) {
        if (budget >= 4 && k > 0 && k % (budget / 4) == 0) box *= 2;
        Vec coords(m, G(0));
        bool zero = true;
        for (const auto& bvec : subspace_basis) {
            G c = rng.next_gaussian_int(box);
            if (!c.is_zero()) zero = false;
            for (std::size_t j = 0; j < m; ++j) coords[j] += c * bvec[j];
        }
        if (zero) continue;
        bool all_zero = true;
        for (const auto& c : coords)
            if (!c.is_zero()) all_zero = false;
        if (all_zero) continue;
        Direction v(coords);
        if (!seen.insert(v).second) continue;
        ++result.samples_tried;
        Certificate cert = certify_good(curve, v);
        if (cert.passed()) {
            result.direction = v;
            result.certificate = cert;
            return result;
        }
        result.failures.push_back(Json{{"direction", to_json(v)}, {"certificate", cert.to_json()}});
    }
    return result;
}

} // namespace embcert

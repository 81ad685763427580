#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "embcert/certificate.hpp"
#include "embcert/curve.hpp"
#include "embcert/document.hpp"
#include "embcert/elimination.hpp"
#include "embcert/roots.hpp"

namespace embcert {

/// A projection sent a whole component to a point; properness is violated.
class CollapseError : public Error {
public:
    CollapseError(std::size_t component)
        : Error("component " + std::to_string(component + 1) + " collapses to a point"),
          component_(component) {}
    std::size_t component() const { return component_; }

private:
    std::size_t component_;
};

inline Rat default_precision() {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, 12);
    return {mpz_class(1), d};
}

/// How far one component-pair system was resolved.
enum class PairStatus {
    Empty,      ///< proven: no off-diagonal common zero
    Finite,     ///< eliminants computed, isolates validated
    Infinite,   ///< positive-dimensional off-diagonal solution set
    Unresolved, ///< could not be settled within the elimination toolkit
};

/// One isolated double point: parameters on each side, exact when snapped.
/// `confirmed` means every generator evaluates to a literal zero at exact
/// parameter values (as opposed to interval validation only).
struct DoublePointIsolate {
    RootBox s;
    RootBox t;
    bool confirmed = false;
};

/// Exact elimination record for the ordered component pair (a, b), a <= b.
/// For a == b the diagonal is removed by construction (divided differences
/// plus explicit stripping), and isolates are kept up to the (s,t) <-> (t,s)
/// symmetry; the mirror solution is derivable by swapping the slots.
struct PairSystem {
    std::size_t comp_a = 0;
    std::size_t comp_b = 0;
    PairStatus status = PairStatus::Unresolved;
    std::vector<BiPoly> generators;
    int diag_factors_removed = 0;
    BiPoly common_factor;           // witness when status == Infinite
    UniPoly eliminant_s;
    UniPoly eliminant_t;
    std::vector<DoublePointIsolate> isolates;
    Json trace = Json::array();

    bool same_component() const { return comp_a == comp_b; }
};

struct DoublePointSystem {
    std::vector<PairSystem> pairs;

    bool finite() const {
        for (const auto& p : pairs)
            if (p.status == PairStatus::Infinite || p.status == PairStatus::Unresolved) return false;
        return true;
    }
    bool empty() const {
        for (const auto& p : pairs)
            if (!p.isolates.empty()) return false;
        return finite();
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (const auto& p : pairs) n += p.isolates.size();
        return n;
    }
    Json to_json() const;
};

/// X_0(h) per component: the common-zero locus of the projected derivative
/// tuple, with the exact gcd as evidence.
struct CriticalLocus {
    enum class Dim { Empty, Finite, OneDimensional };
    struct PerComponent {
        UniPoly locus_gcd;
        Dim dim = Dim::Empty;
        int count = 0; // distinct critical parameters when finite
    };
    std::vector<PerComponent> components;
    /// dim X_0(p|_X) <= n - l with n = 1 and l the target dimension.
    bool hypothesis_pass = true;
    Json to_json() const;
};

/// omega_1(X): leading-coefficient directions, one per component, deduplicated.
std::vector<Direction> asymptotic_directions(const ParametricCurve& curve);

/// True when the whole image lies in a proper affine subspace. Secant
/// directions of such a curve cannot fill the projective plane, so the
/// degeneracy is worth surfacing in reports.
bool is_planar_degenerate(const ParametricCurve& curve);

Certificate certify_proper(const ParametricCurve& curve, const LinearProjection& proj);

Certificate certify_immersive(const ParametricCurve& curve, const LinearProjection& proj);

/// Exact double-point extraction for a projected curve. Throws CollapseError
/// when the projection sends a whole component to a point.
DoublePointSystem double_points(const ParametricCurve& curve, const LinearProjection& proj,
                                const Rat& precision = default_precision());

Certificate certify_transversal(const ParametricCurve& curve, const LinearProjection& proj);

Certificate certify_2transversal(const ParametricCurve& curve, const LinearProjection& proj);

/// Conjunction of proper, immersive and 2-transversal for the canonical
/// quotient along v.
Certificate certify_good(const ParametricCurve& curve, const Direction& v);

CriticalLocus critical_locus(const ParametricCurve& curve, const LinearProjection& proj);

struct SearchResult {
    std::optional<Direction> direction;
    Certificate certificate; // certificate of the returned direction, when found
    Json failures = Json::array();
    int samples_tried = 0;
};

/// Seeded rational sampling of directions in the span of `subspace_basis`,
/// each candidate certified exactly; returns the first pass.
SearchResult search_direction(const ParametricCurve& curve, const std::vector<Vec>& subspace_basis,
                              std::uint64_t seed, int budget);

// Shared with the pipeline and lemma harness:

/// Decide whether phi vanishes somewhere on the validated double-point set of
/// one pair system. Pass = proven nonvanishing on every isolate.
struct NonvanishingOutcome {
    CertStatus status = CertStatus::Inconclusive;
    std::optional<std::size_t> witness_index; // isolate index when status == Fail
    Json trace = Json::array();
};
NonvanishingOutcome nonvanishing_on_pair(const PairSystem& pair, const BiPoly& phi);

/// Build the pair system for two coordinate tuples (projected components).
PairSystem build_pair_system(const Component& a, const Component& b, std::size_t idx_a,
                             std::size_t idx_b, const Rat& precision);

} // namespace embcert

#pragma once

#include <cstdint>
#include <string>

#include "embcert/analysis.hpp"

namespace embcert {

/// The genericity statements the harness can sample:
///  - immersion:         p_v o f immersive for generic v
///  - properness:        p_v o f proper for generic v
///  - transversality:    p_v o f transversal for generic v
///  - 2-transversality:  p_v o f 2-transversal for generic v
enum class LemmaId { Immersion, Properness, Transversality, TwoTransversality };

LemmaId lemma_from_string(const std::string& s);
std::string to_string(LemmaId id);

/// Seeded sampling of one genericity statement. Every failing direction is
/// classified by an independent exact bad-locus membership test
/// (tangent / secant / asymptotic data computed from the unprojected curve).
struct LemmaExperimentReport {
    std::string lemma;
    int samples = 0;
    int passes = 0;
    int failures = 0;
    int unexplained_failures = 0;
    Json failure_records = Json::array();
    Json to_json() const;
};

/// fixed_last: sample within the subspace of directions whose last
/// `fixed_last` coordinates vanish (0 = all of P^2).
LemmaExperimentReport run_lemma_experiment(const ParametricCurve& curve, LemmaId id, int samples,
                                           std::uint64_t seed, std::size_t fixed_last = 0);

/// Exact membership of v in the lemma's bad locus, via tangent/secant/
/// asymptotic eliminants of the unprojected curve. Used to classify failures.
bool direction_on_bad_locus(const ParametricCurve& curve, const Direction& v, LemmaId id,
                            const Certificate& failure, Json* explanation);

} // namespace embcert

#pragma once

#include <cstdint>
#include <optional>

#include "embcert/analysis.hpp"
#include "embcert/automorphism.hpp"
#include "embcert/curve.hpp"

namespace embcert {

/// Input validation for the interpolation pipeline: each component injective
/// and immersive, distinct components with disjoint images, proper.
Certificate verify_embedding(const ParametricCurve& curve);

/// Flag W_1 c W_2 c C^3 with the four certified properties: (1) p_{W_1} o g
/// and p_{W_2} o g transversal, (2) p_{W_1} o g 2-transversal, (3) p_{W_2} o g
/// proper, (4) critical-locus dimension bounds at both levels.
struct FlagCertificate {
    Flag flag;
    Certificate prop_trans;
    Certificate prop_2trans;
    Certificate prop_proper;
    Certificate prop_imm;

    bool valid() const {
        return prop_trans.passed() && prop_2trans.passed() && prop_proper.passed() &&
               prop_imm.passed();
    }
    Json to_json() const;
    static FlagCertificate from_json(const Json& j);
};

/// Certify the four properties for one concrete flag.
FlagCertificate certify_flag(const ParametricCurve& g, const Flag& flag);

struct FlagSearchResult {
    std::optional<FlagCertificate> certificate;
    int samples_tried = 0;
    Json failures = Json::array();
};
FlagSearchResult choose_flag(const ParametricCurve& g, std::uint64_t seed, int budget);

/// Certify that e o g distinguishes every double point recorded in dps.
Certificate certify_separation(const DoublePointSystem& dps, const ParametricCurve& g,
                               const Vec& e_row);

struct SeparatingFunctionalResult {
    std::optional<Vec> functional;     // e with (r_level, e) = r_{level+1}
    Certificate certificate;           // separation certificate of the result
    std::optional<FlagCertificate> flag_certificate; // updated when the flag moved
    Json failures = Json::array();
    int rounds = 0;
};

/// The functional completing r_level to r_{level+1}, certified to separate
/// the recorded double points. When the flag's current choice fails, the flag
/// is perturbed within its allowed freedom (level 0: full re-draw; level 1:
/// re-sample W_1 inside the fixed W_2) and re-certified in full.
SeparatingFunctionalResult separating_functional(const DoublePointSystem& dps,
                                                 const ParametricCurve& g,
                                                 const FlagCertificate& flag_cert, int level,
                                                 std::uint64_t seed, int budget);

/// One interpolation step f_l -> f_{l+1}. `level` is l: the number of
/// trailing coordinates already locked to r_l o g.
struct PipelineStep {
    int level = 0;
    ParametricCurve input;    // f_l after any repair
    std::optional<PolynomialAutomorphism> repair;
    Direction direction;      // v_{l+1}, last `level` coordinates zero
    Matrix projection;        // 2x3 matrix with kernel v_{l+1}, preserving locked rows
    Vec functional;           // e: appended coordinate is e o g
    Certificate good_cert;
    Certificate separation_cert;
    Certificate embedding_cert;
    ParametricCurve output;   // f_{l+1}
    Json holo_notes = Json::array();
    Json degree_log;          // input/output degrees and the growth bound
    bool accepted = false;

    PipelineStep() : direction(Vec{G(1)}), projection(Matrix::identity(1)) {}

    Json to_json() const;
    static PipelineStep from_json(const Json& j);
};

/// Assemble f_{l+1} = (p_v o f_l, e o g) with full re-certification and the
/// holomorphic-equivalence existence data per double point.
PipelineStep kaliman_step(const ParametricCurve& f_l, int level, const Direction& v,
                          const Vec& e_row, const ParametricCurve& g);

struct PipelineBudgets {
    int flag = 64;
    int direction = 64;
    int repair = 16;
    int separation = 16;
    int repair_degree = 2;
};

/// The certified record of the whole construction.
struct EquivalenceLedger {
    ParametricCurve f;
    ParametricCurve g;
    FlagCertificate flag_certificate;
    std::vector<PipelineStep> steps;
    Matrix r1; // 1x3, kernel W_2
    Matrix r2; // 2x3, kernel W_1
    Certificate final_cert;
    bool complete = false;
    Json diagnosis; // set when the ledger is partial

    EquivalenceLedger()
        : flag_certificate{Flag({{G(1), G(0), G(0)}, {G(0), G(1), G(0)}}, 3),
                           Certificate{}, Certificate{}, Certificate{}, Certificate{}},
          r1(Matrix(1, 3)),
          r2(Matrix(2, 3)) {}

    Json to_json() const;
    static EquivalenceLedger from_json(const Json& j);
};

EquivalenceLedger run_pipeline(const ParametricCurve& f, const ParametricCurve& g,
                               std::uint64_t seed, const PipelineBudgets& budgets = {});

/// Independent re-verification: re-runs every certificate from the raw data
/// in the ledger and re-checks the exact coordinate identities.
Certificate check_ledger(const EquivalenceLedger& ledger);

} // namespace embcert

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "embcert/analysis.hpp"
#include "embcert/automorphism.hpp"
#include "embcert/document.hpp"
#include "embcert/fixtures.hpp"
#include "embcert/grammar.hpp"
#include "embcert/lemma.hpp"
#include "embcert/pipeline.hpp"

namespace {

using namespace embcert;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

struct RunConfig {
    std::uint64_t seed = 0;
    int budget_flag = 64;
    int budget_direction = 64;
    int budget_repair = 16;
    int budget_repair_degree = 2;
    int budget_separation = 16;
    int samples = 100;
    std::size_t fix_last = 0;
    std::string precision = "1/1000000000000";
    std::string out_path;
    std::string command;
    Json arguments = Json::object();

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["arguments"] = arguments;
        j["seed"] = seed;
        j["budgets"] = Json{{"flag", budget_flag},
                            {"direction", budget_direction},
                            {"repair", budget_repair},
                            {"repair_degree", budget_repair_degree},
                            {"separation", budget_separation}};
        j["samples"] = samples;
        j["fix_last"] = fix_last;
        j["precision"] = precision;
        j["out"] = out_path;
        return j;
    }
    PipelineBudgets pipeline_budgets() const {
        PipelineBudgets b;
        b.flag = budget_flag;
        b.direction = budget_direction;
        b.repair = budget_repair;
        b.repair_degree = budget_repair_degree;
        b.separation = budget_separation;
        return b;
    }
};

ParametricCurve load_curve(const std::string& arg) {
    if (auto fixture = builtin_curve(arg)) return *fixture;
    return parse_curve(read_file(arg));
}

Direction parse_direction(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(') body = body.substr(1);
    if (!body.empty() && body.back() == ')') body.pop_back();
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
        if (c == ':' || c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    Vec coords;
    for (const auto& p : parts) {
        MultiPoly m = parse_multipoly(p, {});
        if (!m.is_constant()) throw DegenerateInputError("direction entries must be constants");
        coords.push_back(m.constant_term());
    }
    return Direction(coords);
}

void emit(const RunConfig& cfg, Json report) {
    Json doc;
    doc["config"] = cfg.to_json();
    for (auto& [key, value] : report.items()) doc[key] = value;
    std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!cfg.out_path.empty()) atomic_write(cfg.out_path, text);
}

int status_exit(const Certificate& cert) {
    switch (cert.status) {
        case CertStatus::Pass: return kExitPass;
        case CertStatus::Fail: return kExitFail;
        case CertStatus::Inconclusive: return kExitFail;
    }
    return kExitFail;
}

int cmd_verify(const RunConfig& cfg, const std::string& curve_arg) {
    ParametricCurve curve = load_curve(curve_arg);
    Certificate cert = verify_embedding(curve);
    emit(cfg, Json{{"curve", to_json(curve)}, {"certificate", cert.to_json()}});
    return status_exit(cert);
}

// decimal image points next to exact parameter isolates, for readability
Json attach_images(const DoublePointSystem& dps, const ParametricCurve& curve,
                   const LinearProjection& proj) {
    Json j = dps.to_json();
    ParametricCurve img = project(curve, proj);
    for (std::size_t k = 0; k < dps.pairs.size(); ++k) {
        const PairSystem& pair = dps.pairs[k];
        for (std::size_t i = 0; i < pair.isolates.size(); ++i) {
            if (!pair.isolates[i].s.exact) continue;
            j["pairs"][k]["isolates"][i]["image"] =
                to_json(img.eval(pair.comp_a, *pair.isolates[i].s.exact));
        }
    }
    return j;
}

Rat parse_precision(const RunConfig& cfg) {
    G p = g_from_json(Json(cfg.precision));
    if (!p.is_real() || p.re() <= 0) throw DegenerateInputError("precision must be a positive rational");
    return p.re();
}

int cmd_analyze(const RunConfig& cfg, const std::string& curve_arg, const std::string& dir_arg) {
    ParametricCurve curve = load_curve(curve_arg);
    Direction v = parse_direction(dir_arg);
    Certificate cert = certify_good(curve, v);
    Json report;
    report["curve"] = to_json(curve);
    report["direction"] = to_json(v);
    report["certificate"] = cert.to_json();
    try {
        LinearProjection proj = canonical_quotient(v);
        DoublePointSystem dps = double_points(curve, proj, parse_precision(cfg));
        report["double_points"] = attach_images(dps, curve, proj);
    } catch (const CollapseError& e) {
        report["double_points"] = Json{{"error", e.what()}};
    }
    emit(cfg, report);
    return status_exit(cert);
}

int cmd_double_points(const RunConfig& cfg, const std::string& curve_arg,
                      const std::string& kernel_arg) {
    ParametricCurve curve = load_curve(curve_arg);
    Direction v = parse_direction(kernel_arg);
    Json report;
    report["curve"] = to_json(curve);
    report["kernel"] = to_json(v);
    try {
        LinearProjection proj = canonical_quotient(v);
        DoublePointSystem dps = double_points(curve, proj, parse_precision(cfg));
        report["system"] = attach_images(dps, curve, proj);
        Certificate trans = certify_transversal(curve, proj);
        report["transversal"] = trans.to_json();
        Certificate imm = certify_immersive(curve, proj);
        report["immersive"] = imm.to_json();
        emit(cfg, report);
        return kExitPass;
    } catch (const CollapseError& e) {
        report["error"] = Json{{"properness_violation", e.what()}};
        emit(cfg, report);
        return kExitFail;
    }
}

int cmd_pipeline(const RunConfig& cfg, const std::string& f_arg, const std::string& g_arg) {
    ParametricCurve f = load_curve(f_arg);
    ParametricCurve g = load_curve(g_arg);
    EquivalenceLedger ledger = run_pipeline(f, g, cfg.seed, cfg.pipeline_budgets());
    Json report;
    report["ledger"] = ledger.to_json();
    if (!ledger.diagnosis.is_null()) {
        emit(cfg, report);
        std::string err = ledger.diagnosis.value("error", std::string());
        if (err == "invalid-input") return kExitInvalid;
        if (err == "budget-exhausted") return kExitBudget;
        return kExitFail;
    }
    // write-then-verify discipline
    Certificate check = check_ledger(ledger);
    report["check"] = check.to_json();
    emit(cfg, report);
    if (!check.passed()) return kExitFail;
    return ledger.complete ? kExitPass : kExitFail;
}

int cmd_check_ledger(const RunConfig& cfg, const std::string& path) {
    Json doc = Json::parse(read_file(path));
    const Json& ledger_json = doc.contains("ledger") ? doc.at("ledger") : doc;
    EquivalenceLedger ledger = EquivalenceLedger::from_json(ledger_json);
    Certificate cert = check_ledger(ledger);
    emit(cfg, Json{{"check", cert.to_json()}});
    return status_exit(cert);
}

int cmd_jet(const RunConfig& cfg, const std::string& path) {
    Json doc = Json::parse(read_file(path));
    Vec p1 = vec_from_json(doc.at("p1"));
    Vec p2 = vec_from_json(doc.at("p2"));
    Matrix a1 = matrix_from_json(doc.at("A1"));
    Matrix a2 = matrix_from_json(doc.at("A2"));
    PolynomialAutomorphism phi = prescribed_jet(p1, p2, a1, a2);

    Json verification;
    verification["phi_p1"] = to_json(phi.evaluate(p1));
    verification["phi_p2"] = to_json(phi.evaluate(p2));
    verification["jacobian_p1"] = to_json(phi.jacobian(p1));
    verification["jacobian_p2"] = to_json(phi.jacobian(p2));
    bool ok = phi.evaluate(p1) == p1 && phi.evaluate(p2) == p2 && phi.jacobian(p1) == a1 &&
              phi.jacobian(p2) == a2;
    verification["exact"] = ok;
    emit(cfg, Json{{"automorphism", phi.to_json()}, {"verification", verification}});
    return ok ? kExitPass : kExitFail;
}

int cmd_lemma_test(const RunConfig& cfg, const std::string& lemma_arg,
                   const std::string& curve_arg) {
    ParametricCurve curve = load_curve(curve_arg);
    LemmaId id = lemma_from_string(lemma_arg);
    LemmaExperimentReport report =
        run_lemma_experiment(curve, id, cfg.samples, cfg.seed, cfg.fix_last);
    emit(cfg, Json{{"report", report.to_json()}});
    return report.unexplained_failures == 0 ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certification of curve projections in C^3 and the certified "
                 "coordinate-interpolation pipeline"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand arguments

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "64-bit seed for all randomized searches");
    app.add_option("--budget-flag", cfg.budget_flag, "flag search budget");
    app.add_option("--budget-direction", cfg.budget_direction, "direction search budget");
    app.add_option("--budget-repair", cfg.budget_repair, "repair shear budget");
    app.add_option("--budget-repair-degree", cfg.budget_repair_degree,
                   "degree bound for repair shear profiles");
    app.add_option("--budget-separation", cfg.budget_separation, "separation perturbation budget");
    app.add_option("--precision", cfg.precision, "root isolation precision (rational)");
    app.add_option("--out", cfg.out_path, "write the report to this path (atomic)");

    std::string curve_arg, second_arg, dir_arg;

    auto* verify = app.add_subcommand("verify", "certify that a curve document is an embedding");
    verify->add_option("curve", curve_arg, "curve file or fixture name")->required();

    auto* analyze = app.add_subcommand("analyze", "certify the good-projection conditions for a "
                                                  "direction");
    analyze->add_option("curve", curve_arg)->required();
    analyze->add_option("direction", dir_arg, "e.g. \"(1:0:1)\"")->required();

    auto* dpts = app.add_subcommand("double-points", "exact double-point system of a projection");
    dpts->add_option("curve", curve_arg)->required();
    dpts->add_option("--kernel", dir_arg, "projection kernel direction")->required();

    auto* pipeline = app.add_subcommand("pipeline", "run the certified interpolation pipeline");
    pipeline->add_option("f", curve_arg)->required();
    pipeline->add_option("g", second_arg)->required();

    auto* checkled = app.add_subcommand("check-ledger", "re-verify an emitted ledger");
    checkled->add_option("ledger", curve_arg)->required();

    auto* jet = app.add_subcommand("jet", "automorphism with prescribed two-point jets");
    jet->add_option("spec", curve_arg, "JSON file with p1, p2, A1, A2")->required();

    auto* lemma = app.add_subcommand("lemma-test", "randomized genericity experiment");
    lemma->add_option("lemma", dir_arg,
                      "immersion | properness | transversality | 2-transversality")
        ->required();
    lemma->add_option("curve", curve_arg)->required();
    lemma->add_option("--samples", cfg.samples, "number of sampled directions");
    lemma->add_option("--fix-last", cfg.fix_last, "sample directions with this many trailing "
                                                  "zero coordinates");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            cfg.command = "verify";
            cfg.arguments = Json{{"curve", curve_arg}};
            return cmd_verify(cfg, curve_arg);
        }
        if (analyze->parsed()) {
            cfg.command = "analyze";
            cfg.arguments = Json{{"curve", curve_arg}, {"direction", dir_arg}};
            return cmd_analyze(cfg, curve_arg, dir_arg);
        }
        if (dpts->parsed()) {
            cfg.command = "double-points";
            cfg.arguments = Json{{"curve", curve_arg}, {"kernel", dir_arg}};
            return cmd_double_points(cfg, curve_arg, dir_arg);
        }
        if (pipeline->parsed()) {
            cfg.command = "pipeline";
            cfg.arguments = Json{{"f", curve_arg}, {"g", second_arg}};
            return cmd_pipeline(cfg, curve_arg, second_arg);
        }
        if (checkled->parsed()) {
            cfg.command = "check-ledger";
            cfg.arguments = Json{{"ledger", curve_arg}};
            return cmd_check_ledger(cfg, curve_arg);
        }
        if (jet->parsed()) {
            cfg.command = "jet";
            cfg.arguments = Json{{"spec", curve_arg}};
            return cmd_jet(cfg, curve_arg);
        }
        if (lemma->parsed()) {
            cfg.command = "lemma-test";
            cfg.arguments = Json{{"lemma", dir_arg}, {"curve", curve_arg}};
            return cmd_lemma_test(cfg, dir_arg, curve_arg);
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DegenerateInputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

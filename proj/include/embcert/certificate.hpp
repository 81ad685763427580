#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "embcert/common.hpp"

namespace embcert {

using Json = nlohmann::ordered_json;

enum class CertKind {
    Proper,
    Immersive,
    Transversal,
    TwoTransversal,
    Good,
    Embedding,
    Separation,
    FlagProperty,
};

enum class CertStatus { Pass, Fail, Inconclusive };

std::string to_string(CertKind k);
std::string to_string(CertStatus s);
CertKind cert_kind_from_string(const std::string& s);
CertStatus cert_status_from_string(const std::string& s);

/// Machine-checkable verdict. A fail always carries a witness; a pass rests
/// only on the exact nonvanishing/emptiness facts listed in the trace.
struct Certificate {
    CertKind kind = CertKind::Good;
    CertStatus status = CertStatus::Inconclusive;
    Json witness;                 // null unless status == Fail
    Json trace = Json::array();   // exact quantities the verdict rests on

    static Certificate pass(CertKind k) {
        Certificate c;
        c.kind = k;
        c.status = CertStatus::Pass;
        return c;
    }
    static Certificate fail(CertKind k, Json witness) {
        if (witness.is_null()) throw DegenerateInputError("fail certificate requires a witness");
        Certificate c;
        c.kind = k;
        c.status = CertStatus::Fail;
        c.witness = std::move(witness);
        return c;
    }
    static Certificate inconclusive(CertKind k, const std::string& reason) {
        Certificate c;
        c.kind = k;
        c.status = CertStatus::Inconclusive;
        c.note("inconclusive-reason", reason);
        return c;
    }

    bool passed() const { return status == CertStatus::Pass; }
    bool failed() const { return status == CertStatus::Fail; }

    Certificate& note(const std::string& label, Json data) {
        trace.push_back(Json{{"label", label}, {"data", std::move(data)}});
        return *this;
    }

    Json to_json() const;
    static Certificate from_json(const Json& j);
};

} // namespace embcert

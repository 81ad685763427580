#include "embcert/document.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "embcert/grammar.hpp"

namespace embcert {

std::string to_string(CertKind k) {
    switch (k) {
        case CertKind::Proper: return "proper";
        case CertKind::Immersive: return "immersive";
        case CertKind::Transversal: return "transversal";
        case CertKind::TwoTransversal: return "2-transversal";
        case CertKind::Good: return "good";
        case CertKind::Embedding: return "embedding";
        case CertKind::Separation: return "separation";
        case CertKind::FlagProperty: return "flag-property";
    }
    return "?";
}

std::string to_string(CertStatus s) {
    switch (s) {
        case CertStatus::Pass: return "pass";
        case CertStatus::Fail: return "fail";
        case CertStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

CertKind cert_kind_from_string(const std::string& s) {
    for (CertKind k : {CertKind::Proper, CertKind::Immersive, CertKind::Transversal,
                       CertKind::TwoTransversal, CertKind::Good, CertKind::Embedding,
                       CertKind::Separation, CertKind::FlagProperty})
        if (to_string(k) == s) return k;
    throw DegenerateInputError("unknown certificate kind: " + s);
}

CertStatus cert_status_from_string(const std::string& s) {
    for (CertStatus c : {CertStatus::Pass, CertStatus::Fail, CertStatus::Inconclusive})
        if (to_string(c) == s) return c;
    throw DegenerateInputError("unknown certificate status: " + s);
}

Json Certificate::to_json() const {
    Json j;
    j["kind"] = embcert::to_string(kind);
    j["status"] = embcert::to_string(status);
    j["witness"] = witness;
    j["trace"] = trace;
    return j;
}

Certificate Certificate::from_json(const Json& j) {
    Certificate c;
    c.kind = cert_kind_from_string(j.at("kind").get<std::string>());
    c.status = cert_status_from_string(j.at("status").get<std::string>());
    c.witness = j.at("witness");
    c.trace = j.at("trace");
    return c;
}

Json to_json(const G& g) { return g.str(); }
Json to_json(const Rat& q) { return rat_str(q); }

Json to_json(const Vec& v) {
    Json j = Json::array();
    for (const auto& c : v) j.push_back(c.str());
    return j;
}

Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
    return j;
}

Json to_json(const Direction& d) { return to_json(d.coords()); }

Json to_json(const UniPoly& p) { return p.str(); }

Json to_json(const CBox& b) {
    Json j;
    j["re_lo"] = rat_str(b.re.lo);
    j["re_hi"] = rat_str(b.re.hi);
    j["im_lo"] = rat_str(b.im.lo);
    j["im_hi"] = rat_str(b.im.hi);
    G c = b.center();
    j["decimal"] = std::to_string(c.re_d()) + (c.im_d() < 0 ? "" : "+") + std::to_string(c.im_d()) + "i";
    j["normative"] = false; // the decimal field only; exact bounds are normative
    return j;
}

Json to_json(const RootBox& r) {
    Json j;
    j["box"] = to_json(r.box);
    j["certified"] = r.certified;
    if (r.exact) j["exact"] = r.exact->str();
    return j;
}

Json to_json(const ParametricCurve& c) {
    Json comps = Json::array();
    for (const auto& comp : c.components()) {
        Json row = Json::array();
        for (const auto& p : comp) row.push_back(p.str());
        comps.push_back(row);
    }
    Json j;
    j["ambient_dim"] = c.ambient_dim();
    j["parameter"] = c.parameter();
    j["components"] = comps;
    return j;
}

Json to_json(const LinearProjection& p) {
    Json j;
    j["matrix"] = to_json(p.matrix());
    Json k = Json::array();
    for (const auto& v : p.kernel()) k.push_back(to_json(v));
    j["kernel"] = k;
    return j;
}

Json to_json(const Flag& f) {
    Json j;
    j["ambient_dim"] = f.ambient_dim();
    Json vs = Json::array();
    for (const auto& v : f.vectors()) vs.push_back(to_json(v));
    j["basis"] = vs;
    return j;
}

namespace {
G parse_constant(const std::string& text) {
    MultiPoly m = parse_multipoly(text, {});
    if (!m.is_constant()) throw DegenerateInputError("expected a constant: " + text);
    return m.constant_term();
}
} // namespace

G g_from_json(const Json& j) { return parse_constant(j.get<std::string>()); }

Rat rat_from_json(const Json& j) {
    G g = g_from_json(j);
    if (!g.is_real()) throw DegenerateInputError("expected a real rational");
    return g.re();
}

Vec vec_from_json(const Json& j) {
    Vec v;
    for (const auto& e : j) v.push_back(g_from_json(e));
    return v;
}

Matrix matrix_from_json(const Json& j) {
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    return Matrix(rows);
}

UniPoly unipoly_from_json(const Json& j, const std::string& var) {
    return parse_unipoly(j.get<std::string>(), var);
}

CBox cbox_from_json(const Json& j) {
    return {RatInterval(rat_from_json(j.at("re_lo")), rat_from_json(j.at("re_hi"))),
            RatInterval(rat_from_json(j.at("im_lo")), rat_from_json(j.at("im_hi")))};
}

ParametricCurve curve_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("components"))
        throw DegenerateInputError("curve document needs ambient_dim and components");
    std::size_t m = j.at("ambient_dim").get<std::size_t>();
    std::string param = j.value("parameter", std::string("t"));
    std::vector<Component> comps;
    for (const auto& row : j.at("components")) {
        Component comp;
        for (const auto& entry : row) comp.push_back(parse_unipoly(entry.get<std::string>(), param));
        if (comp.size() != m)
            throw DimensionError("component with " + std::to_string(comp.size()) +
                                 " coordinates in ambient dimension " + std::to_string(m));
        comps.push_back(std::move(comp));
    }
    ParametricCurve c(m, param, comps);
    c.validate_strict();
    return c;
}

LinearProjection projection_from_json(const Json& j) {
    Matrix m = matrix_from_json(j.at("matrix"));
    std::vector<Vec> kernel;
    for (const auto& v : j.at("kernel")) kernel.push_back(vec_from_json(v));
    return {m, kernel};
}

Flag flag_from_json(const Json& j) {
    std::vector<Vec> basis;
    for (const auto& v : j.at("basis")) basis.push_back(vec_from_json(v));
    return {basis, j.at("ambient_dim").get<std::size_t>()};
}

ParametricCurve parse_curve(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("curve document is not valid JSON: ") + e.what(),
                         static_cast<std::size_t>(e.byte));
    }
    return curve_from_json(j);
}

void atomic_write(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename " + tmp);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace embcert

#pragma once

#include <string>

#include "embcert/certificate.hpp"
#include "embcert/curve.hpp"
#include "embcert/interval.hpp"
#include "embcert/roots.hpp"

namespace embcert {

// JSON-compatible documents. Exact values are normative and printed in the
// polynomial grammar; any "decimal" field is advisory only.

Json to_json(const G& g);
Json to_json(const Rat& q);
Json to_json(const Vec& v);
Json to_json(const Matrix& m);
Json to_json(const Direction& d);
Json to_json(const UniPoly& p);
Json to_json(const CBox& b);
Json to_json(const RootBox& r);
Json to_json(const ParametricCurve& c);
Json to_json(const LinearProjection& p);
Json to_json(const Flag& f);

G g_from_json(const Json& j);
Rat rat_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
UniPoly unipoly_from_json(const Json& j, const std::string& var);
CBox cbox_from_json(const Json& j);
ParametricCurve curve_from_json(const Json& j);
LinearProjection projection_from_json(const Json& j);
Flag flag_from_json(const Json& j);

/// Parse a curve document (JSON text with ambient_dim / parameter /
/// components) and enforce the input invariants.
ParametricCurve parse_curve(const std::string& text);

/// Write with a temp-file-and-rename so readers never see partial output.
void atomic_write(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

} // namespace embcert

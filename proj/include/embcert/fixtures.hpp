#pragma once

#include <optional>
#include <string>

#include "embcert/curve.hpp"

namespace embcert {

/// t -> (t, t^2, t^3).
ParametricCurve twisted_cubic();

/// t -> (t, 0, 0).
ParametricCurve standard_line();

/// Three disjoint lines { z+y=0, x=1 }, { x=y=0 }, { z-y=0, x=-1 },
/// parametrized as t -> (1, t, -t), (0, 0, t), (-1, t, t).
ParametricCurve three_lines();

/// Named fixture lookup for the CLI; nullopt when the name is unknown.
std::optional<ParametricCurve> builtin_curve(const std::string& name);

} // namespace embcert

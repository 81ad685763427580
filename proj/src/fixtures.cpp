#include "embcert/fixtures.hpp"

#include "embcert/grammar.hpp"

namespace embcert {

namespace {
Component comp(const std::string& x, const std::string& y, const std::string& z) {
    return {parse_unipoly(x, "t"), parse_unipoly(y, "t"), parse_unipoly(z, "t")};
}
} // namespace

ParametricCurve twisted_cubic() { return {3, "t", {comp("t", "t^2", "t^3")}}; }

ParametricCurve standard_line() { return {3, "t", {comp("t", "0", "0")}}; }

ParametricCurve three_lines() {
    return {3, "t", {comp("1", "t", "-t"), comp("0", "0", "t"), comp("-1", "t", "t")}};
}

std::optional<ParametricCurve> builtin_curve(const std::string& name) {
    if (name == "twisted-cubic") return twisted_cubic();
    if (name == "standard-line") return standard_line();
    if (name == "three-lines") return three_lines();
    return std::nullopt;
}

} // namespace embcert

#include "embcert/curve.hpp"

#include <sstream>

#include "embcert/grammar.hpp"

namespace embcert {

void ParametricCurve::validate_strict() const {
    if (components_.empty()) throw DegenerateInputError("curve has no components");
    if (m_ == 0) throw DimensionError("ambient dimension must be positive");
    for (std::size_t k = 0; k < components_.size(); ++k)
        if (component_is_constant(k))
            throw DegenerateInputError("component " + std::to_string(k + 1) +
                                       " is constant; not a curve component");
}

std::string Direction::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (k) os << ":";
        os << coords_[k].str();
    }
    os << ")";
    return os.str();
}

LinearProjection canonical_quotient(const std::vector<Vec>& kernel, std::size_t ambient_dim) {
    if (kernel.empty() || kernel.size() >= ambient_dim)
        throw DimensionError("kernel dimension out of range");
    for (const auto& v : kernel)
        if (v.size() != ambient_dim) throw DimensionError("kernel vector arity");
    Matrix k(std::vector<Vec>(kernel.begin(), kernel.end()));
    if (rank(k) != kernel.size()) throw DegenerateInputError("kernel vectors are dependent");
    std::vector<Vec> ann = kernel_basis(k);
    Matrix rows(ann);
    RrefResult rr = rref(rows);
    return LinearProjection(rr.mat, kernel);
}

ParametricCurve project(const ParametricCurve& curve, const LinearProjection& proj) {
    if (proj.source_dim() != curve.ambient_dim())
        throw DimensionError("projection source dimension != curve ambient dimension");
    std::vector<Component> comps;
    comps.reserve(curve.num_components());
    const Matrix& mat = proj.matrix();
    for (const auto& comp : curve.components()) {
        Component img(mat.rows(), UniPoly(curve.parameter()));
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j)
                img[i] += comp[j] * mat.at(i, j);
        comps.push_back(std::move(img));
    }
    return {mat.rows(), curve.parameter(), std::move(comps)};
}

} // namespace embcert

#pragma once

#include <string>
#include <vector>

#include "embcert/linalg.hpp"
#include "embcert/unipoly.hpp"

namespace embcert {

/// One connected component of X: a polynomial map C -> C^m.
using Component = std::vector<UniPoly>;

/// Finite disjoint union of polynomial maps C -> C^m. Points of X are
/// (component index, parameter value) pairs; equal ambient images never
/// identify domain points.
class ParametricCurve {
public:
    ParametricCurve() : m_(0), param_("t") {}
    ParametricCurve(std::size_t ambient_dim, std::string param, std::vector<Component> components)
        : m_(ambient_dim), param_(std::move(param)), components_(std::move(components)) {
        for (const auto& comp : components_)
            if (comp.size() != m_) throw DimensionError("component arity != ambient dimension");
    }

    std::size_t ambient_dim() const { return m_; }
    const std::string& parameter() const { return param_; }
    std::size_t num_components() const { return components_.size(); }
    const std::vector<Component>& components() const { return components_; }
    const Component& component(std::size_t k) const { return components_.at(k); }

    /// Highest coordinate degree over all components.
    int degree() const {
        int d = kZeroPolyDegree;
        for (const auto& comp : components_)
            for (const auto& p : comp) d = std::max(d, p.degree());
        return d;
    }

    bool component_is_constant(std::size_t k) const {
        for (const auto& p : components_.at(k))
            if (p.degree() > 0) return false;
        return true;
    }

    /// Input invariants: nonempty, and no constant component.
    void validate_strict() const;

    Vec eval(std::size_t comp, const G& t) const {
        Vec v;
        v.reserve(m_);
        for (const auto& p : components_.at(comp)) v.push_back(p.eval(t));
        return v;
    }

    std::vector<UniPoly> derivative(std::size_t comp) const {
        std::vector<UniPoly> d;
        d.reserve(m_);
        for (const auto& p : components_.at(comp)) d.push_back(p.derivative());
        return d;
    }

    friend bool operator==(const ParametricCurve& a, const ParametricCurve& b) {
        return a.m_ == b.m_ && a.components_ == b.components_;
    }
    friend bool operator!=(const ParametricCurve& a, const ParametricCurve& b) { return !(a == b); }

private:
    std::size_t m_;
    std::string param_;
    std::vector<Component> components_;
};

/// Point of P^{m-1}; canonical form scales the first nonzero coordinate to 1.
class Direction {
public:
    explicit Direction(Vec coords) : coords_(std::move(coords)) {
        std::size_t first = coords_.size();
        for (std::size_t k = 0; k < coords_.size(); ++k)
            if (!coords_[k].is_zero()) {
                first = k;
                break;
            }
        if (first == coords_.size()) throw DegenerateInputError("zero vector is not a direction");
        G inv = coords_[first].inverse();
        for (auto& c : coords_) c *= inv;
    }

    const Vec& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }

    friend bool operator==(const Direction& a, const Direction& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Direction& a, const Direction& b) { return !(a == b); }
    friend bool operator<(const Direction& a, const Direction& b) { return a.coords_ < b.coords_; }

    std::string str() const;

private:
    Vec coords_;
};

/// Exact quotient map C^m -> C^m / V given by a full-rank matrix whose
/// kernel is V.
class LinearProjection {
public:
    LinearProjection(Matrix matrix, std::vector<Vec> kernel)
        : matrix_(std::move(matrix)), kernel_(std::move(kernel)) {
        for (const auto& v : kernel_) {
            Vec image = matrix_.apply(v);
            for (const auto& c : image)
                if (!c.is_zero()) throw DegenerateInputError("projection does not kill its kernel");
        }
        if (rank(matrix_) != matrix_.rows())
            throw DegenerateInputError("projection matrix is rank-deficient");
    }

    const Matrix& matrix() const { return matrix_; }
    const std::vector<Vec>& kernel() const { return kernel_; }
    std::size_t source_dim() const { return matrix_.cols(); }
    std::size_t target_dim() const { return matrix_.rows(); }

private:
    Matrix matrix_;
    std::vector<Vec> kernel_;
};

/// Deterministic quotient with the given kernel: the RREF basis of the
/// annihilator { x : x . k = 0 for all kernel vectors k }.
LinearProjection canonical_quotient(const std::vector<Vec>& kernel, std::size_t ambient_dim);

inline LinearProjection canonical_quotient(const Direction& v) {
    return canonical_quotient({v.coords()}, v.dim());
}

/// p o f as data: the matrix applied to the coordinate tuple of every component.
ParametricCurve project(const ParametricCurve& curve, const LinearProjection& proj);

/// Full flag W_1 c W_2 c ... c C^m, stored as an incremental basis.
class Flag {
public:
    Flag(std::vector<Vec> basis, std::size_t ambient_dim) : basis_(std::move(basis)), m_(ambient_dim) {
        if (basis_.size() != m_ - 1) throw DimensionError("full flag needs m-1 basis vectors");
        Matrix all(std::vector<Vec>(basis_.begin(), basis_.end()));
        if (rank(all) != basis_.size()) throw DegenerateInputError("flag basis is dependent");
    }

    std::size_t ambient_dim() const { return m_; }
    /// Basis of W_k.
    std::vector<Vec> subspace(std::size_t k) const {
        if (k == 0 || k >= m_) throw DimensionError("flag level out of range");
        return {basis_.begin(), basis_.begin() + static_cast<long>(k)};
    }
    const std::vector<Vec>& vectors() const { return basis_; }

private:
    std::vector<Vec> basis_;
    std::size_t m_;
};

} // namespace embcert

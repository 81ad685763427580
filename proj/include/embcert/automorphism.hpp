#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "embcert/curve.hpp"
#include "embcert/document.hpp"
#include "embcert/linalg.hpp"
#include "embcert/multipoly.hpp"

namespace embcert {

/// Elementary shear x_i += lambda * profile(x_j, ...). The profile never
/// involves the target coordinate, so the Jacobian determinant is 1.
struct ElementaryShear {
    std::size_t target;  // coordinate index i
    G lambda;
    MultiPoly profile;   // polynomial in the other coordinates

    ElementaryShear(std::size_t target_idx, G lam, MultiPoly prof)
        : target(target_idx), lambda(std::move(lam)), profile(std::move(prof)) {
        if (!profile.independent_of(target))
            throw DegenerateInputError("shear profile involves its own target coordinate");
    }

    ElementaryShear inverse() const { return {target, -lambda, profile}; }

    /// The Appendix cubic shear x_i + lambda (x_j^3 - x_j^2); it fixes 0 and
    /// (1,...,1), has identity jet at 0 and jet E_ij(lambda) at (1,...,1).
    static ElementaryShear cubic(std::size_t m, std::size_t i, std::size_t j, const G& lambda);
};

/// Invertible affine map x -> A x + b. The matrix part carries the jet; the
/// offset lets factors exchange or normalize base points.
struct AffineMap {
    Matrix mat;
    Vec offset;

    AffineMap(Matrix a, Vec b) : mat(std::move(a)), offset(std::move(b)) {
        if (mat.rows() != mat.cols() || mat.rows() != offset.size())
            throw DimensionError("affine map shape");
    }
    static AffineMap linear(Matrix a) {
        Vec zero(a.rows(), G(0));
        return {std::move(a), std::move(zero)};
    }

    AffineMap inverse() const {
        Matrix inv = embcert::inverse(mat);
        Vec b = inv.apply(offset);
        for (auto& c : b) c = -c;
        return {inv, b};
    }
};

using AutomorphismFactor = std::variant<ElementaryShear, AffineMap>;

/// Composition of elementary shears and affine maps; factors apply in list
/// order: phi(x) = F_k(...F_1(x)).
class PolynomialAutomorphism {
public:
    PolynomialAutomorphism() : m_(0) {}
    explicit PolynomialAutomorphism(std::size_t ambient_dim) : m_(ambient_dim) {}
    PolynomialAutomorphism(std::size_t ambient_dim, std::vector<AutomorphismFactor> factors)
        : m_(ambient_dim), factors_(std::move(factors)) {}

    std::size_t ambient_dim() const { return m_; }
    const std::vector<AutomorphismFactor>& factors() const { return factors_; }
    bool is_identity_factor_free() const { return factors_.empty(); }

    void push(AutomorphismFactor f) { factors_.push_back(std::move(f)); }
    void append(const PolynomialAutomorphism& other) {
        for (const auto& f : other.factors_) factors_.push_back(f);
    }

    PolynomialAutomorphism inverse() const;

    Vec evaluate(const Vec& point) const;

    /// Exact Jacobian at a point, by the chain rule over the factor list.
    Matrix jacobian(const Vec& point) const;

    /// Every factor leaves the last l coordinates unchanged as polynomials.
    bool fixes_last(std::size_t l) const;

    /// Jacobian determinant, constant by construction: the product of the
    /// linear factors' determinants (shears contribute 1).
    G jacobian_determinant() const;

    Json to_json() const;
    static PolynomialAutomorphism from_json(const Json& j);

private:
    std::size_t m_;
    std::vector<AutomorphismFactor> factors_;
};

PolynomialAutomorphism compose(const PolynomialAutomorphism& first,
                               const PolynomialAutomorphism& second);

/// Coordinate-wise polynomial composition phi o f.
ParametricCurve apply_automorphism(const ParametricCurve& curve,
                                   const PolynomialAutomorphism& phi);

/// Write A in SL_m as a product of transvections I + lambda E_ij, by exact
/// Gauss elimination with a fixed pivot rule. The product of the returned
/// factors (in list order) equals A.
struct Transvection {
    std::size_t i;
    std::size_t j;
    G lambda;
    Matrix matrix(std::size_t m) const {
        Matrix t = Matrix::identity(m);
        t.at(i, j) = lambda;
        return t;
    }
};
std::vector<Transvection> sl_decompose(const Matrix& a);

/// Appendix construction: an automorphism fixing p1 and p2 with prescribed
/// unimodular jets A1 at p1 and A2 at p2, built from cubic shears and affine
/// maps.
PolynomialAutomorphism prescribed_jet(const Vec& p1, const Vec& p2, const Matrix& a1,
                                      const Matrix& a2);

/// Random shear fixing the last l coordinates: adds to one of the first m-l
/// coordinates a seeded polynomial (degrees 1..degree_bound) in the last l
/// coordinates.
PolynomialAutomorphism random_repair_shear(std::size_t m, std::size_t fixed_last,
                                           std::uint64_t seed, int degree_bound);

} // namespace embcert

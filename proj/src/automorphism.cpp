#include "embcert/automorphism.hpp"

#include <algorithm>

#include "embcert/grammar.hpp"
#include "embcert/rng.hpp"

namespace embcert {

namespace {

std::vector<std::string> coordinate_vars(std::size_t m) {
    std::vector<std::string> vars;
    vars.reserve(m);
    for (std::size_t k = 1; k <= m; ++k) vars.push_back("x" + std::to_string(k));
    return vars;
}

} // namespace

ElementaryShear ElementaryShear::cubic(std::size_t m, std::size_t i, std::size_t j, const G& lambda) {
    if (i == j || i >= m || j >= m) throw DegenerateInputError("cubic shear needs i != j within range");
    auto vars = coordinate_vars(m);
    MultiPoly xj = MultiPoly::variable(j, vars);
    MultiPoly profile = xj * xj * xj - xj * xj;
    return {i, lambda, profile};
}

PolynomialAutomorphism PolynomialAutomorphism::inverse() const {
    PolynomialAutomorphism inv(m_);
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        if (std::holds_alternative<ElementaryShear>(*it))
            inv.push(std::get<ElementaryShear>(*it).inverse());
        else
            inv.push(std::get<AffineMap>(*it).inverse());
    }
    return inv;
}

Vec PolynomialAutomorphism::evaluate(const Vec& point) const {
    if (point.size() != m_) throw DimensionError("automorphism/point dimension mismatch");
    Vec p = point;
    for (const auto& f : factors_) {
        if (std::holds_alternative<ElementaryShear>(f)) {
            const auto& sh = std::get<ElementaryShear>(f);
            p[sh.target] += sh.lambda * sh.profile.eval(p);
        } else {
            const auto& aff = std::get<AffineMap>(f);
            Vec q = aff.mat.apply(p);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] += aff.offset[k];
            p = std::move(q);
        }
    }
    return p;
}

Matrix PolynomialAutomorphism::jacobian(const Vec& point) const {
    if (point.size() != m_) throw DimensionError("automorphism/point dimension mismatch");
    Vec p = point;
    Matrix jac = Matrix::identity(m_);
    for (const auto& f : factors_) {
        if (std::holds_alternative<ElementaryShear>(f)) {
            const auto& sh = std::get<ElementaryShear>(f);
            Matrix jf = Matrix::identity(m_);
            for (std::size_t k = 0; k < m_; ++k) {
                if (k == sh.target) continue;
                G partial = sh.profile.partial(k).eval(p);
                if (!partial.is_zero()) jf.at(sh.target, k) = sh.lambda * partial;
            }
            jac = jf * jac;
            p[sh.target] += sh.lambda * sh.profile.eval(p);
        } else {
            const auto& aff = std::get<AffineMap>(f);
            jac = aff.mat * jac;
            Vec q = aff.mat.apply(p);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] += aff.offset[k];
            p = std::move(q);
        }
    }
    return jac;
}

bool PolynomialAutomorphism::fixes_last(std::size_t l) const {
    if (l >= m_) return false;
    for (const auto& f : factors_) {
        if (std::holds_alternative<ElementaryShear>(f)) {
            if (std::get<ElementaryShear>(f).target >= m_ - l) return false;
        } else {
            const auto& aff = std::get<AffineMap>(f);
            for (std::size_t r = m_ - l; r < m_; ++r) {
                if (!aff.offset[r].is_zero()) return false;
                for (std::size_t c = 0; c < m_; ++c)
                    if (aff.mat.at(r, c) != (r == c ? G(1) : G(0))) return false;
            }
        }
    }
    return true;
}

G PolynomialAutomorphism::jacobian_determinant() const {
    G d(1);
    for (const auto& f : factors_)
        if (std::holds_alternative<AffineMap>(f)) d *= det(std::get<AffineMap>(f).mat);
    return d;
}

Json PolynomialAutomorphism::to_json() const {
    Json j;
    j["ambient_dim"] = m_;
    Json fs = Json::array();
    for (const auto& f : factors_) {
        if (std::holds_alternative<ElementaryShear>(f)) {
            const auto& sh = std::get<ElementaryShear>(f);
            fs.push_back(Json{{"type", "shear"},
                              {"target", sh.target + 1},
                              {"lambda", sh.lambda.str()},
                              {"profile", sh.profile.str()}});
        } else {
            const auto& aff = std::get<AffineMap>(f);
            fs.push_back(Json{{"type", "affine"},
                              {"matrix", embcert::to_json(aff.mat)},
                              {"offset", embcert::to_json(aff.offset)}});
        }
    }
    j["factors"] = fs;
    return j;
}

PolynomialAutomorphism PolynomialAutomorphism::from_json(const Json& j) {
    std::size_t m = j.at("ambient_dim").get<std::size_t>();
    PolynomialAutomorphism phi(m);
    auto vars = coordinate_vars(m);
    for (const auto& f : j.at("factors")) {
        std::string type = f.at("type").get<std::string>();
        if (type == "shear") {
            std::size_t target = f.at("target").get<std::size_t>() - 1;
            G lambda = g_from_json(f.at("lambda"));
            MultiPoly profile = parse_multipoly(f.at("profile").get<std::string>(), vars);
            phi.push(ElementaryShear(target, lambda, profile));
        } else if (type == "affine") {
            phi.push(AffineMap(matrix_from_json(f.at("matrix")), vec_from_json(f.at("offset"))));
        } else {
            throw DegenerateInputError("unknown automorphism factor type: " + type);
        }
    }
    return phi;
}

PolynomialAutomorphism compose(const PolynomialAutomorphism& first,
                               const PolynomialAutomorphism& second) {
    if (first.ambient_dim() != second.ambient_dim())
        throw DimensionError("automorphism composition dimension mismatch");
    PolynomialAutomorphism out(first.ambient_dim());
    out.append(first);
    out.append(second);
    return out;
}

ParametricCurve apply_automorphism(const ParametricCurve& curve,
                                   const PolynomialAutomorphism& phi) {
    if (phi.ambient_dim() != curve.ambient_dim())
        throw DimensionError("automorphism/curve dimension mismatch");
    std::vector<Component> comps;
    for (const auto& comp : curve.components()) {
        Component tuple = comp;
        for (const auto& f : phi.factors()) {
            if (std::holds_alternative<ElementaryShear>(f)) {
                const auto& sh = std::get<ElementaryShear>(f);
                tuple[sh.target] += sh.profile.compose(tuple) * sh.lambda;
            } else {
                const auto& aff = std::get<AffineMap>(f);
                Component next(tuple.size(), UniPoly(curve.parameter()));
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    for (std::size_t j = 0; j < tuple.size(); ++j)
                        next[i] += tuple[j] * aff.mat.at(i, j);
                    next[i] += UniPoly::constant(aff.offset[i], curve.parameter());
                }
                tuple = std::move(next);
            }
        }
        comps.push_back(std::move(tuple));
    }
    return {curve.ambient_dim(), curve.parameter(), std::move(comps)};
}

std::vector<Transvection> sl_decompose(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("sl_decompose needs a square matrix");
    if (det(a) != G(1)) throw DegenerateInputError("sl_decompose needs determinant exactly 1");
    const std::size_t m = a.rows();
    std::vector<Vec> w = a.data();
    std::vector<Transvection> ops; // left-multiplications reducing a to the identity

    auto row_add = [&](std::size_t dst, std::size_t src, const G& lambda) {
        for (std::size_t c = 0; c < m; ++c) w[dst][c] += lambda * w[src][c];
        ops.push_back(Transvection{dst, src, lambda});
    };

    for (std::size_t k = 0; k < m; ++k) {
        if (w[k][k] != G(1)) {
            std::size_t helper = m;
            for (std::size_t i = k + 1; i < m; ++i)
                if (!w[i][k].is_zero()) {
                    helper = i;
                    break;
                }
            if (helper == m) {
                if (k + 1 < m) {
                    // column k vanishes below the pivot; seed a helper row
                    row_add(k + 1, k, G(1));
                    helper = k + 1;
                } else {
                    throw Error("sl_decompose: unit pivot expected in the last column");
                }
            }
            row_add(k, helper, (G(1) - w[k][k]) / w[helper][k]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == k || w[i][k].is_zero()) continue;
            row_add(i, k, -w[i][k]);
        }
    }
    // T_r ... T_1 A = I, hence A = inv(T_1) ... inv(T_r) in list order.
    std::vector<Transvection> out;
    out.reserve(ops.size());
    for (const auto& t : ops) out.push_back(Transvection{t.i, t.j, -t.lambda});
    return out;
}

namespace {

/// Factor list realizing jet B at (1,...,1) with identity jet at 0, both
/// points fixed: reversed cubic shears of the transvection decomposition.
void push_shears_for_jet_at_one(PolynomialAutomorphism& phi, const Matrix& b) {
    std::vector<Transvection> ts = sl_decompose(b);
    const std::size_t m = b.rows();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it)
        phi.push(ElementaryShear::cubic(m, it->i, it->j, it->lambda));
}

} // namespace

PolynomialAutomorphism prescribed_jet(const Vec& p1, const Vec& p2, const Matrix& a1,
                                      const Matrix& a2) {
    const std::size_t m = p1.size();
    if (m < 2) throw DegenerateInputError("prescribed_jet needs ambient dimension >= 2");
    if (p2.size() != m || a1.rows() != m || a1.cols() != m || a2.rows() != m || a2.cols() != m)
        throw DimensionError("prescribed_jet shape mismatch");
    if (p1 == p2) throw DegenerateInputError("prescribed_jet needs two distinct points");
    if (det(a1) != G(1) || det(a2) != G(1))
        throw DegenerateInputError("prescribed_jet needs unimodular jets");

    // Affine normalization N with N(0) = p1 and N(1,...,1) = p2.
    Vec d(m);
    for (std::size_t k = 0; k < m; ++k) d[k] = p2[k] - p1[k];
    std::size_t r = m;
    for (std::size_t k = 0; k < m; ++k)
        if (!d[k].is_zero()) {
            r = k;
            break;
        }
    Matrix L = Matrix::identity(m);
    for (std::size_t k = 0; k < m; ++k) {
        G v = d[k] - G(1);
        if (k == r) v += G(1);
        L.at(k, r) = v;
    }
    AffineMap N(L, p1);
    bool n_trivial = L.is_identity();
    for (const auto& c : p1)
        if (!c.is_zero()) n_trivial = false;

    Matrix Linv = inverse(L);
    Matrix b1 = Linv * a1 * L;
    Matrix b2 = Linv * a2 * L;

    PolynomialAutomorphism phi(m);
    if (b1.is_identity() && b2.is_identity()) return phi;

    if (!n_trivial) phi.push(N.inverse());
    if (!b1.is_identity()) {
        // conjugate by the involution through the midpoint, which swaps the
        // two normalized points and has jet -I everywhere
        Matrix neg(m, m);
        for (std::size_t k = 0; k < m; ++k) neg.at(k, k) = G(-1);
        Vec ones(m, G(1));
        AffineMap sigma(neg, ones);
        phi.push(sigma);
        push_shears_for_jet_at_one(phi, b1);
        phi.push(sigma);
    }
    if (!b2.is_identity()) push_shears_for_jet_at_one(phi, b2);
    if (!n_trivial) phi.push(N);
    return phi;
}

PolynomialAutomorphism random_repair_shear(std::size_t m, std::size_t fixed_last,
                                           std::uint64_t seed, int degree_bound) {
    if (fixed_last < 1 || fixed_last >= m)
        throw DegenerateInputError("repair shear needs 1 <= l < m");
    if (degree_bound < 1)
        throw DegenerateInputError(
            "constant shears cannot separate anything; minimum effective degree is 1");
    Rng rng(seed);
    const std::size_t target = static_cast<std::size_t>(rng.next_int(0, static_cast<long>(m - fixed_last) - 1));
    auto vars = coordinate_vars(m);

    // Enumerate monomials in the last `fixed_last` coordinates with total
    // degree 1..degree_bound, deterministically.
    std::vector<MultiPoly::Key> keys;
    std::vector<int> expo(fixed_last, 0);
    auto emit = [&](auto&& self, std::size_t pos, int budget) -> void {
        if (pos == fixed_last) {
            int total = 0;
            for (int e : expo) total += e;
            if (total >= 1) {
                MultiPoly::Key key(m, 0);
                for (std::size_t k = 0; k < fixed_last; ++k) key[m - fixed_last + k] = expo[k];
                keys.push_back(key);
            }
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            expo[pos] = e;
            self(self, pos + 1, budget - e);
        }
        expo[pos] = 0;
    };
    emit(emit, 0, degree_bound);

    MultiPoly profile(vars);
    for (int attempt = 0; attempt < 8 && profile.is_zero(); ++attempt)
        for (const auto& key : keys) profile.set_coeff(key, rng.next_gaussian_int(2));
    if (profile.is_zero() && !keys.empty()) profile.set_coeff(keys.front(), G(1));

    PolynomialAutomorphism phi(m);
    phi.push(ElementaryShear(target, G(1), profile));
    return phi;
}

} // namespace embcert

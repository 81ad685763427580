#include "embcert/linalg.hpp"

#include <algorithm>

namespace embcert {

RrefResult rref(const Matrix& m) {
    std::vector<Vec> rows = m.data();
    const std::size_t nc = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (!rows[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        G inv = rows[r][c].inverse();
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            G f = rows[i][c];
            for (std::size_t j = 0; j < nc; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r, Vec(nc, G(0)));
    RrefResult out;
    out.mat = Matrix(rows.empty() ? std::vector<Vec>{} : rows);
    if (rows.empty()) out.mat = Matrix(0, nc);
    out.rank = r;
    out.pivot_cols = pivots;
    return out;
}

std::vector<Vec> kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    const std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (auto c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < nc; ++free) {
        if (is_pivot[free]) continue;
        Vec v(nc, G(0));
        v[free] = G(1);
        for (std::size_t i = 0; i < rr.rank; ++i) {
            // pivot row i: x_{pivot_i} = -sum over free columns
            v[rr.pivot_cols[i]] = -rr.mat.at(i, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

G det(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("det of non-square matrix");
    std::vector<Vec> a = m.data();
    const std::size_t n = a.size();
    G result(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == n) return G(0);
        if (sel != c) {
            std::swap(a[sel], a[c]);
            result = -result;
        }
        result *= a[c][c];
        G inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            G f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return result;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = G(1);
    }
    RrefResult rr = rref(aug);
    if (rr.rank != n || rr.pivot_cols.size() != n || rr.pivot_cols[n - 1] != n - 1)
        throw DegenerateInputError("singular matrix");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
    return inv;
}

Vec solve(const Matrix& m, const Vec& b) {
    if (m.rows() != b.size()) throw DimensionError("solve shape");
    const std::size_t n = m.cols();
    Matrix aug(m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n) = b[i];
    }
    RrefResult rr = rref(aug);
    for (auto c : rr.pivot_cols)
        if (c == n) throw DegenerateInputError("inconsistent linear system");
    if (rr.rank != n) throw DegenerateInputError("underdetermined linear system");
    Vec x(n, G(0));
    for (std::size_t i = 0; i < n; ++i) x[rr.pivot_cols[i]] = rr.mat.at(i, n);
    return x;
}

} // namespace embcert

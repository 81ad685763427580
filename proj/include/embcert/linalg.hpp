#pragma once

#include <vector>

#include "embcert/rational.hpp"

namespace embcert {

using Vec = std::vector<G>;

/// Dense exact matrix over Q(i). Sizes here are tiny (m <= 4).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, Vec(cols, G(0))) {}
    explicit Matrix(std::vector<Vec> rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()), data_(std::move(rows)) {
        for (const auto& r : data_)
            if (r.size() != cols_) throw DimensionError("ragged matrix");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m.at(k, k) = G(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    G& at(std::size_t r, std::size_t c) { return data_.at(r).at(c); }
    const G& at(std::size_t r, std::size_t c) const { return data_.at(r).at(c); }
    const Vec& row(std::size_t r) const { return data_.at(r); }
    const std::vector<Vec>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionError("matrix product shape");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (data_[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += data_[i][k] * o.at(k, j);
            }
        return r;
    }

    Vec apply(const Vec& v) const {
        if (cols_ != v.size()) throw DimensionError("matrix-vector shape");
        Vec r(rows_, G(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += data_[i][j] * v[j];
        return r;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (data_[i][j] != (i == j ? G(1) : G(0))) return false;
        return true;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Vec> data_;
};

struct RrefResult {
    Matrix mat;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan into reduced row-echelon form; deterministic pivot rule
/// (first nonzero entry, row order), zero rows dropped.
RrefResult rref(const Matrix& m);

/// Basis of { x : M x = 0 }, from the RREF free-variable parametrization.
std::vector<Vec> kernel_basis(const Matrix& m);

std::size_t rank(const Matrix& m);

G det(const Matrix& m);

/// Exact inverse; throws DegenerateInputError when singular.
Matrix inverse(const Matrix& m);

/// Solve M x = b; throws when inconsistent or underdetermined.
Vec solve(const Matrix& m, const Vec& b);

} // namespace embcert

#pragma once

/// Dense exact matrices over a Field, with the elimination primitives
/// (rank, kernel, solve, cokernel) every other module reduces to.
///
/// Pivoting is deterministic (first nonzero entry in column order), so
/// every basis choice made downstream is reproducible across runs.

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "locsys/field.hpp"

namespace locsys {

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols, Field field)
        : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar(0)) {}

    static Matrix zeros(std::size_t rows, std::size_t cols, Field field) {
        return Matrix(rows, cols, field);
    }

    static Matrix identity(std::size_t n, Field field) {
        Matrix m(n, n, field);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    /// Row-major construction from small integer literals.
    static Matrix from_ints(std::size_t rows, std::size_t cols, Field field,
                            std::initializer_list<long> vals) {
        if (vals.size() != rows * cols) throw ShapeError("from_ints: bad entry count");
        Matrix m(rows, cols, field);
        std::size_t k = 0;
        for (long v : vals) m.data_[k++] = field.from_int(v);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? field_.one() : Scalar(0))) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_, field_);
        for (std::size_t k = 0; k < data_.size(); ++k)
            r.data_[k] = field_.add(data_[k], o.data_[k]);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_, field_);
        for (std::size_t k = 0; k < data_.size(); ++k)
            r.data_[k] = field_.sub(data_[k], o.data_[k]);
        return r;
    }

    Matrix operator-() const {
        Matrix r(rows_, cols_, field_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.neg(data_[k]);
        return r;
    }

    Matrix scaled(const Scalar& s) const {
        Matrix r(rows_, cols_, field_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.mul(data_[k], s);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? " " : "") << m.field_.to_string(m.at(i, j));
        }
        return os << "]";
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (field_ != o.field_) throw FieldMismatch("matrix field mismatch");
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    Field field_;
    std::vector<Scalar> data_;
};

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldMismatch("mat_mul: field mismatch");
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    const Field& F = a.field();
    Matrix r(a.rows(), b.cols(), F);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b.at(k, j) == 0) continue;
                r.at(i, j) = F.add(r.at(i, j), F.mul(a.at(i, k), b.at(k, j)));
            }
        }
    return r;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

/// Horizontal concatenation [a | b].
inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
    if (a.field() != b.field()) throw FieldMismatch("hstack: field mismatch");
    Matrix r(a.rows(), a.cols() + b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

/// Vertical concatenation [a ; b].
inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
    if (a.field() != b.field()) throw FieldMismatch("vstack: field mismatch");
    Matrix r(a.rows() + b.rows(), a.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldMismatch("block_diag: field mismatch");
    Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

/// Reduced row echelon form together with the pivot columns.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

inline Echelon echelon(const Matrix& m) {
    const Field& F = m.field();
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        // first nonzero entry in column order
        std::size_t sel = row;
        while (sel < r.rows() && r.at(sel, col) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(row, j), r.at(sel, j));
        Scalar piv_inv = F.inv(r.at(row, col));
        for (std::size_t j = col; j < r.cols(); ++j)
            r.at(row, j) = F.mul(r.at(row, j), piv_inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r.at(i, col) == 0) continue;
            Scalar f = r.at(i, col);
            for (std::size_t j = col; j < r.cols(); ++j)
                r.at(i, j) = F.sub(r.at(i, j), F.mul(f, r.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {r, pivots};
}

inline std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

/// Columns span ker m; column count = cols - rank(m).
inline Matrix kernel_basis(const Matrix& m) {
    const Field& F = m.field();
    Echelon e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::size_t nullity = m.cols() - e.pivots.size();
    Matrix k(m.cols(), nullity, F);
    std::size_t out = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        k.at(j, out) = F.one();
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            k.at(e.pivots[i], out) = F.neg(e.reduced.at(i, j));
        ++out;
    }
    return k;
}

/// Echelon-deterministic particular solution of a x = b, absent when unsolvable.
inline std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_right: row counts differ");
    if (a.field() != b.field()) throw FieldMismatch("solve_right: field mismatch");
    Echelon e = echelon(hstack(a, b));
    for (auto p : e.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(a.cols(), b.cols(), a.field());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(e.pivots[i], j) = e.reduced.at(i, a.cols() + j);
    return x;
}

/// Quotient projection onto coker m: full row rank, projection * m = 0, and
/// a vector is killed by the projection exactly when it lies in im m.
struct Cokernel {
    Matrix projection;
    std::size_t dim;
};

inline Cokernel cokernel(const Matrix& m) {
    Matrix p = kernel_basis(m.transpose()).transpose();
    return {p, p.rows()};
}

/// Right inverse of a full-row-rank matrix (p * r = identity).
inline Matrix right_inverse(const Matrix& p) {
    auto r = solve_right(p, Matrix::identity(p.rows(), p.field()));
    if (!r) throw Error("right_inverse: matrix does not have full row rank");
    return *r;
}

inline bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

inline Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: not square");
    auto r = solve_right(m, Matrix::identity(m.rows(), m.field()));
    if (!r) throw Error("inverse: singular matrix");
    return *r;
}

}  // namespace locsys

#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "bmlab/field.hpp"
#include "bmlab/matroid.hpp"

namespace bmlab {

template <class K>
class Matrix {
public:
    using Elem = typename K::Elem;

    Matrix() = default;
    Matrix(K field, int rows, int cols) : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {
        for (int i = 0; i < rows; ++i) row_labels_.push_back("r" + std::to_string(i + 1));
        for (int j = 0; j < cols; ++j) col_labels_.push_back("c" + std::to_string(j + 1));
    }
    Matrix(K field, const std::vector<std::vector<long long>>& rows) : Matrix(field, static_cast<int>(rows.size()),
                                                                              rows.empty() ? 0 : static_cast<int>(rows[0].size())) {
        for (int i = 0; i < rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != cols_) throw InvalidArgument("ragged matrix rows");
            for (int j = 0; j < cols_; ++j) at(i, j) = field_.from_int(rows[i][j]);
        }
    }

    static Matrix identity(K field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }
    static Matrix diagonal(K field, const std::vector<Elem>& d) {
        Matrix m(field, static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    const K& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Elem& at(int r, int c) { return data_[r * cols_ + c]; }
    const Elem& at(int r, int c) const { return data_[r * cols_ + c]; }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }
    void set_row_labels(std::vector<std::string> l) {
        if (static_cast<int>(l.size()) != rows_) throw InvalidArgument("row label count mismatch");
        row_labels_ = std::move(l);
    }
    void set_col_labels(std::vector<std::string> l) {
        if (static_cast<int>(l.size()) != cols_) throw InvalidArgument("column label count mismatch");
        col_labels_ = std::move(l);
    }

    Matrix operator*(const Matrix& b) const {
        if (cols_ != b.rows_) throw InvalidArgument("matrix dimensions do not agree");
        Matrix out(field_, rows_, b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Elem& a = at(i, k);
                if (field_.is_zero(a)) continue;
                for (int j = 0; j < b.cols_; ++j) out.at(i, j) = field_.add(out.at(i, j), field_.mul(a, b.at(k, j)));
            }
        out.row_labels_ = row_labels_;
        out.col_labels_ = b.col_labels_;
        return out;
    }

    Matrix columns(const std::vector<int>& idx) const {
        Matrix out(field_, rows_, static_cast<int>(idx.size()));
        for (int i = 0; i < rows_; ++i)
            for (size_t j = 0; j < idx.size(); ++j) out.at(i, static_cast<int>(j)) = at(i, idx[j]);
        out.row_labels_ = row_labels_;
        for (size_t j = 0; j < idx.size(); ++j) out.col_labels_[j] = col_labels_[idx[j]];
        return out;
    }
    Matrix row_range(int from, int to) const {
        Matrix out(field_, to - from, cols_);
        for (int i = from; i < to; ++i)
            for (int j = 0; j < cols_; ++j) out.at(i - from, j) = at(i, j);
        out.col_labels_ = col_labels_;
        for (int i = from; i < to; ++i) out.row_labels_[i - from] = row_labels_[i];
        return out;
    }
    Matrix transpose() const {
        Matrix out(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        out.row_labels_ = col_labels_;
        out.col_labels_ = row_labels_;
        return out;
    }
    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [&](const Elem& e) { return field_.is_zero(e); });
    }
    // Entries and dimensions only; labels are ignored.
    bool same_entries(const Matrix& b) const { return rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_; }

    void scale_row(int r, const Elem& s) {
        for (int j = 0; j < cols_; ++j) at(r, j) = field_.mul(s, at(r, j));
    }
    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    // row[target] += s * row[source]
    void add_row(int target, int source, const Elem& s) {
        for (int j = 0; j < cols_; ++j) at(target, j) = field_.add(at(target, j), field_.mul(s, at(source, j)));
    }

private:
    K field_{};
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Elem> data_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

template <class K>
struct Rref {
    Matrix<K> form;       // transform * A
    Matrix<K> transform;  // invertible, rows x rows
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

// Reduced row echelon form.  Pivot columns are taken left to right; within a
// column the pivot row is the first remaining row with a nonzero entry.
template <class K>
Rref<K> rref(const Matrix<K>& a) {
    const K& f = a.field();
    Matrix<K> m = a;
    Matrix<K> t = Matrix<K>::identity(f, a.rows());
    t.set_row_labels(a.row_labels());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!f.is_zero(m.at(i, c))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        m.swap_rows(r, p);
        t.swap_rows(r, p);
        auto s = f.inv(m.at(r, c));
        m.scale_row(r, s);
        t.scale_row(r, s);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m.at(i, c))) continue;
            auto k = f.neg(m.at(i, c));
            m.add_row(i, r, k);
            t.add_row(i, r, k);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(t), std::move(pivots)};
}

template <class K>
int matrix_rank(const Matrix<K>& a) {
    return rref(a).rank();
}

// Inverse of a square matrix, or nullopt when singular.
template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("inverse of a non-square matrix");
    auto r = rref(a);
    if (r.rank() != a.rows()) return std::nullopt;
    return r.transform;
}

// Basis of {x : A x = 0}, one vector per free column of the reduced form.
template <class K>
std::vector<std::vector<typename K::Elem>> null_space(const Matrix<K>& a) {
    const K& f = a.field();
    auto r = rref(a);
    std::vector<bool> pivot(a.cols(), false);
    for (int p : r.pivots) pivot[p] = true;
    std::vector<std::vector<typename K::Elem>> basis;
    for (int c = 0; c < a.cols(); ++c) {
        if (pivot[c]) continue;
        std::vector<typename K::Elem> x(a.cols(), f.zero());
        x[c] = f.one();
        for (int i = 0; i < r.rank(); ++i) x[r.pivots[i]] = f.neg(r.form.at(i, c));
        basis.push_back(std::move(x));
    }
    return basis;
}

template <class K>
Matroid vector_matroid(const Matrix<K>& a) {
    if (a.cols() > 64) throw BoundExceeded("vector matroids are limited to 64 columns");
    return Matroid(a.col_labels(), [a](ElementSet s) { return matrix_rank(a.columns(bits_of(s))); });
}

template <class K>
struct DiagonalWitness {
    std::vector<typename K::Elem> d1;  // rows
    std::vector<typename K::Elem> d2;  // columns
};

// Nonsingular diagonal D1, D2 with D1 A D2 = B.  Each component of the
// row-column support graph is anchored at its smallest column (D2 = 1 there);
// rows without support get 1.
template <class K>
std::optional<DiagonalWitness<K>> diagonally_equivalent(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
    const K& f = a.field();
    using Elem = typename K::Elem;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (f.is_zero(a.at(i, j)) != f.is_zero(b.at(i, j))) return std::nullopt;
    std::vector<std::optional<Elem>> d1(a.rows()), d2(a.cols());
    // Queue holds (is_row, index).
    for (int root = 0; root < a.cols(); ++root) {
        if (d2[root]) continue;
        d2[root] = f.one();
        std::deque<std::pair<bool, int>> queue{{false, root}};
        while (!queue.empty()) {
            auto [is_row, x] = queue.front();
            queue.pop_front();
            if (is_row) {
                for (int j = 0; j < a.cols(); ++j) {
                    if (f.is_zero(a.at(x, j)) || d2[j]) continue;
                    d2[j] = f.div(b.at(x, j), f.mul(*d1[x], a.at(x, j)));
                    queue.push_back({false, j});
                }
            } else {
                for (int i = 0; i < a.rows(); ++i) {
                    if (f.is_zero(a.at(i, x)) || d1[i]) continue;
                    d1[i] = f.div(b.at(i, x), f.mul(a.at(i, x), *d2[x]));
                    queue.push_back({true, i});
                }
            }
        }
    }
    DiagonalWitness<K> w;
    for (auto& x : d1) w.d1.push_back(x ? *x : f.one());
    for (auto& x : d2) w.d2.push_back(*x);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!(f.mul(f.mul(w.d1[i], a.at(i, j)), w.d2[j]) == b.at(i, j))) return std::nullopt;
    return w;
}

template <class K>
struct ProjWitness {
    Matrix<K> t;                      // B.rows x A.rows
    std::vector<typename K::Elem> s;  // column scaling
};

template <class K>
bool check_witness(const Matrix<K>& a, const Matrix<K>& b, const ProjWitness<K>& w) {
    if (w.t.rows() != b.rows() || w.t.cols() != a.rows() || static_cast<int>(w.s.size()) != a.cols()) return false;
    for (const auto& x : w.s)
        if (a.field().is_zero(x)) return false;
    return (w.t * a * Matrix<K>::diagonal(a.field(), w.s)).same_entries(b);
}

// Decides whether T A S = B for a row transform T and a nonsingular diagonal
// S.  T is invertible when A and B have the same number of rows; otherwise it
// has full rank min(rows).
template <class K>
std::optional<ProjWitness<K>> projectively_equivalent(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.col_labels() != b.col_labels()) throw ColumnLabelMismatch("matrices have different column labels");
    if (!a.field().same(b.field())) throw InvalidArgument("matrices are over different fields");
    const K& f = a.field();
    auto ra = rref(a);
    auto rb = rref(b);
    if (ra.rank() != rb.rank()) return std::nullopt;
    const int r = ra.rank();
    // B reduced on A's pivot columns, which must be a basis of B as well.
    Matrix<K> bp = rb.form.row_range(0, r);
    auto inv_bp = inverse(bp.columns(ra.pivots));
    if (!inv_bp) return std::nullopt;
    Matrix<K> std_b = *inv_bp * bp;
    Matrix<K> std_a = ra.form.row_range(0, r);
    auto dw = diagonally_equivalent(std_a, std_b);
    if (!dw) return std::nullopt;
    // std_b = D1 * T_A[0:r] * A * D2 and B = T_B^-1 [bp; 0] with bp = M^-1 std_b,
    // M = inv_bp.  Assemble T = T_B^-1 * mid * T_A where mid has M^-1 D1 in the
    // top-left block and an identity on the remaining diagonal.
    Matrix<K> m_inv = *inverse(*inv_bp);
    Matrix<K> top = m_inv * Matrix<K>::diagonal(f, dw->d1);
    Matrix<K> mid(f, b.rows(), a.rows());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) mid.at(i, j) = top.at(i, j);
    for (int k = r; k < std::min(a.rows(), b.rows()); ++k) mid.at(k, k) = f.one();
    Matrix<K> tb_inv = *inverse(rb.transform);
    ProjWitness<K> w{tb_inv * mid * ra.transform, dw->d2};
    w.t.set_row_labels(b.row_labels());
    std::vector<std::string> cl = a.row_labels();
    w.t.set_col_labels(cl);
    return w;
}

}  // namespace bmlab

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "endocalc/ints.hpp"

namespace endocalc {

// Dense arbitrary-precision integer matrix. Lattices are stored as the
// column span of a matrix; elements are column vectors.
class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMat from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    IntMat transpose() const;
    IntMat operator*(const IntMat& other) const;
    Vec mul(const Vec& v) const;

    // [a | b] side by side (same row count).
    static IntMat hstack(const IntMat& a, const IntMat& b);
    // a on top of b (same column count).
    static IntMat vstack(const IntMat& a, const IntMat& b);
    // Rows [lo, hi) of this matrix.
    IntMat row_slice(std::size_t lo, std::size_t hi) const;

    void swap_cols(std::size_t a, std::size_t b);
    void negate_col(std::size_t j);
    // col_dst -= q * col_src
    void axpy_col(std::size_t dst, std::size_t src, const Int& q);

    bool operator==(const IntMat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }
    bool operator!=(const IntMat& other) const { return !(*this == other); }
    bool operator<(const IntMat& other) const {
        if (rows_ != other.rows_) return rows_ < other.rows_;
        if (cols_ != other.cols_) return cols_ < other.cols_;
        return data_ < other.data_;
    }

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

// Unique column-style Hermite normal form of the lattice spanned by the
// columns of g. Pivot rows strictly increase column by column, pivots are
// positive, and in each pivot row the entries of earlier columns are reduced
// into [0, pivot). Zero columns are dropped.
IntMat hnf_cols(IntMat g);

struct HnfTransform {
    IntMat h;          // canonical basis (zero columns dropped)
    IntMat u;          // unimodular, g * u = [h | 0]
    std::size_t rank;  // number of columns of h
};
HnfTransform hnf_cols_transform(IntMat g);

// Basis of the integer kernel {x : g x = 0}, as columns.
IntMat kernel_cols(const IntMat& g);

struct SnfResult {
    IntMat d;      // diagonal, d(i,i) = d_i >= 0 with d_0 | d_1 | ...
    IntMat u;      // unimodular row transform
    IntMat u_inv;  // inverse of u
    IntMat v;      // unimodular column transform;  u * m * v = d
};
SnfResult snf(IntMat m);

// Determinant via fraction-free (Bareiss) elimination; m must be square.
Int det(IntMat m);

// Some x with h x = v, where h is a canonical column HNF. Returns the
// coefficient vector or nullopt when v is not in the column span.
std::optional<Vec> solve_in_hnf(const IntMat& h, const Vec& v);

// Some lattice vector w in the column span of h (a canonical HNF in
// Z^{prefix+rest}) whose first `prefix` coordinates equal a. Used to apply a
// relation graph pointwise.
std::optional<Vec> solve_prefix_in_hnf(const IntMat& h, const Vec& a, std::size_t prefix);

}  // namespace endocalc

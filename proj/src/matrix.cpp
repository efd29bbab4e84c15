#include "endocalc/matrix.hpp"

#include <algorithm>

#include "endocalc/errors.hpp"

namespace endocalc {

IntMat IntMat::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    IntMat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw DimensionError("column length " + std::to_string(cols[j].size()) +
                                 " does not match row count " + std::to_string(rows));
        m.set_col(j, cols[j]);
    }
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& other) const {
    if (cols_ != other.rows_) throw DimensionError("matrix product shape mismatch");
    IntMat r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
        }
    return r;
}

Vec IntMat::mul(const Vec& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

IntMat IntMat::hstack(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0)
        throw DimensionError("hstack row mismatch");
    std::size_t rows = a.cols() ? a.rows() : b.rows();
    IntMat m(rows, a.cols() + b.cols());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

IntMat IntMat::vstack(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
    IntMat m(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
    }
    return m;
}

IntMat IntMat::row_slice(std::size_t lo, std::size_t hi) const {
    IntMat m(hi - lo, cols_);
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i - lo, j) = (*this)(i, j);
    return m;
}

void IntMat::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMat::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

void IntMat::axpy_col(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) -= q * (*this)(i, src);
}

std::string IntMat::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) s += ", ";
            s += (*this)(i, j).str();
        }
    }
    s += "]";
    return s;
}

namespace {

// Column echelon reduction shared by hnf_cols and hnf_cols_transform.
// Mirrors every column operation on *u when u != nullptr.
std::size_t hnf_in_place(IntMat& h, IntMat* u) {
    const std::size_t n = h.rows(), m = h.cols();
    std::size_t r = 0;
    for (std::size_t i = 0; i < n && r < m; ++i) {
        // Gather the gcd of row i over columns [r, m) into column r.
        for (;;) {
            std::size_t jmin = m;
            for (std::size_t j = r; j < m; ++j) {
                if (h(i, j) == 0) continue;
                if (jmin == m || abs(h(i, j)) < abs(h(i, jmin))) jmin = j;
            }
            if (jmin == m) break;
            if (jmin != r) {
                h.swap_cols(r, jmin);
                if (u) u->swap_cols(r, jmin);
            }
            bool clean = true;
            for (std::size_t j = r + 1; j < m; ++j) {
                if (h(i, j) == 0) continue;
                Int q = floordiv(h(i, j), h(i, r));
                h.axpy_col(j, r, q);
                if (u) u->axpy_col(j, r, q);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(i, r) == 0) continue;
        if (h(i, r) < 0) {
            h.negate_col(r);
            if (u) u->negate_col(r);
        }
        for (std::size_t l = 0; l < r; ++l) {
            Int q = floordiv(h(i, l), h(i, r));
            h.axpy_col(l, r, q);
            if (u) u->axpy_col(l, r, q);
        }
        ++r;
    }
    return r;
}

IntMat take_cols(const IntMat& m, std::size_t k) {
    IntMat out(m.rows(), k);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
    return out;
}

}  // namespace

IntMat hnf_cols(IntMat g) {
    std::size_t rank = hnf_in_place(g, nullptr);
    return take_cols(g, rank);
}

HnfTransform hnf_cols_transform(IntMat g) {
    IntMat u = IntMat::identity(g.cols());
    std::size_t rank = hnf_in_place(g, &u);
    return {take_cols(g, rank), std::move(u), rank};
}

IntMat kernel_cols(const IntMat& g) {
    HnfTransform t = hnf_cols_transform(g);
    IntMat k(g.cols(), g.cols() - t.rank);
    for (std::size_t j = t.rank; j < g.cols(); ++j)
        for (std::size_t i = 0; i < g.cols(); ++i) k(i, j - t.rank) = t.u(i, j);
    return k;
}

SnfResult snf(IntMat m) {
    const std::size_t n = m.rows(), c = m.cols();
    IntMat u = IntMat::identity(n), u_inv = IntMat::identity(n), v = IntMat::identity(c);

    auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < c; ++j) m(dst, j) -= q * m(src, j);
        for (std::size_t j = 0; j < n; ++j) u(dst, j) -= q * u(src, j);
        // inverse picks up the opposite column operation
        for (std::size_t i = 0; i < n; ++i) u_inv(i, src) += q * u_inv(i, dst);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(m(a, j), m(b, j));
        for (std::size_t j = 0; j < n; ++j) std::swap(u(a, j), u(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(u_inv(i, a), u_inv(i, b));
    };
    auto row_negate = [&](std::size_t a) {
        for (std::size_t j = 0; j < c; ++j) m(a, j) = -m(a, j);
        for (std::size_t j = 0; j < n; ++j) u(a, j) = -u(a, j);
        for (std::size_t i = 0; i < n; ++i) u_inv(i, a) = -u_inv(i, a);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < n; ++i) m(i, dst) -= q * m(i, src);
        for (std::size_t i = 0; i < c; ++i) v(i, dst) -= q * v(i, src);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        m.swap_cols(a, b);
        v.swap_cols(a, b);
    };

    const std::size_t steps = std::min(n, c);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero entry in the trailing block to (t,t)
            std::size_t bi = n, bj = c;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (m(i, j) == 0) continue;
                    if (bi == n || abs(m(i, j)) < abs(m(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == n) goto done;  // trailing block all zero
            row_swap(t, bi);
            col_swap(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i)
                if (m(i, t) != 0) {
                    row_axpy(i, t, floordiv(m(i, t), m(t, t)));
                    if (m(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < c; ++j)
                if (m(t, j) != 0) {
                    col_axpy(j, t, floordiv(m(t, j), m(t, t)));
                    if (m(t, j) != 0) clean = false;
                }
            if (!clean) continue;

            // enforce d_t | trailing entries
            bool fixed = false;
            for (std::size_t i = t + 1; i < n && !fixed; ++i)
                for (std::size_t j = t + 1; j < c && !fixed; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        row_axpy(t, i, Int(-1));  // row_t += row_i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (m(t, t) < 0) row_negate(t);
    }
done:
    IntMat d(n, c);
    for (std::size_t t = 0; t < steps; ++t) d(t, t) = m(t, t);
    return {std::move(d), std::move(u), std::move(u_inv), std::move(v)};
}

Int det(IntMat m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::optional<Vec> solve_in_hnf(const IntMat& h, const Vec& v) {
    if (v.size() != h.rows()) throw DimensionError("solve_in_hnf length mismatch");
    Vec r = v;
    Vec coeff(h.cols());
    std::size_t row = 0;
    for (std::size_t j = 0; j < h.cols(); ++j) {
        // pivot row of column j: first nonzero entry
        std::size_t p = row;
        while (p < h.rows() && h(p, j) == 0) ++p;
        for (; row < p; ++row)
            if (r[row] != 0) return std::nullopt;
        if (p == h.rows()) break;
        if (r[p] % h(p, j) != 0) return std::nullopt;
        Int q = r[p] / h(p, j);
        coeff[j] = q;
        if (q != 0)
            for (std::size_t i = p; i < h.rows(); ++i) r[i] -= q * h(i, j);
        row = p + 1;
    }
    for (; row < h.rows(); ++row)
        if (r[row] != 0) return std::nullopt;
    return coeff;
}

std::optional<Vec> solve_prefix_in_hnf(const IntMat& h, const Vec& a, std::size_t prefix) {
    if (a.size() != prefix || prefix > h.rows()) throw DimensionError("solve_prefix length mismatch");
    Vec r = a;        // residual on prefix rows
    Vec w(h.rows());  // accumulated lattice vector
    std::size_t row = 0;
    for (std::size_t j = 0; j < h.cols(); ++j) {
        std::size_t p = row;
        while (p < h.rows() && h(p, j) == 0) ++p;
        if (p >= prefix) break;  // remaining columns do not touch the prefix
        for (; row < p; ++row)
            if (r[row] != 0) return std::nullopt;
        if (r[p] % h(p, j) != 0) return std::nullopt;
        Int q = r[p] / h(p, j);
        if (q != 0)
            for (std::size_t i = p; i < h.rows(); ++i) {
                if (h(i, j) == 0) continue;
                if (i < prefix) r[i] -= q * h(i, j);
                w[i] += q * h(i, j);
            }
        row = p + 1;
    }
    for (; row < prefix; ++row)
        if (r[row] != 0) return std::nullopt;
    return w;
}

}  // namespace endocalc

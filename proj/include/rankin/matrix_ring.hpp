#pragma once

#include "rankin/ring_traits.hpp"
#include "rankin/zmod.hpp"

#include <ostream>
#include <vector>

namespace rankin {

template <class R>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(long rows, long cols, const R& exemplar)
        : rows_(rows), cols_(cols), a_((size_t)(rows * cols), zero_like(exemplar)) {
        RANKIN_CHECK(rows >= 0 && cols >= 0, "Matrix: negative shape");
    }
    explicit Matrix(const std::vector<std::vector<R>>& rows) {
        RANKIN_CHECK(!rows.empty() && !rows[0].empty(), "Matrix: empty init");
        rows_ = (long)rows.size();
        cols_ = (long)rows[0].size();
        for (const auto& row : rows) {
            RANKIN_CHECK((long)row.size() == cols_, "Matrix: ragged init");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(long n, const R& exemplar) {
        Matrix m(n, n, exemplar);
        for (long i = 0; i < n; ++i) m.at(i, i) = one_like(exemplar);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    R& at(long i, long j) {
        RANKIN_CHECK(i >= 0 && i < rows_ && j >= 0 && j < cols_, "Matrix: index out of range");
        return a_[(size_t)(i * cols_ + j)];
    }
    const R& at(long i, long j) const {
        RANKIN_CHECK(i >= 0 && i < rows_ && j >= 0 && j < cols_, "Matrix: index out of range");
        return a_[(size_t)(i * cols_ + j)];
    }
    R exemplar() const {
        RANKIN_CHECK(!a_.empty(), "Matrix: empty");
        return zero_like(a_[0]);
    }

    Matrix operator+(const Matrix& o) const {
        check_shape(o);
        Matrix out = *this;
        for (size_t k = 0; k < a_.size(); ++k) out.a_[k] += o.a_[k];
        return out;
    }
    Matrix operator-(const Matrix& o) const {
        check_shape(o);
        Matrix out = *this;
        for (size_t k = 0; k < a_.size(); ++k) out.a_[k] -= o.a_[k];
        return out;
    }
    Matrix operator*(const Matrix& o) const {
        RANKIN_CHECK(cols_ == o.rows_, "Matrix: shape mismatch in product");
        Matrix out(rows_, o.cols_, exemplar());
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const R& x = at(i, k);
                if (is_zero_elem(x)) continue;
                for (long j = 0; j < o.cols_; ++j) out.at(i, j) += x * o.at(k, j);
            }
        return out;
    }
    Matrix operator*(const R& s) const {
        Matrix out = *this;
        for (auto& x : out.a_) x *= s;
        return out;
    }
    Matrix operator-() const {
        Matrix out = *this;
        for (auto& x : out.a_) x = -x;
        return out;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix& operator-=(const Matrix& o) { return *this = *this - o; }
    Matrix& operator*=(const Matrix& o) { return *this = *this * o; }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t k = 0; k < a_.size(); ++k)
            if (!is_zero_elem(a_[k] - o.a_[k])) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!is_zero_elem(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_, exemplar());
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    Matrix pow(long e) const {
        RANKIN_CHECK(rows_ == cols_, "Matrix::pow: not square");
        RANKIN_CHECK(e >= 0, "Matrix::pow: negative exponent");
        Matrix out = identity(rows_, exemplar());
        Matrix base = *this;
        while (e) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    Matrix col(long j) const {
        Matrix out(rows_, 1, exemplar());
        for (long i = 0; i < rows_; ++i) out.at(i, 0) = at(i, j);
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << "[";
        for (long i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (long j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m.at(i, j);
        }
        return os << "]";
    }

private:
    long rows_, cols_;
    std::vector<R> a_;

    void check_shape(const Matrix& o) const {
        RANKIN_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "Matrix: shape mismatch");
    }
};

template <class S, class R, class F>
Matrix<S> map_entries(const Matrix<R>& m, F f, const S& exemplar) {
    Matrix<S> out(m.rows(), m.cols(), exemplar);
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out.at(i, j) = f(m.at(i, j));
    return out;
}

// Berkowitz division-free characteristic polynomial: returns c[0..n] with
// det(lambda I - A) = sum_k c[k] lambda^(n-k), c[0] = 1.
template <class R>
std::vector<R> charpoly(const Matrix<R>& A) {
    RANKIN_CHECK(A.rows() == A.cols() && A.rows() >= 1, "charpoly: need square nonempty");
    long n = A.rows();
    R zero = A.exemplar();
    R one = one_like(zero);
    std::vector<R> V{one};
    for (long r = 1; r <= n; ++r) {
        std::vector<R> t;
        t.push_back(one);
        t.push_back(-A.at(r - 1, r - 1));
        if (r >= 2) {
            std::vector<R> w((size_t)(r - 1), zero);
            for (long i = 0; i < r - 1; ++i) w[(size_t)i] = A.at(i, r - 1);
            for (long d = 2; d <= r; ++d) {
                R s = zero;
                for (long j = 0; j < r - 1; ++j) s += A.at(r - 1, j) * w[(size_t)j];
                t.push_back(-s);
                if (d < r) {
                    std::vector<R> w2((size_t)(r - 1), zero);
                    for (long i = 0; i < r - 1; ++i)
                        for (long j = 0; j < r - 1; ++j) w2[(size_t)i] += A.at(i, j) * w[(size_t)j];
                    w = w2;
                }
            }
        }
        std::vector<R> Vn((size_t)(r + 1), zero);
        for (long i = 0; i <= r; ++i)
            for (long j = 0; j < (long)V.size(); ++j) {
                long d = i - j;
                if (d >= 0 && d <= r) Vn[(size_t)i] += t[(size_t)d] * V[(size_t)j];
            }
        V = Vn;
    }
    return V;
}

// Smith form over Z/p^r: L * A * Rt == D with L, Rt invertible, D diagonal
// with entries p^(e_0), p^(e_1), ... and e_0 <= e_1 <= ...  (e = r encodes 0).
struct ZmodSnf {
    Matrix<ZModPr> D, L, Rt;
    std::vector<long> pivots;  // valuations of the diagonal, length min(m, n)
};

inline ZmodSnf snf_zmod(Matrix<ZModPr> A) {
    long m = A.rows(), n = A.cols();
    ZModPr ex = A.exemplar();
    long r = ex.r();
    mpz_class p = ex.p();
    Matrix<ZModPr> L = Matrix<ZModPr>::identity(m, ex);
    Matrix<ZModPr> Rt = Matrix<ZModPr>::identity(n, ex);
    std::vector<long> pivots;
    long steps = std::min(m, n);
    for (long k = 0; k < steps; ++k) {
        long bv = r, bi = -1, bj = -1;
        for (long i = k; i < m; ++i)
            for (long j = k; j < n; ++j) {
                long v = A.at(i, j).valuation();
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        for (long j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(bi, j));
        for (long j = 0; j < m; ++j) std::swap(L.at(k, j), L.at(bi, j));
        for (long i = 0; i < m; ++i) std::swap(A.at(i, k), A.at(i, bj));
        for (long i = 0; i < n; ++i) std::swap(Rt.at(i, k), Rt.at(i, bj));
        mpz_class pe = pow_z(p, bv);
        ZModPr uinv = ex.make(A.at(k, k).lift() / pe).inv();
        for (long j = 0; j < n; ++j) A.at(k, j) *= uinv;
        for (long j = 0; j < m; ++j) L.at(k, j) *= uinv;
        for (long i = k + 1; i < m; ++i) {
            ZModPr f = ex.make(A.at(i, k).lift() / pe);
            if (f.is_zero() && A.at(i, k).is_zero()) continue;
            for (long j = 0; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
            for (long j = 0; j < m; ++j) L.at(i, j) -= f * L.at(k, j);
        }
        for (long j = k + 1; j < n; ++j) {
            ZModPr g = ex.make(A.at(k, j).lift() / pe);
            if (g.is_zero() && A.at(k, j).is_zero()) continue;
            for (long i = 0; i < m; ++i) A.at(i, j) -= g * A.at(i, k);
            for (long i = 0; i < n; ++i) Rt.at(i, j) -= g * Rt.at(i, k);
        }
        pivots.push_back(bv);
    }
    while ((long)pivots.size() < steps) pivots.push_back(r);
    return ZmodSnf{std::move(A), std::move(L), std::move(Rt), std::move(pivots)};
}

// Lengths as Z_p-modules: ker and im of A acting on columns, with
// length(Z/p^e) = e, so length(ker) + length(im) = r * ncols.
inline long zmod_kernel_length(const ZmodSnf& s, long ncols) {
    long r = s.D.exemplar().r();
    long total = 0;
    for (long j = 0; j < ncols; ++j)
        total += (j < (long)s.pivots.size()) ? s.pivots[(size_t)j] : r;
    return total;
}
inline long zmod_image_length(const ZmodSnf& s, long ncols) {
    long r = s.D.exemplar().r();
    return r * ncols - zmod_kernel_length(s, ncols);
}

// Generators of ker(A) as columns (may be empty: 0-column matrix).
inline Matrix<ZModPr> zmod_kernel_basis(const ZmodSnf& s) {
    ZModPr ex = s.D.exemplar();
    long r = ex.r();
    long n = s.Rt.rows();
    std::vector<long> gens;
    for (long j = 0; j < n; ++j) {
        long e = (j < (long)s.pivots.size()) ? s.pivots[(size_t)j] : r;
        if (e > 0) gens.push_back(j);
    }
    Matrix<ZModPr> out(n, (long)gens.size(), ex);
    for (size_t c = 0; c < gens.size(); ++c) {
        long j = gens[c];
        long e = (j < (long)s.pivots.size()) ? s.pivots[(size_t)j] : r;
        ZModPr scale = ex.make(pow_z(mpz_class(ex.p()), r - e));
        for (long i = 0; i < n; ++i) out.at(i, (long)c) = s.Rt.at(i, j) * scale;
    }
    return out;
}

struct ZmodSolve {
    bool consistent = false;
    Matrix<ZModPr> x;        // a solution of A x = b (exact mod p^r) when consistent
    long precision_loss = 0; // x unique only mod p^(r - loss) modulo ker(A)
};

inline ZmodSolve zmod_solve(const ZmodSnf& s, const Matrix<ZModPr>& b) {
    ZModPr ex = s.D.exemplar();
    long r = ex.r();
    long m = s.L.rows(), n = s.Rt.rows();
    RANKIN_CHECK(b.rows() == m, "zmod_solve: rhs shape");
    Matrix<ZModPr> c = s.L * b;
    ZmodSolve out;
    out.x = Matrix<ZModPr>(n, b.cols(), ex);
    Matrix<ZModPr> y(n, b.cols(), ex);
    for (long i = 0; i < m; ++i) {
        long e = (i < (long)s.pivots.size()) ? s.pivots[(size_t)i] : r;
        for (long t = 0; t < b.cols(); ++t) {
            const ZModPr& ci = c.at(i, t);
            if (e >= r) {
                if (!ci.is_zero()) return out;  // inconsistent
                continue;
            }
            if (ci.valuation() < e) return out;  // inconsistent
            y.at(i, t) = ci.divide_by_p_pow(e);
            if (!ci.is_zero() && e > out.precision_loss) out.precision_loss = e;
        }
    }
    out.x = s.Rt * y;
    out.consistent = true;
    return out;
}

inline ZmodSolve zmod_solve(const Matrix<ZModPr>& A, const Matrix<ZModPr>& b) {
    return zmod_solve(snf_zmod(A), b);
}

// Inverse of a matrix all of whose Smith pivots are units.
inline Matrix<ZModPr> zmod_inverse(const Matrix<ZModPr>& A) {
    RANKIN_CHECK(A.rows() == A.cols(), "zmod_inverse: not square");
    ZmodSnf s = snf_zmod(A);
    for (long e : s.pivots) RANKIN_CHECK(e == 0, "zmod_inverse: matrix not invertible");
    RANKIN_CHECK((long)s.pivots.size() == A.rows(), "zmod_inverse: matrix not invertible");
    // D = I, so inv(A) = Rt * L
    return s.Rt * s.L;
}

}  // namespace rankin

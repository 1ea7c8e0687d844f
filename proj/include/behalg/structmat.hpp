#pragma once

// Block-Hankel, block-Toeplitz, Sylvester and convolution matrices.
//
// A length-L window of a q-variate signal is always vectorized as
// (w(1); w(2); ...; w(L)), each w(t) a q-column.

#include <behalg/poly.hpp>

#include <algorithm>

namespace behalg {

/// Finite q-variate time series; row t of `samples` is w(t + 1).
class Trajectory {
public:
    explicit Trajectory(Matrix samples) : samples_(std::move(samples)) {
        if (samples_.rows() < 1 || samples_.cols() < 1)
            fail(ErrorKind::InvalidInput, "Trajectory: needs at least one sample and one variable");
        require_finite(samples_, "Trajectory");
    }

    static Trajectory zeros(Index length, Index q) { return Trajectory(Matrix::Zero(length, q)); }

    /// Inverse of vec(): consecutive q-blocks become samples.
    static Trajectory from_vec(const Vector& v, Index q) {
        if (q < 1 || v.size() % q != 0) fail(ErrorKind::InvalidInput, "Trajectory::from_vec: size mismatch");
        Matrix s(v.size() / q, q);
        for (Index t = 0; t < s.rows(); ++t) s.row(t) = v.segment(t * q, q).transpose();
        return Trajectory(std::move(s));
    }

    Index length() const { return samples_.rows(); }
    Index q() const { return samples_.cols(); }
    const Matrix& samples() const { return samples_; }

    Vector vec() const {
        Vector v(samples_.size());
        for (Index t = 0; t < length(); ++t) v.segment(t * q(), q()) = samples_.row(t).transpose();
        return v;
    }

    Trajectory operator+(const Trajectory& other) const {
        if (other.samples_.rows() != samples_.rows() || other.samples_.cols() != samples_.cols())
            fail(ErrorKind::InvalidInput, "Trajectory: shapes differ");
        return Trajectory(samples_ + other.samples_);
    }

private:
    Matrix samples_;
};

/// (qL) x (T - L + 1) matrix whose block (i, j) is w(i + j - 1).
inline Matrix block_hankel(const Trajectory& w, Index L) {
    const Index T = w.length();
    const Index q = w.q();
    if (L < 1 || L > T) fail(ErrorKind::Precondition, "block_hankel: block-row count out of range");
    Matrix h(q * L, T - L + 1);
    for (Index i = 0; i < L; ++i)
        for (Index j = 0; j < T - L + 1; ++j) h.block(i * q, j, q, 1) = w.samples().row(i + j).transpose();
    return h;
}

namespace detail {

/// Toeplitz stack with L block columns; row i of R contributes max(0, L - deg_i) rows.
/// Defined for every L >= 1, which lets window searches start below deg(R) + 1.
inline Matrix toeplitz_rows(const MatPoly& r, Index L, double trim) {
    const Index q = r.cols();
    const std::vector<int> degs = r.row_degrees(trim);
    Index total = 0;
    for (int d : degs)
        if (d >= 0) total += std::max<Index>(0, L - d);
    Matrix t = Matrix::Zero(total, q * L);
    Index row = 0;
    for (Index i = 0; i < r.rows(); ++i) {
        const int d = degs[static_cast<std::size_t>(i)];
        if (d < 0) continue;
        for (Index s = 0; s + d < L; ++s, ++row)
            for (int k = 0; k <= d; ++k) t.block(row, (s + k) * q, 1, q) = r.coeff(k).row(i);
    }
    return t;
}

}  // namespace detail

/// Stacked banded Toeplitz matrix of R with L block columns. Each row R^i of R gives
/// an (L - deg R^i) x qL band [R^i_0 ... R^i_{deg}] shifted by q columns per row, so the
/// kernel is exactly the set of length-L windows satisfying every row's difference
/// equation. With equal row degrees the shape is p(L - deg R) x qL.
inline Matrix block_toeplitz(const MatPoly& r, Index L, const ToleranceConfig& cfg = {}) {
    if (L < r.degree() + 1) fail(ErrorKind::Precondition, "block_toeplitz: need L >= deg(R) + 1");
    return detail::toeplitz_rows(r, L, cfg.degree_trim_tol);
}

inline Matrix sylvester_stack(const MatPoly& ra, const MatPoly& rb, Index L, const ToleranceConfig& cfg = {}) {
    if (ra.cols() != rb.cols()) fail(ErrorKind::InvalidInput, "sylvester_stack: variable counts differ");
    if (L <= std::max(ra.degree(), rb.degree()))
        fail(ErrorKind::Precondition, "sylvester_stack: need L > max(deg Ra, deg Rb)");
    const Matrix ta = block_toeplitz(ra, L, cfg);
    const Matrix tb = block_toeplitz(rb, L, cfg);
    Matrix s(ta.rows() + tb.rows(), ta.cols());
    s << ta, tb;
    return s;
}

/// (qL) x (qbar (L + deg M)) matrix C with w(t) = sum_k M_k lbar(t + k), i.e. the
/// window w(1..L) produced by the latent window lbar(1..L + deg M) is C vec(lbar).
inline Matrix convolution_matrix(const MatPoly& m, Index L) {
    if (L < 1) fail(ErrorKind::Precondition, "convolution_matrix: need L >= 1");
    const Index q = m.rows();
    const Index qbar = m.cols();
    const Index d = m.degree();
    Matrix c = Matrix::Zero(q * L, qbar * (L + d));
    for (Index t = 0; t < L; ++t)
        for (Index k = 0; k <= d; ++k) c.block(t * q, (t + k) * qbar, q, qbar) = m.coeff(k);
    return c;
}

/// Matrix of x(z) -> P(z) x(z) on coefficient stacks, where x is a polynomial vector
/// whose j-th entry has degree at most max_degree - deg_j (deg_j the j-th column
/// degree of P). The product therefore has degree at most max_degree and its stack
/// has q (max_degree + 1) entries. Columns of P with deg_j > max_degree are absent.
inline Matrix multiplication_matrix(const MatPoly& p, Index max_degree, const ToleranceConfig& cfg = {}) {
    const Index q = p.rows();
    const std::vector<int> degs = p.col_degrees(cfg.degree_trim_tol);
    std::vector<Index> col_offsets;
    Index total = 0;
    for (int d : degs) {
        col_offsets.push_back(total);
        if (d >= 0) total += std::max<Index>(0, max_degree - d + 1);
    }
    Matrix m = Matrix::Zero(q * (max_degree + 1), total);
    for (Index j = 0; j < p.cols(); ++j) {
        const int d = degs[static_cast<std::size_t>(j)];
        if (d < 0) continue;
        for (Index s = 0; s + d <= max_degree; ++s)
            for (int k = 0; k <= d; ++k)
                m.block((s + k) * q, col_offsets[static_cast<std::size_t>(j)] + s, q, 1) = p.coeff(k).col(j);
    }
    return m;
}

}  // namespace behalg

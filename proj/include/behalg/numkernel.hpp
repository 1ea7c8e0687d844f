#pragma once

// Tolerant rank, null spaces and subspace comparison. Every rank decision in
// the library goes through numerical_rank / rank_from_singular_values.

#include <behalg/common.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace behalg {

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) fail(ErrorKind::InvalidInput, std::string(what) + ": non-finite entries");
}

/// Rank threshold max(rel_rank_tol * sigma_max * max(rows, cols), abs_floor).
inline double rank_threshold(double sigma_max, Index rows, Index cols, const ToleranceConfig& cfg) {
    return std::max(cfg.rel_rank_tol * sigma_max * static_cast<double>(std::max(rows, cols)),
                    cfg.abs_floor);
}

inline Index rank_from_singular_values(const Vector& sv, Index rows, Index cols,
                                       const ToleranceConfig& cfg) {
    if (sv.size() == 0) return 0;
    const double thr = rank_threshold(sv(0), rows, cols, cfg);
    Index r = 0;
    while (r < sv.size() && sv(r) > thr) ++r;
    return r;
}

/// Number of singular values above the tolerance. Empty matrices have rank 0.
inline Index numerical_rank(const Matrix& m, const ToleranceConfig& cfg = {}) {
    require_finite(m, "numerical_rank");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), cfg);
}

/// Orthonormal basis of the numerical right kernel, one column per null direction.
inline Matrix right_null_basis(const Matrix& m, const ToleranceConfig& cfg = {}) {
    require_finite(m, "right_null_basis");
    const Index n = m.cols();
    if (n == 0) return Matrix(0, 0);
    if (m.rows() == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Index r = rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), cfg);
    return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis of the numerical left kernel, one row per null direction.
inline Matrix left_null_basis(const Matrix& m, const ToleranceConfig& cfg = {}) {
    return right_null_basis(m.transpose(), cfg).transpose();
}

/// Orthonormal basis of the column space.
inline Matrix range_basis(const Matrix& m, const ToleranceConfig& cfg = {}) {
    require_finite(m, "range_basis");
    if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Index r = rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), cfg);
    return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the orthogonal complement of the column span of `basis`
/// (which must itself be orthonormal) inside R^n.
inline Matrix orthogonal_complement(const Matrix& basis, Index n) {
    if (basis.cols() == 0) return Matrix::Identity(n, n);
    if (basis.cols() >= n) return Matrix(n, 0);
    Eigen::JacobiSVD<Matrix> svd(basis, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(n - basis.cols());
}

inline double orthonormality_defect(const Matrix& b) {
    if (b.cols() == 0) return 0.0;
    return (b.transpose() * b - Matrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
}

/// Sine of the largest principal angle between two column spans.
/// Spans of different dimension are at distance 1.
inline double subspace_distance(const Matrix& b1, const Matrix& b2) {
    if (b1.rows() != b2.rows())
        fail(ErrorKind::InvalidInput, "subspace_distance: bases live in different spaces");
    require_finite(b1, "subspace_distance");
    require_finite(b2, "subspace_distance");
    if (orthonormality_defect(b1) > 1e-8 || orthonormality_defect(b2) > 1e-8)
        fail(ErrorKind::InvalidInput, "subspace_distance: bases must have orthonormal columns");
    if (b1.cols() != b2.cols()) return 1.0;
    if (b1.cols() == 0) return 0.0;
    // For equal dimensions ||(I - P1) B2|| = ||P1 - P2|| = sin(theta_max).
    const Matrix residual = b2 - b1 * (b1.transpose() * b2);
    Eigen::JacobiSVD<Matrix> svd(residual);
    return std::min(1.0, svd.singularValues()(0));
}

/// Scale to unit Euclidean norm and make the first entry of largest magnitude positive.
/// Entries below `trim` relative to the largest are set to exactly zero.
inline Vector normalize_coefficients(Vector v, double trim) {
    const double amax = v.cwiseAbs().maxCoeff();
    if (!(amax > 0.0)) return v;
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) <= trim * amax) v(i) = 0.0;
    Index lead = 0;
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= amax * (1.0 - 1e-9)) {
            lead = i;
            break;
        }
    }
    v /= v.norm();
    if (v(lead) < 0.0) v = -v;
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) == 0.0) v(i) = 0.0;  // drop negative zeros
    return v;
}

}  // namespace behalg

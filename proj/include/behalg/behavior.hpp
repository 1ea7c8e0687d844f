#pragma once

// Behaviors (sets of trajectories) and their kernel, image and data representations.

#include <behalg/structmat.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace behalg {

/// Number of variables q, inputs m, outputs p, order n and lag.
struct Complexity {
    Index q = 0;
    Index m = 0;
    Index p = 0;
    Index n = 0;
    Index lag = 0;

    bool operator==(const Complexity&) const = default;
};

/// dim B|_L = n + L m, valid for L >= lag.
inline Index restricted_dimension(const Complexity& c, Index L) {
    if (L < c.lag) fail(ErrorKind::Precondition, "restricted_dimension: window shorter than the lag");
    return c.n + L * c.m;
}

namespace detail {

inline Index ceil_div(Index a, Index b) { return (a + b - 1) / b; }

inline Index sum_nonneg(const std::vector<int>& degs) {
    Index s = 0;
    for (int d : degs) s += std::max(d, 0);
    return s;
}

/// Row i's coefficient at its own degree, stacked into a p x q matrix.
inline Matrix leading_row_matrix(const MatPoly& r, double trim) {
    Matrix lead(r.rows(), r.cols());
    const std::vector<int> degs = r.row_degrees(trim);
    for (Index i = 0; i < r.rows(); ++i)
        lead.row(i) = degs[i] < 0 ? Matrix::Zero(1, r.cols()) : Matrix(r.coeff(degs[i]).row(i));
    return lead;
}

inline Matrix leading_col_matrix(const MatPoly& m, double trim) {
    Matrix lead(m.rows(), m.cols());
    const std::vector<int> degs = m.col_degrees(trim);
    for (Index j = 0; j < m.cols(); ++j)
        lead.col(j) = degs[j] < 0 ? Matrix::Zero(m.rows(), 1) : Matrix(m.coeff(degs[j]).col(j));
    return lead;
}

}  // namespace detail

/// Row reduced: the leading row coefficient matrix has full row rank. Such a kernel
/// representation is minimal and ker T_L(R) is exactly the window-L restriction.
inline bool is_row_reduced(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    if (r.rows() == 0) return true;
    if (r.rows() > r.cols()) return false;
    return numerical_rank(detail::leading_row_matrix(r, cfg.degree_trim_tol), cfg) == r.rows();
}

inline bool is_column_reduced(const MatPoly& m, const ToleranceConfig& cfg = {}) {
    if (m.cols() == 0) return true;
    if (m.cols() > m.rows()) return false;
    return numerical_rank(detail::leading_col_matrix(m, cfg.degree_trim_tol), cfg) == m.cols();
}

namespace detail {

/// Orthonormal basis of B|_L for B = ker R(sigma), R arbitrary (even rank deficient).
/// Non-row-reduced R can hide constraints that only show up over longer windows, so
/// the kernel is taken over an extended window and projected back.
inline Matrix kernel_restriction_basis(const MatPoly& r, Index L, const ToleranceConfig& cfg) {
    const Index q = r.cols();
    if (L == 0) return Matrix(0, 0);
    if (r.rows() == 0) return Matrix::Identity(q * L, q * L);
    const Index ext = is_row_reduced(r, cfg) ? 0 : sum_nonneg(r.row_degrees(cfg.degree_trim_tol)) + 1;
    const Matrix null = right_null_basis(toeplitz_rows(r, L + ext, cfg.degree_trim_tol), cfg);
    if (ext == 0) return null;
    return range_basis(null.topRows(q * L), cfg);
}

inline Matrix image_restriction_basis(const MatPoly& m, Index L, const ToleranceConfig& cfg) {
    if (L == 0) return Matrix(0, 0);
    if (m.cols() == 0) return Matrix(m.rows() * L, 0);
    return range_basis(convolution_matrix(m, L), cfg);
}

/// Largest L for which H_L(w) is at least as wide as tall.
inline Index max_hankel_window(const Trajectory& w) { return (w.length() + 1) / (w.q() + 1); }

/// Complexity from a restricted-dimension oracle, given an upper bound on the lag.
template <class DimAt>
Complexity complexity_from_dims(Index q, Index lag_bound, DimAt&& dim_at) {
    const Index L1 = lag_bound + 1;
    const Index d1 = dim_at(L1);
    const Index d2 = dim_at(L1 + 1);
    Complexity c;
    c.q = q;
    c.m = d2 - d1;
    c.n = d1 - c.m * L1;
    c.p = q - c.m;
    if (c.m < 0 || c.m > q || c.n < 0)
        fail(ErrorKind::NumericFailure, "complexity: restricted dimensions are inconsistent");
    c.lag = 0;
    if (c.n > 0 && c.p > 0) {
        for (Index L = 1; L <= L1; ++L) {
            if (dim_at(L) == c.n + c.m * L) {
                c.lag = L;
                break;
            }
        }
    }
    return c;
}

inline Complexity kernel_complexity(const MatPoly& r, const ToleranceConfig& cfg) {
    const Index q = r.cols();
    if (r.rows() == 0) return {q, q, 0, 0, 0};
    if (is_row_reduced(r, cfg)) {
        const std::vector<int> degs = r.row_degrees(cfg.degree_trim_tol);
        Complexity c{q, q - r.rows(), r.rows(), sum_nonneg(degs), 0};
        for (int d : degs) c.lag = std::max<Index>(c.lag, d);
        return c;
    }
    return complexity_from_dims(q, sum_nonneg(r.row_degrees(cfg.degree_trim_tol)), [&](Index L) -> Index {
        return kernel_restriction_basis(r, L, cfg).cols();
    });
}

inline Complexity image_complexity(const MatPoly& m, const ToleranceConfig& cfg) {
    const Index q = m.rows();
    if (m.cols() == 0) return {q, 0, q, 0, 0};
    return complexity_from_dims(q, sum_nonneg(m.col_degrees(cfg.degree_trim_tol)), [&](Index L) -> Index {
        return numerical_rank(convolution_matrix(m, L), cfg);
    });
}

/// Incrementally collected minimal polynomial basis.
///
/// `space(L)` returns a matrix whose columns span the coefficient vectors (length qL,
/// blocks of q per power of z) of all module elements of degree <= L - 1. At every
/// window the shifted copies z^s v of the elements already found are removed, and what
/// remains are new basis elements of degree exactly L - 1. The search stops once
/// `target` elements are collected; the result is a minimal (reduced) basis.
struct MinimalBasis {
    std::vector<Vector> vectors;
    std::vector<int> degrees;
    Index window = 0;
    std::vector<std::pair<Index, Index>> dims;  // (window, dimension of space(window))
};

template <class Space>
MinimalBasis extract_minimal_basis(Index q, Index target, Index first_window, Index max_window,
                                   Space&& space, const ToleranceConfig& cfg, const char* who) {
    MinimalBasis out;
    if (target == 0) return out;
    for (Index L = std::max<Index>(first_window, 1); L <= max_window; ++L) {
        const Matrix basis = range_basis(space(L), cfg);
        out.dims.emplace_back(L, basis.cols());

        Index nshift = 0;
        for (int d : out.degrees) nshift += L - d;
        Matrix shifts = Matrix::Zero(q * L, nshift);
        Index col = 0;
        for (std::size_t k = 0; k < out.vectors.size(); ++k) {
            const Vector& v = out.vectors[k];
            for (Index s = 0; s + out.degrees[k] < L; ++s, ++col) shifts.col(col).segment(s * q, v.size()) = v;
        }

        const Index fresh = basis.cols() - nshift;
        if (fresh <= 0) continue;
        if (static_cast<Index>(out.vectors.size()) + fresh > target)
            fail(ErrorKind::InconsistentData, std::string(who) + ": more independent elements than expected at window " +
                                                  std::to_string(L));
        Matrix resid = basis;
        if (nshift > 0) {
            const Matrix qs = range_basis(shifts, cfg);
            resid -= qs * (qs.transpose() * basis);
        }
        Eigen::JacobiSVD<Matrix> svd(resid, Eigen::ComputeThinU);
        for (Index k = 0; k < fresh; ++k) {
            out.vectors.push_back(normalize_coefficients(svd.matrixU().col(k), cfg.degree_trim_tol));
            out.degrees.push_back(static_cast<int>(L - 1));
        }
        if (static_cast<Index>(out.vectors.size()) == target) {
            out.window = L;
            return out;
        }
    }
    fail(ErrorKind::AlgorithmFailure, std::string(who) + ": window cap " + std::to_string(max_window) +
                                          " reached before collecting " + std::to_string(target) + " elements");
}

/// Basis vectors as rows of a p x q matrix polynomial (annihilators).
inline MatPoly vectors_to_rows(const MinimalBasis& b, Index q) {
    const Index p = static_cast<Index>(b.vectors.size());
    int deg = 0;
    for (int d : b.degrees) deg = std::max(deg, d);
    std::vector<Matrix> c(deg + 1, Matrix::Zero(p, q));
    for (Index i = 0; i < p; ++i)
        for (int k = 0; k <= b.degrees[i]; ++k) c[k].row(i) = b.vectors[i].segment(k * q, q).transpose();
    return MatPoly(std::move(c), 0.0);
}

/// Basis vectors as columns of a q x m matrix polynomial (generators).
inline MatPoly vectors_to_cols(const MinimalBasis& b, Index q) {
    const Index m = static_cast<Index>(b.vectors.size());
    int deg = 0;
    for (int d : b.degrees) deg = std::max(deg, d);
    std::vector<Matrix> c(deg + 1, Matrix::Zero(q, m));
    for (Index j = 0; j < m; ++j)
        for (int k = 0; k <= b.degrees[j]; ++k) c[k].col(j) = b.vectors[j].segment(k * q, q);
    return MatPoly(std::move(c), 0.0);
}

/// (rows(R)(D + deg R + 1)) x (cols(R)(D + 1)) matrix of x -> R x for deg x <= D, with
/// x stacked by powers of z.
inline Matrix multiplication_uniform(const MatPoly& r, Index max_degree) {
    const Index p = r.rows();
    const Index q = r.cols();
    const Index d = r.degree();
    Matrix m = Matrix::Zero(p * (max_degree + d + 1), q * (max_degree + 1));
    for (Index s = 0; s <= max_degree; ++s)
        for (Index k = 0; k <= d; ++k) m.block((s + k) * p, s * q, p, q) = r.coeff(k);
    return m;
}

/// Normalize each row (as a coefficient vector) of a kernel representation.
inline MatPoly normalize_rows(const MatPoly& r, double trim) {
    std::vector<Matrix> c = r.coeffs();
    for (Index i = 0; i < r.rows(); ++i) {
        const Vector v = normalize_coefficients(r.row_coefficients(i), trim);
        for (int k = 0; k <= r.degree(); ++k) c[k].row(i) = v.segment(k * r.cols(), r.cols()).transpose();
    }
    return MatPoly(std::move(c), trim);
}

inline MatPoly normalize_cols(const MatPoly& m, double trim) {
    std::vector<Matrix> c = m.coeffs();
    for (Index j = 0; j < m.cols(); ++j) {
        const Vector v = normalize_coefficients(m.col_coefficients(j), trim);
        for (int k = 0; k <= m.degree(); ++k) c[k].col(j) = v.segment(k * m.rows(), m.rows());
    }
    return MatPoly(std::move(c), trim);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Identification from data.

struct ComplexityReport {
    Complexity complexity;
    Index window = 0;  // L of the two-window rank system
    Index rank_L = 0;
    Index rank_L_minus_1 = 0;
};

/// Inputs and order from the ranks of H_L(w) and H_{L-1}(w), L = floor((T+1)/(q+1)),
/// by solving [L 1; L-1 1] (m, n) = (r1, r2).
inline ComplexityReport complexity_report(const Trajectory& w, const ToleranceConfig& cfg = {}) {
    const Index q = w.q();
    const Index L = detail::max_hankel_window(w);
    if (L - 1 < 1) fail(ErrorKind::Precondition, "complexity_from_trajectory: trajectory too short");
    const Index r1 = numerical_rank(block_hankel(w, L), cfg);
    const Index r2 = numerical_rank(block_hankel(w, L - 1), cfg);

    Eigen::Matrix2d a;
    a << static_cast<double>(L), 1.0, static_cast<double>(L - 1), 1.0;
    const Eigen::Vector2d x = a.fullPivLu().solve(Eigen::Vector2d(static_cast<double>(r1), static_cast<double>(r2)));
    const double m_round = std::round(x(0));
    const double n_round = std::round(x(1));
    if (std::abs(x(0) - m_round) > 0.25 || std::abs(x(1) - n_round) > 0.25)
        fail(ErrorKind::InconsistentData, "trajectory inconsistent with exact LTI model");

    ComplexityReport rep;
    rep.window = L;
    rep.rank_L = r1;
    rep.rank_L_minus_1 = r2;
    Complexity& c = rep.complexity;
    c.q = q;
    c.m = static_cast<Index>(m_round);
    c.n = static_cast<Index>(n_round);
    if (c.m < 0 || c.m > q || c.n < 0) fail(ErrorKind::InconsistentData, "trajectory inconsistent with exact LTI model");
    c.p = q - c.m;
    c.lag = c.p > 0 ? detail::ceil_div(c.n, c.p) : 0;
    return rep;
}

inline Complexity complexity_from_trajectory(const Trajectory& w, const ToleranceConfig& cfg = {}) {
    return complexity_report(w, cfg).complexity;
}

inline bool is_persistently_exciting(const Trajectory& u, Index L, const ToleranceConfig& cfg = {}) {
    if (L < 1 || L > u.length()) fail(ErrorKind::Precondition, "is_persistently_exciting: need 1 <= L <= T");
    return numerical_rank(block_hankel(u, L), cfg) == u.q() * L;
}

/// Minimal kernel representation from a trajectory: left kernels of H_L(w) for growing
/// L, keeping only annihilators that are not shifts of ones already found.
inline MatPoly kernel_from_data(const Trajectory& w, const ToleranceConfig& cfg = {}) {
    const Complexity c = complexity_from_trajectory(w, cfg);
    const Index q = w.q();
    if (c.p == 0) return MatPoly(0, q);
    const detail::MinimalBasis basis = detail::extract_minimal_basis(
        q, c.p, 1, detail::max_hankel_window(w),
        [&](Index L) -> Matrix { return left_null_basis(block_hankel(w, L), cfg).transpose(); }, cfg, "kernel_from_data");
    return detail::vectors_to_rows(basis, q);
}

/// Orthonormal basis of image H_L(w), i.e. of every length-L trajectory of the behavior.
inline Matrix data_trajectory_span(const Trajectory& w, Index L, const ToleranceConfig& cfg = {}) {
    if (L < 1 || L > w.length()) fail(ErrorKind::Precondition, "data_trajectory_span: window out of range");
    if (w.length() - L + 1 <= w.q() * L)
        fail(ErrorKind::Precondition, "data_trajectory_span: Hankel matrix must have more columns than rows");
    const Complexity c = complexity_from_trajectory(w, cfg);
    const Matrix h = block_hankel(w, L);
    const Matrix span = range_basis(h, cfg);
    if (L >= c.lag && span.cols() != c.n + L * c.m)
        fail(ErrorKind::InconsistentData, "data_trajectory_span: rank of H_L(w) differs from n + L m");
    return span;
}

// ---------------------------------------------------------------------------
// Representation conversions.

/// Minimal (row reduced) kernel representation of ker R(sigma) for any R.
inline MatPoly minimal_kernel(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    const Index q = r.cols();
    if (is_row_reduced(r, cfg) && r.rows() <= q) return detail::normalize_rows(r, cfg.degree_trim_tol);
    const Complexity c = detail::kernel_complexity(r, cfg);
    if (c.p == 0) return MatPoly(0, q);
    const Index cap = detail::sum_nonneg(r.row_degrees(cfg.degree_trim_tol)) + 2;
    const detail::MinimalBasis basis = detail::extract_minimal_basis(
        q, c.p, 1, cap,
        [&](Index L) -> Matrix { return orthogonal_complement(detail::kernel_restriction_basis(r, L, cfg), q * L); }, cfg,
        "minimal_kernel");
    return detail::vectors_to_rows(basis, q);
}

/// Eliminates the latent variable of w = M(sigma) lbar. Returns a 0 x q polynomial when
/// the image is all of (R^q)^N.
inline MatPoly image_to_kernel(const MatPoly& m, const ToleranceConfig& cfg = {}) {
    const Index q = m.rows();
    const Complexity c = detail::image_complexity(m, cfg);
    if (c.p == 0) return MatPoly(0, q);
    const Index cap = std::max<Index>(2 * m.degree() + 2, detail::sum_nonneg(m.col_degrees(cfg.degree_trim_tol)) + 2);
    const detail::MinimalBasis basis = detail::extract_minimal_basis(
        q, c.p, 1, cap, [&](Index L) -> Matrix { return left_null_basis(convolution_matrix(m, L), cfg).transpose(); }, cfg,
        "image_to_kernel");
    return detail::vectors_to_rows(basis, q);
}

/// Minimal image representation of a controllable ker R(sigma): a minimal polynomial
/// basis of the right kernel of R(z), collected degree by degree.
inline MatPoly kernel_to_image(const MatPoly& r_in, const ToleranceConfig& cfg = {}) {
    const Index q = r_in.cols();
    const MatPoly r = minimal_kernel(r_in, cfg);
    if (!is_left_prime(r, cfg))
        fail(ErrorKind::Uncontrollable, "kernel_to_image: R(z) is not left prime (behavior is not controllable)");
    const Index m = q - r.rows();
    if (m == 0) return MatPoly(q, 0);
    if (r.rows() == 0) return MatPoly::constant(Matrix::Identity(q, q));
    const Index cap = std::max<Index>(2 * r.degree() + 2, detail::sum_nonneg(r.row_degrees(cfg.degree_trim_tol)) + 2);
    const detail::MinimalBasis basis = detail::extract_minimal_basis(
        q, m, 1, cap, [&](Index L) -> Matrix { return right_null_basis(detail::multiplication_uniform(r, L - 1), cfg); }, cfg,
        "kernel_to_image");
    const MatPoly img = detail::vectors_to_cols(basis, q);
    if (max_coeff_diff(matpoly_multiply(r, img), MatPoly(r.rows(), m)) > 1e-8)
        fail(ErrorKind::NumericFailure, "kernel_to_image: R(z) M(z) does not vanish");
    return img;
}

// ---------------------------------------------------------------------------

/// A behavior with one or more representations and its complexity, computed once.
class Behavior {
public:
    Behavior(Index q, std::optional<MatPoly> kernel, std::optional<MatPoly> image, std::optional<Trajectory> data,
             const ToleranceConfig& cfg = {})
        : q_(q), kernel_(std::move(kernel)), image_(std::move(image)), data_(std::move(data)) {
        cfg.validate();
        if (q_ < 1) fail(ErrorKind::InvalidInput, "Behavior: need at least one variable");
        if (!kernel_ && !image_ && !data_) fail(ErrorKind::InvalidInput, "Behavior: no representation given");
        if (kernel_) {
            if (kernel_->cols() != q_) fail(ErrorKind::InvalidInput, "Behavior: kernel has wrong column count");
            if (kernel_->rows() > q_ || generic_rank(*kernel_, cfg) != kernel_->rows())
                fail(ErrorKind::InvalidRepresentation, "Behavior: kernel representation is not of full row rank");
        }
        if (image_ && image_->rows() != q_) fail(ErrorKind::InvalidInput, "Behavior: image has wrong row count");
        if (data_ && data_->q() != q_) fail(ErrorKind::InvalidInput, "Behavior: data has wrong variable count");

        if (kernel_)
            complexity_ = detail::kernel_complexity(*kernel_, cfg);
        else if (image_)
            complexity_ = detail::image_complexity(*image_, cfg);
        else
            complexity_ = data_complexity(*data_, cfg);

        check_consistency(cfg);
    }

    static Behavior from_kernel(MatPoly r, const ToleranceConfig& cfg = {}) {
        const Index q = r.cols();
        return Behavior(q, std::move(r), std::nullopt, std::nullopt, cfg);
    }
    static Behavior from_image(MatPoly m, const ToleranceConfig& cfg = {}) {
        const Index q = m.rows();
        return Behavior(q, std::nullopt, std::move(m), std::nullopt, cfg);
    }
    static Behavior from_data(Trajectory w, const ToleranceConfig& cfg = {}) {
        const Index q = w.q();
        return Behavior(q, std::nullopt, std::nullopt, std::move(w), cfg);
    }
    /// Only the zero trajectory.
    static Behavior zero(Index q) { return from_kernel(MatPoly::constant(Matrix::Identity(q, q))); }
    /// Every trajectory (all variables free).
    static Behavior full(Index q) { return from_kernel(MatPoly(0, q)); }

    Index q() const { return q_; }
    const std::optional<MatPoly>& kernel() const { return kernel_; }
    const std::optional<MatPoly>& image() const { return image_; }
    const std::optional<Trajectory>& data() const { return data_; }
    const Complexity& complexity() const { return complexity_; }

    bool is_zero_behavior() const { return complexity_.m == 0 && complexity_.n == 0; }
    bool is_full_behavior() const { return complexity_.p == 0; }

private:
    static Complexity data_complexity(const Trajectory& w, const ToleranceConfig& cfg) {
        Complexity c = complexity_from_trajectory(w, cfg);
        if (c.n == 0 || c.p == 0) {
            c.lag = 0;
            return c;
        }
        for (Index L = 1; L <= detail::max_hankel_window(w); ++L) {
            if (numerical_rank(block_hankel(w, L), cfg) == c.n + c.m * L) {
                c.lag = L;
                break;
            }
        }
        return c;
    }

    void check_consistency(const ToleranceConfig& cfg) const;

    Index q_;
    std::optional<MatPoly> kernel_;
    std::optional<MatPoly> image_;
    std::optional<Trajectory> data_;
    Complexity complexity_;
};

/// Orthonormal basis of the window-L restriction B|_L. Kernel representations are
/// preferred, then image, then data (a data-only behavior whose trajectory is too short
/// for the window falls back to its identified kernel).
inline Matrix restriction_basis(const Behavior& b, Index L, const ToleranceConfig& cfg = {}) {
    if (b.kernel()) return detail::kernel_restriction_basis(*b.kernel(), L, cfg);
    if (b.image()) return detail::image_restriction_basis(*b.image(), L, cfg);
    const Trajectory& w = *b.data();
    if (L <= detail::max_hankel_window(w)) return range_basis(block_hankel(w, L), cfg);
    return detail::kernel_restriction_basis(kernel_from_data(w, cfg), L, cfg);
}

inline void Behavior::check_consistency(const ToleranceConfig& cfg) const {
    const int count = (kernel_ ? 1 : 0) + (image_ ? 1 : 0) + (data_ ? 1 : 0);
    if (count < 2) return;
    Index L = complexity_.lag + 2;
    if (data_) L = std::min(L, detail::max_hankel_window(*data_));
    std::vector<Matrix> bases;
    if (kernel_) bases.push_back(detail::kernel_restriction_basis(*kernel_, L, cfg));
    if (image_) bases.push_back(detail::image_restriction_basis(*image_, L, cfg));
    if (data_) bases.push_back(range_basis(block_hankel(*data_, L), cfg));
    for (std::size_t i = 1; i < bases.size(); ++i)
        if (subspace_distance(bases[0], bases[i]) > cfg.subspace_eq_tol)
            fail(ErrorKind::InvalidRepresentation, "Behavior: representations describe different behaviors");
}

/// Kernel representation: the stored one, else derived from the image or the data.
inline MatPoly kernel_of(const Behavior& b, const ToleranceConfig& cfg = {}) {
    if (b.kernel()) return *b.kernel();
    if (b.image()) return image_to_kernel(*b.image(), cfg);
    return kernel_from_data(*b.data(), cfg);
}

/// Image representation: the stored one, else derived from a kernel representation.
/// Throws Uncontrollable when none exists.
inline MatPoly image_of(const Behavior& b, const ToleranceConfig& cfg = {}) {
    if (b.image()) return *b.image();
    return kernel_to_image(kernel_of(b, cfg), cfg);
}

struct Membership {
    bool member = false;
    double residual = 0.0;  // ||T_T(R) vec(w)|| / ||w|| with unit-norm rows of R
};

inline Membership membership(const Trajectory& w, const Behavior& b, const ToleranceConfig& cfg = {}) {
    if (w.q() != b.q()) fail(ErrorKind::InvalidInput, "is_member: variable counts differ");
    const MatPoly r = minimal_kernel(kernel_of(b, cfg), cfg);
    if (w.length() < r.degree() + 1) fail(ErrorKind::Precondition, "is_member: trajectory shorter than deg(R) + 1");
    const double wn = w.vec().norm();
    if (wn == 0.0) return {true, 0.0};
    const double res = (block_toeplitz(r, w.length(), cfg) * w.vec()).norm() / wn;
    return {res <= cfg.subspace_eq_tol, res};
}

inline bool is_member(const Trajectory& w, const Behavior& b, const ToleranceConfig& cfg = {}) {
    return membership(w, b, cfg).member;
}

struct SynthesizedTrajectory {
    Trajectory trajectory;
    bool zero_behavior = false;  // the kernel was trivial, only w = 0 exists
};

/// Seeded random element of ker T_T(R), reshaped into a trajectory.
inline SynthesizedTrajectory random_trajectory_from_kernel(const MatPoly& r, Index T, std::uint64_t seed,
                                                           const ToleranceConfig& cfg = {}) {
    if (T < r.degree() + 1) fail(ErrorKind::Precondition, "random_trajectory_from_kernel: need T >= deg(R) + 1");
    const Index q = r.cols();
    const Matrix basis = right_null_basis(block_toeplitz(r, T, cfg), cfg);
    if (basis.cols() == 0) return {Trajectory::zeros(T, q), true};
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector coef(basis.cols());
    for (Index i = 0; i < coef.size(); ++i) coef(i) = normal(gen);
    return {Trajectory::from_vec(basis * coef, q), false};
}

/// Equality of solution sets, decided on restrictions to L = max(lag1, lag2) + 2.
inline bool behaviors_equal(const Behavior& b1, const Behavior& b2, const ToleranceConfig& cfg = {}) {
    if (b1.q() != b2.q()) return false;
    const Index L = std::max(b1.complexity().lag, b2.complexity().lag) + 2;
    const Matrix s1 = restriction_basis(b1, L, cfg);
    const Matrix s2 = restriction_basis(b2, L, cfg);
    if (s1.cols() != s2.cols()) return false;
    return subspace_distance(s1, s2) <= cfg.subspace_eq_tol;
}

/// Roots of the maximal minor of R of largest degree, i.e. the characteristic roots of
/// the outputs for the input/output partition with the most output dynamics.
inline std::vector<Complex> poles(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    if (r.rows() == 0 || r.rows() > r.cols()) return {};
    std::vector<Index> idx(static_cast<std::size_t>(r.rows()));
    for (Index i = 0; i < r.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
    Poly best;
    do {
        const Poly minor = matpoly_determinant(r.select_cols(idx), cfg);
        if (minor.degree() > best.degree()) best = minor;
    } while (detail::next_combination(idx, r.cols()));
    if (best.degree() < 1) return {};
    return poly_roots(best);
}

}  // namespace behalg

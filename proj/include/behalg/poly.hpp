#pragma once

// Scalar polynomials in ascending powers: Poly{c0, c1, ..., cd} = c0 + c1 z + ... + cd z^d.

#include <behalg/numkernel.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

namespace behalg {

class Poly {
public:
    /// The zero polynomial.
    Poly() : coeffs_(Vector::Zero(1)) {}

    /// Trailing coefficients at or below `trim_tol * max|c|` are dropped.
    explicit Poly(Vector ascending, double trim_tol = ToleranceConfig{}.degree_trim_tol) {
        if (ascending.size() == 0) fail(ErrorKind::InvalidInput, "Poly: empty coefficient sequence");
        require_finite(ascending, "Poly");
        const double amax = ascending.cwiseAbs().maxCoeff();
        Index last = -1;
        for (Index i = ascending.size() - 1; i >= 0; --i) {
            if (std::abs(ascending(i)) > trim_tol * amax && ascending(i) != 0.0) {
                last = i;
                break;
            }
        }
        coeffs_ = last < 0 ? Vector::Zero(1) : Vector(ascending.head(last + 1));
        degree_ = static_cast<int>(last);
    }

    Poly(std::initializer_list<double> ascending)
        : Poly(Eigen::Map<const Vector>(ascending.begin(), static_cast<Index>(ascending.size()))) {}

    static Poly constant(double c) { return Poly(Vector::Constant(1, c)); }

    /// Monic polynomial prod (z - r_i); complex roots must come in conjugate pairs.
    static Poly from_roots(const std::vector<Complex>& roots);
    static Poly from_roots(const std::vector<double>& roots) {
        std::vector<Complex> c(roots.begin(), roots.end());
        return from_roots(c);
    }

    /// -1 for the zero polynomial.
    int degree() const { return degree_; }
    bool is_zero() const { return degree_ < 0; }
    const Vector& coeffs() const { return coeffs_; }
    double operator[](Index i) const { return i < coeffs_.size() ? coeffs_(i) : 0.0; }
    double leading() const { return coeffs_(coeffs_.size() - 1); }

    Poly monic() const {
        if (is_zero()) fail(ErrorKind::InvalidInput, "monic: zero polynomial");
        return Poly(coeffs_ / leading(), 0.0);
    }

    Poly scaled(double s) const { return Poly(coeffs_ * s, 0.0); }

    template <class T>
    T operator()(T z) const {
        T acc = T(0);
        for (Index i = coeffs_.size() - 1; i >= 0; --i) acc = acc * z + T(coeffs_(i));
        return acc;
    }

private:
    Vector coeffs_;
    int degree_ = -1;
};

/// (deg a + k + 1) x (k + 1) matrix mapping the coefficients of x (deg <= k) to those of a * x.
inline Matrix convolution_columns(const Poly& a, Index k) {
    const Index da = std::max(a.degree(), 0);
    Matrix c = Matrix::Zero(da + k + 1, k + 1);
    for (Index j = 0; j <= k; ++j) c.block(j, j, da + 1, 1) = a.coeffs().head(da + 1);
    return c;
}

inline Poly poly_multiply(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return Poly(convolution_columns(a, b.degree()) * b.coeffs(), 0.0);
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    const Index n = std::max(a.coeffs().size(), b.coeffs().size());
    Vector c = Vector::Zero(n);
    c.head(a.coeffs().size()) += a.coeffs();
    c.head(b.coeffs().size()) += b.coeffs();
    return Poly(c, 0.0);
}

inline Poly Poly::from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1.0)};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0.0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    Vector re(static_cast<Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) re(static_cast<Index>(i)) = c[i].real();
    return Poly(re, 0.0);
}

/// Least-squares solution of divisor * quotient = dividend with its relative residual.
struct Deconvolution {
    Poly quotient;
    double relative_residual = 0.0;
};

inline Deconvolution deconvolve(const Poly& dividend, const Poly& divisor) {
    if (divisor.is_zero()) fail(ErrorKind::InvalidInput, "deconvolve: zero divisor");
    if (dividend.is_zero()) return {Poly(), 0.0};
    const Index k = dividend.degree() - divisor.degree();
    if (k < 0) return {Poly(), 1.0};
    const Matrix c = convolution_columns(divisor, k);
    const Vector rhs = dividend.coeffs();
    const Vector x = c.colPivHouseholderQr().solve(rhs);
    const double res = (c * x - rhs).norm() / rhs.norm();
    return {Poly(x, 0.0), res};
}

inline std::vector<Complex> poly_roots(const Poly& a) {
    if (a.degree() < 1) fail(ErrorKind::InvalidInput, "poly_roots: degree must be at least 1");
    const Poly m = a.monic();
    const Index d = m.degree();
    Matrix companion = Matrix::Zero(d, d);
    companion.bottomRows(d - 1).leftCols(d - 1).setIdentity();
    companion.col(d - 1) = -m.coeffs().head(d);
    Eigen::EigenSolver<Matrix> es(companion, false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

/// Monic GCD. The degree is read off the rank gap of the Sylvester matrix and the
/// divisor is recovered from the cofactors spanning the subresultant null space.
inline Poly poly_gcd(const Poly& a_in, const Poly& b_in, const ToleranceConfig& cfg = {}) {
    if (a_in.is_zero() || b_in.is_zero()) fail(ErrorKind::InvalidInput, "poly_gcd: zero polynomial");
    if (a_in.degree() == 0 || b_in.degree() == 0) return Poly::constant(1.0);
    const Poly a = a_in.scaled(1.0 / a_in.coeffs().norm());
    const Poly b = b_in.scaled(1.0 / b_in.coeffs().norm());
    const Index m = a.degree();
    const Index n = b.degree();

    Matrix syl(m + n, m + n);
    syl << convolution_columns(a, n - 1), convolution_columns(b, m - 1);
    const Index d = m + n - numerical_rank(syl, cfg);
    if (d <= 0) return Poly::constant(1.0);
    if (d >= std::min(m, n)) {
        // One polynomial divides the other.
        const Poly& small = m <= n ? a : b;
        return small.monic();
    }

    // a * v = b * u with deg v = n - d, deg u = m - d.
    Matrix sub(m + n - d + 1, (n - d + 1) + (m - d + 1));
    sub << convolution_columns(a, n - d), -convolution_columns(b, m - d);
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
    const Vector null = svd.matrixV().col(sub.cols() - 1);
    const Poly v(null.head(n - d + 1), 0.0);
    const Poly u(null.tail(m - d + 1), 0.0);

    // a = g * u, b = g * v, solved jointly in the least-squares sense.
    Matrix lhs(m + n + 2, d + 1);
    lhs << convolution_columns(u, d), convolution_columns(v, d);
    Vector rhs(m + n + 2);
    rhs << a.coeffs(), b.coeffs();
    if (u.degree() != m - d || v.degree() != n - d)
        fail(ErrorKind::NumericFailure, "poly_gcd: degenerate cofactors");
    const Vector g = lhs.colPivHouseholderQr().solve(rhs);
    return Poly(g, cfg.degree_trim_tol).monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b, const ToleranceConfig& cfg = {}) {
    if (a.is_zero() || b.is_zero()) fail(ErrorKind::InvalidInput, "poly_lcm: zero polynomial");
    const Poly g = poly_gcd(a, b, cfg);
    const Poly ab = poly_multiply(a.monic(), b.monic());
    const Deconvolution q = deconvolve(ab, g);
    if (q.relative_residual > 1e-8)
        fail(ErrorKind::NumericFailure, "poly_lcm: deconvolution residual " +
                                            std::to_string(q.relative_residual));
    return q.quotient.monic();
}

// ---------------------------------------------------------------------------
// Matrix polynomials R(z) = R0 + R1 z + ... + Rl z^l, every Rk of shape rows x cols.

class MatPoly {
public:
    /// Zero matrix polynomial of degree 0.
    MatPoly(Index rows = 0, Index cols = 0) : rows_(rows), cols_(cols), coeffs_{Matrix::Zero(rows, cols)} {}

    /// Trailing coefficient matrices at or below `trim_tol * max|entry|` are dropped.
    explicit MatPoly(std::vector<Matrix> coeffs, double trim_tol = ToleranceConfig{}.degree_trim_tol) {
        if (coeffs.empty()) fail(ErrorKind::InvalidInput, "MatPoly: no coefficient matrices");
        rows_ = coeffs.front().rows();
        cols_ = coeffs.front().cols();
        double amax = 0.0;
        for (const Matrix& c : coeffs) {
            if (c.rows() != rows_ || c.cols() != cols_)
                fail(ErrorKind::InvalidInput, "MatPoly: coefficient shapes differ");
            require_finite(c, "MatPoly");
            if (c.size() > 0) amax = std::max(amax, c.cwiseAbs().maxCoeff());
        }
        std::size_t keep = 1;
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            if (coeffs[k].size() > 0) {
                const double cmax = coeffs[k].cwiseAbs().maxCoeff();
                if (cmax > trim_tol * amax && cmax != 0.0) {
                    keep = k + 1;
                    break;
                }
            }
        }
        coeffs.resize(keep);
        coeffs_ = std::move(coeffs);
    }

    static MatPoly constant(const Matrix& m) { return MatPoly(std::vector<Matrix>{m}, 0.0); }

    /// 1 x 1 matrix polynomial holding a scalar polynomial.
    static MatPoly scalar(const Poly& p) {
        std::vector<Matrix> c;
        for (Index i = 0; i < p.coeffs().size(); ++i) c.push_back(Matrix::Constant(1, 1, p.coeffs()(i)));
        return MatPoly(std::move(c), 0.0);
    }

    /// Build from a grid of scalar polynomials, entries[i][j] = R_ij(z).
    static MatPoly from_entries(const std::vector<std::vector<Poly>>& entries) {
        const Index r = static_cast<Index>(entries.size());
        const Index c = r > 0 ? static_cast<Index>(entries.front().size()) : 0;
        int deg = 0;
        for (const auto& row : entries) {
            if (static_cast<Index>(row.size()) != c) fail(ErrorKind::InvalidInput, "from_entries: ragged rows");
            for (const Poly& p : row) deg = std::max(deg, p.degree());
        }
        std::vector<Matrix> coeffs(deg + 1, Matrix::Zero(r, c));
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < c; ++j)
                for (int k = 0; k <= entries[i][j].degree(); ++k) coeffs[k](i, j) = entries[i][j][k];
        return MatPoly(std::move(coeffs), 0.0);
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Matrix& coeff(Index k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    Matrix coeff_or_zero(Index k) const {
        return k >= 0 && k <= degree() ? coeff(k) : Matrix::Zero(rows_, cols_);
    }
    const std::vector<Matrix>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const Matrix& c : coeffs_)
            if (c.size() > 0 && c.cwiseAbs().maxCoeff() != 0.0) return false;
        return true;
    }

    Poly entry(Index i, Index j) const {
        Vector c(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) c(static_cast<Index>(k)) = coeffs_[k](i, j);
        return Poly(c, 0.0);
    }

    /// Degree of row i: last power whose coefficient row exceeds `trim` relative to the
    /// row's largest entry. -1 for a zero row.
    int row_degree(Index i, double trim = ToleranceConfig{}.degree_trim_tol) const {
        return vector_degree(i, true, trim);
    }
    int col_degree(Index j, double trim = ToleranceConfig{}.degree_trim_tol) const {
        return vector_degree(j, false, trim);
    }

    std::vector<int> row_degrees(double trim = ToleranceConfig{}.degree_trim_tol) const {
        std::vector<int> d;
        for (Index i = 0; i < rows_; ++i) d.push_back(row_degree(i, trim));
        return d;
    }
    std::vector<int> col_degrees(double trim = ToleranceConfig{}.degree_trim_tol) const {
        std::vector<int> d;
        for (Index j = 0; j < cols_; ++j) d.push_back(col_degree(j, trim));
        return d;
    }

    /// Row i as the coefficient row [R0(i,:) R1(i,:) ... Rl(i,:)].
    Vector row_coefficients(Index i) const {
        Vector v(cols_ * (degree() + 1));
        for (int k = 0; k <= degree(); ++k) v.segment(k * cols_, cols_) = coeffs_[k].row(i).transpose();
        return v;
    }
    /// Column j as the coefficient stack [R0(:,j); R1(:,j); ...].
    Vector col_coefficients(Index j) const {
        Vector v(rows_ * (degree() + 1));
        for (int k = 0; k <= degree(); ++k) v.segment(k * rows_, rows_) = coeffs_[k].col(j);
        return v;
    }

    template <class Scalar>
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eval(Scalar z) const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> acc =
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(rows_, cols_);
        for (int k = degree(); k >= 0; --k) acc = (acc * z).eval() + coeffs_[k].template cast<Scalar>();
        return acc;
    }

    MatPoly select_rows(const std::vector<Index>& idx) const {
        std::vector<Matrix> c;
        for (const Matrix& m : coeffs_) {
            Matrix s(static_cast<Index>(idx.size()), cols_);
            for (std::size_t r = 0; r < idx.size(); ++r) s.row(static_cast<Index>(r)) = m.row(idx[r]);
            c.push_back(s);
        }
        return MatPoly(std::move(c), 0.0);
    }
    MatPoly select_cols(const std::vector<Index>& idx) const {
        std::vector<Matrix> c;
        for (const Matrix& m : coeffs_) {
            Matrix s(rows_, static_cast<Index>(idx.size()));
            for (std::size_t r = 0; r < idx.size(); ++r) s.col(static_cast<Index>(r)) = m.col(idx[r]);
            c.push_back(s);
        }
        return MatPoly(std::move(c), 0.0);
    }

private:
    int vector_degree(Index idx, bool is_row, double trim) const {
        double vmax = 0.0;
        for (const Matrix& c : coeffs_) {
            const double m = is_row ? c.row(idx).cwiseAbs().maxCoeff() : c.col(idx).cwiseAbs().maxCoeff();
            vmax = std::max(vmax, m);
        }
        if (!(vmax > 0.0)) return -1;
        for (int k = degree(); k >= 0; --k) {
            const double m = is_row ? coeffs_[k].row(idx).cwiseAbs().maxCoeff() : coeffs_[k].col(idx).cwiseAbs().maxCoeff();
            if (m > trim * vmax) return k;
        }
        return -1;
    }

    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Matrix> coeffs_;
};

inline MatPoly vstack(const MatPoly& a, const MatPoly& b) {
    if (a.cols() != b.cols()) fail(ErrorKind::InvalidInput, "vstack: column counts differ");
    const int d = std::max(a.degree(), b.degree());
    std::vector<Matrix> c;
    for (int k = 0; k <= d; ++k) {
        Matrix m(a.rows() + b.rows(), a.cols());
        m << a.coeff_or_zero(k), b.coeff_or_zero(k);
        c.push_back(m);
    }
    return MatPoly(std::move(c), 0.0);
}

inline MatPoly hstack(const MatPoly& a, const MatPoly& b) {
    if (a.rows() != b.rows()) fail(ErrorKind::InvalidInput, "hstack: row counts differ");
    const int d = std::max(a.degree(), b.degree());
    std::vector<Matrix> c;
    for (int k = 0; k <= d; ++k) {
        Matrix m(a.rows(), a.cols() + b.cols());
        m << a.coeff_or_zero(k), b.coeff_or_zero(k);
        c.push_back(m);
    }
    return MatPoly(std::move(c), 0.0);
}

inline MatPoly matpoly_multiply(const MatPoly& a, const MatPoly& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::InvalidInput, "matpoly_multiply: inner dimensions differ");
    std::vector<Matrix> c(a.degree() + b.degree() + 1, Matrix::Zero(a.rows(), b.cols()));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coeff(i) * b.coeff(j);
    return MatPoly(std::move(c), 0.0);
}

/// Scalar polynomial times matrix polynomial.
inline MatPoly scale(const Poly& s, const MatPoly& a) {
    if (s.is_zero()) return MatPoly(a.rows(), a.cols());
    std::vector<Matrix> c(s.degree() + a.degree() + 1, Matrix::Zero(a.rows(), a.cols()));
    for (int i = 0; i <= s.degree(); ++i)
        for (int j = 0; j <= a.degree(); ++j) c[i + j] += s[i] * a.coeff(j);
    return MatPoly(std::move(c), 0.0);
}

/// Largest coefficient-wise difference between two matrix polynomials of equal shape.
inline double max_coeff_diff(const MatPoly& a, const MatPoly& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorKind::InvalidInput, "max_coeff_diff: shapes differ");
    double d = 0.0;
    const int deg = std::max(a.degree(), b.degree());
    for (int k = 0; k <= deg; ++k) {
        const Matrix diff = a.coeff_or_zero(k) - b.coeff_or_zero(k);
        if (diff.size() > 0) d = std::max(d, diff.cwiseAbs().maxCoeff());
    }
    return d;
}

/// Determinant of a square matrix polynomial by evaluation on the unit circle and
/// inverse DFT. A 0 x 0 polynomial has determinant 1.
inline Poly matpoly_determinant(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    if (r.rows() != r.cols()) fail(ErrorKind::InvalidInput, "determinant: matrix polynomial is not square");
    if (r.rows() == 0) return Poly::constant(1.0);
    Index bound = 0;
    for (int d : r.row_degrees()) bound += std::max(d, 0);
    const Index n = bound + 1;
    std::vector<Complex> values(static_cast<std::size_t>(n));
    const double two_pi = 2.0 * std::acos(-1.0);
    for (Index k = 0; k < n; ++k) {
        const Complex z = std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(n));
        values[static_cast<std::size_t>(k)] = r.eval(z).partialPivLu().determinant();
    }
    Vector c(n);
    for (Index j = 0; j < n; ++j) {
        Complex acc(0.0);
        for (Index k = 0; k < n; ++k)
            acc += values[static_cast<std::size_t>(k)] *
                   std::polar(1.0, -two_pi * static_cast<double>(j * k % n) / static_cast<double>(n));
        c(j) = acc.real() / static_cast<double>(n);
    }
    const double cmax = c.cwiseAbs().maxCoeff();
    // Entries are exact up to rounding in the transform; clear the noise floor.
    for (Index j = 0; j < n; ++j)
        if (std::abs(c(j)) <= 1e3 * std::numeric_limits<double>::epsilon() * cmax * static_cast<double>(n))
            c(j) = 0.0;
    return Poly(c, cfg.degree_trim_tol);
}

/// Rank of R at a few fixed generic points; equals the normal rank with probability one.
inline Index generic_rank(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    if (r.rows() == 0 || r.cols() == 0) return 0;
    static constexpr double kPoints[] = {0.6180339887498949, -1.3247179572447460, 2.2360679774997896};
    Index best = 0;
    for (double z : kPoints) best = std::max(best, numerical_rank(r.eval(z), cfg));
    return best;
}

namespace detail {
inline bool next_combination(std::vector<Index>& idx, Index n) {
    const Index k = static_cast<Index>(idx.size());
    for (Index i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < n - k + i) {
            ++idx[static_cast<std::size_t>(i)];
            for (Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}
}  // namespace detail

/// Monic GCD of all nonzero maximal (rows x rows) minors; the zero polynomial if all vanish.
inline Poly maximal_minors_gcd(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    if (r.rows() > r.cols()) fail(ErrorKind::InvalidInput, "maximal_minors_gcd: more rows than columns");
    if (r.rows() == 0) return Poly::constant(1.0);
    std::vector<Index> idx(static_cast<std::size_t>(r.rows()));
    for (Index i = 0; i < r.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
    Poly acc;
    do {
        const Poly minor = matpoly_determinant(r.select_cols(idx), cfg);
        if (minor.is_zero()) continue;
        acc = acc.is_zero() ? minor.monic() : poly_gcd(acc, minor, cfg);
    } while (detail::next_combination(idx, r.cols()));
    return acc;
}

/// Left primeness: R(lambda) keeps full row rank for every complex lambda.
///
/// Points where the rank can drop are zeros of det(R(z) X) for a fixed random q x p
/// matrix X; those are found as eigenvalues of the companion matrix of that
/// determinant, and the rank of R is then checked at each of them.
inline bool is_left_prime(const MatPoly& r, const ToleranceConfig& cfg = {}) {
    const Index p = r.rows();
    const Index q = r.cols();
    if (p == 0) return true;
    if (p > q) fail(ErrorKind::InvalidRepresentation, "is_left_prime: more rows than columns");
    if (generic_rank(r, cfg) < p)
        fail(ErrorKind::InvalidRepresentation, "is_left_prime: not of full generic row rank");

    // Deterministic pseudo-random projection (fixed LCG so results are reproducible).
    Matrix x(q, p);
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (Index j = 0; j < p; ++j)
        for (Index i = 0; i < q; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            x(i, j) = static_cast<double>(state >> 11) / static_cast<double>(1ull << 53) - 0.5;
        }
    const Poly det = matpoly_determinant(matpoly_multiply(r, MatPoly::constant(x)), cfg);
    if (det.degree() < 1) return true;

    // Rows scaled to unit coefficient norm, so |R_i(lambda)| <= sum_k |lambda|^k.
    MatPoly unit = r;
    {
        std::vector<Matrix> c = r.coeffs();
        for (Index i = 0; i < p; ++i) {
            const double n = r.row_coefficients(i).norm();
            for (Matrix& ck : c) ck.row(i) /= n;
        }
        unit = MatPoly(std::move(c), 0.0);
    }
    const double drop_tol = std::sqrt(cfg.rel_rank_tol);
    for (const Complex& lambda : poly_roots(det)) {
        double bound = 0.0;
        for (int k = 0; k <= unit.degree(); ++k) bound += std::pow(std::abs(lambda), k);
        Eigen::JacobiSVD<ComplexMatrix> svd(unit.eval(lambda));
        if (svd.singularValues()(p - 1) <= drop_tol * bound) return false;
    }
    return true;
}

}  // namespace behalg

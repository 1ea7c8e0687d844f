#pragma once

// Sum and intersection of behaviors, each by generators (image) or annihilators (kernel).

#include <behalg/behavior.hpp>

#include <string>
#include <utility>
#include <vector>

namespace behalg {

enum class Method {
    GeneratorUnion,           // sum from [P_a P_b]
    AnnihilatorUnion,         // intersection from [R_a; R_b]
    AnnihilatorIntersection,  // sum from common annihilators of R_a and R_b
    GeneratorIntersection,    // intersection from common generators of P_a and P_b
};

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::GeneratorUnion: return "generator-union";
        case Method::AnnihilatorUnion: return "annihilator-union";
        case Method::AnnihilatorIntersection: return "annihilator-intersection";
        case Method::GeneratorIntersection: return "generator-intersection";
    }
    return "unknown";
}

struct Diagnostics {
    std::vector<std::pair<Index, Index>> kernel_dims;  // (window, dimension found)
    bool trivial = false;                              // result is the full behavior
    bool zero_behavior = false;                        // result contains only w = 0
    int common_factor_degree = -1;                     // trivial sum: degree of the residual common factor
    double residual = 0.0;                             // verification residual
};

struct OpResult {
    Behavior behavior;
    Method method;
    Index chosen_L = 0;
    Diagnostics diagnostics;
};

namespace detail {

inline void require_same_q(const Behavior& a, const Behavior& b, const char* who) {
    if (a.q() != b.q()) fail(ErrorKind::InvalidInput, std::string(who) + ": behaviors have different numbers of variables");
}

inline MatPoly image_or_throw(const Behavior& b, const char* which, const char* who, const ToleranceConfig& cfg) {
    try {
        return kernel_to_image(minimal_kernel(kernel_of(b, cfg), cfg), cfg);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Uncontrollable)
            fail(ErrorKind::Uncontrollable, std::string(who) + ": behavior " + which + " is not controllable");
        throw;
    }
}

/// dim (A + B)|_L as the rank of the joined restriction bases.
inline Index sum_dimension(const Behavior& a, const Behavior& b, Index L, const ToleranceConfig& cfg) {
    const Matrix sa = restriction_basis(a, L, cfg);
    const Matrix sb = restriction_basis(b, L, cfg);
    Matrix joined(sa.rows(), sa.cols() + sb.cols());
    joined << sa, sb;
    return numerical_rank(joined, cfg);
}

/// (m, n) of A + B from its restricted dimensions past the largest possible lag.
inline Complexity sum_complexity(const Behavior& a, const Behavior& b, const ToleranceConfig& cfg) {
    const Index bound = a.complexity().n + b.complexity().n;
    return complexity_from_dims(a.q(), bound, [&](Index L) -> Index { return sum_dimension(a, b, L, cfg); });
}

inline Index window_cap(int deg_a, int deg_b, Index n_a, Index n_b) {
    return std::max<Index>(2 * (std::max(deg_a, 0) + std::max(deg_b, 0)) + 4, n_a + n_b + 2);
}

}  // namespace detail

/// A + B = image [P_a P_b]. The result is not compressed and may be non-minimal.
inline OpResult sum_image(const Behavior& a, const Behavior& b, const ToleranceConfig& cfg = {}) {
    detail::require_same_q(a, b, "sum_image");
    const MatPoly pa = a.image() ? *a.image() : detail::image_or_throw(a, "A", "sum_image", cfg);
    const MatPoly pb = b.image() ? *b.image() : detail::image_or_throw(b, "B", "sum_image", cfg);
    OpResult res{Behavior::from_image(hstack(pa, pb), cfg), Method::GeneratorUnion, 0, {}};
    res.diagnostics.trivial = res.behavior.is_full_behavior();
    res.diagnostics.zero_behavior = res.behavior.is_zero_behavior();
    return res;
}

/// A intersect B = ker [R_a; R_b], reduced to a minimal kernel representation.
inline OpResult intersect_kernel(const Behavior& a, const Behavior& b, const ToleranceConfig& cfg = {}) {
    detail::require_same_q(a, b, "intersect_kernel");
    const MatPoly stacked = vstack(kernel_of(a, cfg), kernel_of(b, cfg));
    const MatPoly r = minimal_kernel(stacked, cfg);
    OpResult res{Behavior::from_kernel(r, cfg), Method::AnnihilatorUnion, 0, {}};
    res.chosen_L = res.behavior.complexity().lag + 1;
    res.diagnostics.trivial = res.behavior.is_full_behavior();
    res.diagnostics.zero_behavior = res.behavior.is_zero_behavior();
    return res;
}

/// A + B from the annihilators common to both behaviors.
///
/// Row modules of row reduced R_a, R_b restricted to degree < L are the row spaces of
/// their Toeplitz stacks with L block columns, so common annihilators come from the
/// left kernel [Z_a -Z_b] of the stacked Toeplitz matrices as Z_a T_L(R_a).
inline OpResult sum_kernel(const Behavior& a, const Behavior& b, const ToleranceConfig& cfg = {}) {
    detail::require_same_q(a, b, "sum_kernel");
    const Index q = a.q();
    const MatPoly ra = minimal_kernel(kernel_of(a, cfg), cfg);
    const MatPoly rb = minimal_kernel(kernel_of(b, cfg), cfg);
    const Behavior ka = Behavior::from_kernel(ra, cfg);
    const Behavior kb = Behavior::from_kernel(rb, cfg);

    const Complexity cs = detail::sum_complexity(ka, kb, cfg);
    if (cs.p == 0) {
        OpResult res{Behavior::full(q), Method::AnnihilatorIntersection, 0, {}};
        res.diagnostics.trivial = true;
        if (ra.rows() > 0 && rb.rows() > 0) {
            const Poly ga = maximal_minors_gcd(ra, cfg);
            const Poly gb = maximal_minors_gcd(rb, cfg);
            res.diagnostics.common_factor_degree = poly_gcd(ga, gb, cfg).degree();
        }
        return res;
    }

    const double trim = cfg.degree_trim_tol;
    auto split = [&](Index L, Matrix& ta, Matrix& tb, Matrix& z) {
        ta = detail::toeplitz_rows(ra, L, trim);
        tb = detail::toeplitz_rows(rb, L, trim);
        Matrix s(ta.rows() + tb.rows(), q * L);
        s << ta, tb;
        z = s.rows() > 0 ? left_null_basis(s, cfg) : Matrix(0, 0);
    };
    const Index cap = detail::window_cap(ra.degree(), rb.degree(), ka.complexity().n, kb.complexity().n);
    const detail::MinimalBasis basis = detail::extract_minimal_basis(
        q, cs.p, 1, cap,
        [&](Index L) -> Matrix {
            Matrix ta, tb, z;
            split(L, ta, tb, z);
            if (z.rows() == 0) return Matrix(q * L, 0);
            return (z.leftCols(ta.rows()) * ta).transpose();
        },
        cfg, "sum_kernel");

    Matrix ta, tb, z;
    split(basis.window, ta, tb, z);
    const Matrix lhs = z.leftCols(ta.rows()) * ta;
    const Matrix rhs = -(z.rightCols(tb.rows()) * tb);
    const double scale = std::max({lhs.norm(), rhs.norm(), 1e-300});
    const double residual = (lhs - rhs).norm() / scale;
    if (residual > 1e-8) fail(ErrorKind::NumericFailure, "sum_kernel: Z_a T(R_a) and Z_b T(R_b) disagree");

    OpResult res{Behavior::from_kernel(detail::vectors_to_rows(basis, q), cfg), Method::AnnihilatorIntersection,
                 basis.window, {}};
    res.diagnostics.kernel_dims = basis.dims;
    res.diagnostics.residual = residual;
    res.diagnostics.zero_behavior = res.behavior.is_zero_behavior();
    return res;
}

/// A intersect B from the generators common to both image representations: the
/// transpose of `sum_kernel`, with right kernels of [P_a -P_b] acting on latent
/// coefficient stacks. Throws Uncontrollable when the intersection has no image
/// representation.
inline OpResult intersect_image(const Behavior& a, const Behavior& b, const ToleranceConfig& cfg = {}) {
    detail::require_same_q(a, b, "intersect_image");
    const Index q = a.q();
    // Minimal image representations make the column module the full generator module.
    const MatPoly pa = detail::image_or_throw(a, "A", "intersect_image", cfg);
    const MatPoly pb = detail::image_or_throw(b, "B", "intersect_image", cfg);
    const Behavior ia = Behavior::from_image(pa, cfg);
    const Behavior ib = Behavior::from_image(pb, cfg);
    const Complexity ca = ia.complexity();
    const Complexity cb = ib.complexity();

    const Complexity cs = detail::sum_complexity(ia, ib, cfg);
    const Index m_cap = ca.m + cb.m - cs.m;
    const Index n_cap = ca.n + cb.n - cs.n;
    if (m_cap < 0 || n_cap < 0) fail(ErrorKind::NumericFailure, "intersect_image: negative intersection complexity");
    if (m_cap == 0) {
        if (n_cap > 0)
            fail(ErrorKind::Uncontrollable, "intersect_image: the intersection is autonomous and has no image representation");
        OpResult res{Behavior::from_image(MatPoly(q, 0), cfg), Method::GeneratorIntersection, 0, {}};
        res.diagnostics.zero_behavior = true;
        return res;
    }

    auto products = [&](Index L, Matrix& ga, Matrix& gb) {
        const Matrix ma = multiplication_matrix(pa, L - 1, cfg);
        const Matrix mb = multiplication_matrix(pb, L - 1, cfg);
        Matrix joined(q * L, ma.cols() + mb.cols());
        joined << ma, -mb;
        const Matrix null = right_null_basis(joined, cfg);
        if (null.cols() == 0 || joined.cols() == 0) {
            ga = gb = Matrix(q * L, 0);
            return;
        }
        ga = ma * null.topRows(ma.cols());
        gb = mb * null.bottomRows(mb.cols());
    };
    const Index cap = detail::window_cap(pa.degree(), pb.degree(), ca.n, cb.n);
    const detail::MinimalBasis basis = detail::extract_minimal_basis(
        q, m_cap, 1, cap,
        [&](Index L) -> Matrix {
            Matrix ga, gb;
            products(L, ga, gb);
            return ga;
        },
        cfg, "intersect_image");

    Matrix ga, gb;
    products(basis.window, ga, gb);
    const double scale = std::max({ga.norm(), gb.norm(), 1e-300});
    const double residual = (ga - gb).norm() / scale;
    if (residual > 1e-8) fail(ErrorKind::NumericFailure, "intersect_image: P_a z_a and P_b z_b disagree");

    const MatPoly p_cap = detail::vectors_to_cols(basis, q);
    const Behavior result = Behavior::from_image(p_cap, cfg);
    if (result.complexity().n != n_cap)
        fail(ErrorKind::Uncontrollable, "intersect_image: the intersection is not controllable");
    OpResult res{result, Method::GeneratorIntersection, basis.window, {}};
    res.diagnostics.kernel_dims = basis.dims;
    res.diagnostics.residual = residual;
    res.diagnostics.trivial = result.is_full_behavior();
    return res;
}

/// Complexity of A + B from those of A, B and their intersection:
/// m+ = m_A + m_B - m_cap, n+ = n_A + n_B - n_cap. The lag is reported as ceil(n+/p+).
inline Complexity operation_complexities(const Complexity& ca, const Complexity& cb, const Complexity& ccap) {
    if (ca.q != cb.q || ca.q != ccap.q) fail(ErrorKind::InvalidInput, "operation_complexities: q differs");
    Complexity c;
    c.q = ca.q;
    c.m = ca.m + cb.m - ccap.m;
    c.n = ca.n + cb.n - ccap.n;
    c.p = c.q - c.m;
    if (c.m < 0 || c.n < 0 || c.p < 0) fail(ErrorKind::InconsistentData, "operation_complexities: inconsistent complexities");
    c.lag = c.p > 0 ? detail::ceil_div(c.n, c.p) : 0;
    return c;
}

/// Sum of scalar autonomous behaviors ker a(sigma) + ker b(sigma) = ker lcm(a, b).
inline Poly scalar_autonomous_sum(const Poly& ra, const Poly& rb, const ToleranceConfig& cfg = {}) {
    if (ra.is_zero() || rb.is_zero()) fail(ErrorKind::InvalidInput, "scalar_autonomous_sum: zero polynomial");
    return poly_lcm(ra, rb, cfg).monic();
}

/// Intersection of scalar autonomous behaviors = ker gcd(a, b); 1 for coprime inputs.
inline Poly scalar_autonomous_intersection(const Poly& ra, const Poly& rb, const ToleranceConfig& cfg = {}) {
    if (ra.is_zero() || rb.is_zero()) fail(ErrorKind::InvalidInput, "scalar_autonomous_intersection: zero polynomial");
    return poly_gcd(ra, rb, cfg).monic();
}

/// ker [q_a -p_a] + ker diag(1, p_b) = ker p_b [q_a -p_a] (for coprime p_a, p_b).
inline MatPoly oracle_sum_siso_autonomous(const Poly& qa, const Poly& pa, const Poly& pb) {
    if (pa.is_zero() || pb.is_zero()) fail(ErrorKind::InvalidInput, "oracle_sum_siso_autonomous: zero polynomial");
    return MatPoly::from_entries({{poly_multiply(pb, qa), poly_multiply(pb, pa).scaled(-1.0)}});
}

/// ker [q_a -p_a] intersect ker diag(1, p_b) = ker diag(1, gcd(p_a, p_b)).
inline MatPoly oracle_intersect_siso_autonomous(const Poly& pa, const Poly& pb, const ToleranceConfig& cfg = {}) {
    if (pa.is_zero() || pb.is_zero()) fail(ErrorKind::InvalidInput, "oracle_intersect_siso_autonomous: zero polynomial");
    return MatPoly::from_entries({{Poly::constant(1.0), Poly::constant(0.0)},
                                  {Poly::constant(0.0), poly_gcd(pa, pb, cfg).monic()}});
}

/// Restricted dimensions entering dim(A+B)|_L + dim(A cap B)|_L = dim A|_L + dim B|_L.
struct DimensionIdentity {
    Index L = 0;
    Index dim_a = 0;
    Index dim_b = 0;
    Index dim_sum = 0;
    Index dim_intersection = 0;
    bool holds() const { return dim_sum + dim_intersection == dim_a + dim_b; }
};

inline DimensionIdentity dimension_identity(const Behavior& a, const Behavior& b, const Behavior& sum,
                                            const Behavior& intersection, const ToleranceConfig& cfg = {}) {
    DimensionIdentity d;
    d.L = std::max({a.complexity().lag, b.complexity().lag, sum.complexity().lag, intersection.complexity().lag}) + 1;
    d.dim_a = restriction_basis(a, d.L, cfg).cols();
    d.dim_b = restriction_basis(b, d.L, cfg).cols();
    d.dim_sum = restriction_basis(sum, d.L, cfg).cols();
    d.dim_intersection = restriction_basis(intersection, d.L, cfg).cols();
    return d;
}

}  // namespace behalg

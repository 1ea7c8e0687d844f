#include "support/systems.hpp"

#include <gtest/gtest.h>

using namespace behalg;
using namespace testsupport;

namespace {

const Poly kP1{0.11, -1.11, 0.0, 1.0};   // roots -1.1, 0.1, 1
const Poly kP2{-0.1, -0.6, -0.3, 1.0};   // roots -0.5, -0.2, 1

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::InvalidInput;
}

MatPoly diag2(const Poly& a, const Poly& b) {
    return MatPoly::from_entries({{a, Poly::constant(0.0)}, {Poly::constant(0.0), b}});
}

}  // namespace

TEST(RestrictedDimension, Examples) {
    EXPECT_EQ(restricted_dimension({1, 0, 1, 3, 3}, 5), 3);
    EXPECT_EQ(restricted_dimension({2, 2, 0, 0, 0}, 4), 8);
    EXPECT_EQ(restricted_dimension({2, 1, 1, 2, 2}, 10), 12);
    EXPECT_EQ(kind_of([] { restricted_dimension({1, 0, 1, 3, 3}, 2); }), ErrorKind::Precondition);
}

TEST(ComplexityFromTrajectory, AutonomousThirdOrder) {
    Rng rng(31);
    const Complexity c = complexity_from_trajectory(autonomous_response(kP1, 21, rng));
    EXPECT_EQ(c.m, 0);
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.p, 1);
    EXPECT_EQ(c.lag, 3);
}

TEST(ComplexityFromTrajectory, ZeroTrajectory) {
    const Complexity c = complexity_from_trajectory(Trajectory::zeros(20, 1));
    EXPECT_EQ(c.m, 0);
    EXPECT_EQ(c.n, 0);
    EXPECT_EQ(c.p, 1);
    EXPECT_EQ(c.lag, 0);
}

TEST(ComplexityFromTrajectory, SisoSecondOrder) {
    Rng rng(32);
    const Poly p = Poly::from_roots(std::vector<double>{0.5, -0.3});
    const Poly q{0.4, -1.0, 0.7};
    const Trajectory w = siso_response(q, p, 60, rng);
    // The oracle: both Hankel ranks equal n + L m.
    const Index L = (60 + 1) / 3;
    EXPECT_EQ(numerical_rank(block_hankel(w, L)), 2 + L);
    EXPECT_EQ(numerical_rank(block_hankel(w, L - 1)), 2 + L - 1);
    const ComplexityReport rep = complexity_report(w);
    EXPECT_EQ(rep.window, L);
    EXPECT_EQ(rep.complexity, (Complexity{2, 1, 1, 2, 2}));
}

TEST(ComplexityFromTrajectory, TooShort) {
    EXPECT_EQ(kind_of([] { complexity_from_trajectory(Trajectory::zeros(2, 1)); }), ErrorKind::Precondition);
}

TEST(IsPersistentlyExciting, Examples) {
    EXPECT_FALSE(is_persistently_exciting(Trajectory::zeros(10, 1), 3));
    EXPECT_FALSE(is_persistently_exciting(Trajectory(Matrix::Constant(10, 1, 2.0)), 2));
    EXPECT_TRUE(is_persistently_exciting(Trajectory(Matrix::Constant(10, 1, 2.0)), 1));
    Rng rng(34);
    EXPECT_TRUE(is_persistently_exciting(Trajectory(rng.normal_matrix(50, 1)), 10));
    EXPECT_EQ(kind_of([] { is_persistently_exciting(Trajectory::zeros(5, 1), 6); }), ErrorKind::Precondition);
}

TEST(KernelFromData, AutonomousGolden) {
    Rng rng(35);
    const MatPoly r1 = kernel_from_data(autonomous_response(kP1, 21, rng));
    const MatPoly r2 = kernel_from_data(autonomous_response(kP2, 21, rng));
    ASSERT_EQ(r1.degree(), 3);
    ASSERT_EQ(r2.degree(), 3);
    const double want1[] = {-0.0734, 0.7410, 0.0, -0.6675};
    const double want2[] = {-0.0828, -0.4966, -0.2483, 0.8276};
    for (int k = 0; k <= 3; ++k) {
        EXPECT_NEAR(r1.coeff(k)(0, 0), want1[k], 5e-5);
        EXPECT_NEAR(r2.coeff(k)(0, 0), want2[k], 5e-5);
    }
}

TEST(KernelFromData, SisoRecoversTruth) {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        const IoSystem sys = random_io_system(rng, 1, {rng.integer(1, 3)});
        const Trajectory w = sys.simulate(60, rng);
        const MatPoly r = kernel_from_data(w);
        EXPECT_TRUE(behaviors_equal(Behavior::from_kernel(r), Behavior::from_kernel(sys.kernel()))) << "trial " << trial;
    }
}

TEST(KernelFromData, MultiOutputUnequalLags) {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const IoSystem sys = random_io_system(rng, 1, {1, 3});
        const Trajectory w = sys.simulate(120, rng);
        const MatPoly r = kernel_from_data(w);
        ASSERT_EQ(r.rows(), 2);
        std::vector<int> degs = r.row_degrees();
        std::sort(degs.begin(), degs.end());
        EXPECT_EQ(degs, (std::vector<int>{1, 3}));
        EXPECT_TRUE(behaviors_equal(Behavior::from_kernel(r), Behavior::from_kernel(sys.kernel())));
    }
}

TEST(KernelFromData, StateSpaceSystems) {
    Rng rng(38);
    for (int trial = 0; trial < 10; ++trial) {
        const StateSpace ss = random_state_space(rng, 1, 2, 4);
        const Trajectory w = ss.simulate(120, rng);
        const MatPoly r = kernel_from_data(w);
        const Behavior b = Behavior::from_kernel(r);
        EXPECT_EQ(b.complexity().n, 4);
        EXPECT_EQ(b.complexity().m, 1);
        EXPECT_TRUE(is_member(ss.simulate(40, rng), b));
    }
}

TEST(IsMember, Examples) {
    const Behavior b = Behavior::from_kernel(MatPoly::scalar(Poly{-0.5, 1.0}));
    Matrix e(10, 1);
    for (Index t = 0; t < 10; ++t) e(t, 0) = std::pow(0.5, static_cast<double>(t));
    EXPECT_TRUE(is_member(Trajectory(e), b));
    EXPECT_FALSE(is_member(Trajectory(e), Behavior::from_kernel(MatPoly::scalar(Poly{-1.0, 1.0}))));
    EXPECT_TRUE(is_member(Trajectory::zeros(10, 1), b));
    EXPECT_EQ(kind_of([&] { is_member(Trajectory::zeros(10, 2), b); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { is_member(Trajectory::zeros(1, 1), b); }), ErrorKind::Precondition);
}

TEST(IsMember, ScaleInvariantResidual) {
    const Behavior b = Behavior::from_kernel(MatPoly::scalar(Poly{-50.0, 100.0}));
    Matrix e(6, 1);
    for (Index t = 0; t < 6; ++t) e(t, 0) = 1e3 * std::pow(0.5, static_cast<double>(t));
    EXPECT_TRUE(is_member(Trajectory(e), b));
}

TEST(RandomTrajectoryFromKernel, ConstantForFirstDifference) {
    const SynthesizedTrajectory s = random_trajectory_from_kernel(MatPoly::scalar(Poly{-1.0, 1.0}), 5, 9);
    EXPECT_FALSE(s.zero_behavior);
    const Matrix& w = s.trajectory.samples();
    EXPECT_LT((w.array() - w(0, 0)).abs().maxCoeff(), 1e-12);
}

TEST(RandomTrajectoryFromKernel, DeterministicAndMember) {
    Rng rng(39);
    for (int trial = 0; trial < 10; ++trial) {
        const IoSystem sys = random_io_system(rng, rng.integer(0, 2), {rng.integer(1, 2), rng.integer(1, 3)});
        const MatPoly r = sys.kernel();
        const Behavior b = Behavior::from_kernel(r);
        const SynthesizedTrajectory a = random_trajectory_from_kernel(r, 25, 1234);
        const SynthesizedTrajectory c = random_trajectory_from_kernel(r, 25, 1234);
        EXPECT_EQ(a.trajectory.samples(), c.trajectory.samples());
        EXPECT_TRUE(is_member(a.trajectory, b));
        EXPECT_EQ(right_null_basis(block_toeplitz(r, 25)).cols(), restricted_dimension(b.complexity(), 25));
    }
}

TEST(RandomTrajectoryFromKernel, ZeroBehaviorIsFlagged) {
    const SynthesizedTrajectory s = random_trajectory_from_kernel(MatPoly::constant(Matrix::Identity(2, 2)), 4, 1);
    EXPECT_TRUE(s.zero_behavior);
    EXPECT_EQ(s.trajectory.samples(), Matrix::Zero(4, 2));
    EXPECT_EQ(kind_of([] { random_trajectory_from_kernel(MatPoly::scalar(Poly{-1.0, 1.0}), 1, 1); }),
              ErrorKind::Precondition);
}

TEST(DataTrajectorySpan, DimensionAndGroundTruth) {
    Rng rng(40);
    const IoSystem sys = random_io_system(rng, 1, {2});
    const Trajectory w = sys.simulate(80, rng);
    for (Index L : {3, 5}) {
        const Matrix s = data_trajectory_span(w, L);
        EXPECT_EQ(s.cols(), 2 + L);
        EXPECT_LE(subspace_distance(s, right_null_basis(block_toeplitz(sys.kernel(), L))), 1e-8);
    }
    EXPECT_EQ(data_trajectory_span(Trajectory::zeros(20, 1), 3).cols(), 0);
    EXPECT_EQ(kind_of([&] { data_trajectory_span(w, 30); }), ErrorKind::Precondition);
}

TEST(ImageToKernel, Examples) {
    EXPECT_EQ(image_to_kernel(MatPoly::constant(Matrix::Identity(2, 2))).rows(), 0);

    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const IoSystem sys = random_io_system(rng, 1, {rng.integer(1, 3)});
        const MatPoly m = MatPoly::from_entries({{sys.p[0]}, {sys.q[0][0]}});
        const MatPoly r = image_to_kernel(m);
        ASSERT_EQ(r.rows(), 1);
        EXPECT_LT(max_coeff_diff(matpoly_multiply(r, m), MatPoly(1, 1)), 1e-8);
        const Index L = 6;
        EXPECT_LE(subspace_distance(detail::image_restriction_basis(m, L, {}), right_null_basis(block_toeplitz(r, L))), 1e-8);
        // Proportional to [q -p].
        const MatPoly truth = sys.kernel();
        EXPECT_LT(projective_distance(r.row_coefficients(0), truth.row_coefficients(0)), 1e-8);
    }
}

TEST(ImageToKernel, NonObservableImageGivesSameBehavior) {
    // [p f; q f] generates the same behavior as [p; q] for any nonzero f.
    const Poly p{0.06, -0.5, 1.0};
    const Poly q{0.3, 1.0};
    const Poly f{-0.7, 1.0};
    const MatPoly m1 = MatPoly::from_entries({{p}, {q}});
    const MatPoly m2 = MatPoly::from_entries({{poly_multiply(p, f)}, {poly_multiply(q, f)}});
    EXPECT_TRUE(behaviors_equal(Behavior::from_image(m1), Behavior::from_image(m2)));
    EXPECT_TRUE(behaviors_equal(Behavior::from_kernel(image_to_kernel(m2)), Behavior::from_image(m1)));
}

TEST(KernelToImage, Examples) {
    const MatPoly m = kernel_to_image(MatPoly::constant((Matrix(1, 2) << 1.0, 0.0).finished()));
    ASSERT_EQ(m.cols(), 1);
    EXPECT_EQ(m.degree(), 0);
    EXPECT_NEAR(m.coeff(0)(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m.coeff(0)(1, 0)), 1.0, 1e-15);

    const Poly p{0.06, -0.5, 1.0};
    const Poly q{0.3, 1.0};
    const MatPoly img = kernel_to_image(MatPoly::from_entries({{q, p.scaled(-1.0)}}));
    const MatPoly want = MatPoly::from_entries({{p}, {q}});
    EXPECT_LT(projective_distance(img.col_coefficients(0), want.col_coefficients(0)), 1e-8);
}

TEST(KernelToImage, UncontrollableIsRejected) {
    const MatPoly r = oracle_sum_siso_autonomous(Poly{0.3, 1.0}, Poly{0.06, -0.5, 1.0}, Poly{-0.9, 1.0});
    EXPECT_EQ(kind_of([&] { kernel_to_image(r); }), ErrorKind::Uncontrollable);
    EXPECT_EQ(kind_of([] { kernel_to_image(MatPoly::scalar(Poly{-0.5, 1.0})); }), ErrorKind::Uncontrollable);
}

TEST(KernelToImage, MultiInputMinimalDegrees) {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const MatPoly r = random_kernel(rng, 4, {rng.integer(1, 2), rng.integer(1, 2)});
        if (!is_left_prime(r)) continue;
        const MatPoly m = kernel_to_image(r);
        ASSERT_EQ(m.cols(), 2);
        EXPECT_LT(max_coeff_diff(matpoly_multiply(r, m), MatPoly(2, 2)), 1e-8);
        // A minimal basis: its column degrees add up to the order.
        const std::vector<int> cd = m.col_degrees();
        EXPECT_EQ(cd[0] + cd[1], Behavior::from_kernel(r).complexity().n);
        EXPECT_TRUE(behaviors_equal(Behavior::from_image(m), Behavior::from_kernel(r)));
    }
}

TEST(BehaviorsEqual, Examples) {
    Rng rng(43);
    const MatPoly r = random_kernel(rng, 3, {1, 2});
    const Behavior b = Behavior::from_kernel(r);
    EXPECT_TRUE(behaviors_equal(b, b));
    std::vector<Matrix> scaled = r.coeffs();
    for (Matrix& c : scaled) c.row(0) *= -3.7;
    EXPECT_TRUE(behaviors_equal(b, Behavior::from_kernel(MatPoly(scaled))));
    // Unimodular row operation: add z times row 0 to row 1.
    const MatPoly u = MatPoly::from_entries({{Poly::constant(1.0), Poly::constant(0.0)}, {Poly{0.0, 1.0}, Poly::constant(1.0)}});
    EXPECT_TRUE(behaviors_equal(b, Behavior::from_kernel(matpoly_multiply(u, r))));

    EXPECT_FALSE(behaviors_equal(Behavior::from_kernel(MatPoly::scalar(Poly{-1.0, 1.0})),
                                 Behavior::from_kernel(MatPoly::scalar(Poly{-0.5, 1.0}))));
    EXPECT_FALSE(behaviors_equal(Behavior::full(1), Behavior::full(2)));
}

TEST(Behavior, ConstructionInvariants) {
    EXPECT_EQ(kind_of([] { Behavior(1, std::nullopt, std::nullopt, std::nullopt); }), ErrorKind::InvalidInput);
    const MatPoly deficient = MatPoly::from_entries({{Poly{1.0, 1.0}, Poly{2.0}}, {Poly{2.0, 2.0}, Poly{4.0}}});
    EXPECT_EQ(kind_of([&] { Behavior::from_kernel(deficient); }), ErrorKind::InvalidRepresentation);
    EXPECT_EQ(kind_of([] { Behavior(2, MatPoly(1, 3), std::nullopt, std::nullopt); }), ErrorKind::InvalidInput);

    const Poly p{0.06, -0.5, 1.0};
    const Poly q{0.3, 1.0};
    const MatPoly r = MatPoly::from_entries({{q, p.scaled(-1.0)}});
    const MatPoly m = MatPoly::from_entries({{p}, {q}});
    EXPECT_NO_THROW(Behavior(2, r, m, std::nullopt));
    const MatPoly other = MatPoly::from_entries({{Poly{-0.5, 1.0}}, {q}});
    EXPECT_EQ(kind_of([&] { Behavior(2, r, other, std::nullopt); }), ErrorKind::InvalidRepresentation);
}

TEST(Behavior, ConsistentDataAndKernel) {
    Rng rng(44);
    const IoSystem sys = random_io_system(rng, 1, {2});
    const Trajectory w = sys.simulate(60, rng);
    const Behavior b(2, sys.kernel(), std::nullopt, w);
    EXPECT_EQ(b.complexity(), (Complexity{2, 1, 1, 2, 2}));
    const Behavior d = Behavior::from_data(w);
    EXPECT_EQ(d.complexity(), b.complexity());
    EXPECT_TRUE(behaviors_equal(b, d));
}

TEST(Behavior, ComplexityOfNonRowReducedKernel) {
    // [z 1; z 0] is equivalent to [0 1; z 0]: only w1(0) is free.
    const MatPoly r = MatPoly::from_entries({{Poly{0.0, 1.0}, Poly::constant(1.0)}, {Poly{0.0, 1.0}, Poly::constant(0.0)}});
    const Behavior b = Behavior::from_kernel(r);
    EXPECT_EQ(b.complexity(), (Complexity{2, 0, 2, 1, 1}));
    EXPECT_FALSE(b.is_zero_behavior());
    EXPECT_EQ(restriction_basis(b, 4).cols(), 1);
}

TEST(Behavior, RestrictedDimensionGrowsByInputs) {
    Rng rng(45);
    for (int trial = 0; trial < 5; ++trial) {
        const IoSystem sys = random_io_system(rng, 2, {1, 2});
        const Behavior b = Behavior::from_kernel(sys.kernel());
        const Complexity c = b.complexity();
        for (Index L = c.lag + 1; L < c.lag + 4; ++L)
            EXPECT_EQ(restriction_basis(b, L).cols() - restriction_basis(b, L - 1).cols(), c.m);
    }
}

TEST(MinimalKernel, RemovesRedundantRows) {
    const MatPoly r = MatPoly::scalar(Poly{-0.5, 1.0});
    const MatPoly stacked = vstack(r, MatPoly::scalar(poly_multiply(Poly{-0.5, 1.0}, Poly{0.2, 1.0})));
    const MatPoly m = minimal_kernel(stacked);
    ASSERT_EQ(m.rows(), 1);
    EXPECT_EQ(m.degree(), 1);
    EXPECT_TRUE(behaviors_equal(Behavior::from_kernel(m), Behavior::from_kernel(r)));
    EXPECT_EQ(minimal_kernel(diag2(Poly::constant(1.0), Poly{-0.3, 1.0})).rows(), 2);
}

TEST(Poles, ScalarAndDiagonal) {
    std::vector<Complex> p = poles(MatPoly::scalar(kP1));
    ASSERT_EQ(p.size(), 3u);
    EXPECT_NEAR(p[0].real(), -1.1, 1e-10);
    p = poles(diag2(Poly::constant(1.0), Poly{-0.25, 1.0}));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(p[0].real(), 0.25, 1e-12);
    EXPECT_TRUE(poles(MatPoly(0, 2)).empty());
}

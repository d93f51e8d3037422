#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "test_util.hpp"

using namespace mibound;
using testutil::DetRng;

TEST(QxOfGamma, ShiftAndClamp) {
    const MarginalX px{0.302, 0.698};
    const MarginalX same = qx_of_gamma(px, 0.0);
    EXPECT_DOUBLE_EQ(same[0], 0.302);
    EXPECT_DOUBLE_EQ(same[1], 0.698);

    const MarginalX shifted = qx_of_gamma(px, 0.15);
    EXPECT_DOUBLE_EQ(shifted[0], 0.452);
    EXPECT_DOUBLE_EQ(shifted[1], 0.548);

    const MarginalX clamped = qx_of_gamma(MarginalX{0.9, 0.1}, 0.2);
    EXPECT_DOUBLE_EQ(clamped[0], 1.0);
    EXPECT_DOUBLE_EQ(clamped[1], 0.0);

    // Underflow side clamps symmetrically.
    const MarginalX low = qx_of_gamma(MarginalX{0.1, 0.9}, -0.2);
    EXPECT_DOUBLE_EQ(low[0], 0.0);
    EXPECT_DOUBLE_EQ(low[1], 1.0);
}

TEST(MakeGrid, SmallKnownGrids) {
    const GammaGrid g3 = make_grid(0.3, 3);
    ASSERT_EQ(g3.points.size(), 3u);
    EXPECT_DOUBLE_EQ(g3.points[0], -0.15);
    EXPECT_DOUBLE_EQ(g3.points[1], 0.0);
    EXPECT_DOUBLE_EQ(g3.points[2], 0.15);

    const GammaGrid g0 = make_grid(0.0, 100);
    ASSERT_EQ(g0.points.size(), 1u);
    EXPECT_DOUBLE_EQ(g0.points[0], 0.0);

    const GammaGrid g1 = make_grid(1.3, 1);
    ASSERT_EQ(g1.points.size(), 1u);
    EXPECT_DOUBLE_EQ(g1.points[0], 0.0);
}

TEST(MakeGrid, ThousandPointLayout) {
    const GammaGrid g = make_grid(0.1, 1000);
    ASSERT_EQ(g.points.size(), 1000u);
    EXPECT_DOUBLE_EQ(g.points.front(), -0.05);
    EXPECT_DOUBLE_EQ(g.points.back(), 0.05);
    EXPECT_TRUE(std::is_sorted(g.points.begin(), g.points.end()));
    const double h = 0.1 / 999.0;
    for (std::size_t k = 1; k < g.points.size(); ++k) {
        EXPECT_NEAR(g.points[k] - g.points[k - 1], h, 1e-15);
    }
    // Mirror symmetry is exact.
    for (std::size_t k = 0; k < g.points.size(); ++k) {
        EXPECT_EQ(g.points[k], -g.points[g.points.size() - 1 - k]);
    }
}

TEST(MakeGrid, RejectsBadArguments) {
    EXPECT_THROW(make_grid(-0.1, 10), Error);
    EXPECT_THROW(make_grid(2.5, 10), Error);
    EXPECT_THROW(make_grid(0.5, 0), Error);
}

TEST(Sweep, ZeroRadiusSinglePointEqualsInput) {
    const JointDist p = testutil::example1();
    const auto curve = sweep(p, 0.0, make_grid(0.0, 7), SolverConfig{});
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_DOUBLE_EQ(curve[0].gamma, 0.0);
    EXPECT_DOUBLE_EQ(curve[0].value.nats, mutual_information(p).nats);
}

TEST(Sweep, FullRadiusSinglePointIsZero) {
    const JointDist p = testutil::example2();
    const SolverConfig cfg{};
    const auto curve = sweep(p, 2.0, make_grid(2.0, 1), cfg);
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_LE(curve[0].value.nats, cfg.gap_tol + 1e-12);
}

TEST(Sweep, EveryPointFeasibleAndTagged) {
    const JointDist p = testutil::example2();
    const double eps = 0.1;
    const auto curve = sweep(p, eps, make_grid(eps, 51), SolverConfig{});
    const MarginalX px = marginal_x(p);
    for (const SweepPoint& pt : curve) {
        EXPECT_EQ(pt.status, SolveStatus::Converged);
        const MarginalX expect_qx = qx_of_gamma(px, pt.gamma);
        EXPECT_DOUBLE_EQ(pt.qx[0], expect_qx[0]);
        const MarginalX rows = marginal_x(pt.argmin);
        EXPECT_NEAR(rows[0], pt.qx[0], 1e-10);
        EXPECT_NEAR(rows[1], pt.qx[1], 1e-10);
        EXPECT_LE(variational_distance(pt.argmin, p), eps + 1e-9);
        EXPECT_GE(pt.value.nats, 0.0);
    }
}

TEST(LowerBound, ReportInvariants) {
    const JointDist p = testutil::example1();
    const BoundReport rep = lower_bound(p, 0.3, 101, SolverConfig{});  // odd grid contains 0
    ASSERT_EQ(rep.curve.size(), 101u);
    double curve_min = std::numeric_limits<double>::infinity();
    for (const SweepPoint& pt : rep.curve) curve_min = std::min(curve_min, pt.value.nats);
    EXPECT_DOUBLE_EQ(rep.bound.nats, curve_min);
    EXPECT_LE(rep.bound.nats, rep.i_of_p.nats + 1e-7);
    EXPECT_GE(rep.bound.nats, 0.0);
    EXPECT_TRUE(rep.certified);
}

TEST(LowerBound, EndpointIdentities) {
    DetRng rng(79);
    const SolverConfig cfg{};
    for (int t = 0; t < 5; ++t) {
        const JointDist p = testutil::random_joint(rng, rng.uniform_int(2, 5));
        const BoundReport at_zero = lower_bound(p, 0.0, 1000, cfg);
        EXPECT_NEAR(at_zero.bound.nats, mutual_information(p).nats, cfg.gap_tol);
        const BoundReport at_two = lower_bound(p, 2.0, 9, cfg);
        EXPECT_LE(at_two.bound.nats, cfg.gap_tol);
    }
}

TEST(LowerBound, DeterministicAcrossRuns) {
    const JointDist p = testutil::example2();
    const BoundReport a = lower_bound(p, 0.1, 64, SolverConfig{});
    const BoundReport b = lower_bound(p, 0.1, 64, SolverConfig{});
    EXPECT_EQ(a.bound.nats, b.bound.nats);
    EXPECT_EQ(a.arg_gamma, b.arg_gamma);
    EXPECT_EQ(a.argmin.v, b.argmin.v);
}

// Nested grids (spacing fixed at eps_unit/40) make the grid minima directly
// comparable, so monotonicity in eps holds up to solver tolerance.
TEST(LowerBound, MonotoneInEpsOnNestedGrids) {
    DetRng rng(83);
    const SolverConfig cfg{};
    for (int t = 0; t < 4; ++t) {
        const JointDist p = testutil::random_joint(rng, rng.uniform_int(2, 4));
        double prev = std::numeric_limits<double>::infinity();
        for (double eps : {0.0, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
            const int n_points = eps > 0.0 ? static_cast<int>(std::lround(eps * 40.0)) + 1 : 1;
            const BoundReport rep = lower_bound(p, eps, n_points, cfg);
            EXPECT_LE(rep.bound.nats, prev + cfg.gap_tol);
            prev = rep.bound.nats;
        }
    }
}

TEST(LowerBound, CurveInvariantUnderColumnPermutation) {
    DetRng rng(89);
    const JointDist p = testutil::random_joint(rng, 4);
    const std::vector<int> perm{2, 3, 1, 0};
    JointDist pp = p;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) pp.at(i, perm[static_cast<std::size_t>(j)]) = p.at(i, j);
    const BoundReport a = lower_bound(p, 0.25, 41, SolverConfig{});
    const BoundReport b = lower_bound(pp, 0.25, 41, SolverConfig{});
    ASSERT_EQ(a.curve.size(), b.curve.size());
    for (std::size_t k = 0; k < a.curve.size(); ++k) {
        EXPECT_NEAR(a.curve[k].value.nats, b.curve[k].value.nats, 1e-9);
    }
}

// Swapping the two X rows mirrors the curve in gamma. The two sweeps are
// solved independently, so they are compared at a gap tolerance well below
// the asserted pointwise agreement.
TEST(LowerBound, RowSwapReflectsCurve) {
    DetRng rng(97);
    const JointDist p = testutil::random_joint(rng, 3);
    JointDist swapped = p;
    for (int j = 0; j < p.my; ++j) {
        swapped.at(0, j) = p.at(1, j);
        swapped.at(1, j) = p.at(0, j);
    }
    const SolverConfig tight{1e-11, 200000, 1e-12};
    const BoundReport a = lower_bound(p, 0.2, 41, tight);
    const BoundReport b = lower_bound(swapped, 0.2, 41, tight);
    ASSERT_EQ(a.curve.size(), b.curve.size());
    const std::size_t n = a.curve.size();
    for (std::size_t k = 0; k < n; ++k) {
        EXPECT_NEAR(a.curve[k].value.nats, b.curve[n - 1 - k].value.nats, 1e-9);
    }
}

TEST(LowerBound, UncertifiedWhenIterCapTouchesMinimum) {
    const JointDist p = testutil::example2();
    const SolverConfig starved{1e-12, 1, 1e-12};
    const BoundReport rep = lower_bound(p, 0.1, 21, starved);
    EXPECT_FALSE(rep.certified);
    EXPECT_TRUE(std::isfinite(rep.bound.nats));
}

TEST(RefineLowerBound, DoublingReportsDelta) {
    const JointDist p = testutil::example1();
    const RefineCheck rc = refine_lower_bound(p, 0.3, 100, SolverConfig{});
    EXPECT_EQ(rc.coarse.curve.size(), 100u);
    EXPECT_EQ(rc.fine.curve.size(), 200u);
    EXPECT_GE(rc.delta_bits, 0.0);
}

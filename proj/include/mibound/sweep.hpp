#pragma once

// Outer minimization: parameterize the binary marginal by a single offset
// gamma, sweep an equidistant gamma grid over [-eps/2, +eps/2], solve the
// convex inner problem at every grid point, and report the curve together
// with its global minimum. The gamma range is exactly the set of marginals
// reachable within variational distance eps of the reference marginal.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mibound/distribution.hpp"
#include "mibound/errors.hpp"
#include "mibound/solver.hpp"

namespace mibound {

struct GammaGrid {
    double eps = 0.0;
    int n_points = 1;
    std::vector<double> points;  // ascending, equidistant, symmetric about 0
};

// Marginal reached by shifting mass gamma from the second outcome to the
// first: (px(1)+gamma, px(2)-gamma), clamped to [0,1] on both sides. Both
// clamps activate together, so the entries still sum to 1.
inline MarginalX qx_of_gamma(const MarginalX& px, double gamma) {
    MarginalX q;
    q[0] = std::clamp(px[0] + gamma, 0.0, 1.0);
    q[1] = std::clamp(px[1] - gamma, 0.0, 1.0);
    return q;
}

// Equidistant grid spanning [-eps/2, +eps/2], built mirror-symmetrically so
// points[k] == -points[n-1-k] exactly. A single point (or eps = 0) collapses
// to gamma = 0.
inline GammaGrid make_grid(double eps, int n_points) {
    if (eps < 0.0 || eps > 2.0) {
        throw Error("eps must lie in [0,2], got " + std::to_string(eps));
    }
    if (n_points < 1) throw Error("grid needs at least one point");
    GammaGrid grid;
    grid.eps = eps;
    if (n_points == 1 || eps == 0.0) {
        grid.n_points = 1;
        grid.points = {0.0};
        return grid;
    }
    grid.n_points = n_points;
    grid.points.assign(static_cast<std::size_t>(n_points), 0.0);
    const double h = eps / (n_points - 1);
    for (int k = 0; k < n_points / 2; ++k) {
        const double t = 0.5 * eps - k * h;
        grid.points[static_cast<std::size_t>(k)] = -t;
        grid.points[static_cast<std::size_t>(n_points - 1 - k)] = t;
    }
    if (n_points % 2 == 1) grid.points[static_cast<std::size_t>(n_points / 2)] = 0.0;
    return grid;
}

struct SweepPoint {
    double gamma = 0.0;
    MarginalX qx;
    InfoValue value;
    JointDist argmin;
    double gap_nats = 0.0;
    int iterations = 0;
    SolveStatus status = SolveStatus::Converged;
};

// One inner solve per grid point. A per-point solver failure marks that point
// Failed (value +inf) instead of aborting the sweep; with |gamma| <= eps/2
// every point is feasible, so this is a guard, not an expected path.
inline std::vector<SweepPoint> sweep(const JointDist& p, double eps, const GammaGrid& grid,
                                     const SolverConfig& cfg) {
    const MarginalX px = marginal_x(p);
    std::vector<SweepPoint> curve;
    curve.reserve(grid.points.size());
    for (double gamma : grid.points) {
        SweepPoint pt;
        pt.gamma = gamma;
        pt.qx = qx_of_gamma(px, gamma);
        try {
            const InnerResult r = inner_minimize(InnerProblem{p, pt.qx, eps}, cfg);
            pt.value = r.value;
            pt.argmin = r.argmin;
            pt.gap_nats = r.gap_nats;
            pt.iterations = r.iterations;
            pt.status = r.status;
        } catch (const Error&) {
            pt.status = SolveStatus::Failed;
            pt.value = InfoValue{std::numeric_limits<double>::infinity()};
            pt.gap_nats = std::numeric_limits<double>::infinity();
        }
        curve.push_back(std::move(pt));
    }
    return curve;
}

struct BoundReport {
    InfoValue bound;       // global minimum over the curve
    double arg_gamma = 0.0;
    JointDist argmin;
    std::vector<SweepPoint> curve;
    InfoValue i_of_p;      // mutual information of the input
    // False when an uncertified point (IterCap with value - gap at or below
    // the reported bound, or Failed) could undercut the minimum.
    bool certified = true;
};

inline BoundReport lower_bound(const JointDist& p, double eps, int n_points,
                               const SolverConfig& cfg) {
    BoundReport report;
    report.i_of_p = mutual_information(p);
    report.curve = sweep(p, eps, make_grid(eps, n_points), cfg);

    std::size_t best = report.curve.size();
    for (std::size_t k = 0; k < report.curve.size(); ++k) {
        const SweepPoint& pt = report.curve[k];
        if (pt.status == SolveStatus::Failed) continue;
        if (best == report.curve.size() || pt.value.nats < report.curve[best].value.nats) best = k;
    }
    if (best == report.curve.size()) {
        report.bound = InfoValue{std::numeric_limits<double>::infinity()};
        report.certified = false;
        return report;
    }
    report.bound = report.curve[best].value;
    report.arg_gamma = report.curve[best].gamma;
    report.argmin = report.curve[best].argmin;
    for (const SweepPoint& pt : report.curve) {
        if (pt.status == SolveStatus::Failed ||
            (pt.status == SolveStatus::IterCap && pt.value.nats - pt.gap_nats <= report.bound.nats)) {
            report.certified = false;
        }
    }
    return report;
}

// Grid-sufficiency check: rerun with twice the points and compare. The grid
// is judged sufficient when doubling moves the bound by less than
// `threshold_bits` (default 1e-4 bits).
struct RefineCheck {
    BoundReport coarse;
    BoundReport fine;
    double delta_bits = 0.0;
    bool grid_converged = false;
};

inline RefineCheck refine_lower_bound(const JointDist& p, double eps, int n_points,
                                      const SolverConfig& cfg, double threshold_bits = 1e-4) {
    RefineCheck rc;
    rc.coarse = lower_bound(p, eps, n_points, cfg);
    rc.fine = lower_bound(p, eps, 2 * n_points, cfg);
    rc.delta_bits = std::abs(rc.fine.bound.bits() - rc.coarse.bound.bits());
    rc.grid_converged = rc.delta_bits < threshold_bits;
    return rc;
}

}  // namespace mibound

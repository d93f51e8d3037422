#pragma once

// Desk-scale verification tools, independent of the Frank-Wolfe path: random
// feasible-point generators and exhaustive grid minimizers for small alphabets.
// Never called by the production sweep; exposed so users can cross-check it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "mibound/distribution.hpp"
#include "mibound/errors.hpp"
#include "mibound/solver.hpp"
#include "mibound/sweep.hpp"

namespace mibound {

struct OracleConfig {
    // Grid step for exhaustive search, in (0, 0.1]. 1e-3 keeps a 2x2 search
    // around a million evaluations; use 5e-3 for my = 3.
    double resolution = 1e-3;
    int samples = 1000;  // random feasibility sample count
    std::uint64_t seed = 0;
};

namespace detail {

// Uniform double in [0,1) from the standard-guaranteed mt19937_64 stream;
// avoids std::uniform_real_distribution, whose output is implementation
// defined, so seeded sequences are reproducible everywhere.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double phi(double t) { return t > kLogZeroFloor ? t * std::log(t) : 0.0; }

}  // namespace detail

// n random joints with row sums qx, nonnegative entries, and V(., p) <= eps:
// each sample is a random conditional composed with qx, blended toward the
// row-rescaled anchor point until it enters the L1 ball. Deterministic for a
// fixed seed.
inline std::vector<JointDist> random_feasible(const InnerProblem& prob, int n,
                                              std::uint64_t seed) {
    const JointDist anchor = feasible_init(prob);
    std::mt19937_64 rng(seed);
    std::vector<JointDist> out;
    out.reserve(static_cast<std::size_t>(n));
    const int my = prob.p.my;
    JointDist cand;
    cand.my = my;
    cand.v.assign(static_cast<std::size_t>(2 * my), 0.0);
    for (int s = 0; s < n; ++s) {
        for (int i = 0; i < 2; ++i) {
            double total = 0.0;
            for (int j = 0; j < my; ++j) {
                const double e = -std::log(1.0 - detail::uniform01(rng));
                cand.at(i, j) = e;
                total += e;
            }
            if (total <= 0.0) {
                for (int j = 0; j < my; ++j) cand.at(i, j) = prob.qx[i] / my;
            } else {
                for (int j = 0; j < my; ++j) cand.at(i, j) *= prob.qx[i] / total;
            }
        }
        if (variational_distance(cand, prob.p) <= prob.eps) {
            out.push_back(cand);
            continue;
        }
        // Blend toward the anchor: V along the segment is convex with value
        // <= eps at t = 1, so bisection keeps a feasible upper end.
        double lo = 0.0, hi = 1.0;
        JointDist blend = anchor;
        const auto blend_at = [&](double t) {
            for (std::size_t k = 0; k < blend.v.size(); ++k)
                blend.v[k] = (1.0 - t) * cand.v[k] + t * anchor.v[k];
        };
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            blend_at(mid);
            if (variational_distance(blend, prob.p) <= prob.eps) hi = mid; else lo = mid;
        }
        blend_at(hi);
        out.push_back(blend);
    }
    return out;
}

inline std::vector<JointDist> random_feasible(const InnerProblem& prob, const OracleConfig& cfg) {
    if (cfg.samples < 1) throw Error("oracle sample count must be at least 1");
    return random_feasible(prob, cfg.samples, cfg.seed);
}

// Exhaustive-search result: the grid minimum plus an explicit bound on how
// far grid quantization can put it above the true minimum.
struct BruteForceResult {
    InfoValue value;
    JointDist argmin;
    double slack_nats = 0.0;
};

namespace detail {

// All vectors of length my with fixed sum `mass` on a grid of step h
// (remainder absorbed in the last coordinate), plus `extra` appended last.
inline std::vector<std::vector<double>> row_candidates(int my, double mass, double h,
                                                       const std::vector<double>& extra) {
    std::vector<std::vector<double>> rows;
    if (my == 1) {
        rows.push_back({mass});
    } else if (my == 2) {
        for (double a = 0.0; a <= mass + 1e-15; a += h) {
            const double a0 = std::min(a, mass);
            rows.push_back({a0, mass - a0});
        }
    } else {
        for (double a = 0.0; a <= mass + 1e-15; a += h) {
            const double a0 = std::min(a, mass);
            for (double b = 0.0; b <= mass - a0 + 1e-15; b += h) {
                const double b0 = std::min(b, mass - a0);
                rows.push_back({a0, b0, mass - a0 - b0});
            }
        }
    }
    rows.push_back(extra);
    return rows;
}

// Crude but explicit discretization slack: a shrink step that restores
// feasibility after rounding plus the modulus of continuity of t*log t over
// the worst per-entry displacement.
inline double discretization_slack(int my, double h, double eps) {
    if (eps <= 0.0) return 0.0;
    const auto mod = [](double d) { return d > 0.0 ? d * (1.0 + std::abs(std::log(d))) : 0.0; };
    const double entry_disp = my * h;            // rounding moves one entry at most this far
    const double v_disp = 2.0 * (my - 1) * h;    // and the L1 constraint by at most this
    const double shrink = std::min(1.0, v_disp / eps) * kLn2;
    return shrink + 2.0 * my * mod(entry_disp) + my * mod(2.0 * entry_disp);
}

}  // namespace detail

// Exhaustive grid search over the feasible set of the inner problem, for
// my <= 3 only. Every evaluated point is exactly feasible, so the result
// never undercuts the true minimum; it exceeds it by at most `slack_nats`.
inline BruteForceResult brute_force_inner(const InnerProblem& prob, const OracleConfig& cfg) {
    const int my = prob.p.my;
    if (my > 3) throw DimensionGuardError(my);
    if (!(cfg.resolution > 0.0) || cfg.resolution > 0.1) {
        throw Error("oracle resolution must lie in (0, 0.1]");
    }
    const JointDist anchor = feasible_init(prob);
    const double h = cfg.resolution;

    std::array<std::vector<std::vector<double>>, 2> rows;
    std::array<std::vector<double>, 2> cost;  // per-candidate row L1 distance to p's row
    for (int i = 0; i < 2; ++i) {
        std::vector<double> anchor_row(static_cast<std::size_t>(my));
        for (int j = 0; j < my; ++j) anchor_row[static_cast<std::size_t>(j)] = anchor.at(i, j);
        rows[static_cast<std::size_t>(i)] =
            detail::row_candidates(my, prob.qx[i], h, anchor_row);
        for (const auto& r : rows[static_cast<std::size_t>(i)]) {
            double c = 0.0;
            for (int j = 0; j < my; ++j) c += std::abs(r[static_cast<std::size_t>(j)] - prob.p.at(i, j));
            cost[static_cast<std::size_t>(i)].push_back(c);
        }
    }

    // I(q) = sum_ij q log q - sum_i r log r - sum_j c log c with fixed row
    // sums; the first term splits per row and is precomputed per candidate.
    std::array<std::vector<double>, 2> rowterm;
    for (int i = 0; i < 2; ++i) {
        for (const auto& r : rows[static_cast<std::size_t>(i)]) {
            double t = 0.0;
            for (double x : r) t += detail::phi(x);
            rowterm[static_cast<std::size_t>(i)].push_back(t);
        }
    }
    const double row_const = detail::phi(prob.qx[0]) + detail::phi(prob.qx[1]);

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    bool found = false;
    for (std::size_t a = 0; a < rows[0].size(); ++a) {
        if (cost[0][a] > prob.eps + detail::kFeasSlack) continue;
        const double budget = prob.eps + detail::kFeasSlack - cost[0][a];
        for (std::size_t b = 0; b < rows[1].size(); ++b) {
            if (cost[1][b] > budget) continue;
            double colterm = 0.0;
            for (int j = 0; j < my; ++j)
                colterm += detail::phi(rows[0][a][static_cast<std::size_t>(j)] +
                                       rows[1][b][static_cast<std::size_t>(j)]);
            const double value = rowterm[0][a] + rowterm[1][b] - colterm - row_const;
            if (value < best) {
                best = value;
                best_a = a;
                best_b = b;
                found = true;
            }
        }
    }
    if (!found) throw InfeasibleError("no feasible grid point (inconsistent inner problem)");

    BruteForceResult res;
    res.argmin.my = my;
    res.argmin.v.resize(static_cast<std::size_t>(2 * my));
    for (int j = 0; j < my; ++j) {
        res.argmin.at(0, j) = rows[0][best_a][static_cast<std::size_t>(j)];
        res.argmin.at(1, j) = rows[1][best_b][static_cast<std::size_t>(j)];
    }
    res.value = InfoValue{std::max(best, 0.0)};
    res.slack_nats = detail::discretization_slack(my, h, prob.eps);
    return res;
}

// Exhaustive version of the full bound: brute-force inner minimization on a
// gamma grid with the same step as the inner search.
inline BruteForceResult brute_force_bound(const JointDist& p, double eps,
                                          const OracleConfig& cfg) {
    if (p.my > 3) throw DimensionGuardError(p.my);
    const int n_gamma = eps > 0.0 ? static_cast<int>(std::ceil(eps / cfg.resolution)) + 1 : 1;
    const GammaGrid grid = make_grid(eps, n_gamma);
    const MarginalX px = marginal_x(p);
    BruteForceResult best;
    best.value = InfoValue{std::numeric_limits<double>::infinity()};
    for (double gamma : grid.points) {
        const BruteForceResult r =
            brute_force_inner(InnerProblem{p, qx_of_gamma(px, gamma), eps}, cfg);
        if (r.value.nats < best.value.nats) {
            best.value = r.value;
            best.argmin = r.argmin;
        }
        best.slack_nats = std::max(best.slack_nats, r.slack_nats);
    }
    // Extra slack for quantizing gamma itself.
    if (eps > 0.0) {
        const double dg = 0.5 * cfg.resolution;
        best.slack_nats += std::min(1.0, 2.0 * dg / eps) * kLn2 +
                           2.0 * dg * (1.0 + std::abs(std::log(dg)));
    }
    return best;
}

}  // namespace mibound

#pragma once

// Certified first-order solver for the convex inner problem: minimize the
// mutual information I(q) over joints q with a fixed binary marginal qx,
// nonnegative entries, and L1 distance at most eps from a reference joint p.
//
// The method is Frank-Wolfe with pairwise steps: the feasible set is a
// polytope with an exact combinatorial linear-minimization oracle, the
// gradient is closed form, and the Frank-Wolfe duality gap <grad, q - s>
// certifies suboptimality at every iteration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mibound/distribution.hpp"
#include "mibound/errors.hpp"

namespace mibound {

// Inner problem data: reference joint p, fixed binary marginal qx for the
// candidate joint, and the L1 radius eps.
struct InnerProblem {
    JointDist p;
    MarginalX qx;
    double eps = 0.0;
};

struct SolverConfig {
    double gap_tol = 1e-7;          // duality-gap stopping threshold, nats
    int max_iters = 50000;          // iteration cap
    double interior_floor = 1e-12;  // entry clamp inside gradient logarithms
};

enum class SolveStatus { Converged, IterCap, Failed };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::IterCap: return "itercap";
        case SolveStatus::Failed: return "failed";
    }
    return "unknown";
}

struct InnerResult {
    InfoValue value;        // minimized mutual information
    JointDist argmin;       // q attaining it (row sums qx, V(q,p) <= eps)
    double gap_nats = 0.0;  // certified optimality gap
    int iterations = 0;
    SolveStatus status = SolveStatus::Converged;
};

namespace detail {

inline constexpr double kFeasSlack = 1e-12;

// Row-sum targets minus the reference marginal; throws when even the minimal
// L1 move |b0| + |b1| exceeds the budget.
inline std::array<double, 2> net_row_changes(const InnerProblem& prob) {
    if (prob.eps < 0.0 || prob.eps > 2.0 + kFeasSlack) {
        throw InfeasibleError("eps must lie in [0,2], got " + std::to_string(prob.eps));
    }
    if (prob.qx[0] < -kFeasSlack || prob.qx[1] < -kFeasSlack) {
        throw InfeasibleError("marginal has negative entries");
    }
    if (!(std::abs(prob.qx[0] + prob.qx[1] - 1.0) <= kSumTol)) {
        throw Error("marginal mass " + std::to_string(prob.qx[0] + prob.qx[1]) + " is not 1");
    }
    const MarginalX px = marginal_x(prob.p);
    const std::array<double, 2> b{prob.qx[0] - px[0], prob.qx[1] - px[1]};
    if (std::abs(b[0]) + std::abs(b[1]) > prob.eps + kFeasSlack) {
        throw InfeasibleError("V(qx, p_X) = " + std::to_string(std::abs(b[0]) + std::abs(b[1])) +
                              " exceeds eps = " + std::to_string(prob.eps));
    }
    return b;
}

}  // namespace detail

// A feasible starting point: rescale each row of p to its target row sum
// (uniform fill when the row of p is empty). The L1 cost of the rescaling is
// exactly V(qx, p_X), so the result is feasible whenever the problem is.
inline JointDist feasible_init(const InnerProblem& prob) {
    detail::net_row_changes(prob);  // feasibility check
    const MarginalX px = marginal_x(prob.p);
    JointDist q;
    q.my = prob.p.my;
    q.v.assign(static_cast<std::size_t>(2 * q.my), 0.0);
    for (int i = 0; i < 2; ++i) {
        if (px[i] > 0.0) {
            const double scale = prob.qx[i] / px[i];
            for (int j = 0; j < q.my; ++j) q.at(i, j) = prob.p.at(i, j) * scale;
        } else {
            for (int j = 0; j < q.my; ++j) q.at(i, j) = prob.qx[i] / q.my;
        }
    }
    return q;
}

// Gradient of I(q) along row-sum-preserving directions: entry (i,j) is
// log(q(i,j) / q_Y(j)). Entries are clamped at `floor` inside the logarithms
// so the result stays finite at the boundary of the simplex.
inline std::vector<double> mi_gradient(const JointDist& q, double floor = 1e-12) {
    std::vector<double> g(static_cast<std::size_t>(2 * q.my));
    for (int j = 0; j < q.my; ++j) {
        const double cj = std::max(q.at(0, j) + q.at(1, j), floor);
        g[static_cast<std::size_t>(j)] = std::log(std::max(q.at(0, j), floor) / cj);
        g[static_cast<std::size_t>(q.my + j)] = std::log(std::max(q.at(1, j), floor) / cj);
    }
    return g;
}

// Exact linear-minimization oracle over the polytope
//   { q >= 0,  row sums = qx,  ||q - p||_1 <= eps }.
//
// Writing q = p + u, the optimal u for a linear cost decomposes into a
// mandatory part realizing the net row changes b_i = qx_i - p_X(i) at minimal
// L1 cost (additions at the row's cheapest column, removals from the most
// expensive columns first) plus exchange pairs: with leftover budget, moving
// mass from an expensive column to the row's cheapest column improves the
// cost at rate (g_min - g_col)/2 per unit of budget. Each row's optimal value
// as a function of allocated budget is convex piecewise linear, so consuming
// the merged exchange segments in rate order solves the LP exactly. Ties
// break toward the lowest (row, column) index for determinism.
inline JointDist linear_oracle(const std::vector<double>& grad, const InnerProblem& prob) {
    const int my = prob.p.my;
    if (grad.size() != static_cast<std::size_t>(2 * my)) {
        throw DimensionMismatchError("gradient size does not match joint dimensions");
    }
    const std::array<double, 2> b = detail::net_row_changes(prob);
    const auto g = [&](int i, int j) { return grad[static_cast<std::size_t>(i) * my + j]; };

    std::array<int, 2> add_col{0, 0};
    std::array<std::vector<int>, 2> removal_order;  // by descending cost
    for (int i = 0; i < 2; ++i) {
        int& ac = add_col[static_cast<std::size_t>(i)];
        for (int j = 1; j < my; ++j)
            if (g(i, j) < g(i, ac)) ac = j;
        auto& ord = removal_order[static_cast<std::size_t>(i)];
        ord.resize(static_cast<std::size_t>(my));
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int c) {
            if (g(i, a) != g(i, c)) return g(i, a) > g(i, c);
            return a < c;
        });
    }

    JointDist q = prob.p;
    std::vector<double> removed(static_cast<std::size_t>(2 * my), 0.0);
    const auto removable = [&](int i, int j) {
        return prob.p.at(i, j) - removed[static_cast<std::size_t>(i) * my + j];
    };
    double used = 0.0;

    // Mandatory net changes.
    for (int i = 0; i < 2; ++i) {
        const double bi = b[static_cast<std::size_t>(i)];
        if (bi > 0.0) {
            q.at(i, add_col[static_cast<std::size_t>(i)]) += bi;
            used += bi;
        } else if (bi < 0.0) {
            double need = -bi;
            for (int j : removal_order[static_cast<std::size_t>(i)]) {
                const double take = std::min(need, removable(i, j));
                if (take <= 0.0) continue;
                q.at(i, j) -= take;
                removed[static_cast<std::size_t>(i) * my + j] += take;
                need -= take;
                used += take;
                if (need <= detail::kFeasSlack) {
                    need = 0.0;
                    break;
                }
            }
            if (need > detail::kFeasSlack) {
                throw InfeasibleError("row removal exceeds available mass");
            }
        }
    }

    // Exchange phase: walk each row's removal list; at each step give budget
    // to the row whose current exchange rate is most negative.
    double remaining = std::max(prob.eps - used, 0.0);
    std::array<std::size_t, 2> head{0, 0};
    const auto advance = [&](int i) {
        auto& h = head[static_cast<std::size_t>(i)];
        const auto& ord = removal_order[static_cast<std::size_t>(i)];
        while (h < ord.size() &&
               (ord[h] == add_col[static_cast<std::size_t>(i)] || removable(i, ord[h]) <= 1e-16))
            ++h;
    };
    advance(0);
    advance(1);
    while (remaining > 1e-15) {
        double best_rate = 0.0;
        int best_row = -1;
        for (int i = 0; i < 2; ++i) {
            const auto& ord = removal_order[static_cast<std::size_t>(i)];
            const std::size_t h = head[static_cast<std::size_t>(i)];
            if (h >= ord.size()) continue;
            const double rate = 0.5 * (g(i, add_col[static_cast<std::size_t>(i)]) - g(i, ord[h]));
            if (rate < best_rate) {
                best_rate = rate;
                best_row = i;
            }
        }
        if (best_row < 0) break;  // no profitable exchange left
        const int i = best_row;
        const int j = removal_order[static_cast<std::size_t>(i)][head[static_cast<std::size_t>(i)]];
        const double cap = removable(i, j);
        if (remaining / 2.0 <= cap) {  // budget-limited: this spends it all
            const double mass = remaining / 2.0;
            q.at(i, j) -= mass;
            q.at(i, add_col[static_cast<std::size_t>(i)]) += mass;
            remaining = 0.0;
        } else {  // capacity-limited: exhaust the column, move on
            q.at(i, j) -= cap;
            removed[static_cast<std::size_t>(i) * my + j] += cap;
            q.at(i, add_col[static_cast<std::size_t>(i)]) += cap;
            remaining -= 2.0 * cap;
            ++head[static_cast<std::size_t>(i)];
            advance(i);
        }
    }

    for (double& x : q.v)
        if (x < 0.0) x = 0.0;  // rounding dust from exact cancellations
    return q;
}

namespace detail {

// Derivative of t -> I(q + t*d) with entries clamped at `floor` inside the
// logarithms; d must preserve row sums.
inline double directional_derivative(const JointDist& q, const std::vector<double>& d,
                                     double t, double floor) {
    const int my = q.my;
    double s = 0.0;
    for (int j = 0; j < my; ++j) {
        const double d0 = d[static_cast<std::size_t>(j)];
        const double d1 = d[static_cast<std::size_t>(my + j)];
        const double a = q.at(0, j) + t * d0;
        const double bb = q.at(1, j) + t * d1;
        const double c = std::max(a + bb, floor);
        if (d0 != 0.0) s += d0 * std::log(std::max(a, floor) / c);
        if (d1 != 0.0) s += d1 * std::log(std::max(bb, floor) / c);
    }
    return s;
}

inline double directional_curvature(const JointDist& q, const std::vector<double>& d,
                                    double t, double floor) {
    const int my = q.my;
    double s = 0.0;
    for (int j = 0; j < my; ++j) {
        const double d0 = d[static_cast<std::size_t>(j)];
        const double d1 = d[static_cast<std::size_t>(my + j)];
        const double a = std::max(q.at(0, j) + t * d0, floor);
        const double bb = std::max(q.at(1, j) + t * d1, floor);
        s += d0 * d0 / a + d1 * d1 / bb - (d0 + d1) * (d0 + d1) / (a + bb);
    }
    return s;
}

// Exact line search: minimize the convex restriction t -> I(q + t*d) over
// [0, t_max] by safeguarded Newton iteration on its derivative.
inline double line_search(const JointDist& q, const std::vector<double>& d, double t_max,
                          double floor) {
    if (t_max <= 0.0) return 0.0;
    if (directional_derivative(q, d, 0.0, floor) >= 0.0) return 0.0;
    if (directional_derivative(q, d, t_max, floor) <= 0.0) return t_max;
    double lo = 0.0, hi = t_max;
    double t = 0.5 * t_max;
    for (int k = 0; k < 100 && hi - lo > 1e-15 * t_max; ++k) {
        const double der = directional_derivative(q, d, t, floor);
        if (der > 0.0) hi = t; else lo = t;
        const double curv = directional_curvature(q, d, t, floor);
        double next = (curv > 0.0) ? t - der / curv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        t = next;
    }
    return t;
}

}  // namespace detail

// Frank-Wolfe with pairwise steps on the inner problem: each step moves
// weight from the currently worst active vertex directly onto the oracle
// vertex, which avoids the zig-zag of plain Frank-Wolfe when the optimum
// sits on a low-dimensional face. Falls back to a classic Frank-Wolfe step
// when no pairwise move is available. Returns Converged with
// gap <= cfg.gap_tol, or IterCap with the last computed gap; the returned
// value is I at a feasible iterate either way, so it always upper-bounds the
// true minimum and exceeds it by at most `gap` when converged.
inline InnerResult inner_minimize(const InnerProblem& prob, const SolverConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(2 * prob.p.my);
    const JointDist init = feasible_init(prob);
    JointDist q = init;

    // Convex decomposition of the iterate over visited vertices.
    std::vector<std::vector<double>> atoms{q.v};
    std::vector<double> weights{1.0};

    const auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
        return s;
    };
    const auto resync = [&]() {
        std::fill(q.v.begin(), q.v.end(), 0.0);
        double wsum = 0.0;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            wsum += weights[a];
            for (std::size_t k = 0; k < n; ++k) q.v[k] += weights[a] * atoms[a][k];
        }
        if (std::abs(wsum - 1.0) > 1e-14) {
            for (double& x : q.v) x /= wsum;
            for (double& w : weights) w /= wsum;
        }
    };
    const auto find_or_add_atom = [&](const std::vector<double>& vertex) {
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (atoms[a] == vertex) return a;
        }
        atoms.push_back(vertex);
        weights.push_back(0.0);
        return atoms.size() - 1;
    };
    const auto drop_atom = [&](std::size_t a) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(a));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(a));
    };

    std::vector<double> dir(n);
    double gap = std::numeric_limits<double>::infinity();
    int it = 0;
    SolveStatus status = SolveStatus::IterCap;

    for (; it < cfg.max_iters; ++it) {
        const std::vector<double> grad = mi_gradient(q, cfg.interior_floor);
        const JointDist s = linear_oracle(grad, prob);
        const double gq = dot(grad, q.v);
        gap = std::max(gq - dot(grad, s.v), 0.0);
        if (gap <= cfg.gap_tol) {
            status = SolveStatus::Converged;
            break;
        }

        std::size_t away = 0;
        double away_score = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            const double sc = dot(grad, atoms[a]);
            if (sc > away_score) {
                away_score = sc;
                away = a;
            }
        }

        bool stepped = false;
        if (atoms[away] != s.v && weights[away] > 0.0) {
            // Pairwise: shift weight from the worst atom toward the oracle
            // vertex, at most the whole weight of the donor.
            const double t_max = weights[away];
            for (std::size_t k = 0; k < n; ++k) dir[k] = s.v[k] - atoms[away][k];
            const double t = detail::line_search(q, dir, t_max, cfg.interior_floor);
            if (t > 0.0) {
                weights[away] -= t;
                const std::size_t target = find_or_add_atom(s.v);
                weights[target] += t;
                if (weights[away] <= 1e-14) drop_atom(away);
                stepped = true;
            }
        }
        if (!stepped) {
            for (std::size_t k = 0; k < n; ++k) dir[k] = s.v[k] - q.v[k];
            const double t = detail::line_search(q, dir, 1.0, cfg.interior_floor);
            if (t >= 1.0) {
                atoms.assign(1, s.v);
                weights.assign(1, 1.0);
            } else {
                for (double& w : weights) w *= (1.0 - t);
                const std::size_t target = find_or_add_atom(s.v);
                weights[target] += t;
            }
        }
        resync();
    }

    InnerResult res;
    res.gap_nats = gap;
    res.iterations = it;
    res.status = status;
    // Exact line search keeps the iterates monotone; the comparison below
    // only guards against clamped-derivative artifacts at the boundary.
    const double final_value = mutual_information(q).nats;
    const double init_value = mutual_information(init).nats;
    if (final_value <= init_value) {
        res.argmin = q;
        res.value = InfoValue{final_value};
    } else {
        res.argmin = init;
        res.value = InfoValue{init_value};
    }
    return res;
}

}  // namespace mibound

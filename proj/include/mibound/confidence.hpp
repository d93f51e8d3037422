#pragma once

// Confidence-floor pipeline: observed counts -> empirical joint -> L1
// concentration radius eps(n, K, delta) -> minimized mutual information over
// the eps-ball. The resulting floor holds with probability >= 1 - delta.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mibound/distribution.hpp"
#include "mibound/errors.hpp"
#include "mibound/sweep.hpp"

namespace mibound {

struct CountsTable {
    std::vector<long long> counts;  // 2 x my, row-major
    int my = 0;
    long long n = 0;
    long long at(int i, int j) const { return counts[static_cast<std::size_t>(i) * my + j]; }
};

inline CountsTable make_counts_table(const std::vector<std::vector<long long>>& raw) {
    if (raw.size() != 2) {
        throw DimensionMismatchError("counts table needs exactly 2 rows, got " +
                                     std::to_string(raw.size()));
    }
    const std::size_t my = raw[0].size();
    if (my < 1) throw DimensionMismatchError("counts table needs at least 1 column");
    if (raw[1].size() != my) {
        throw DimensionMismatchError("counts rows have different lengths: " +
                                     std::to_string(my) + " vs " + std::to_string(raw[1].size()));
    }
    CountsTable t;
    t.my = static_cast<int>(my);
    t.counts.reserve(2 * my);
    for (int i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < my; ++j) {
            const long long c = raw[static_cast<std::size_t>(i)][j];
            if (c < 0) throw NegativeEntryError(i, static_cast<int>(j), static_cast<double>(c));
            t.counts.push_back(c);
            t.n += c;
        }
    }
    if (t.n < 1) throw ZeroTotalError();
    return t;
}

// Failure probability delta, alphabet size k = 2 * my, sample count n.
struct ConfidenceSpec {
    double delta = 0.05;
    int k = 2;
    long long n = 1;
};

inline std::pair<JointDist, long long> empirical_joint(const CountsTable& c) {
    if (c.n < 1) throw ZeroTotalError();
    JointDist j;
    j.my = c.my;
    j.v.reserve(c.counts.size());
    for (long long x : c.counts) j.v.push_back(static_cast<double>(x) / static_cast<double>(c.n));
    return {j, c.n};
}

// Radius such that Pr(V(empirical, true) >= eps) <= (2^K - 2) exp(-n eps^2 / 2),
// inverted at failure probability delta and capped at the maximal variational
// distance 2:
//   eps = min(2, sqrt((2/n) * ln((2^K - 2) / delta))).
// For K > 60 the logarithm is formed as K ln 2 + log1p(-2^(1-K)) so 2^K is
// never materialized.
inline double epsilon_for_confidence(const ConfidenceSpec& spec) {
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
        throw Error("delta must lie in (0,1), got " + std::to_string(spec.delta));
    }
    if (spec.k < 2) throw Error("alphabet size must be at least 2");
    if (spec.n < 1) throw Error("sample count must be at least 1");
    const double log_pow =
        spec.k <= 60
            ? std::log(std::exp2(static_cast<double>(spec.k)) - 2.0)
            : spec.k * kLn2 + std::log1p(-std::exp2(1.0 - static_cast<double>(spec.k)));
    const double log_arg = log_pow - std::log(spec.delta);
    const double eps = std::sqrt(2.0 * log_arg / static_cast<double>(spec.n));
    return std::min(eps, 2.0);
}

struct ConfidenceReport {
    JointDist empirical;
    long long n = 0;
    int k = 0;
    double delta = 0.0;
    double eps = 0.0;
    InfoValue i_hat;          // plug-in mutual information of the counts
    BoundReport bound_report; // floor = bound_report.bound
};

// With probability >= 1 - delta, the true mutual information is at least
// bound_report.bound (up to the solver's certified gap).
inline ConfidenceReport mi_confidence_floor(const CountsTable& c, double delta, int n_points,
                                            const SolverConfig& cfg) {
    ConfidenceReport report;
    auto [p_hat, n] = empirical_joint(c);
    report.empirical = p_hat;
    report.n = n;
    report.k = 2 * c.my;
    report.delta = delta;
    report.eps = epsilon_for_confidence(ConfidenceSpec{delta, report.k, n});
    report.i_hat = mutual_information(p_hat);
    report.bound_report = lower_bound(p_hat, report.eps, n_points, cfg);
    return report;
}

}  // namespace mibound

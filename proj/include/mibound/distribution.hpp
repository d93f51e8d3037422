#pragma once

// Probability value types and information measures for a binary variable X
// paired with a finite variable Y: joint distributions are 2 x my matrices.
// All functions are pure; all quantities are computed in nats internally,
// with bit conversion available on InfoValue.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mibound/errors.hpp"

namespace mibound {

inline constexpr double kLn2 = 0.6931471805599453094;
// |mass - 1| tolerance for strict validation; inputs are decimal literals.
inline constexpr double kSumTol = 1e-9;
// Entries below this are treated as exact zeros inside logarithms (0*log 0 = 0).
inline constexpr double kLogZeroFloor = 1e-15;

// Information quantity stored in nats; bits on demand.
struct InfoValue {
    double nats = 0.0;
    double bits() const { return nats / kLn2; }
};

// Marginal distribution of the binary variable X.
struct MarginalX {
    std::array<double, 2> v{0.0, 0.0};
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    friend bool operator==(const MarginalX&, const MarginalX&) = default;
};

// Marginal distribution of Y.
struct MarginalY {
    std::vector<double> v;
    int my() const { return static_cast<int>(v.size()); }
    double operator[](int j) const { return v[static_cast<std::size_t>(j)]; }
    friend bool operator==(const MarginalY&, const MarginalY&) = default;
};

// 2 x my joint distribution, row-major storage.
struct JointDist {
    std::vector<double> v;  // size 2*my
    int my = 0;

    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * my + j]; }
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * my + j]; }
    double total() const {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    friend bool operator==(const JointDist&, const JointDist&) = default;
};

// Row-conditional distributions of Y given X: row i sums to 1.
struct Conditional {
    std::vector<double> v;  // 2 x my, row-major
    int my = 0;
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * my + j]; }
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * my + j]; }
};

enum class ValidationPolicy { Strict, Renormalize };

// Gate from raw numbers to a JointDist. Strict mode requires mass 1 within
// kSumTol; Renormalize accepts any positive total and divides it out.
inline JointDist validate_joint(const std::vector<std::vector<double>>& raw,
                                ValidationPolicy policy) {
    if (raw.size() != 2) {
        throw DimensionMismatchError("joint distribution needs exactly 2 rows, got " +
                                     std::to_string(raw.size()));
    }
    const std::size_t my = raw[0].size();
    if (my < 1) throw DimensionMismatchError("joint distribution needs at least 1 column");
    if (raw[1].size() != my) {
        throw DimensionMismatchError("joint rows have different lengths: " +
                                     std::to_string(my) + " vs " + std::to_string(raw[1].size()));
    }
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < my; ++j) {
            const double x = raw[static_cast<std::size_t>(i)][j];
            if (!std::isfinite(x)) {
                throw Error("non-finite entry at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
            }
            if (x < 0.0) throw NegativeEntryError(i, static_cast<int>(j), x);
            sum += x;
        }
    }
    JointDist out;
    out.my = static_cast<int>(my);
    out.v.reserve(2 * my);
    if (policy == ValidationPolicy::Strict) {
        if (!(std::abs(sum - 1.0) <= kSumTol)) throw MassMismatchError(sum);
        for (int i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < my; ++j) out.v.push_back(raw[static_cast<std::size_t>(i)][j]);
    } else {
        if (!(sum > 0.0)) throw ZeroMassError();
        for (int i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < my; ++j) out.v.push_back(raw[static_cast<std::size_t>(i)][j] / sum);
    }
    return out;
}

inline MarginalX marginal_x(const JointDist& j) {
    MarginalX m;
    for (int i = 0; i < 2; ++i) {
        double s = 0.0;
        for (int k = 0; k < j.my; ++k) s += j.at(i, k);
        m[i] = s;
    }
    return m;
}

inline MarginalY marginal_y(const JointDist& j) {
    MarginalY m;
    m.v.assign(static_cast<std::size_t>(j.my), 0.0);
    for (int k = 0; k < j.my; ++k) m.v[static_cast<std::size_t>(k)] = j.at(0, k) + j.at(1, k);
    return m;
}

// Rows with zero marginal are filled uniformly: the conditional is arbitrary
// on a zero-probability branch and the uniform fill keeps every row a
// distribution.
inline Conditional conditional_y_given_x(const JointDist& j) {
    const MarginalX px = marginal_x(j);
    Conditional c;
    c.my = j.my;
    c.v.assign(static_cast<std::size_t>(2 * j.my), 0.0);
    for (int i = 0; i < 2; ++i) {
        if (px[i] > 0.0) {
            for (int k = 0; k < j.my; ++k) c.at(i, k) = j.at(i, k) / px[i];
        } else {
            for (int k = 0; k < j.my; ++k) c.at(i, k) = 1.0 / j.my;
        }
    }
    return c;
}

inline JointDist compose(const MarginalX& qx, const Conditional& c) {
    JointDist j;
    j.my = c.my;
    j.v.assign(static_cast<std::size_t>(2 * c.my), 0.0);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < c.my; ++k) j.at(i, k) = qx[i] * c.at(i, k);
    return j;
}

// Kullback-Leibler distance sum p log(p/q) with 0*log 0 = 0; mass of p on a
// zero of q yields an explicit infinity, not an error.
inline InfoValue relative_entropy(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw DimensionMismatchError("relative entropy needs equal lengths, got " +
                                     std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    }
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] <= kLogZeroFloor) continue;
        if (q[k] <= kLogZeroFloor) return InfoValue{std::numeric_limits<double>::infinity()};
        s += p[k] * std::log(p[k] / q[k]);
    }
    // Nonnegative for distributions; rounding can dip a hair below zero.
    return InfoValue{s < 0.0 ? 0.0 : s};
}

// I(X;Y) as the relative entropy between the joint and the product of its
// marginals. Finite for every valid joint: the product has mass wherever the
// joint does.
inline InfoValue mutual_information(const JointDist& j) {
    const MarginalX px = marginal_x(j);
    const MarginalY py = marginal_y(j);
    std::vector<double> prod(static_cast<std::size_t>(2 * j.my));
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < j.my; ++k)
            prod[static_cast<std::size_t>(i) * j.my + k] = px[i] * py[k];
    return relative_entropy(j.v, prod);
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatchError("variational distance needs equal sizes, got " +
                                     std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s;
}

// Variational (L1) distance, range [0,2] for distributions.
inline double variational_distance(const JointDist& a, const JointDist& b) {
    if (a.my != b.my) {
        throw DimensionMismatchError("variational distance needs equal column counts, got " +
                                     std::to_string(a.my) + " vs " + std::to_string(b.my));
    }
    return l1_distance(a.v, b.v);
}

inline double variational_distance(const MarginalX& a, const MarginalX& b) {
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
}

inline double variational_distance(const MarginalY& a, const MarginalY& b) {
    return l1_distance(a.v, b.v);
}

}  // namespace mibound

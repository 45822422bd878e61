// Copyright 2026 The cohop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COHOP_SPECIAL_HPP
#define COHOP_SPECIAL_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cohop/error.hpp"

namespace cohop {

/// 100 decimal digits. The alternating closed-form sums cancel by up to ~30
/// orders of magnitude inside the validated envelope.
using ExtendedReal = boost::multiprecision::cpp_bin_float_100;

/// log((a)_n) = log Gamma(a+n) - log Gamma(a).
inline double log_pochhammer(double a, int n) {
    if (!(a > 0)) {
        throw Error(ErrorKind::invalid_argument, "log_pochhammer needs a > 0");
    }
    if (n < 0) {
        throw Error(ErrorKind::invalid_argument, "log_pochhammer needs n >= 0");
    }
    if (n == 0) {
        return 0;
    }
    if (n <= 32) {
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            acc += std::log(a + i);
        }
        return acc;
    }
    return std::lgamma(a + n) - std::lgamma(a);
}

class LogFactorialTable {
   public:
    explicit LogFactorialTable(int n_max) : values_(static_cast<size_t>(n_max) + 1, 0.0) {
        for (int n = 2; n <= n_max; ++n) {
            values_[n] = values_[n - 1] + std::log(static_cast<double>(n));
        }
    }

    double operator()(int n) const {
        return values_.at(static_cast<size_t>(n));
    }
    int n_max() const {
        return static_cast<int>(values_.size()) - 1;
    }
    const std::vector<double> &values() const {
        return values_;
    }

   private:
    std::vector<double> values_;
};

namespace detail {

inline void check_laguerre_args(int n, double alpha, double x) {
    if (n < 0) {
        throw Error(ErrorKind::invalid_argument, "Laguerre degree must be non-negative");
    }
    if (!(alpha > -1)) {
        throw Error(ErrorKind::invalid_argument, "Laguerre parameter must exceed -1");
    }
    if (!(x >= 0) || !std::isfinite(x)) {
        throw Error(ErrorKind::invalid_argument, "Laguerre argument must be finite and non-negative");
    }
}

}  // namespace detail

/// L_n^(alpha)(x) as the finite alternating sum
///   sum_j (-1)^j binom(n+alpha, n-j) x^j / j!,
/// with consecutive terms generated by their exact rational ratio.
template <class Real>
Real laguerre_sum(int n, const Real &alpha, const Real &x) {
    Real term = 1;
    for (int i = 1; i <= n; ++i) {
        term *= (alpha + i) / i;
    }
    Real acc = term;
    for (int j = 0; j < n; ++j) {
        term *= -x * (n - j) / ((alpha + j + 1) * (j + 1));
        acc += term;
    }
    return acc;
}

/// (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
template <class Real>
Real laguerre_recurrence(int n, const Real &alpha, const Real &x) {
    Real prev = 1;
    if (n == 0) {
        return prev;
    }
    Real cur = 1 + alpha - x;
    for (int k = 1; k < n; ++k) {
        Real next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

inline constexpr int kLaguerreSumMaxDegree = 60;

/// Associated Laguerre polynomial. The explicit sum is primary up to degree 60;
/// beyond that the three-term recurrence takes over.
inline double assoc_laguerre(int n, double alpha, double x) {
    detail::check_laguerre_args(n, alpha, x);
    if (n <= kLaguerreSumMaxDegree) {
        return static_cast<double>(laguerre_sum<ExtendedReal>(n, ExtendedReal(alpha), ExtendedReal(x)));
    }
    return static_cast<double>(laguerre_recurrence<ExtendedReal>(n, ExtendedReal(alpha), ExtendedReal(x)));
}

/// Closed form of sum_n L_n^(alpha)(x) t^n.
inline double laguerre_generating_closed(double x, double t, double alpha) {
    if (!(std::abs(t) < 1)) {
        throw Error(ErrorKind::out_of_range, "generating function needs |t| < 1");
    }
    return std::exp(-x * t / (1 - t)) / std::pow(1 - t, alpha + 1);
}

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Laguerre rule for the weight x^alpha e^-x on [0, inf). Nodes start
/// from the Jacobi-matrix eigenvalues and are polished by Newton steps; the
/// weights use the closed form in L_{n+1}, since eigenvector components lose
/// all relative accuracy at the largest nodes.
inline QuadratureRule gauss_laguerre(int n, double alpha = 0) {
    if (n < 1 || !(alpha > -1)) {
        throw Error(ErrorKind::invalid_argument, "gauss_laguerre needs n >= 1 and alpha > -1");
    }
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) {
        diag(i) = 2.0 * i + alpha + 1;
    }
    for (int i = 1; i < n; ++i) {
        sub(i - 1) = std::sqrt(i * (i + alpha));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    // L_n and L_{n-1} in long double by the three-term recurrence.
    auto pair = [&](long double x) {
        long double p0 = 1;
        long double p1 = 1 + alpha - x;
        if (n == 1) {
            return std::pair<long double, long double>(p1, p0);
        }
        for (int k = 1; k < n; ++k) {
            long double p2 = ((2 * k + 1 + alpha - x) * p1 - (k + alpha) * p0) / (k + 1);
            p0 = p1;
            p1 = p2;
        }
        return std::pair<long double, long double>(p1, p0);
    };
    QuadratureRule rule;
    long double log_scale = std::lgamma(n + alpha + 1) - std::lgamma(n + 1.0);
    for (int i = 0; i < n; ++i) {
        long double x = eig.eigenvalues()(i);
        for (int iter = 0; iter < 10; ++iter) {
            auto [ln, lm] = pair(x);
            // x L_n' = n L_n - (n + alpha) L_{n-1}
            long double d = (n * ln - (n + alpha) * lm) / x;
            long double step = ln / d;
            x -= step;
            if (std::abs(step) <= 1e-19L * std::abs(x)) {
                break;
            }
        }
        auto [ln, lm] = pair(x);
        // L_{n+1}(x_i) = -(n + alpha) L_{n-1}(x_i) / (n + 1) at a root of L_n.
        long double next = -(n + alpha) * lm / (n + 1);
        long double w = std::exp(log_scale) * x / ((n + 1.0L) * (n + 1.0L) * next * next);
        rule.nodes.push_back(static_cast<double>(x));
        rule.weights.push_back(static_cast<double>(w));
    }
    return rule;
}

/// Gauss-Legendre rule on [a, b], Newton iteration on P_n from the Chebyshev guess.
inline QuadratureRule gauss_legendre(int n, double a = -1, double b = 1) {
    if (n < 1) {
        throw Error(ErrorKind::invalid_argument, "gauss_legendre needs n >= 1");
    }
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

}  // namespace cohop

#endif

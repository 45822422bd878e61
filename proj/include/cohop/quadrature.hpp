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

#ifndef COHOP_QUADRATURE_HPP
#define COHOP_QUADRATURE_HPP

// Deterministic polar quadrature over the complex plane and over the unit
// disk carrying the hyperbolic measure dA / (1 - |zeta|^2)^2.
//
// Plane: Gauss-Legendre in r on [0, R] times the trapezoid rule in theta.
// Disk:  r = tanh(s), which turns r dr / (1 - r^2)^2 into sinh(2s)/2 ds and
//        the boundary concentration into exponential decay in s.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "cohop/error.hpp"
#include "cohop/fock.hpp"
#include "cohop/special.hpp"

namespace cohop {

using Complex = std::complex<double>;

struct PlaneGrid {
    double radius = 6;
    int radial_nodes = 200;
    int angular_nodes = 200;
};

struct DiskGrid {
    double s_max = 12;
    int radial_nodes = 400;
    int angular_nodes = 256;
};

inline void validate(const PlaneGrid &grid) {
    if (!(grid.radius > 0) || grid.radial_nodes < 1 || grid.angular_nodes < 2 || grid.angular_nodes % 2 != 0) {
        throw Error(ErrorKind::grid_mismatch, "plane grid needs R > 0, radial >= 1, even angular >= 2");
    }
}

inline void validate(const DiskGrid &grid) {
    if (!(grid.s_max > 0) || grid.radial_nodes < 1 || grid.angular_nodes < 2 || grid.angular_nodes % 2 != 0) {
        throw Error(ErrorKind::grid_mismatch, "disk grid needs s_max > 0, radial >= 1, even angular >= 2");
    }
}

/// Separable polar rule. radial_weights already include the area Jacobian
/// (r for the plane, sinh(2s)/2 for the disk); angle_weight is 2 pi / M.
struct PolarRule {
    std::vector<double> radii;
    std::vector<double> radial_weights;
    std::vector<double> angles;
    double angle_weight = 0;
};

inline std::vector<double> trapezoid_angles(int count) {
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        out[k] = 2 * std::numbers::pi * k / count;
    }
    return out;
}

inline PolarRule plane_rule(const PlaneGrid &grid) {
    validate(grid);
    auto gl = gauss_legendre(grid.radial_nodes, 0, grid.radius);
    PolarRule rule;
    rule.radii = gl.nodes;
    for (int i = 0; i < grid.radial_nodes; ++i) {
        rule.radial_weights.push_back(gl.weights[i] * gl.nodes[i]);
    }
    rule.angles = trapezoid_angles(grid.angular_nodes);
    rule.angle_weight = 2 * std::numbers::pi / grid.angular_nodes;
    return rule;
}

/// Radii here are the hyperbolic distance s; the disk point is tanh(s) e^{i theta}.
inline PolarRule hyperbolic_rule(const DiskGrid &grid) {
    validate(grid);
    auto gl = gauss_legendre(grid.radial_nodes, 0, grid.s_max);
    PolarRule rule;
    rule.radii = gl.nodes;
    for (int i = 0; i < grid.radial_nodes; ++i) {
        rule.radial_weights.push_back(gl.weights[i] * 0.5 * std::sinh(2 * gl.nodes[i]));
    }
    rule.angles = trapezoid_angles(grid.angular_nodes);
    rule.angle_weight = 2 * std::numbers::pi / grid.angular_nodes;
    return rule;
}

/// Integral of f(z) d^2z / pi over the disk |z| <= R.
template <class F>
auto integrate_plane(F &&f, const PlaneGrid &grid) {
    using T = std::decay_t<decltype(f(Complex{}))>;
    auto rule = plane_rule(grid);
    T acc = f(Complex{}) * 0.0;
    for (size_t i = 0; i < rule.radii.size(); ++i) {
        T ring = acc * 0.0;
        for (double theta : rule.angles) {
            ring = ring + f(std::polar(rule.radii[i], theta));
        }
        acc = acc + ring * (rule.radial_weights[i] * rule.angle_weight / std::numbers::pi);
    }
    return acc;
}

inline void require_nondegenerate_weight(double two_k) {
    if (!(two_k > 1)) {
        throw Error(ErrorKind::invalid_spin, "the hyperbolic measure needs 2K > 1 (weight 2K - 1 vanishes)");
    }
}

/// ((2K-1)/pi) * integral over the unit disk of f(zeta) d^2zeta / (1 - |zeta|^2)^2.
template <class F>
auto integrate_disk_hyperbolic(F &&f, double two_k, const DiskGrid &grid) {
    require_nondegenerate_weight(two_k);
    using T = std::decay_t<decltype(f(Complex{}))>;
    auto rule = hyperbolic_rule(grid);
    T acc = f(Complex{}) * 0.0;
    for (size_t i = 0; i < rule.radii.size(); ++i) {
        double rho = std::tanh(rule.radii[i]);
        T ring = acc * 0.0;
        for (double theta : rule.angles) {
            ring = ring + f(std::polar(rho, theta));
        }
        acc = acc + ring * (rule.radial_weights[i] * rule.angle_weight * (two_k - 1) / std::numbers::pi);
    }
    return acc;
}

struct ConjectureResult {
    Complex numeric;
    double rhs = 0;
    /// Estimated size of the radial tail beyond s_max.
    double tail_estimate = 0;
};

inline double conjecture_rhs(double two_k, double chi_abs) {
    return 1 / (2 * chi_abs * std::pow(1 + chi_abs, two_k - 1));
}

namespace detail {

/// (1 - i y)^{-nu} on the principal branch, without forming 1 + y^2.
inline Complex inverse_power(double y, double nu) {
    return std::polar(std::pow(std::hypot(1.0, y), -nu), nu * std::atan(y));
}

inline double log_cosh(double t) {
    t = std::abs(t);
    return t + std::log1p(std::exp(-2 * t)) - std::numbers::ln2;
}

/// integral over [0, a] of (1 - i sign u)^{-nu} / sqrt(a^2 - u^2) du for a > 1.
/// [0, a/2] is mapped by u = sinh(t), which resolves the unit-width peak at
/// u = 0; [a/2, a] is mapped back to the angle u = a sin(psi).
inline Complex half_line_integral(double a, double nu, double sign, int nodes) {
    int half = std::max(2, nodes / 2);
    Complex acc = 0;
    auto inner = gauss_legendre(half, 0, std::asinh(a / 2));
    for (int k = 0; k < half; ++k) {
        double t = inner.nodes[k];
        double u = std::sinh(t);
        double gd = std::atan(u);
        double ratio = u / a;
        double magnitude = std::exp((1 - nu) * log_cosh(t)) / (a * std::sqrt((1 - ratio) * (1 + ratio)));
        acc += inner.weights[k] * std::polar(magnitude, sign * nu * gd);
    }
    auto outer = gauss_legendre(half, std::numbers::pi / 6, std::numbers::pi / 2);
    for (int k = 0; k < half; ++k) {
        acc += outer.weights[k] * inverse_power(sign * a * std::sin(outer.nodes[k]), nu);
    }
    return acc;
}

}  // namespace detail

/// integral over [0, 2 pi) of (1 - i a sin psi)^{-nu} d psi.
///
/// For a <= 1 the integrand is analytic in a strip of half-width asinh(1/a)
/// and the trapezoid rule converges geometrically. For a > 1 it develops
/// peaks of width ~1/a at psi = 0, pi that no fixed uniform rule resolves, so
/// the integral is folded onto u = a sin(psi) and integrated piecewise.
inline Complex conjecture_angular_integral(double a, double nu, int nodes) {
    if (a <= 1) {
        Complex acc = 0;
        for (double psi : trapezoid_angles(nodes)) {
            acc += detail::inverse_power(a * std::sin(psi), nu);
        }
        return acc * (2 * std::numbers::pi / nodes);
    }
    return 2.0 * (detail::half_line_integral(a, nu, 1.0, nodes) + detail::half_line_integral(a, nu, -1.0, nodes));
}

/// Quadrature of
///   ((2K-1)/pi) int_D d^2zeta / (1-|zeta|^2)^2 (1 - (conj(chi) zeta - chi conj(zeta)) / (1-|zeta|^2))^{-2K}
/// together with its claimed value 1 / (2|chi| (1+|chi|)^{2K-1}).
/// With zeta = tanh(s) e^{i theta} the integrand becomes
/// (1 - i |chi| sinh(2s) sin(theta - arg chi))^{-2K}.
inline ConjectureResult conjecture_integral(double two_k, Complex chi, const DiskGrid &grid = {}) {
    require_nondegenerate_weight(two_k);
    double chi_abs = std::abs(chi);
    if (!(chi_abs > 0 && chi_abs < 1)) {
        throw Error(ErrorKind::out_of_range, "conjecture integral needs 0 < |chi| < 1");
    }
    validate(grid);
    auto radial = gauss_legendre(grid.radial_nodes, 0, grid.s_max);
    double prefactor = (two_k - 1) / std::numbers::pi;
    auto radial_integrand = [&](double s) {
        double a = chi_abs * std::sinh(2 * s);
        return prefactor * 0.5 * std::sinh(2 * s) * conjecture_angular_integral(a, two_k, grid.angular_nodes);
    };
    ConjectureResult out;
    out.numeric = 0;
    for (int i = 0; i < grid.radial_nodes; ++i) {
        out.numeric += radial.weights[i] * radial_integrand(radial.nodes[i]);
    }
    out.rhs = conjecture_rhs(two_k, chi_abs);
    // The radial integrand decays like exp(-2 (2K-1) s).
    out.tail_estimate = std::abs(radial_integrand(grid.s_max)) / (2 * (two_k - 1));
    return out;
}

/// A grid whose radial range is long enough for the exp(-2 (2K-1) s) tail to
/// drop below ~1e-9, for studies approaching the degenerate weight 2K -> 1.
inline DiskGrid conjecture_grid_for(double two_k, const DiskGrid &base = {}) {
    require_nondegenerate_weight(two_k);
    DiskGrid grid = base;
    double needed = 10.0 / (two_k - 1);
    if (needed > grid.s_max) {
        grid.radial_nodes = static_cast<int>(std::ceil(grid.radial_nodes * needed / grid.s_max));
        grid.s_max = needed;
    }
    return grid;
}

}  // namespace cohop

#endif

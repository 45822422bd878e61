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

#ifndef COHOP_COHERENT_HPP
#define COHOP_COHERENT_HPP

// Displacement operators U(z) = exp(z a^dagger - conj(z) a) on a truncated
// single-mode space, coherent states, closed-form matrix elements, and the
// quadratures behind the resolution of unity and Glauber's formula.

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "cohop/error.hpp"
#include "cohop/fock.hpp"
#include "cohop/quadrature.hpp"
#include "cohop/special.hpp"

namespace cohop {

struct Displacement {
    Complex z;
    TruncatedSpace space;
    UnitaryResult matrix;
};

inline ComplexMatrix displacement_generator(const Ladder &ladder, Complex z) {
    return z * ladder.a_dagger - std::conj(z) * ladder.a;
}

inline void require_amplitude(const TruncatedSpace &space, double abs_z_squared, double fraction) {
    if (abs_z_squared > fraction * space.cutoff()) {
        throw Error(
            ErrorKind::amplitude_too_large,
            "|z|^2 = " + std::to_string(abs_z_squared) + " is too large for cutoff " +
                std::to_string(space.cutoff()));
    }
}

inline Displacement displacement(const TruncatedSpace &space, Complex z) {
    require_kind(space, SpaceKind::single_mode);
    require_amplitude(space, std::norm(z), 0.5);
    return Displacement{z, space, exp_antihermitian(displacement_generator(build_ladder(space), z))};
}

enum class CoherentMethod { series, displaced_vacuum };

struct CoherentState {
    Complex z;
    ComplexVector amplitudes;
    /// Probability mass the untruncated state carries on n >= N.
    double tail_bound = 0;
};

/// Poisson mass beyond the cutoff: P(N, |z|^2).
inline double coherent_tail_bound(double abs_z_squared, int cutoff) {
    if (abs_z_squared == 0) {
        return 0;
    }
    return boost::math::gamma_p(static_cast<double>(cutoff), abs_z_squared);
}

inline CoherentState coherent_state(const TruncatedSpace &space, Complex z, CoherentMethod method) {
    require_kind(space, SpaceKind::single_mode);
    require_amplitude(space, std::norm(z), 0.25);
    CoherentState out{z, ComplexVector::Zero(space.dim()), coherent_tail_bound(std::norm(z), space.dim())};
    if (method == CoherentMethod::series) {
        Complex c = std::exp(-0.5 * std::norm(z));
        out.amplitudes(0) = c;
        for (int n = 1; n < space.dim(); ++n) {
            c *= z / std::sqrt(static_cast<double>(n));
            out.amplitudes(n) = c;
        }
    } else {
        out.amplitudes = displacement(space, z).matrix.matrix.col(0);
    }
    return out;
}

/// <n|U(z)|m> from the associated Laguerre closed form.
inline Complex u_element_closed(int n, int m, Complex z) {
    if (n < 0 || m < 0) {
        throw Error(ErrorKind::invalid_argument, "basis indices must be non-negative");
    }
    double x = std::norm(z);
    if (x == 0) {
        return n == m ? 1.0 : 0.0;
    }
    int lo = std::min(n, m);
    int d = std::abs(n - m);
    // n <= m carries (-conj z)^{m-n}; n >= m carries z^{n-m}.
    Complex base = n <= m ? -std::conj(z) : z;
    double log_mag = -0.5 * x + 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0)) + d * std::log(std::abs(z));
    double laguerre = assoc_laguerre(lo, d, x);
    return std::polar(std::exp(log_mag), d * std::arg(base)) * laguerre;
}

/// e^{-(z conj(w) - conj(z) w)/2}, so that U(z+w) = phase * U(z) U(w).
inline Complex composition_phase(Complex z, Complex w) {
    return std::polar(1.0, -(z * std::conj(w)).imag());
}

/// e^{z conj(w) - conj(z) w}, so that U(z) U(w) = phase * U(w) U(z).
inline Complex commutation_phase(Complex z, Complex w) {
    return std::polar(1.0, 2 * (z * std::conj(w)).imag());
}

/// Diagonalizes i(a^dagger - a) once and produces U(r e^{i theta}) as
/// R(theta) U(r) R(theta)^dagger with R(theta) = exp(i theta N). Used where a
/// quadrature needs U at many points.
class DisplacementFamily {
   public:
    explicit DisplacementFamily(const TruncatedSpace &space) : space_(space) {
        require_kind(space, SpaceKind::single_mode);
        Ladder ladder = build_ladder(space);
        ComplexMatrix h = Complex(0, 1) * (ladder.a_dagger - ladder.a);
        h = (0.5 * (h + h.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
        vectors_ = eig.eigenvectors();
        values_ = eig.eigenvalues();
    }

    /// Leading rows x rows block of U(r) for real r.
    ComplexMatrix radial_block(double r, int rows) const {
        ComplexVector phases = (values_.cast<Complex>() * Complex(0, -r)).array().exp();
        ComplexMatrix q = vectors_.topRows(rows);
        return q * phases.asDiagonal() * q.adjoint();
    }

    ComplexMatrix block(Complex z, int rows) const {
        ComplexMatrix out = radial_block(std::abs(z), rows);
        double theta = std::arg(z);
        for (int m = 0; m < rows; ++m) {
            for (int n = 0; n < rows; ++n) {
                out(m, n) *= std::polar(1.0, theta * (m - n));
            }
        }
        return out;
    }

    const TruncatedSpace &space() const {
        return space_;
    }

   private:
    TruncatedSpace space_;
    ComplexMatrix vectors_;
    Eigen::VectorXd values_;
};

inline void require_plane_grid_fits(const TruncatedSpace &space, const PlaneGrid &grid) {
    validate(grid);
    if (grid.radius * grid.radius > space.cutoff() / 2.0) {
        throw Error(ErrorKind::grid_mismatch, "grid radius R needs R^2 <= cutoff / 2");
    }
}

/// Leading rank x rank block of int d^2z/pi |z><z|.
inline ComplexMatrix resolution_identity_coherent(const TruncatedSpace &space, const PlaneGrid &grid, int rank) {
    require_kind(space, SpaceKind::single_mode);
    require_plane_grid_fits(space, grid);
    if (rank < 1 || rank > space.dim()) {
        throw Error(ErrorKind::rank_too_large, "rank must lie in [1, cutoff]");
    }
    return integrate_plane(
        [&](Complex z) -> ComplexMatrix {
            // Leading amplitudes e^{-|z|^2/2} z^n / sqrt(n!) need no truncation.
            ComplexVector head(rank);
            Complex c = std::exp(-0.5 * std::norm(z));
            for (int n = 0; n < rank; ++n) {
                head(n) = c;
                c *= z / std::sqrt(n + 1.0);
            }
            return head * head.adjoint();
        },
        grid);
}

struct RegularizedTrace {
    Complex numeric;
    Complex closed;
    int terms = 0;
    double tail_bound = 0;
};

/// Tr(t^N U(z)) two ways: the partial sum of t^n <n|U(z)|n> = t^n e^{-x/2} L_n(x)
/// (x = |z|^2, accumulated in extended precision because the terms cancel to
/// far below double precision near t -> 1), and the generating-function closed
/// form e^{-x/2} e^{-x t/(1-t)} / (1-t). Since |<n|U|n>| <= 1 the omitted tail
/// is at most t^{n+1} / (1 - t).
inline RegularizedTrace regularized_trace_u(Complex z, double t, double rel_tail = 1e-12) {
    if (!(t >= 0 && t < 1)) {
        throw Error(ErrorKind::out_of_range, "regularization parameter t must lie in [0, 1)");
    }
    double x = std::norm(z);
    RegularizedTrace out;
    out.closed = std::exp(-0.5 * x - x * t / (1 - t)) / (1 - t);
    double target = rel_tail * std::abs(out.closed);

    ExtendedReal xe = x;
    ExtendedReal te = t;
    ExtendedReal prev = 0;
    ExtendedReal cur = 1;
    ExtendedReal power = 1;
    ExtendedReal acc = 0;
    int n = 0;
    double tail = 1 / (1 - t);
    constexpr int kMaxTerms = 1000000;
    for (; n < kMaxTerms; ++n) {
        acc += power * cur;
        power *= te;
        tail = static_cast<double>(power) / (1 - t);
        if (tail <= target) {
            break;
        }
        ExtendedReal next = ((2 * n + 1 - xe) * cur - n * prev) / (n + 1);
        prev = cur;
        cur = next;
    }
    if (tail > target) {
        throw Error(ErrorKind::not_converged, "regularized trace did not reach its tail target");
    }
    out.numeric = static_cast<double>(boost::multiprecision::exp(-xe / 2) * acc);
    out.terms = n + 1;
    out.tail_bound = tail;
    return out;
}

/// Integral over the plane of the closed regularized trace divided by pi.
/// The grid radius is scaled to the Gaussian width of the integrand, which
/// shrinks like sqrt(1 - t) as t -> 1.
inline double regularized_trace_plane_integral(double t, const PlaneGrid &grid = {}) {
    if (!(t >= 0 && t < 1)) {
        throw Error(ErrorKind::out_of_range, "regularization parameter t must lie in [0, 1)");
    }
    double rate = 0.5 + t / (1 - t);
    PlaneGrid scaled = grid;
    scaled.radius = grid.radius / std::sqrt(2 * rate);
    return integrate_plane(
        [&](Complex z) { return std::exp(-rate * std::norm(z)) / (1 - t); }, scaled);
}

/// Leading block of int d^2z/pi Tr[A U(z)^dagger] U(z). A must vanish
/// outside the block; traces then equal traces over the full truncated space.
inline ComplexMatrix glauber_reconstruct(
    const ComplexMatrix &a, const TruncatedSpace &space, const PlaneGrid &grid, const SafeSector &sector) {
    require_kind(space, SpaceKind::single_mode);
    require_plane_grid_fits(space, grid);
    if (a.rows() != space.dim() || a.cols() != space.dim()) {
        throw Error(ErrorKind::invalid_argument, "operator does not live on this space");
    }
    int rank = sector.rank();
    if (rank > space.dim()) {
        throw Error(ErrorKind::rank_too_large, "sector larger than the space");
    }
    ComplexMatrix outside = a;
    outside.topLeftCorner(rank, rank).setZero();
    if (outside.cwiseAbs().maxCoeff() != 0) {
        throw Error(
            ErrorKind::invalid_argument, "operator must be supported inside the sector (trace-class in effect)");
    }
    ComplexMatrix a_block = a.topLeftCorner(rank, rank);

    DisplacementFamily family(space);
    PolarRule rule = plane_rule(grid);
    ComplexMatrix acc = ComplexMatrix::Zero(rank, rank);
    ComplexMatrix phase(rank, rank);
    for (size_t i = 0; i < rule.radii.size(); ++i) {
        ComplexMatrix u_r = family.radial_block(rule.radii[i], rank);
        ComplexMatrix ring = ComplexMatrix::Zero(rank, rank);
        for (double theta : rule.angles) {
            for (int m = 0; m < rank; ++m) {
                for (int n = 0; n < rank; ++n) {
                    phase(m, n) = std::polar(1.0, theta * (m - n));
                }
            }
            ComplexMatrix u = u_r.cwiseProduct(phase);
            // Tr[A U^dagger] = sum_{mn} A_mn conj(U_mn)
            Complex trace = (a_block.cwiseProduct(u.conjugate())).sum();
            ring += trace * u;
        }
        acc += ring * (rule.radial_weights[i] * rule.angle_weight / std::numbers::pi);
    }
    return acc;
}

}  // namespace cohop

#endif

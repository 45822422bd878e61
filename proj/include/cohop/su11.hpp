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

#ifndef COHOP_SU11_HPP
#define COHOP_SU11_HPP

// Generalized coherent operators V(z) = exp(z K+ - conj(z) K-) in the spin-K
// discrete-series representation of su(1,1).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "cohop/error.hpp"
#include "cohop/fock.hpp"
#include "cohop/quadrature.hpp"
#include "cohop/special.hpp"

namespace cohop {

/// The images of z under zeta = tanh|z| z/|z|, kappa = sinh|z| z/|z| and
/// chi = tanh|z| z/|z| (chi and zeta coincide).
struct DiskMap {
    Complex zeta;
    Complex kappa;
    Complex chi;
};

inline DiskMap map_z(Complex z) {
    double r = std::abs(z);
    if (r == 0) {
        return {};
    }
    Complex unit = z / r;
    Complex zeta = std::tanh(r) * unit;
    return {zeta, std::sinh(r) * unit, zeta};
}

/// The 2x2 Weyl basis k+, k-, k3 with (k+)^dagger = -k-.
struct DefiningRep {
    Eigen::Matrix2cd k_plus;
    Eigen::Matrix2cd k_minus;
    Eigen::Matrix2cd k3;
};

inline DefiningRep defining_rep() {
    DefiningRep rep;
    rep.k_plus << 0, 1, 0, 0;
    rep.k_minus << 0, 0, -1, 0;
    rep.k3 << 0.5, 0, 0, -0.5;
    return rep;
}

inline void require_positive_spin(double two_k) {
    if (!(two_k > 0)) {
        throw Error(ErrorKind::invalid_spin, "2K must be positive");
    }
}

inline void require_spin_at_least_one(double two_k) {
    if (!(two_k >= 1)) {
        throw Error(ErrorKind::invalid_spin, "this closed form needs 2K >= 1");
    }
}

/// <K,n|zeta> = (1-|zeta|^2)^K sqrt((2K)_n / n!) zeta^n.
inline Complex perelomov_coefficient(double two_k, int n, Complex zeta) {
    require_positive_spin(two_k);
    double rho = std::abs(zeta);
    if (!(rho < 1)) {
        throw Error(ErrorKind::out_of_range, "zeta must lie in the open unit disk");
    }
    if (rho == 0) {
        return n == 0 ? 1.0 : 0.0;
    }
    double log_mag = 0.5 * two_k * std::log1p(-rho * rho) +
                     0.5 * (log_pochhammer(two_k, n) - std::lgamma(n + 1.0)) + n * std::log(rho);
    return std::polar(std::exp(log_mag), n * std::arg(zeta));
}

struct PerelomovState {
    Complex zeta;
    ComplexVector amplitudes;
    /// Bound on the probability the untruncated state carries on n >= N.
    double tail_bound = 0;
};

inline constexpr double kPerelomovTailLimit = 1e-10;

/// Geometric bound on sum_{n >= N} |<K,n|zeta>|^2.
inline double perelomov_tail_bound(double two_k, double rho, int cutoff) {
    if (rho == 0) {
        return 0;
    }
    double head = std::norm(perelomov_coefficient(two_k, cutoff, rho));
    double ratio = rho * rho * std::max(1.0, (two_k + cutoff) / (cutoff + 1.0));
    if (ratio >= 1) {
        return std::numeric_limits<double>::infinity();
    }
    return head / (1 - ratio);
}

inline PerelomovState perelomov_state(const TruncatedSpace &space, Complex zeta) {
    require_kind(space, SpaceKind::spin_k);
    double two_k = space.spin()->two_k();
    PerelomovState out{zeta, ComplexVector(space.dim()), 0};
    double rho = std::abs(zeta);
    if (!(rho < 1)) {
        throw Error(ErrorKind::out_of_range, "zeta must lie in the open unit disk");
    }
    out.tail_bound = perelomov_tail_bound(two_k, rho, space.dim());
    if (out.tail_bound > kPerelomovTailLimit) {
        throw Error(ErrorKind::amplitude_too_large, "|zeta| is too close to 1 for this cutoff");
    }
    for (int n = 0; n < space.dim(); ++n) {
        out.amplitudes(n) = perelomov_coefficient(two_k, n, zeta);
    }
    return out;
}

inline ComplexMatrix su11_generator(const SpinGenerators &gens, Complex z) {
    return z * gens.k_plus - std::conj(z) * gens.k_minus;
}

/// exp(z K+ - conj(z) K-) |K,0>.
inline ComplexVector generalized_coherent_state(const TruncatedSpace &space, Complex z) {
    require_kind(space, SpaceKind::spin_k);
    double two_k = space.spin()->two_k();
    if (perelomov_tail_bound(two_k, std::tanh(std::abs(z)), space.dim()) > kPerelomovTailLimit) {
        throw Error(ErrorKind::amplitude_too_large, "|z| is too large for this cutoff");
    }
    return exp_antihermitian(su11_generator(build_spin_k(space), z)).matrix.col(0);
}

inline UnitaryResult v_operator(const TruncatedSpace &space, Complex z) {
    require_kind(space, SpaceKind::spin_k);
    return exp_antihermitian(su11_generator(build_spin_k(space), z));
}

inline constexpr double kDefaultEnvelope = 1.5;

struct DisentangleResult {
    /// || V - e^{zeta K+} e^{log(1-|zeta|^2) K3} e^{-conj(zeta) K-} || on the sector.
    double normal_order = 0;
    /// Same for e^{-conj(zeta) K-} e^{-log(1-|zeta|^2) K3} e^{zeta K+}. Its
    /// block involves a sum over all intermediate states with ratio
    /// sinh^2|z|, so it is only evaluated for sinh|z| < 1, and on at most the
    /// first kReversedOrderRank states (further in, the intermediate terms
    /// outgrow even the extended precision).
    std::optional<double> reversed_order;
};

inline constexpr int kReversedOrderRank = 16;

namespace detail {

/// A(j, m) = rho^{j-m} / (j-m)! sqrt((m+1)_{j-m} (2K+m)_{j-m}) for j >= m, the
/// modulus of <K,j|e^{zeta K+}|K,m>, for rows j < rows and columns m < cols.
inline std::vector<std::vector<ExtendedReal>> raising_moduli(double two_k, const ExtendedReal &rho, int rows, int cols) {
    std::vector<std::vector<ExtendedReal>> a(rows, std::vector<ExtendedReal>(cols, ExtendedReal(0)));
    ExtendedReal tk = two_k;
    for (int m = 0; m < cols && m < rows; ++m) {
        a[m][m] = 1;
        for (int j = m + 1; j < rows; ++j) {
            a[j][m] = a[j - 1][m] * rho / (j - m) * boost::multiprecision::sqrt(ExtendedReal(j) * (tk + j - 1));
        }
    }
    return a;
}

}  // namespace detail

/// Leading rank x rank block of the ordered product
///   normal:   e^{zeta K+} e^{log(1-|zeta|^2) K3} e^{-conj(zeta) K-}
///   reversed: e^{-conj(zeta) K-} e^{-log(1-|zeta|^2) K3} e^{zeta K+}
/// in the spin-K representation, from the closed-form matrix elements of the
/// triangular factors. The factors have entries far above 1 that cancel in
/// the product, so everything is carried in extended precision. The normal
/// product only involves intermediate states below the block; the reversed
/// one sums over all of them and is cut off once further terms drop below
/// 1e-30.
inline ComplexMatrix ordered_product_block(double two_k, Complex z, int rank, bool reversed) {
    require_positive_spin(two_k);
    double r = std::abs(z);
    double phi = r == 0 ? 0 : std::arg(z);
    ExtendedReal re = r;
    ExtendedReal rho = boost::multiprecision::tanh(re);
    // log(1 - rho^2) = -2 log cosh r
    ExtendedReal log_weight = -2 * boost::multiprecision::log(boost::multiprecision::cosh(re));
    ExtendedReal k = ExtendedReal(two_k) / 2;
    std::vector<std::vector<ExtendedReal>> sum(rank, std::vector<ExtendedReal>(rank, ExtendedReal(0)));

    if (!reversed) {
        auto a = detail::raising_moduli(two_k, rho, rank, rank);
        // <m|L|j> = zeta^{m-j} A(m,j); <j|U|n> = (-conj zeta)^{n-j} A(n,j).
        for (int j = 0; j < rank; ++j) {
            ExtendedReal d = boost::multiprecision::exp(log_weight * (k + j));
            for (int m = j; m < rank; ++m) {
                for (int n = j; n < rank; ++n) {
                    ExtendedReal t = a[m][j] * d * a[n][j];
                    sum[m][n] += (n - j) % 2 == 0 ? t : ExtendedReal(-t);
                }
            }
        }
    } else {
        if (!(std::sinh(r) < 1)) {
            throw Error(ErrorKind::divergent, "the reversed ordering only converges for sinh|z| < 1");
        }
        // <m|U|j> = (-conj zeta)^{j-m} A(j,m); <j|L|n> = zeta^{j-n} A(j,n).
        std::vector<ExtendedReal> row(rank, ExtendedReal(0));
        ExtendedReal tk = two_k;
        constexpr int kMaxTerms = 200000;
        int quiet = 0;
        for (int j = 0; j < kMaxTerms; ++j) {
            if (j < rank) {
                row[j] = 1;
            }
            for (int m = 0; m < rank && m < j; ++m) {
                row[m] *= rho / (j - m) * boost::multiprecision::sqrt(ExtendedReal(j) * (tk + j - 1));
            }
            ExtendedReal d = boost::multiprecision::exp(-log_weight * (k + j));
            ExtendedReal largest = 0;
            for (int m = 0; m < rank && m <= j; ++m) {
                for (int n = 0; n < rank && n <= j; ++n) {
                    ExtendedReal t = row[m] * d * row[n];
                    largest = std::max(largest, ExtendedReal(boost::multiprecision::abs(t)));
                    sum[m][n] += (j - m) % 2 == 0 ? t : ExtendedReal(-t);
                }
            }
            quiet = j >= rank && largest < 1e-30 ? quiet + 1 : 0;
            if (quiet >= 3) {
                break;
            }
            if (j + 1 == kMaxTerms) {
                throw Error(ErrorKind::not_converged, "reversed ordering did not converge");
            }
        }
    }
    ComplexMatrix out(rank, rank);
    for (int m = 0; m < rank; ++m) {
        for (int n = 0; n < rank; ++n) {
            out(m, n) = static_cast<double>(sum[m][n]) * std::polar(1.0, phi * (m - n));
        }
    }
    return out;
}

/// The same ordered product for the single-mode squeezer realization: the
/// even indices form the 2K = 1/2 ladder and the odd ones the 2K = 3/2 ladder.
inline ComplexMatrix squeezer_ordered_product_block(Complex z, int rank, bool reversed) {
    int even = (rank + 1) / 2;
    int odd = rank / 2;
    ComplexMatrix out = ComplexMatrix::Zero(rank, rank);
    ComplexMatrix e = ordered_product_block(0.5, z, even, reversed);
    for (int m = 0; m < even; ++m) {
        for (int n = 0; n < even; ++n) {
            out(2 * m, 2 * n) = e(m, n);
        }
    }
    if (odd > 0) {
        ComplexMatrix o = ordered_product_block(1.5, z, odd, reversed);
        for (int m = 0; m < odd; ++m) {
            for (int n = 0; n < odd; ++n) {
                out(2 * m + 1, 2 * n + 1) = o(m, n);
            }
        }
    }
    return out;
}

/// Disentangling residuals on the leading sector. A spin-K space uses the
/// generators of that representation; a single-mode space uses the squeezer
/// realization K+ = (a^dagger)^2 / 2.
inline DisentangleResult disentangle_residual(
    const TruncatedSpace &space, Complex z, const SafeSector &sector, double envelope = kDefaultEnvelope) {
    if (std::abs(z) > envelope) {
        throw Error(ErrorKind::amplitude_too_large, "|z| exceeds the disentangling envelope");
    }
    int rank = sector.rank();
    if (rank > space.dim()) {
        throw Error(ErrorKind::rank_too_large, "sector larger than the space");
    }
    bool squeezer = space.kind() == SpaceKind::single_mode;
    if (!squeezer) {
        require_kind(space, SpaceKind::spin_k);
    }
    SpinGenerators gens = squeezer ? SpinGenerators{} : build_spin_k(space);
    if (squeezer) {
        Ladder ladder = build_ladder(space);
        gens.k_plus = 0.5 * ladder.a_dagger * ladder.a_dagger;
        gens.k_minus = gens.k_plus.adjoint();
    }
    ComplexMatrix v = exp_antihermitian(su11_generator(gens, z)).matrix.topLeftCorner(rank, rank);
    ComplexMatrix normal = squeezer ? squeezer_ordered_product_block(z, rank, false)
                                    : ordered_product_block(space.spin()->two_k(), z, rank, false);
    DisentangleResult out;
    out.normal_order = op_norm(v - normal);
    if (std::sinh(std::abs(z)) < 1) {
        int small = std::min(rank, kReversedOrderRank);
        ComplexMatrix rev = squeezer ? squeezer_ordered_product_block(z, small, true)
                                     : ordered_product_block(space.spin()->two_k(), z, small, true);
        out.reversed_order = op_norm(v.topLeftCorner(small, small) - rev);
    }
    return out;
}

/// <K,n|V(z)|K,m> from the double closed form with kappa = sinh|z| z/|z|.
/// Factorials (2K-1+p)!/(2K-1)! are read as the Pochhammer symbol (2K)_p, so
/// non-integer 2K is covered. The alternating sum is accumulated in extended
/// precision with terms generated by their exact ratio.
inline Complex v_element_closed(double two_k, int n, int m, Complex z) {
    require_positive_spin(two_k);
    if (n < 0 || m < 0) {
        throw Error(ErrorKind::invalid_argument, "basis indices must be non-negative");
    }
    double r = std::abs(z);
    if (r == 0) {
        return n == m ? 1.0 : 0.0;
    }
    int lo = std::min(n, m);
    int hi = std::max(n, m);
    int d = hi - lo;
    double kappa_abs = std::sinh(r);
    double log_k2 = 2 * std::log(kappa_abs);
    // log(1 + |kappa|^2) = 2 log cosh r
    double log_1pk2 = 2 * detail::log_cosh(r);

    // Prefactor times the j = lo term of the sum:
    // sqrt(hi! (2K)_hi / (lo! (2K)_lo)) / d! * (1+|kappa|^2)^{-K-d/2} |kappa|^d.
    double log_pref = 0.5 * (std::lgamma(hi + 1.0) + log_pochhammer(two_k, hi) - std::lgamma(lo + 1.0) -
                             log_pochhammer(two_k, lo)) -
                      std::lgamma(d + 1.0) - (0.5 * two_k + 0.5 * d) * log_1pk2 + 0.5 * d * log_k2;

    // T_{j-1} / T_j = -(2K + hi + lo - j) j / ((hi - j + 1)(lo - j + 1)) * |kappa|^2 / (1 + |kappa|^2)
    ExtendedReal q = boost::multiprecision::exp(ExtendedReal(log_k2 - log_1pk2));
    ExtendedReal term = 1;
    ExtendedReal acc = 1;
    for (int j = lo; j >= 1; --j) {
        term *= -(ExtendedReal(two_k) + hi + lo - j) * j / ((hi - j + 1) * (lo - j + 1)) * q;
        acc += term;
    }
    ExtendedReal value = boost::multiprecision::exp(ExtendedReal(log_pref)) * acc;
    Complex unit = z / r;
    Complex phase = n <= m ? std::pow(-std::conj(unit), d) : std::pow(unit, d);
    return static_cast<double>(value) * phase;
}

/// Indices beyond this are outside the envelope in which the closed form was
/// validated against exponentiated matrices.
inline constexpr int kVElementEnvelope = 40;

inline bool v_element_in_envelope(int n, int m) {
    return n <= kVElementEnvelope && m <= kVElementEnvelope;
}

inline void require_nonzero_amplitude(Complex z) {
    if (z == Complex{}) {
        throw Error(ErrorKind::divergent, "Tr V(z) diverges at z = 0");
    }
}

/// (1+|chi|)/(2|chi|) ((1-|chi|)/(1+|chi|))^K with |chi| = tanh|z|.
inline double trace_v_closed(double two_k, Complex z) {
    require_spin_at_least_one(two_k);
    require_nonzero_amplitude(z);
    double chi = std::tanh(std::abs(z));
    return (1 + chi) / (2 * chi) * std::pow((1 - chi) / (1 + chi), 0.5 * two_k);
}

/// sum_n e^{-2|z|(K+n)} = e^{-2|z|K} / (1 - e^{-2|z|}).
inline double trace_v_geometric(double two_k, Complex z) {
    require_spin_at_least_one(two_k);
    require_nonzero_amplitude(z);
    double r = std::abs(z);
    return std::exp(-r * two_k) / -std::expm1(-2 * r);
}

/// sum_{n <= n_max} <K,n|V(z)|K,n> from the closed form.
inline double diagonal_partial_sum(double two_k, Complex z, int n_max) {
    double acc = 0;
    for (int n = 0; n <= n_max; ++n) {
        acc += v_element_closed(two_k, n, n, z).real();
    }
    return acc;
}

namespace detail {

/// sum_n t^n P_n^{(0, beta)}(x) by forward Jacobi recurrence, summed until
/// t^n < 1e-26.
inline double abel_jacobi_sum(double beta, double x, double t) {
    double prev = 1;
    double cur = 1 + (beta + 2) * (x - 1) / 2;
    double acc = prev + t * cur;
    double power = t;
    int n_max = static_cast<int>(std::ceil(60 / (1 - t))) + 2;
    for (int n = 2; n <= n_max; ++n) {
        double c = 2 * n + beta;
        double next = ((c - 1) * (c * (c - 2) * x - beta * beta) * cur - 2 * (n - 1) * (n + beta - 1) * c * prev) /
                      (2 * n * (n + beta) * (c - 2));
        prev = cur;
        cur = next;
        power *= t;
        acc += power * cur;
    }
    return acc;
}

}  // namespace detail

struct TraceVNumeric {
    /// Abel-regularized sum of the diagonal, extrapolated to t -> 1.
    double value = 0;
    /// Difference between the last two Richardson columns.
    double error_estimate = 0;
    /// Plain partial sum of diagonal closed-form elements n <= n_max.
    double partial_sum = 0;
    int n_max = 0;
};

/// Tr V(z) summed from the diagonal. The diagonal elements are
/// sech^{2K}|z| P_n^{(0,2K-1)}(1 - 2 tanh^2|z|): they oscillate and decay only
/// like n^{-1/2}, so plain partial sums do not settle. The series is summed
/// as lim_{t->1} sum_n t^n <K,n|V|K,n>, with the limit taken by Richardson
/// extrapolation in h = 1 - t (the Abel sum is analytic at t = 1).
inline TraceVNumeric trace_v_numeric(double two_k, Complex z, int n_max = 60, double rel_tol = 1e-9) {
    require_spin_at_least_one(two_k);
    require_nonzero_amplitude(z);
    double r = std::abs(z);
    double th = std::tanh(r);
    double x = 1 - 2 * th * th;
    double pref = std::exp(-two_k * detail::log_cosh(r));
    constexpr int kLevels = 8;
    std::vector<std::vector<double>> table(kLevels);
    for (int k = 0; k < kLevels; ++k) {
        double h = 0.25 / std::pow(2.0, k);
        table[k].push_back(pref * detail::abel_jacobi_sum(two_k - 1, x, 1 - h));
        for (int j = 1; j <= k; ++j) {
            double factor = std::pow(2.0, j) - 1;
            table[k].push_back(table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / factor);
        }
    }
    TraceVNumeric out;
    out.value = table[kLevels - 1][kLevels - 1];
    out.error_estimate = std::abs(out.value - table[kLevels - 1][kLevels - 2]);
    out.partial_sum = diagonal_partial_sum(two_k, z, n_max);
    out.n_max = n_max;
    if (out.error_estimate > rel_tol * std::abs(out.value)) {
        throw Error(ErrorKind::not_converged, "Abel extrapolation of the diagonal did not settle");
    }
    return out;
}

struct DecompositionResult {
    /// max over m, n <= n_max of |(e^X e^{-2|z|K3} e^{-X})_mn - V_mn|.
    double residual = 0;
    int cutoff = 0;
    /// Intermediate states j = 0..terms-1 kept in the sum over e^{-2|z|(K+j)}.
    int terms = 0;
    /// Whether the e^{+-X} series reached tolerance before the truncation boundary.
    bool series_complete = true;
};

namespace detail {

/// Columns 0..cols-1, rows 0..rows-1 of exp(sign * X0) where X0 is the real
/// symmetric tridiagonal matrix (pi/4)(K+ + K-) of the spin-K representation
/// with `cutoff` states. Summed as a Taylor series on basis vectors in
/// extended precision and stopped before any path can reach the truncation
/// boundary, like leading_block_series. Convergence is judged on rows scaled
/// by e^{-decay i}, the share of the weight each column picks up.
inline std::vector<std::vector<ExtendedReal>> boost_columns(
    double two_k, int cutoff, int rows, int cols, int sign, double decay, bool &complete) {
    ExtendedReal quarter_pi = boost::math::constants::pi<ExtendedReal>() / 4;
    std::vector<ExtendedReal> off(cutoff);
    for (int i = 0; i + 1 < cutoff; ++i) {
        off[i] = sign * quarter_pi * boost::multiprecision::sqrt(ExtendedReal(i + 1) * (ExtendedReal(two_k) + i));
    }
    const ExtendedReal tol("1e-30");
    std::vector<ExtendedReal> scale(rows);
    for (int i = 0; i < rows; ++i) {
        scale[i] = boost::multiprecision::exp(ExtendedReal(-decay) * i);
    }
    std::vector<std::vector<ExtendedReal>> out(cols, std::vector<ExtendedReal>(rows));
    for (int c = 0; c < cols; ++c) {
        std::vector<ExtendedReal> term(cutoff, ExtendedReal(0));
        std::vector<ExtendedReal> next(cutoff, ExtendedReal(0));
        term[c] = 1;
        std::vector<ExtendedReal> sum = term;
        int lo = c;
        int hi = c;
        int quiet = 0;
        for (int k = 1;; ++k) {
            if ((rows - 1 + c + k) / 2 > cutoff - 1) {
                complete = false;
                break;
            }
            int nlo = std::max(0, lo - 1);
            int nhi = std::min(cutoff - 1, hi + 1);
            ExtendedReal head = 0;
            ExtendedReal total = 1;
            for (int i = nlo; i <= nhi; ++i) {
                ExtendedReal acc = 0;
                if (i > 0 && i - 1 >= lo) {
                    acc += off[i - 1] * term[i - 1];
                }
                if (i + 1 <= hi) {
                    acc += off[i] * term[i + 1];
                }
                next[i] = acc / k;
            }
            for (int i = nlo; i <= nhi; ++i) {
                term[i] = next[i];
                sum[i] += term[i];
                if (i < rows) {
                    head = std::max(head, ExtendedReal(boost::multiprecision::abs(term[i]) * scale[i]));
                    total = std::max(total, ExtendedReal(boost::multiprecision::abs(sum[i]) * scale[i]));
                }
            }
            lo = nlo;
            hi = nhi;
            quiet = head <= tol * total ? quiet + 1 : 0;
            if (k >= cols && quiet >= 3) {
                break;
            }
        }
        for (int i = 0; i < rows; ++i) {
            out[c][i] = sum[i];
        }
    }
    return out;
}

}  // namespace detail

/// Checks V(z) = e^X e^{-2|z|K3} e^{-X}, X = (pi/4)(e^{i theta} K+ + e^{-i theta} K-).
/// X is Hermitian and unbounded, so the exponential of its truncation says
/// nothing about e^X. With P = diag(e^{i theta n}), X = P X0 P^dagger for the
/// real matrix X0 = (pi/4)(K+ + K-); the needed columns of e^{+-X0} are summed
/// as series that never reach the truncation boundary, and the sum over
/// intermediate states j < cutoff/2 is formed in extended precision (its
/// terms alternate and exceed the result by many orders of magnitude). The
/// result is compared element-wise to V from the same truncated space.
inline DecompositionResult decomposition_residual(double two_k, Complex z, int cutoff, int n_max = 10) {
    require_positive_spin(two_k);
    if (z == Complex{}) {
        throw Error(ErrorKind::invalid_argument, "the decomposition needs z != 0");
    }
    TruncatedSpace space = spin_k_space(two_k, cutoff);
    if (2 * (n_max + 1) > cutoff) {
        throw Error(ErrorKind::rank_too_large, "element range needs cutoff >= 2 (n_max + 1)");
    }
    double r = std::abs(z);
    double theta = std::arg(z);
    int cols = n_max + 1;
    int rows = cutoff / 2;
    bool complete = true;
    auto plus = detail::boost_columns(two_k, cutoff, rows, cols, 1, r, complete);
    auto minus = detail::boost_columns(two_k, cutoff, rows, cols, -1, r, complete);
    ComplexMatrix v = exp_antihermitian(su11_generator(build_spin_k(space), z)).matrix;

    std::vector<ExtendedReal> weight(rows);
    for (int j = 0; j < rows; ++j) {
        weight[j] = boost::multiprecision::exp(ExtendedReal(-2 * r) * (ExtendedReal(two_k) / 2 + j));
    }
    DecompositionResult out;
    for (int m = 0; m < cols; ++m) {
        for (int n = 0; n < cols; ++n) {
            ExtendedReal acc = 0;
            for (int j = 0; j < rows; ++j) {
                acc += plus[m][j] * weight[j] * minus[n][j];
            }
            Complex rhs = static_cast<double>(acc) * std::polar(1.0, theta * (m - n));
            out.residual = std::max(out.residual, std::abs(rhs - v(m, n)));
        }
    }
    out.cutoff = cutoff;
    out.terms = rows;
    out.series_complete = complete;
    return out;
}

/// Hyperbolic measure in z coordinates: ((2K-1)/pi) sinh|z| cosh|z| d|z| dtheta.
/// V(s e^{i theta})_{nm} = e^{i theta (n-m)} V(s)_{nm}, so the radial closed
/// forms are computed once per ring.
inline ComplexMatrix glauber_su11_reconstruct(
    const ComplexMatrix &a, const TruncatedSpace &space, const DiskGrid &grid, const SafeSector &sector) {
    require_kind(space, SpaceKind::spin_k);
    double two_k = space.spin()->two_k();
    require_nondegenerate_weight(two_k);
    validate(grid);
    int rank = sector.rank();
    if (rank > space.dim()) {
        throw Error(ErrorKind::rank_too_large, "sector larger than the space");
    }
    if (a.rows() != space.dim() || a.cols() != space.dim()) {
        throw Error(ErrorKind::invalid_argument, "operator does not live on this space");
    }
    ComplexMatrix outside = a;
    outside.topLeftCorner(rank, rank).setZero();
    if (outside.cwiseAbs().maxCoeff() != 0) {
        throw Error(ErrorKind::invalid_argument, "operator must be supported inside the sector");
    }
    ComplexMatrix a_block = a.topLeftCorner(rank, rank);

    PolarRule rule = hyperbolic_rule(grid);
    ComplexMatrix acc = ComplexMatrix::Zero(rank, rank);
    ComplexMatrix radial(rank, rank);
    for (size_t i = 0; i < rule.radii.size(); ++i) {
        double s = rule.radii[i];
        for (int n = 0; n < rank; ++n) {
            for (int m = 0; m < rank; ++m) {
                radial(n, m) = v_element_closed(two_k, n, m, s);
            }
        }
        ComplexMatrix ring = ComplexMatrix::Zero(rank, rank);
        for (double theta : rule.angles) {
            ComplexMatrix v = radial;
            for (int n = 0; n < rank; ++n) {
                for (int m = 0; m < rank; ++m) {
                    v(n, m) *= std::polar(1.0, theta * (n - m));
                }
            }
            Complex trace = a_block.cwiseProduct(v.conjugate()).sum();
            ring += trace * v;
        }
        acc += ring * (rule.radial_weights[i] * rule.angle_weight * (two_k - 1) / std::numbers::pi);
    }
    return acc;
}

/// Leading rank x rank block of ((2K-1)/pi) int_D d^2zeta/(1-|zeta|^2)^2 |zeta><zeta|.
inline ComplexMatrix resolution_identity_su11(const TruncatedSpace &space, const DiskGrid &grid, int rank) {
    require_kind(space, SpaceKind::spin_k);
    double two_k = space.spin()->two_k();
    require_nondegenerate_weight(two_k);
    if (rank < 1 || rank > space.dim()) {
        throw Error(ErrorKind::rank_too_large, "rank must lie in [1, cutoff]");
    }
    PolarRule rule = hyperbolic_rule(grid);
    ComplexMatrix acc = ComplexMatrix::Zero(rank, rank);
    ComplexVector head(rank);
    for (size_t i = 0; i < rule.radii.size(); ++i) {
        double s = rule.radii[i];
        // (1 - tanh^2 s)^K = cosh^{-2K} s, evaluated without cancellation.
        double log_weight = -two_k * detail::log_cosh(s);
        double log_rho = std::log(std::tanh(s));
        ComplexMatrix ring = ComplexMatrix::Zero(rank, rank);
        for (double theta : rule.angles) {
            for (int n = 0; n < rank; ++n) {
                double log_mag =
                    log_weight + 0.5 * (log_pochhammer(two_k, n) - std::lgamma(n + 1.0)) + n * log_rho;
                head(n) = std::polar(std::exp(log_mag), n * theta);
            }
            ring += head * head.adjoint();
        }
        acc += ring * (rule.radial_weights[i] * rule.angle_weight * (two_k - 1) / std::numbers::pi);
    }
    return acc;
}

}  // namespace cohop

#endif

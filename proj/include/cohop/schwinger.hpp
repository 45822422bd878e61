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

#ifndef COHOP_SCHWINGER_HPP
#define COHOP_SCHWINGER_HPP

// Boson realizations of su(1,1) and su(2): the single-mode squeezer and the
// two-mode operators, plus the beam-splitter rotation relating them.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cohop/error.hpp"
#include "cohop/fock.hpp"
#include "cohop/su11.hpp"

namespace cohop {

/// K+ = (a^dagger)^2 / 2, K- = a^2 / 2, K3 = (a^dagger a + 1/2) / 2. Even
/// indices carry spin K = 1/4 and odd indices K = 3/4.
inline SpinGenerators single_mode_su11(const TruncatedSpace &space) {
    Ladder ladder = build_ladder(space);
    int n = space.dim();
    SpinGenerators out;
    out.k_plus = 0.5 * ladder.a_dagger * ladder.a_dagger;
    out.k_minus = out.k_plus.adjoint();
    out.k3 = 0.5 * (ladder.number + 0.5 * ComplexMatrix::Identity(n, n));
    return out;
}

/// Indices of one parity sector: start, start + 2, ...
inline std::vector<int> parity_indices(int dim, int parity) {
    std::vector<int> out;
    for (int k = parity; k < dim; k += 2) {
        out.push_back(k);
    }
    return out;
}

inline void require_envelope(Complex z, double envelope) {
    if (std::abs(z) > envelope) {
        throw Error(ErrorKind::amplitude_too_large, "|z| exceeds the envelope " + std::to_string(envelope));
    }
}

/// S(z) = exp((z (a^dagger)^2 - conj(z) a^2) / 2).
inline UnitaryResult squeeze(const TruncatedSpace &space, Complex z, double envelope = kDefaultEnvelope) {
    require_envelope(z, envelope);
    return exp_antihermitian(su11_generator(single_mode_su11(space), z));
}

struct TwoModeOperators {
    ComplexMatrix a1, a1_dagger, a2, a2_dagger;
    ComplexMatrix j_plus, j_minus, j3;
    ComplexMatrix k_plus, k_minus, k3;
};

inline TwoModeOperators two_mode_operators(const TruncatedSpace &space) {
    require_kind(space, SpaceKind::two_mode);
    int m = space.per_mode_cutoff();
    Ladder one = build_ladder(single_mode_space(m));
    ComplexMatrix id = ComplexMatrix::Identity(m, m);
    ComplexMatrix big_id = ComplexMatrix::Identity(m * m, m * m);
    TwoModeOperators out;
    out.a1 = tensor_product(one.a, id);
    out.a1_dagger = tensor_product(one.a_dagger, id);
    out.a2 = tensor_product(id, one.a);
    out.a2_dagger = tensor_product(id, one.a_dagger);
    ComplexMatrix n1 = tensor_product(one.number, id);
    ComplexMatrix n2 = tensor_product(id, one.number);
    out.j_plus = tensor_product(one.a_dagger, one.a);
    out.j_minus = tensor_product(one.a, one.a_dagger);
    out.j3 = 0.5 * (n1 - n2);
    out.k_plus = tensor_product(one.a_dagger, one.a_dagger);
    out.k_minus = tensor_product(one.a, one.a);
    out.k3 = 0.5 * (n1 + n2 + big_id);
    return out;
}

/// exp(z K+ - conj(z) K-) with K+ = a1^dagger a2^dagger.
inline UnitaryResult two_mode_v(const TruncatedSpace &space, Complex z, double envelope = kDefaultEnvelope) {
    require_kind(space, SpaceKind::two_mode);
    require_envelope(z, envelope);
    Ladder one = build_ladder(single_mode_space(space.per_mode_cutoff()));
    return exp_antihermitian(
        z * tensor_product(one.a_dagger, one.a_dagger) - std::conj(z) * tensor_product(one.a, one.a));
}

/// exp(z J+ - conj(z) J-) with J+ = a1^dagger a2.
inline UnitaryResult two_mode_w(const TruncatedSpace &space, Complex z, double envelope = kDefaultEnvelope) {
    require_kind(space, SpaceKind::two_mode);
    require_envelope(z, envelope);
    Ladder one = build_ladder(single_mode_space(space.per_mode_cutoff()));
    return exp_antihermitian(
        z * tensor_product(one.a_dagger, one.a) - std::conj(z) * tensor_product(one.a, one.a_dagger));
}

/// Row-major two-mode indices n1 * per_mode + n2 with n1 + n2 <= q_max,
/// ordered by total quanta.
inline std::vector<int> total_quanta_indices(int per_mode, int q_max) {
    std::vector<int> out;
    for (int q = 0; q <= q_max; ++q) {
        for (int n1 = q; n1 >= 0; --n1) {
            int n2 = q - n1;
            if (n1 < per_mode && n2 < per_mode) {
                out.push_back(n1 * per_mode + n2);
            }
        }
    }
    return out;
}

/// Indices with |n1 - n2| <= d_max, ordered by index.
inline std::vector<int> difference_band_indices(int per_mode, int d_max) {
    std::vector<int> out;
    for (int n1 = 0; n1 < per_mode; ++n1) {
        for (int n2 = 0; n2 < per_mode; ++n2) {
            if (std::abs(n1 - n2) <= d_max) {
                out.push_back(n1 * per_mode + n2);
            }
        }
    }
    return out;
}

/// (A tensor B) restricted to rows and columns in `indices`.
inline ComplexMatrix tensor_product_on_indices(
    const ComplexMatrix &a, const ComplexMatrix &b, const std::vector<int> &indices) {
    int m = static_cast<int>(b.rows());
    int k = static_cast<int>(indices.size());
    ComplexMatrix out(k, k);
    for (int r = 0; r < k; ++r) {
        int i1 = indices[r] / m;
        int i2 = indices[r] % m;
        for (int c = 0; c < k; ++c) {
            out(r, c) = a(i1, indices[c] / m) * b(i2, indices[c] % m);
        }
    }
    return out;
}

struct ParisResult {
    /// Operator norm of W(-pi/4) S1(z) S2(-z) W(-pi/4)^{-1} - V(z) on the sector.
    double residual = 0;
    /// <0,0| left side |0,0>.
    Complex vacuum_lhs;
    /// <0,0| V(z) |0,0>.
    Complex vacuum_rhs;
    int per_mode_cutoff = 0;
    int squeezer_cutoff = 0;
    int sector_dim = 0;
};

inline constexpr int kDefaultTotalQuanta = 12;

/// Residual of the rotation formula W(-pi/4) S1(z) S2(-z) W(-pi/4)^{-1} = V(z)
/// on the sector n1 + n2 <= q_max.
///
/// W conserves n1 + n2, so on that sector the left side is exactly
/// W_PP (S1 tensor S2)_PP W_PP^dagger and only sector blocks are formed. V
/// conserves n1 - n2; it is exponentiated on the band |n1 - n2| <= q_max at
/// the given per-mode cutoff. The squeezers are taken as the leading
/// per-mode block of S on a single-mode space of `squeezer_cutoff` states
/// (0 means the per-mode cutoff itself). A squeezer truncated at the
/// per-mode cutoff keeps only half as many states in each parity ladder,
/// and that error dominates near |z| = 1.
inline ParisResult paris_residual(
    int per_mode, Complex z, int q_max = kDefaultTotalQuanta, int squeezer_cutoff = kDefaultCutoff) {
    if (std::abs(z) > 1) {
        throw Error(ErrorKind::amplitude_too_large, "the rotation formula is checked for |z| <= 1");
    }
    if (squeezer_cutoff == 0) {
        squeezer_cutoff = per_mode;
    }
    if (squeezer_cutoff < per_mode) {
        throw Error(ErrorKind::invalid_cutoff, "squeezer cutoff must be at least the per-mode cutoff");
    }
    TruncatedSpace two = two_mode_space(per_mode);
    if (2 * q_max > per_mode) {
        throw Error(ErrorKind::rank_too_large, "total-quanta sector needs q_max <= per_mode_cutoff / 2");
    }
    std::vector<int> sector = total_quanta_indices(per_mode, q_max);
    int k = static_cast<int>(sector.size());

    TruncatedSpace single = single_mode_space(squeezer_cutoff);
    ComplexMatrix s1 = squeeze(single, z, 1.0).matrix.topLeftCorner(per_mode, per_mode);
    ComplexMatrix s2 = squeeze(single, -z, 1.0).matrix.topLeftCorner(per_mode, per_mode);
    ComplexMatrix s_pp = tensor_product_on_indices(s1, s2, sector);

    Ladder one = build_ladder(single_mode_space(per_mode));
    double theta = -std::numbers::pi / 4;
    ComplexMatrix gw = theta * (tensor_product_on_indices(one.a_dagger, one.a, sector) -
                                tensor_product_on_indices(one.a, one.a_dagger, sector));
    ComplexMatrix w_pp = exp_antihermitian(gw).matrix;
    ComplexMatrix lhs = w_pp * s_pp * w_pp.adjoint();

    std::vector<int> band = difference_band_indices(per_mode, q_max);
    ComplexMatrix gv = z * tensor_product_on_indices(one.a_dagger, one.a_dagger, band) -
                       std::conj(z) * tensor_product_on_indices(one.a, one.a, band);
    ComplexMatrix v_band = exp_antihermitian(gv).matrix;
    std::vector<int> position(static_cast<size_t>(per_mode) * per_mode, -1);
    for (size_t i = 0; i < band.size(); ++i) {
        position[band[i]] = static_cast<int>(i);
    }
    ComplexMatrix v_pp(k, k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            v_pp(r, c) = v_band(position[sector[r]], position[sector[c]]);
        }
    }

    ParisResult out;
    out.residual = op_norm(lhs - v_pp);
    out.vacuum_lhs = lhs(0, 0);
    out.vacuum_rhs = v_pp(0, 0);
    out.per_mode_cutoff = two.per_mode_cutoff();
    out.squeezer_cutoff = squeezer_cutoff;
    out.sector_dim = k;
    return out;
}

}  // namespace cohop

#endif

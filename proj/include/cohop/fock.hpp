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

#ifndef COHOP_FOCK_HPP
#define COHOP_FOCK_HPP

// Truncated Fock spaces, generator matrices and the two matrix exponentials
// the rest of the library is built on.
//
// Operator identities that hold on the infinite-dimensional space only hold
// approximately after truncation: the ladder matrices break the canonical
// commutators at index N-1. Identities are therefore compared on a leading
// "safe sector" block, well away from the cutoff.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cohop/error.hpp"

namespace cohop {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kDefaultCutoff = 256;
inline constexpr int kDefaultPerModeCutoff = 48;

/// The real weight 2K labelling an su(1,1) discrete-series representation.
class SpinWeight {
   public:
    explicit SpinWeight(double two_k) : two_k_(two_k) {
        if (!std::isfinite(two_k) || two_k <= 0) {
            throw Error(ErrorKind::invalid_spin, "2K must be positive, got " + std::to_string(two_k));
        }
    }

    double two_k() const {
        return two_k_;
    }
    double k() const {
        return two_k_ / 2;
    }

    bool operator==(const SpinWeight &) const = default;

   private:
    double two_k_;
};

enum class SpaceKind { single_mode, spin_k, two_mode };

inline const char *to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::single_mode:
            return "single-mode";
        case SpaceKind::spin_k:
            return "spin-K";
        case SpaceKind::two_mode:
            return "two-mode";
    }
    return "unknown";
}

class TruncatedSpace;
TruncatedSpace make_space(
    SpaceKind kind, int cutoff, std::optional<SpinWeight> spin = std::nullopt,
    std::optional<int> per_mode_cutoff = std::nullopt);

/// Finite orthonormal basis 0..N-1 standing in for a Fock space. Two-mode
/// spaces pair (n1, n2) to the row-major index n1 * per_mode_cutoff + n2.
class TruncatedSpace {
   public:
    SpaceKind kind() const {
        return kind_;
    }
    int cutoff() const {
        return cutoff_;
    }
    int dim() const {
        return cutoff_;
    }
    const std::optional<SpinWeight> &spin() const {
        return spin_;
    }
    int per_mode_cutoff() const {
        return per_mode_cutoff_;
    }

    int two_mode_index(int n1, int n2) const {
        return n1 * per_mode_cutoff_ + n2;
    }

    bool operator==(const TruncatedSpace &) const = default;

   private:
    friend TruncatedSpace make_space(SpaceKind, int, std::optional<SpinWeight>, std::optional<int>);
    TruncatedSpace(SpaceKind kind, int cutoff, std::optional<SpinWeight> spin, int per_mode_cutoff)
        : kind_(kind), cutoff_(cutoff), spin_(spin), per_mode_cutoff_(per_mode_cutoff) {}

    SpaceKind kind_;
    int cutoff_;
    std::optional<SpinWeight> spin_;
    int per_mode_cutoff_;
};

/// For two-mode spaces pass cutoff = 0 (or per_mode_cutoff squared).
inline TruncatedSpace make_space(
    SpaceKind kind, int cutoff, std::optional<SpinWeight> spin, std::optional<int> per_mode_cutoff) {
    if (kind == SpaceKind::spin_k && !spin) {
        throw Error(ErrorKind::missing_spin, "spin-K space needs a spin weight");
    }
    if (kind != SpaceKind::spin_k && spin) {
        throw Error(ErrorKind::invalid_argument, "spin weight given for a non spin-K space");
    }
    if (kind == SpaceKind::two_mode) {
        if (!per_mode_cutoff || *per_mode_cutoff < 2) {
            throw Error(ErrorKind::invalid_cutoff, "two-mode space needs per_mode_cutoff >= 2");
        }
        int total = *per_mode_cutoff * *per_mode_cutoff;
        if (cutoff != 0 && cutoff != total) {
            throw Error(ErrorKind::invalid_cutoff, "two-mode cutoff must equal per_mode_cutoff squared");
        }
        return TruncatedSpace(kind, total, std::nullopt, *per_mode_cutoff);
    }
    if (per_mode_cutoff) {
        throw Error(ErrorKind::invalid_argument, "per_mode_cutoff only applies to two-mode spaces");
    }
    if (cutoff < 4) {
        throw Error(ErrorKind::invalid_cutoff, "cutoff must be at least 4, got " + std::to_string(cutoff));
    }
    return TruncatedSpace(kind, cutoff, spin, 0);
}

inline TruncatedSpace single_mode_space(int cutoff = kDefaultCutoff) {
    return make_space(SpaceKind::single_mode, cutoff);
}

inline TruncatedSpace spin_k_space(double two_k, int cutoff = kDefaultCutoff) {
    return make_space(SpaceKind::spin_k, cutoff, SpinWeight(two_k));
}

inline TruncatedSpace two_mode_space(int per_mode_cutoff = kDefaultPerModeCutoff) {
    return make_space(SpaceKind::two_mode, 0, std::nullopt, per_mode_cutoff);
}

/// Projector onto basis indices 0..rank-1.
class SafeSector {
   public:
    explicit SafeSector(int rank) : rank_(rank) {
        if (rank < 1) {
            throw Error(ErrorKind::rank_too_large, "safe sector rank must be positive");
        }
    }
    int rank() const {
        return rank_;
    }

   private:
    int rank_;
};

inline SafeSector safe_sector(const TruncatedSpace &space, int rank) {
    if (rank > space.cutoff() / 2) {
        throw Error(
            ErrorKind::rank_too_large,
            "safe sector rank " + std::to_string(rank) + " exceeds cutoff/2 = " +
                std::to_string(space.cutoff() / 2));
    }
    return SafeSector(rank);
}

inline SafeSector default_safe_sector(const TruncatedSpace &space) {
    return SafeSector(std::max(1, space.cutoff() / 4));
}

struct UnitaryResult {
    ComplexMatrix matrix;
    /// Operator-norm distance of matrix^dagger * matrix from the identity.
    double unitarity_defect = 0;
};

struct Ladder {
    ComplexMatrix a;
    ComplexMatrix a_dagger;
    ComplexMatrix number;
};

struct SpinGenerators {
    ComplexMatrix k_plus;
    ComplexMatrix k_minus;
    ComplexMatrix k3;
};

inline void require_kind(const TruncatedSpace &space, SpaceKind kind) {
    if (space.kind() != kind) {
        throw Error(
            ErrorKind::wrong_space_kind,
            std::string("expected a ") + to_string(kind) + " space, got " + to_string(space.kind()));
    }
}

inline Ladder build_ladder(const TruncatedSpace &space) {
    require_kind(space, SpaceKind::single_mode);
    int n = space.dim();
    Ladder out{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    for (int k = 1; k < n; ++k) {
        out.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    out.a_dagger = out.a.adjoint();
    for (int k = 0; k < n; ++k) {
        out.number(k, k) = static_cast<double>(k);
    }
    return out;
}

inline SpinGenerators build_spin_k(const TruncatedSpace &space) {
    require_kind(space, SpaceKind::spin_k);
    int n = space.dim();
    double two_k = space.spin()->two_k();
    SpinGenerators out{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    for (int k = 0; k + 1 < n; ++k) {
        out.k_plus(k + 1, k) = std::sqrt((k + 1.0) * (two_k + k));
    }
    out.k_minus = out.k_plus.adjoint();
    for (int k = 0; k < n; ++k) {
        out.k3(k, k) = two_k / 2 + k;
    }
    return out;
}

/// Kronecker product, row-major pairing (i, j) -> i * B.rows() + j.
inline ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

/// Largest singular value for dims <= 512, Frobenius norm (an over-bound) above.
inline double op_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0;
    }
    if (std::max(m.rows(), m.cols()) <= 512) {
        Eigen::BDCSVD<ComplexMatrix> svd(m);
        return svd.singularValues()(0);
    }
    return m.norm();
}

inline ComplexMatrix project_safe(const ComplexMatrix &m, const SafeSector &sector) {
    if (sector.rank() > m.rows() || sector.rank() > m.cols()) {
        throw Error(ErrorKind::rank_too_large, "safe sector larger than the matrix");
    }
    return m.topLeftCorner(sector.rank(), sector.rank());
}

/// Rows and columns of m restricted to an arbitrary index set.
inline ComplexMatrix project_indices(const ComplexMatrix &m, const std::vector<int> &indices) {
    auto k = static_cast<Eigen::Index>(indices.size());
    ComplexMatrix out(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            out(i, j) = m(indices[i], indices[j]);
        }
    }
    return out;
}

/// (a*b) restricted to an index set without forming the full product.
inline ComplexMatrix product_on_indices(
    const ComplexMatrix &a, const ComplexMatrix &b, const std::vector<int> &indices) {
    auto k = static_cast<Eigen::Index>(indices.size());
    ComplexMatrix rows(k, a.cols());
    ComplexMatrix cols(b.rows(), k);
    for (Eigen::Index i = 0; i < k; ++i) {
        rows.row(i) = a.row(indices[i]);
        cols.col(i) = b.col(indices[i]);
    }
    return rows * cols;
}

namespace detail {

/// Groups basis indices into the connected components of the coupling graph
/// of g. exp(g) is block diagonal over these components.
inline std::vector<std::vector<int>> coupled_blocks(const ComplexMatrix &g) {
    int n = static_cast<int>(g.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (i != j && g(i, j) != Complex(0)) {
                int ri = find(i);
                int rj = find(j);
                if (ri != rj) {
                    parent[std::max(ri, rj)] = std::min(ri, rj);
                }
            }
        }
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(i);
    }
    return blocks;
}

inline int bandwidth(const ComplexMatrix &g) {
    int b = 0;
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            if (g(i, j) != Complex(0)) {
                b = std::max(b, static_cast<int>(std::abs(i - j)));
            }
        }
    }
    return b;
}

}  // namespace detail

/// exp(g) for anti-Hermitian g through the eigendecomposition of the Hermitian
/// matrix i*g, so the result is unitary to machine precision. Invariant
/// coordinate subspaces of g are exponentiated independently.
inline UnitaryResult exp_antihermitian(const ComplexMatrix &g) {
    if (g.rows() != g.cols()) {
        throw Error(ErrorKind::invalid_argument, "generator must be square");
    }
    double scale = g.norm();
    if ((g + g.adjoint()).norm() > 1e-12 * scale) {
        throw Error(ErrorKind::not_antihermitian, "generator is not anti-Hermitian");
    }
    int n = static_cast<int>(g.rows());
    UnitaryResult out{ComplexMatrix::Zero(n, n), 0.0};
    for (const auto &block : detail::coupled_blocks(g)) {
        auto k = static_cast<Eigen::Index>(block.size());
        if (k == 1) {
            // A lone diagonal entry of an anti-Hermitian matrix is purely imaginary.
            out.matrix(block[0], block[0]) = std::exp(Complex(0, g(block[0], block[0]).imag()));
            continue;
        }
        ComplexMatrix h(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                h(i, j) = Complex(0, 1) * g(block[i], block[j]);
            }
        }
        h = (0.5 * (h + h.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
        if (eig.info() != Eigen::Success) {
            throw Error(ErrorKind::not_converged, "Hermitian eigensolver failed");
        }
        const ComplexMatrix &q = eig.eigenvectors();
        ComplexVector phases = (eig.eigenvalues().cast<Complex>() * Complex(0, -1)).array().exp();
        ComplexMatrix u = q * phases.asDiagonal() * q.adjoint();
        ComplexMatrix defect = u.adjoint() * u - ComplexMatrix::Identity(k, k);
        out.unitarity_defect = std::max(out.unitarity_defect, op_norm(defect));
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                out.matrix(block[i], block[j]) = u(i, j);
            }
        }
    }
    return out;
}

/// exp(g) by scaling and squaring of a truncated Taylor series.
inline ComplexMatrix exp_general(const ComplexMatrix &g, double tol = 1e-15) {
    if (!(tol > 0)) {
        throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
    }
    if (g.rows() != g.cols()) {
        throw Error(ErrorKind::invalid_argument, "matrix must be square");
    }
    auto n = g.rows();
    double norm1 = g.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = norm1 > 0.5 ? static_cast<int>(std::ceil(std::log2(norm1 / 0.5))) : 0;
    ComplexMatrix scaled = g / std::ldexp(1.0, squarings);

    ComplexMatrix sum = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k < 64; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        sum += term;
        if (term.cwiseAbs().colwise().sum().maxCoeff() <= tol * sum.cwiseAbs().colwise().sum().maxCoeff()) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        sum = (sum * sum).eval();
        if (!sum.allFinite()) {
            throw Error(ErrorKind::overflow, "matrix exponential overflowed; reduce the cutoff or amplitude");
        }
    }
    if (!sum.allFinite()) {
        throw Error(ErrorKind::overflow, "matrix exponential overflowed; reduce the cutoff or amplitude");
    }
    return sum;
}

struct LeadingBlock {
    ComplexMatrix block;
    /// False when the series had to stop at the truncation boundary before
    /// reaching its tolerance.
    bool complete = true;
};

/// Leading rows x cols block of exp(g), summed as a Taylor series acting on
/// basis vectors. The series is stopped before any term can feel the
/// truncation boundary, so the block equals the block of the untruncated
/// operator's exponential (up to the series tolerance). Meant for unbounded
/// generators whose truncated exponential is meaningless.
inline LeadingBlock leading_block_series(const ComplexMatrix &g, int rows, int cols, double tol = 1e-17) {
    int n = static_cast<int>(g.rows());
    if (rows > n || cols > n || rows < 1 || cols < 1) {
        throw Error(ErrorKind::rank_too_large, "requested block does not fit the matrix");
    }
    int band = std::max(1, detail::bandwidth(g));
    LeadingBlock out{ComplexMatrix(rows, cols), true};
    for (int c = 0; c < cols; ++c) {
        ComplexVector term = ComplexVector::Zero(n);
        term(c) = 1;
        ComplexVector sum = term;
        int reach = c;
        int quiet = 0;
        int min_order = (rows + band - 1) / band + 1;
        for (int k = 1;; ++k) {
            // Paths of length k from c to any row < rows never climb above this index.
            if ((rows - 1 + c + k * band) / 2 > n - 1) {
                out.complete = false;
                break;
            }
            int next_reach = std::min(n - 1, reach + band);
            ComplexVector next = ComplexVector::Zero(n);
            for (int i = 0; i <= next_reach; ++i) {
                int lo = std::max(0, i - band);
                int hi = std::min(reach, i + band);
                Complex acc = 0;
                for (int j = lo; j <= hi; ++j) {
                    acc += g(i, j) * term(j);
                }
                next(i) = acc / static_cast<double>(k);
            }
            term.swap(next);
            reach = next_reach;
            sum += term;
            double head = term.head(rows).cwiseAbs().maxCoeff();
            double total = std::max(1.0, sum.head(rows).cwiseAbs().maxCoeff());
            quiet = head <= tol * total ? quiet + 1 : 0;
            if (k >= min_order && quiet >= 3) {
                break;
            }
        }
        out.block.col(c) = sum.head(rows);
    }
    return out;
}

inline ComplexMatrix exp_leading_block(const ComplexMatrix &g, int rows, int cols, double tol = 1e-17) {
    LeadingBlock out = leading_block_series(g, rows, cols, tol);
    if (!out.complete) {
        throw Error(ErrorKind::overflow, "series for exp reached the truncation boundary; increase the cutoff");
    }
    return out.block;
}

}  // namespace cohop

#endif

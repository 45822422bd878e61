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

#include "cohop/su11.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi.hpp>

#include "gtest/gtest.h"

using namespace cohop;

namespace {

// Diagonal elements as sech^{2K} r P_n^{(0,2K-1)}(1 - 2 tanh^2 r).
double oracle_v_diag(double two_k, int n, double r) {
    double th = std::tanh(r);
    return std::pow(std::cosh(r), -two_k) * boost::math::jacobi(static_cast<unsigned>(n), 0.0, two_k - 1, 1 - 2 * th * th);
}

// Tr e^{-2|z| K3} over the discrete series.
double oracle_trace(double two_k, double r) {
    return std::exp(-two_k * r) / (1 - std::exp(-2 * r));
}

}  // namespace

TEST(su11, disk_map) {
    DiskMap m = map_z(Complex(0, 1.5));
    ASSERT_NEAR(m.zeta.imag(), std::tanh(1.5), 1e-15);
    ASSERT_NEAR(m.kappa.imag(), std::sinh(1.5), 1e-14);
    ASSERT_EQ(m.zeta, m.chi);
    ASSERT_EQ(map_z(0).zeta, Complex(0));
}

TEST(su11, defining_rep_relations) {
    DefiningRep d = defining_rep();
    Eigen::Matrix2cd pm = d.k_plus * d.k_minus - d.k_minus * d.k_plus;
    Eigen::Matrix2cd p3 = d.k3 * d.k_plus - d.k_plus * d.k3;
    ASSERT_LT((pm + 2.0 * d.k3).norm(), 1e-15);
    ASSERT_LT((p3 - d.k_plus).norm(), 1e-15);
    ASSERT_LT((d.k_plus.adjoint() + d.k_minus).norm(), 1e-15);
}

TEST(su11, perelomov_state) {
    TruncatedSpace space = spin_k_space(2.5, 128);
    Complex z = std::polar(0.9, 0.4);
    PerelomovState p = perelomov_state(space, map_z(z).zeta);
    ASSERT_NEAR(p.amplitudes.norm(), 1, 1e-12);
    ASSERT_LT((generalized_coherent_state(space, z) - p.amplitudes).cwiseAbs().maxCoeff(), 1e-10);
    ASSERT_EQ(perelomov_coefficient(3, 0, 0), Complex(1));
    ASSERT_THROW(perelomov_coefficient(3, 0, 1.0), Error);
    ASSERT_THROW(perelomov_state(spin_k_space(1, 16), 0.99), Error);
}

TEST(su11, v_elements_match_matrix) {
    for (double two_k : {1.0, 2.0, 2.5, 0.5}) {
        TruncatedSpace space = spin_k_space(two_k, 256);
        for (Complex z : {std::polar(0.5, 0.3), Complex(0, 1), Complex(1.5, 0)}) {
            ComplexMatrix v = v_operator(space, z).matrix;
            for (int n = 0; n <= 12; ++n) {
                for (int m = 0; m <= 12; ++m) {
                    ASSERT_LT(std::abs(v_element_closed(two_k, n, m, z) - v(n, m)), 1e-8)
                        << two_k << " " << z << " " << n << "," << m;
                }
            }
        }
    }
}

TEST(su11, v_diagonal_matches_jacobi) {
    for (double two_k : {1.0, 3.0, 2.5}) {
        for (double r : {0.2, 1.0, 1.5}) {
            for (int n = 0; n <= 30; ++n) {
                ASSERT_NEAR(v_element_closed(two_k, n, n, r).real(), oracle_v_diag(two_k, n, r), 1e-12)
                    << two_k << " " << r << " " << n;
            }
        }
    }
}

TEST(su11, v_unitarity_symmetry) {
    Complex z = std::polar(1.1, 2.2);
    for (int n = 0; n <= 10; ++n) {
        for (int m = 0; m <= 10; ++m) {
            Complex a = v_element_closed(2.5, n, m, z);
            Complex b = std::conj(v_element_closed(2.5, m, n, -z));
            ASSERT_LT(std::abs(a - b), 1e-14);
        }
    }
}

TEST(su11, v_spot_values) {
    double r = 0.8;
    double k2 = std::sinh(r) * std::sinh(r);
    ASSERT_NEAR(v_element_closed(2, 0, 0, r).real(), 1 / (1 + k2), 1e-15);
    ASSERT_NEAR(v_element_closed(2, 1, 1, r).real(), (1 - 2 * k2) / ((1 + k2) * (1 + k2)), 1e-15);
    ASSERT_NEAR(v_element_closed(3, 0, 0, r).real(), std::pow(std::cosh(r), -3), 1e-15);
    ASSERT_EQ(v_element_closed(2, 4, 4, 0), Complex(1));
    ASSERT_THROW(v_element_closed(0, 0, 0, r), Error);
    ASSERT_THROW(v_element_closed(2, -1, 0, r), Error);
}

TEST(su11, trace_closed_forms) {
    ASSERT_NEAR(trace_v_closed(2, std::log(2.0)), 1.0 / 3, 1e-15);
    for (double two_k : {1.0, 2.0, 3.0, 4.0, 2.5}) {
        for (double r : {0.5, std::log(2.0), 1.5}) {
            Complex z = std::polar(r, 1.1);
            ASSERT_NEAR(trace_v_closed(two_k, z) / oracle_trace(two_k, r), 1, 1e-13);
            ASSERT_NEAR(trace_v_geometric(two_k, z) / oracle_trace(two_k, r), 1, 1e-13);
        }
    }
    try {
        trace_v_closed(2, 0);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::divergent);
    }
    ASSERT_THROW(trace_v_closed(0.5, 1), Error);
}

TEST(su11, trace_numeric_from_diagonal) {
    for (double two_k : {2.0, 3.0, 4.0, 2.5}) {
        for (double r : {0.5, std::log(2.0), 1.5}) {
            TraceVNumeric t = trace_v_numeric(two_k, r);
            ASSERT_NEAR(t.value / oracle_trace(two_k, r), 1, 1e-6) << two_k << " " << r;
        }
    }
}

TEST(su11, disentangling_spin_k) {
    for (double two_k : {0.5, 1.0, 3.0}) {
        TruncatedSpace space = spin_k_space(two_k, 128);
        DisentangleResult a = disentangle_residual(space, Complex(0.3, 0.4), SafeSector(16));
        ASSERT_LT(a.normal_order, 1e-10);
        ASSERT_TRUE(a.reversed_order.has_value());
        ASSERT_LT(*a.reversed_order, 1e-10);
        DisentangleResult b = disentangle_residual(space, Complex(0, 1.2), SafeSector(16));
        ASSERT_LT(b.normal_order, 1e-10);
        ASSERT_FALSE(b.reversed_order.has_value());
    }
    ASSERT_THROW(disentangle_residual(spin_k_space(1, 64), 1.6, SafeSector(8)), Error);
}

TEST(su11, disentangling_squeezer) {
    DisentangleResult r = disentangle_residual(single_mode_space(128), std::polar(0.7, -0.5), SafeSector(16));
    ASSERT_LT(r.normal_order, 1e-10);
    ASSERT_LT(*r.reversed_order, 1e-10);
}

TEST(su11, ordered_product_reversed_needs_small_sinh) {
    try {
        ordered_product_block(2, 1.0, 8, true);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::divergent);
    }
}

TEST(su11, decomposition_formula) {
    DecompositionResult d = decomposition_residual(2, Complex(0.5, 0.5), 256);
    ASSERT_TRUE(d.series_complete);
    ASSERT_LT(d.residual, 1e-8);
    ASSERT_THROW(decomposition_residual(2, 0, 64), Error);
    ASSERT_THROW(decomposition_residual(2, 1, 16, 10), Error);
}

TEST(su11, resolution_of_identity) {
    ComplexMatrix r = resolution_identity_su11(spin_k_space(2, 64), DiskGrid{}, 8);
    ASSERT_LT((r - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-3);
    ASSERT_THROW(resolution_identity_su11(spin_k_space(1, 64), DiskGrid{}, 8), Error);
}

TEST(su11, glauber_failure_first_excited) {
    // Radial integral of conj(V_00) V_11 against the hyperbolic measure.
    double two_k = 3;
    auto integrand = [&](double s) {
        double c = std::cosh(s);
        double t = std::tanh(s);
        return 2 * (two_k - 1) * std::sinh(s) * c * std::pow(c, -2 * two_k) * (1 - (two_k + 1) * t * t);
    };
    double want = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0, 40, 15, 1e-13);
    ASSERT_NEAR(want, -1 / two_k, 1e-10);

    TruncatedSpace space = spin_k_space(two_k, 64);
    ComplexMatrix a = ComplexMatrix::Zero(64, 64);
    a(0, 0) = 1;
    ComplexMatrix rec = glauber_su11_reconstruct(a, space, DiskGrid{12, 200, 64}, SafeSector(3));
    ASSERT_NEAR(rec(0, 0).real(), 1, 1e-4);
    ASSERT_NEAR(rec(1, 1).real(), want, 1e-4);
    ASSERT_NEAR(std::abs(rec(0, 1)), 0, 1e-10);
}

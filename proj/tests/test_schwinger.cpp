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

#include "cohop/schwinger.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace cohop;

TEST(schwinger, single_mode_realization) {
    int n = 20;
    SpinGenerators g = single_mode_su11(single_mode_space(n));
    ComplexMatrix pm = commutator(g.k_plus, g.k_minus) + 2.0 * g.k3;
    ComplexMatrix p3 = commutator(g.k3, g.k_plus) - g.k_plus;
    ASSERT_LT(pm.topLeftCorner(n - 2, n - 2).norm(), 1e-12);
    ASSERT_LT(p3.norm(), 1e-12);
    ASSERT_EQ(parity_indices(7, 1), (std::vector<int>{1, 3, 5}));
}

TEST(schwinger, squeezed_vacuum) {
    // S(z)|0> = cosh^{-1/2} r sum_n sqrt((2n)!) / (2^n n!) (e^{i theta} tanh r)^n |2n>
    Complex z = std::polar(0.8, 0.6);
    ComplexMatrix s = squeeze(single_mode_space(160), z).matrix;
    double r = std::abs(z);
    for (int n = 0; n < 20; ++n) {
        double log_c = 0.5 * std::lgamma(2 * n + 1.0) - n * std::log(2.0) - std::lgamma(n + 1.0);
        Complex want = std::pow(std::cosh(r), -0.5) * std::exp(log_c) * std::pow(std::tanh(r) * z / r, n);
        ASSERT_LT(std::abs(s(2 * n, 0) - want), 1e-12) << n;
        ASSERT_EQ(s(2 * n + 1, 0), Complex(0));
    }
    ASSERT_THROW(squeeze(single_mode_space(16), 2.0), Error);
}

TEST(schwinger, two_mode_algebras) {
    TruncatedSpace space = two_mode_space(6);
    TwoModeOperators o = two_mode_operators(space);
    // Away from the per-mode boundary the commutators close.
    std::vector<int> inner = total_quanta_indices(6, 4);
    auto on = [&](const ComplexMatrix &m) { return project_indices(m, inner); };
    ASSERT_LT(on(commutator(o.j_plus, o.j_minus) - 2.0 * o.j3).norm(), 1e-12);
    ASSERT_LT(on(commutator(o.k_plus, o.k_minus) + 2.0 * o.k3).norm(), 1e-12);
    ASSERT_LT(on(commutator(o.j3, o.j_plus) - o.j_plus).norm(), 1e-12);
    ASSERT_LT(on(commutator(o.k3, o.k_plus) - o.k_plus).norm(), 1e-12);
    int k = static_cast<int>(inner.size());
    ASSERT_LT((on(commutator(o.a1, o.a1_dagger)) - ComplexMatrix::Identity(k, k)).norm(), 1e-12);
    ASSERT_THROW(two_mode_operators(single_mode_space(6)), Error);
}

TEST(schwinger, index_sets) {
    std::vector<int> p = total_quanta_indices(10, 3);
    ASSERT_EQ(p.size(), 10u);
    ASSERT_EQ(p[0], 0);
    ASSERT_EQ(p[1], 10);
    ASSERT_EQ(p[2], 1);
    std::vector<int> b = difference_band_indices(4, 0);
    ASSERT_EQ(b, (std::vector<int>{0, 5, 10, 15}));
    ComplexMatrix a = ComplexMatrix::Random(4, 4);
    ComplexMatrix c = ComplexMatrix::Random(4, 4);
    ASSERT_LT((tensor_product_on_indices(a, c, b) - project_indices(tensor_product(a, c), b)).norm(), 1e-14);
}

TEST(schwinger, two_mode_vacuum) {
    // V(z)|0,0> has <0,0| component 1 / cosh|z|.
    Complex z = std::polar(0.7, 1.0);
    ComplexMatrix v = two_mode_v(two_mode_space(24), z).matrix;
    ASSERT_NEAR(std::abs(v(0, 0) - 1 / std::cosh(0.7)), 0, 1e-12);
    ComplexMatrix w = two_mode_w(two_mode_space(8), z).matrix;
    ASSERT_NEAR(std::abs(w(0, 0)), 1, 1e-14);
}

TEST(schwinger, paris_formula) {
    for (Complex z : {Complex(0.5, 0), Complex(0, 1), std::polar(1.0, 0.785)}) {
        ParisResult p = paris_residual(48, z);
        ASSERT_LT(p.residual, 1e-6) << z;
        ASSERT_NEAR(std::abs(p.vacuum_lhs - 1 / std::cosh(std::abs(z))), 0, 1e-10);
        ASSERT_EQ(p.sector_dim, 91);
    }
}

TEST(schwinger, paris_cutoff_doubling) {
    double prev = 1e9;
    for (int m : {24, 48}) {
        double r = paris_residual(m, 1.0, 12, 0).residual;
        ASSERT_LT(r, prev);
        prev = r;
    }
}

TEST(schwinger, paris_argument_checks) {
    ASSERT_THROW(paris_residual(48, 1.2), Error);
    ASSERT_THROW(paris_residual(20, 0.5, 12), Error);
    ASSERT_THROW(paris_residual(48, 0.5, 12, 32), Error);
}

// Copyright 2026 The qeclab Authors
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

#include "qeclab/pauli.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace qeclab {
namespace {

using testing::dense_pauli;
using testing::random_pauli;

TEST(Pauli, ParseRoundTrip) {
    PauliOperator p = PauliOperator::from_string("-XIZY");
    EXPECT_EQ(p.num_qubits(), 4u);
    EXPECT_TRUE(p.negative());
    EXPECT_EQ(p.at(3), 'Y');
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.support(), (std::vector<size_t>{0, 2, 3}));
    EXPECT_EQ(p.str(), "-XIZY");
    EXPECT_EQ(PauliOperator::from_string("ZZ").str(), "+ZZ");
    EXPECT_THROW(PauliOperator::from_string("XQ"), std::invalid_argument);
}

TEST(Pauli, SymplecticExamples) {
    auto x1 = PauliOperator::from_string("X");
    auto z1 = PauliOperator::from_string("Z");
    EXPECT_TRUE(symplectic_product(x1, z1));
    EXPECT_FALSE(symplectic_product(x1, x1));
    EXPECT_FALSE(symplectic_product(PauliOperator::from_string("XZ"), PauliOperator::from_string("ZX")));
    EXPECT_THROW(symplectic_product(x1, PauliOperator::from_string("XX")), std::invalid_argument);
}

TEST(Pauli, SymplecticIsBilinear) {
    Rng rng(23);
    for (int trial = 0; trial < 2000; trial++) {
        size_t n = 1 + uniform_index(rng, 90);
        PauliOperator a = random_pauli(n, rng);
        PauliOperator b = random_pauli(n, rng);
        PauliOperator c = random_pauli(n, rng);
        PauliOperator ab = a;
        ab.multiply_in_place(b);
        EXPECT_EQ(symplectic_product(ab, c), symplectic_product(a, c) ^ symplectic_product(b, c));
    }
}

// Per-site phase table: sigma_a sigma_b = i^g sigma_{a^b}.
int naive_phase(const PauliOperator &a, const PauliOperator &b) {
    int g = 0;
    for (size_t q = 0; q < a.num_qubits(); q++) {
        char p = a.at(q);
        char r = b.at(q);
        if (p == 'I' || r == 'I' || p == r) {
            continue;
        }
        bool cyclic = (p == 'X' && r == 'Y') || (p == 'Y' && r == 'Z') || (p == 'Z' && r == 'X');
        g += cyclic ? 1 : 3;
    }
    return g & 3;
}

TEST(Pauli, PhaseWordsMatchPerSiteTable) {
    Rng rng(29);
    for (int trial = 0; trial < 2000; trial++) {
        PauliOperator a = random_pauli(64, rng);
        PauliOperator b = random_pauli(64, rng);
        int g = pauli_product_phase_words(a.x().words()[0], a.z().words()[0], b.x().words()[0], b.z().words()[0]);
        EXPECT_EQ(g, naive_phase(a, b));
    }
}

TEST(Pauli, ProductMatchesDenseMatrices) {
    Rng rng(31);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + uniform_index(rng, 4);
        PauliOperator a = random_pauli(n, rng);
        PauliOperator b = random_pauli(n, rng);
        Eigen::MatrixXcd dense = dense_pauli(a) * dense_pauli(b);
        PauliOperator c = a;
        int residual = c.multiply_in_place(b);
        std::complex<double> factor = residual ? std::complex<double>(0, 1) : 1.0;
        EXPECT_LT((dense - factor * dense_pauli(c)).norm(), 1e-12);
        EXPECT_EQ(residual == 0, a.commutes_with(b));
    }
}

TEST(Pauli, CommutingProductOperator) {
    auto zz = PauliOperator::from_string("ZZ");
    auto xx = PauliOperator::from_string("XX");
    EXPECT_EQ((zz * xx).str(), "-YY");
    EXPECT_THROW(PauliOperator::from_string("X") * PauliOperator::from_string("Z"), std::invalid_argument);
}

TEST(Pauli, SingleSite) {
    auto p = PauliOperator::single(5, 3, 'Y');
    EXPECT_EQ(p.str(), "+IIIYI");
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(PauliOperator(5).is_identity());
}

}  // namespace
}  // namespace qeclab

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

#include "qeclab/clifford_gate.h"

#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "qeclab/circuit.h"
#include "test_util.h"

namespace qeclab {
namespace {

using C = std::complex<double>;
using testing::dense_pauli;

PauliOperator two_site(uint8_t bits, bool negative = false) {
    PauliOperator p(2);
    const char chars[4] = {'I', 'X', 'Z', 'Y'};
    p.set(0, chars[bits & 3]);
    p.set(1, chars[(bits >> 2) & 3]);
    p.set_negative(negative);
    return p;
}

// Basis index = b0 + 2 b1, matching the bit q convention of dense_pauli.
Eigen::Matrix4cd dense_gate(const std::string &name, int qubit = 0) {
    Eigen::Matrix2cd one;
    if (name == "H") {
        one << 1, 1, 1, -1;
        one /= std::sqrt(2.0);
    } else if (name == "S") {
        one << 1, 0, 0, C(0, 1);
    }
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    if (name == "H" || name == "S") {
        for (int j = 0; j < 4; j++) {
            int b = (j >> qubit) & 1;
            for (int o = 0; o < 2; o++) {
                int out = (j & ~(1 << qubit)) | (o << qubit);
                u(out, j) = one(o, b);
            }
        }
    } else if (name == "CNOT") {
        // Control on site 0.
        for (int j = 0; j < 4; j++) {
            int out = (j & 1) ? j ^ 2 : j;
            u(out, j) = 1;
        }
    } else if (name == "SWAP") {
        u(0, 0) = u(3, 3) = 1;
        u(2, 1) = u(1, 2) = 1;
    } else if (name == "ISWAP") {
        u(0, 0) = u(3, 3) = 1;
        u(2, 1) = u(1, 2) = C(0, 1);
    }
    return u;
}

// For every input Pauli, U P U^dag must equal the table image with its sign.
void expect_matches_dense(const CliffordGate &g, const Eigen::Matrix4cd &u) {
    for (uint8_t in = 1; in < 16; in++) {
        Eigen::MatrixXcd lhs = u * dense_pauli(two_site(in)) * u.adjoint();
        Eigen::MatrixXcd rhs = dense_pauli(two_site(g.out_bits(in), g.flips_sign(in)));
        EXPECT_LT((lhs - rhs).norm(), 1e-12) << g.str() << " input " << two_site(in).str();
    }
}

TEST(CliffordGate, FactoriesMatchDenseUnitaries) {
    expect_matches_dense(CliffordGate::identity(), Eigen::Matrix4cd::Identity());
    expect_matches_dense(CliffordGate::hadamard(0), dense_gate("H", 0));
    expect_matches_dense(CliffordGate::hadamard(1), dense_gate("H", 1));
    expect_matches_dense(CliffordGate::phase(0), dense_gate("S", 0));
    expect_matches_dense(CliffordGate::phase(1), dense_gate("S", 1));
    expect_matches_dense(CliffordGate::cnot(), dense_gate("CNOT"));
    expect_matches_dense(CliffordGate::swap(), dense_gate("SWAP"));
    expect_matches_dense(CliffordGate::iswap(), dense_gate("ISWAP"));
}

TEST(CliffordGate, IswapImages) {
    CliffordGate g = CliffordGate::iswap();
    EXPECT_EQ(g.conjugate(TwoQubitPauli::from_string("XI")).str(), "+ZY");
    EXPECT_EQ(g.conjugate(TwoQubitPauli::from_string("ZI")).str(), "+IZ");
    EXPECT_EQ(g.conjugate(TwoQubitPauli::from_string("IX")).str(), "+YZ");
    EXPECT_EQ(g.conjugate(TwoQubitPauli::from_string("IZ")).str(), "+ZI");
}

TEST(CliffordGate, CompositionMatchesDenseProducts) {
    Rng rng(37);
    const std::vector<std::string> names = {"H0", "H1", "S0", "S1", "CNOT", "ISWAP"};
    for (int trial = 0; trial < 200; trial++) {
        CliffordGate g;
        Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
        for (int step = 0; step < 12; step++) {
            const std::string &n = names[uniform_index(rng, names.size())];
            CliffordGate s = n == "H0"   ? CliffordGate::hadamard(0)
                             : n == "H1" ? CliffordGate::hadamard(1)
                             : n == "S0" ? CliffordGate::phase(0)
                             : n == "S1" ? CliffordGate::phase(1)
                             : n == "CNOT" ? CliffordGate::cnot()
                                           : CliffordGate::iswap();
            Eigen::Matrix4cd su = n[0] == 'H'   ? dense_gate("H", n[1] - '0')
                                  : n[0] == 'S' ? dense_gate("S", n[1] - '0')
                                                : dense_gate(n);
            g = g.then(s);
            u = su * u;
        }
        expect_matches_dense(g, u);
    }
}

TEST(CliffordGate, RejectsNonSymplecticImages) {
    auto xi = TwoQubitPauli::from_string("XI");
    auto zi = TwoQubitPauli::from_string("ZI");
    auto ix = TwoQubitPauli::from_string("IX");
    EXPECT_THROW(CliffordGate({xi, xi, ix, TwoQubitPauli::from_string("IZ")}), std::invalid_argument);
    EXPECT_THROW(CliffordGate({xi, zi, ix, ix}), std::invalid_argument);
}

TEST(CliffordGate, LinearAndAnfFormsReproduceTable) {
    for (const CliffordGate &g : two_qubit_clifford_group()) {
        for (int in = 0; in < 16; in++) {
            uint8_t out = 0;
            for (int b = 0; b < 4; b++) {
                out |= (std::popcount((unsigned)(in & g.out_linear(b))) & 1) << b;
            }
            ASSERT_EQ(out, g.out_bits(in));
            int flip = 0;
            for (int m = 0; m < 16; m++) {
                if (((g.sign_anf() >> m) & 1) && (in & m) == m) {
                    flip ^= 1;
                }
            }
            ASSERT_EQ(flip, (int)g.flips_sign(in));
        }
    }
}

// Conjugation is a homomorphism: sig(a) sig(b) = i^g sig(a^b) must map to the
// same relation between the images, signs included.
TEST(CliffordGroup, EveryElementIsAHomomorphism) {
    for (const CliffordGate &g : two_qubit_clifford_group()) {
        for (uint8_t a = 0; a < 16; a++) {
            for (uint8_t b = 0; b < 16; b++) {
                int lhs = two_qubit_product_phase(g.out_bits(a), g.out_bits(b)) + 2 * g.flips_sign(a) +
                          2 * g.flips_sign(b);
                int rhs = two_qubit_product_phase(a, b) + 2 * g.flips_sign(a ^ b);
                ASSERT_EQ(lhs & 3, rhs & 3) << g.str();
            }
        }
    }
}

TEST(CliffordGroup, EnumerationMatchesGeneratorClosure) {
    const auto &group = two_qubit_clifford_group();
    ASSERT_EQ(group.size(), 11520u);
    std::unordered_set<uint32_t> enumerated;
    for (const auto &g : group) {
        enumerated.insert(g.key());
    }
    EXPECT_EQ(enumerated.size(), 11520u);

    std::vector<CliffordGate> gens = {CliffordGate::hadamard(0), CliffordGate::hadamard(1), CliffordGate::phase(0),
                                      CliffordGate::phase(1), CliffordGate::cnot()};
    std::unordered_set<uint32_t> seen = {CliffordGate::identity().key()};
    std::deque<CliffordGate> queue = {CliffordGate::identity()};
    while (!queue.empty()) {
        CliffordGate g = queue.front();
        queue.pop_front();
        for (const auto &s : gens) {
            CliffordGate h = g.then(s);
            if (seen.insert(h.key()).second) {
                queue.push_back(h);
            }
        }
    }
    EXPECT_EQ(seen, enumerated);
}

TEST(CliffordGroup, SamplerIsUniform) {
    const auto &group = two_qubit_clifford_group();
    std::unordered_map<uint32_t, size_t> index;
    for (size_t i = 0; i < group.size(); i++) {
        index[group[i].key()] = i;
    }
    // Bucket by symplectic part (720 cosets of 16) so each bin has ~1400
    // counts, and also by sign pattern.
    Rng rng(41);
    constexpr size_t kSamples = 1000000;
    std::vector<size_t> by_element(group.size());
    for (size_t s = 0; s < kSamples; s++) {
        by_element[index.at(sample_two_qubit_clifford(rng).key())]++;
    }
    std::unordered_map<uint32_t, size_t> by_symplectic;
    std::vector<size_t> by_sign(16);
    for (size_t i = 0; i < group.size(); i++) {
        uint32_t sym = 0;
        int signs = 0;
        for (int v = 0; v < 4; v++) {
            sym |= (uint32_t)group[i].images()[v].bits << (4 * v);
            signs |= group[i].images()[v].negative << v;
        }
        by_symplectic[sym] += by_element[i];
        by_sign[signs] += by_element[i];
    }
    ASSERT_EQ(by_symplectic.size(), 720u);
    double chi2 = 0;
    double expect = (double)kSamples / 720;
    for (const auto &[sym, count] : by_symplectic) {
        chi2 += ((double)count - expect) * ((double)count - expect) / expect;
    }
    // 719 degrees of freedom: mean 719, sd ~37.9. 5 sigma.
    EXPECT_LT(std::abs(chi2 - 719), 5 * std::sqrt(2.0 * 719));
    double expect_sign = (double)kSamples / 16;
    for (size_t c : by_sign) {
        EXPECT_LT(std::abs((double)c - expect_sign), 5 * std::sqrt(expect_sign));
    }
    size_t min_count = *std::min_element(by_element.begin(), by_element.end());
    EXPECT_GT(min_count, 0u);
}

TEST(IswapEnsemble, HasAllDressedGates) {
    const auto &dressed = iswap_dressed_gates();
    ASSERT_EQ(dressed.size(), 576u);
    std::unordered_set<uint32_t> keys;
    for (const auto &g : dressed) {
        keys.insert(g.key());
        EXPECT_TRUE(g.is_entangling());
    }
    EXPECT_EQ(keys.size(), 576u);
    ASSERT_EQ(single_qubit_cliffords().size(), 24u);
    // Every element is iSWAP followed by C_a on site 0 and C_b on site 1.
    const auto &singles = single_qubit_cliffords();
    std::unordered_set<uint32_t> expected;
    for (const auto &a : singles) {
        for (const auto &b : singles) {
            CliffordGate g = CliffordGate::iswap()
                                 .then(CliffordGate::single(0, a.first, a.second))
                                 .then(CliffordGate::single(1, b.first, b.second));
            expected.insert(g.key());
        }
    }
    EXPECT_EQ(keys, expected);
}

TEST(IswapEnsemble, SamplerCoversAllGates) {
    const auto &dressed = iswap_dressed_gates();
    std::unordered_map<uint32_t, size_t> counts;
    Rng rng(43);
    for (int s = 0; s < 200000; s++) {
        counts[sample_iswap_dressed(rng).key()]++;
    }
    EXPECT_EQ(counts.size(), dressed.size());
    double expect = 200000.0 / 576;
    for (const auto &[k, c] : counts) {
        EXPECT_LT(std::abs((double)c - expect), 5 * std::sqrt(expect));
    }
}

TEST(CliffordGate, SingleQubitCliffordsAreDistinct) {
    std::unordered_set<uint32_t> keys;
    for (const auto &[x, z] : single_qubit_cliffords()) {
        CliffordGate g = CliffordGate::single(0, x, z);
        EXPECT_FALSE(g.is_entangling());
        keys.insert(g.key());
    }
    EXPECT_EQ(keys.size(), 24u);
}

}  // namespace
}  // namespace qeclab

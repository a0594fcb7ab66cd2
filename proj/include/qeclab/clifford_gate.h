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

#ifndef QECLAB_CLIFFORD_GATE_H
#define QECLAB_CLIFFORD_GATE_H

#include <array>
#include <cstdint>
#include <string>

namespace qeclab {

/// Two-qubit Pauli packed into 4 bits (x1, z1, x2, z2 at bits 0..3) plus a sign.
struct TwoQubitPauli {
    uint8_t bits = 0;
    bool negative = false;

    static TwoQubitPauli from_string(const std::string &text);
    std::string str() const;
    bool operator==(const TwoQubitPauli &) const = default;
};

constexpr uint8_t kX1 = 1;
constexpr uint8_t kZ1 = 2;
constexpr uint8_t kX2 = 4;
constexpr uint8_t kZ2 = 8;

/// 1 when the two packed Paulis anticommute.
inline int two_qubit_symplectic(uint8_t a, uint8_t b) {
    int s = ((a & 1) & (b >> 1)) ^ ((a >> 1) & b & 1);
    s ^= ((a >> 2) & (b >> 3) & 1) ^ ((a >> 3) & (b >> 2) & 1);
    return s & 1;
}

/// Two-qubit Clifford modulo global phase, stored by its conjugation images.
///
/// A 16-entry table for every input Pauli is precomputed, so applying the
/// gate to a tableau row is one lookup. For bitsliced column updates the
/// images are also kept as a linear map plus the algebraic normal form of the
/// sign-flip function.
class CliffordGate {
   public:
    /// Identity gate.
    CliffordGate();
    /// images = conjugated X1, Z1, X2, Z2. Throws std::invalid_argument if
    /// they do not preserve the symplectic form.
    explicit CliffordGate(const std::array<TwoQubitPauli, 4> &images);

    static CliffordGate identity();
    static CliffordGate hadamard(int qubit);
    static CliffordGate phase(int qubit);
    static CliffordGate cnot();
    static CliffordGate swap();
    /// diag(1, i, i, 1) composed with SWAP: |01> -> i|10>, |10> -> i|01>.
    static CliffordGate iswap();
    /// Lifts a single-qubit Clifford (images of X, Z) onto one of the qubits.
    static CliffordGate single(int qubit, TwoQubitPauli x_image, TwoQubitPauli z_image);

    const std::array<TwoQubitPauli, 4> &images() const {
        return images_;
    }

    /// Image of a packed input Pauli with + sign: returns out bits and whether
    /// the sign flips.
    uint8_t out_bits(uint8_t in) const {
        return table_bits_[in];
    }
    bool flips_sign(uint8_t in) const {
        return (sign_table_ >> in) & 1;
    }
    TwoQubitPauli conjugate(TwoQubitPauli p) const {
        return {table_bits_[p.bits], (bool)(p.negative ^ flips_sign(p.bits))};
    }

    /// Bit b of the output is the parity of (input & out_linear(b)).
    uint8_t out_linear(int b) const {
        return linear_[b];
    }
    /// Bit m is set when the monomial prod_{v in m} in_v appears in the sign
    /// flip polynomial.
    uint16_t sign_anf() const {
        return sign_anf_;
    }

    /// Gate that applies `this` first and `next` second.
    CliffordGate then(const CliffordGate &next) const;

    /// Packs the images into a 20 bit key; equal keys mean equal gates.
    uint32_t key() const;
    bool operator==(const CliffordGate &other) const {
        return key() == other.key();
    }

    /// True when the gate maps some single-qubit Pauli to a two-qubit one.
    bool is_entangling() const;

    std::string str() const;

   private:
    void build_tables();

    std::array<TwoQubitPauli, 4> images_;
    std::array<uint8_t, 16> table_bits_{};
    uint16_t sign_table_ = 0;
    std::array<uint8_t, 4> linear_{};
    uint16_t sign_anf_ = 0;
};

/// Phase-tracked product of packed two-qubit Paulis: returns the power of i
/// such that sigma(a) sigma(b) = i^g sigma(a^b).
int two_qubit_product_phase(uint8_t a, uint8_t b);

}  // namespace qeclab

#endif

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

#ifndef QECLAB_PAULI_H
#define QECLAB_PAULI_H

#include <string>
#include <string_view>
#include <vector>

#include "qeclab/gf2.h"

namespace qeclab {

/// Hermitian Pauli product (+/-) P_0 ⊗ ... ⊗ P_{N-1}.
///
/// Site k is I, X, Z or Y for (x_k, z_k) = (0,0), (1,0), (0,1), (1,1).
/// Y is stored directly, so the operator is sign * prod_k sigma(x_k, z_k).
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits) : x_(num_qubits), z_(num_qubits) {
    }
    PauliOperator(BitVector x, BitVector z, bool negative = false);

    /// Parses strings like "+XIZY", "-ZZ" or "XX" (sign optional).
    static PauliOperator from_string(std::string_view text);
    /// Single-site operator; `pauli` is one of 'X', 'Y', 'Z', 'I'.
    static PauliOperator single(size_t num_qubits, size_t site, char pauli);

    size_t num_qubits() const {
        return x_.size();
    }
    const BitVector &x() const {
        return x_;
    }
    const BitVector &z() const {
        return z_;
    }
    BitVector &x() {
        return x_;
    }
    BitVector &z() {
        return z_;
    }
    bool negative() const {
        return negative_;
    }
    void set_negative(bool v) {
        negative_ = v;
    }

    char at(size_t site) const;
    void set(size_t site, char pauli);
    size_t weight() const;
    std::vector<size_t> support() const;
    bool is_identity() const;

    /// this <- this * rhs. Returns the residual power of i (0 or 1) that the
    /// Hermitian representation cannot absorb; it is 0 exactly when the two
    /// operators commute.
    int multiply_in_place(const PauliOperator &rhs);

    bool commutes_with(const PauliOperator &other) const;

    /// Equality including the sign.
    bool operator==(const PauliOperator &other) const = default;
    /// Equality of the unsigned operator.
    bool same_support_pattern(const PauliOperator &other) const {
        return x_ == other.x_ && z_ == other.z_;
    }

    std::string str() const;

   private:
    BitVector x_;
    BitVector z_;
    bool negative_ = false;
};

/// 0 if a and b commute, 1 otherwise.
bool symplectic_product(const PauliOperator &a, const PauliOperator &b);

/// Product a*b of commuting operators. Throws if they anticommute (the
/// product would not be Hermitian).
PauliOperator operator*(const PauliOperator &a, const PauliOperator &b);

/// Power of i (mod 4) picked up when multiplying the unsigned site-wise Paulis
/// of two words: sigma(x1,z1) sigma(x2,z2) = i^g sigma(x1^x2, z1^z2).
inline int pauli_product_phase_words(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    uint64_t anti = (x1 & z2) ^ (z1 & x2);
    // Cyclic orders XY, YZ, ZX give +i.
    uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t minus = anti & ~plus;
    return (int)((std::popcount(plus) + 3 * std::popcount(minus)) & 3);
}

}  // namespace qeclab

#endif

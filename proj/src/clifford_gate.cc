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

#include <stdexcept>

#include "qeclab/pauli.h"

namespace qeclab {

namespace {

uint64_t x_word(uint8_t b) {
    return (b & 1) | ((b >> 1) & 2);
}

uint64_t z_word(uint8_t b) {
    return ((b >> 1) & 1) | ((b >> 2) & 2);
}

}  // namespace

int two_qubit_product_phase(uint8_t a, uint8_t b) {
    return pauli_product_phase_words(x_word(a), z_word(a), x_word(b), z_word(b));
}

TwoQubitPauli TwoQubitPauli::from_string(const std::string &text) {
    PauliOperator p = PauliOperator::from_string(text);
    if (p.num_qubits() != 2) {
        throw std::invalid_argument("two-qubit Pauli string must have 2 sites: " + text);
    }
    uint8_t bits = p.x().get(0) | (p.z().get(0) << 1) | (p.x().get(1) << 2) | (p.z().get(1) << 3);
    return {bits, p.negative()};
}

std::string TwoQubitPauli::str() const {
    static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
    std::string s;
    s.push_back(negative ? '-' : '+');
    s.push_back(kChars[bits & 3]);
    s.push_back(kChars[(bits >> 2) & 3]);
    return s;
}

CliffordGate::CliffordGate() : images_{{{kX1, false}, {kZ1, false}, {kX2, false}, {kZ2, false}}} {
    build_tables();
}

CliffordGate::CliffordGate(const std::array<TwoQubitPauli, 4> &images) : images_(images) {
    static constexpr uint8_t kInputs[4] = {kX1, kZ1, kX2, kZ2};
    for (int a = 0; a < 4; a++) {
        if (images_[a].bits == 0 || images_[a].bits > 15) {
            throw std::invalid_argument("Clifford image must be a non-identity two-qubit Pauli");
        }
        for (int b = 0; b < 4; b++) {
            if (two_qubit_symplectic(images_[a].bits, images_[b].bits) != two_qubit_symplectic(kInputs[a], kInputs[b])) {
                throw std::invalid_argument("Clifford images do not preserve the symplectic form");
            }
        }
    }
    build_tables();
}

void CliffordGate::build_tables() {
    // Input sigma(in) = i^{x1 z1 + x2 z2} X1^x1 Z1^z1 X2^x2 Z2^z2, so the image
    // is the same phase times the ordered product of generator images.
    for (uint8_t in = 0; in < 16; in++) {
        int phase = ((in & 1) & ((in >> 1) & 1)) + (((in >> 2) & 1) & ((in >> 3) & 1));
        uint8_t acc = 0;
        for (int v = 0; v < 4; v++) {
            if ((in >> v) & 1) {
                phase += two_qubit_product_phase(acc, images_[v].bits);
                phase += 2 * images_[v].negative;
                acc ^= images_[v].bits;
            }
        }
        phase &= 3;
        if (phase & 1) {
            throw std::logic_error("Clifford image of a Hermitian Pauli is not Hermitian");
        }
        table_bits_[in] = acc;
        if (phase == 2) {
            sign_table_ |= (uint16_t)(1u << in);
        } else {
            sign_table_ &= (uint16_t)~(1u << in);
        }
    }
    for (int b = 0; b < 4; b++) {
        uint8_t m = 0;
        for (int v = 0; v < 4; v++) {
            if ((images_[v].bits >> b) & 1) {
                m |= (uint8_t)(1 << v);
            }
        }
        linear_[b] = m;
    }
    // Moebius transform of the truth table gives the XOR-of-ANDs form.
    uint16_t anf = sign_table_;
    for (int v = 0; v < 4; v++) {
        for (int m = 0; m < 16; m++) {
            if ((m >> v) & 1) {
                if ((anf >> (m ^ (1 << v))) & 1) {
                    anf ^= (uint16_t)(1u << m);
                }
            }
        }
    }
    sign_anf_ = anf;
}

CliffordGate CliffordGate::identity() {
    return CliffordGate();
}

CliffordGate CliffordGate::hadamard(int qubit) {
    return single(qubit, TwoQubitPauli::from_string("ZI"), TwoQubitPauli::from_string("XI"));
}

CliffordGate CliffordGate::phase(int qubit) {
    return single(qubit, TwoQubitPauli::from_string("YI"), TwoQubitPauli::from_string("ZI"));
}

CliffordGate CliffordGate::single(int qubit, TwoQubitPauli x_image, TwoQubitPauli z_image) {
    if ((x_image.bits & 12) || (z_image.bits & 12)) {
        throw std::invalid_argument("single-qubit images must act on the first slot");
    }
    if (qubit == 0) {
        return CliffordGate({x_image, z_image, {kX2, false}, {kZ2, false}});
    }
    TwoQubitPauli x2{(uint8_t)(x_image.bits << 2), x_image.negative};
    TwoQubitPauli z2{(uint8_t)(z_image.bits << 2), z_image.negative};
    return CliffordGate({{{kX1, false}, {kZ1, false}, x2, z2}});
}

CliffordGate CliffordGate::cnot() {
    return CliffordGate({TwoQubitPauli::from_string("XX"), TwoQubitPauli::from_string("ZI"),
                         TwoQubitPauli::from_string("IX"), TwoQubitPauli::from_string("ZZ")});
}

CliffordGate CliffordGate::swap() {
    return CliffordGate({TwoQubitPauli::from_string("IX"), TwoQubitPauli::from_string("IZ"),
                         TwoQubitPauli::from_string("XI"), TwoQubitPauli::from_string("ZI")});
}

CliffordGate CliffordGate::iswap() {
    return CliffordGate({TwoQubitPauli::from_string("ZY"), TwoQubitPauli::from_string("IZ"),
                         TwoQubitPauli::from_string("YZ"), TwoQubitPauli::from_string("ZI")});
}

CliffordGate CliffordGate::then(const CliffordGate &next) const {
    std::array<TwoQubitPauli, 4> imgs;
    for (int v = 0; v < 4; v++) {
        imgs[v] = next.conjugate(images_[v]);
    }
    return CliffordGate(imgs);
}

uint32_t CliffordGate::key() const {
    uint32_t k = 0;
    for (int v = 0; v < 4; v++) {
        k |= (uint32_t)(images_[v].bits | (images_[v].negative << 4)) << (5 * v);
    }
    return k;
}

bool CliffordGate::is_entangling() const {
    for (int v = 0; v < 4; v++) {
        uint8_t b = images_[v].bits;
        if ((b & 3) && (b & 12)) {
            return true;
        }
    }
    return false;
}

std::string CliffordGate::str() const {
    static const char *kNames[4] = {"XI", "ZI", "IX", "IZ"};
    std::string s;
    for (int v = 0; v < 4; v++) {
        if (v) {
            s += ", ";
        }
        s += kNames[v];
        s += "->";
        s += images_[v].str();
    }
    return s;
}

}  // namespace qeclab

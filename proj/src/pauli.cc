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

#include <stdexcept>

namespace qeclab {

PauliOperator::PauliOperator(BitVector x, BitVector z, bool negative)
    : x_(std::move(x)), z_(std::move(z)), negative_(negative) {
    if (x_.size() != z_.size()) {
        throw std::invalid_argument("Pauli x and z parts must have equal length");
    }
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    bool neg = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        neg = text[0] == '-';
        text.remove_prefix(1);
    }
    PauliOperator p(text.size());
    for (size_t k = 0; k < text.size(); k++) {
        p.set(k, text[k]);
    }
    p.negative_ = neg;
    return p;
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t site, char pauli) {
    if (site >= num_qubits) {
        throw std::invalid_argument("site out of range");
    }
    PauliOperator p(num_qubits);
    p.set(site, pauli);
    return p;
}

char PauliOperator::at(size_t site) const {
    static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
    return kChars[x_.get(site) | (z_.get(site) << 1)];
}

void PauliOperator::set(size_t site, char pauli) {
    bool xb;
    bool zb;
    switch (pauli) {
        case 'I':
        case '_':
            xb = false;
            zb = false;
            break;
        case 'X':
            xb = true;
            zb = false;
            break;
        case 'Y':
            xb = true;
            zb = true;
            break;
        case 'Z':
            xb = false;
            zb = true;
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli character: ") + pauli);
    }
    x_.set(site, xb);
    z_.set(site, zb);
}

size_t PauliOperator::weight() const {
    size_t n = 0;
    auto xs = x_.words();
    auto zs = z_.words();
    for (size_t w = 0; w < xs.size(); w++) {
        n += std::popcount(xs[w] | zs[w]);
    }
    return n;
}

std::vector<size_t> PauliOperator::support() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < num_qubits(); k++) {
        if (x_.get(k) || z_.get(k)) {
            out.push_back(k);
        }
    }
    return out;
}

bool PauliOperator::is_identity() const {
    return !x_.any() && !z_.any();
}

int PauliOperator::multiply_in_place(const PauliOperator &rhs) {
    if (rhs.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli length mismatch in product");
    }
    auto x1 = x_.words();
    auto z1 = z_.words();
    auto x2 = rhs.x_.words();
    auto z2 = rhs.z_.words();
    int phase = 2 * negative_ + 2 * rhs.negative_;
    for (size_t w = 0; w < x1.size(); w++) {
        phase += pauli_product_phase_words(x1[w], z1[w], x2[w], z2[w]);
        x1[w] ^= x2[w];
        z1[w] ^= z2[w];
    }
    phase &= 3;
    negative_ = (phase & 2) != 0;
    return phase & 1;
}

bool PauliOperator::commutes_with(const PauliOperator &other) const {
    return !symplectic_product(*this, other);
}

std::string PauliOperator::str() const {
    std::string s;
    s.reserve(num_qubits() + 1);
    s.push_back(negative_ ? '-' : '+');
    for (size_t k = 0; k < num_qubits(); k++) {
        s.push_back(at(k));
    }
    return s;
}

bool symplectic_product(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "symplectic_product length mismatch: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
    auto ax = a.x().words();
    auto az = a.z().words();
    auto bx = b.x().words();
    auto bz = b.z().words();
    uint64_t acc = 0;
    for (size_t w = 0; w < ax.size(); w++) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return std::popcount(acc) & 1;
}

PauliOperator operator*(const PauliOperator &a, const PauliOperator &b) {
    PauliOperator r = a;
    if (r.multiply_in_place(b)) {
        throw std::invalid_argument("product of anticommuting Paulis is not Hermitian");
    }
    return r;
}

}  // namespace qeclab

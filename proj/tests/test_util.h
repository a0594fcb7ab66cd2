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

// Independent oracles shared by the unit tests. They use the slowest
// obvious representation on purpose (one byte per bit, dense matrices).

#ifndef QECLAB_TESTS_TEST_UTIL_H
#define QECLAB_TESTS_TEST_UTIL_H

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qeclab/circuit.h"
#include "qeclab/gf2.h"
#include "qeclab/pauli.h"
#include "qeclab/rng.h"
#include "qeclab/subsystem_code.h"

namespace qeclab::testing {

using Bits = std::vector<std::vector<int>>;

inline Bits to_bits(const BitMatrix &m) {
    Bits out(m.num_rows(), std::vector<int>(m.num_cols()));
    for (size_t r = 0; r < m.num_rows(); r++) {
        for (size_t c = 0; c < m.num_cols(); c++) {
            out[r][c] = m.get(r, c);
        }
    }
    return out;
}

/// Textbook elimination, one int per entry.
inline size_t naive_rank(Bits a, size_t cols_limit = SIZE_MAX) {
    size_t rows = a.size();
    if (rows == 0) {
        return 0;
    }
    size_t cols = std::min(a[0].size(), cols_limit);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; c++) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) {
            p++;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        for (size_t i = 0; i < rows; i++) {
            if (i != r && a[i][c]) {
                for (size_t j = 0; j < a[i].size(); j++) {
                    a[i][j] ^= a[r][j];
                }
            }
        }
        r++;
    }
    return r;
}

inline BitMatrix random_matrix(size_t rows, size_t cols, Rng &rng, double density = 0.5) {
    BitMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            m.set(r, c, uniform_double(rng) < density);
        }
    }
    return m;
}

inline PauliOperator random_pauli(size_t n, Rng &rng) {
    PauliOperator p(n);
    for (size_t q = 0; q < n; q++) {
        p.set(q, "IXZY"[uniform_index(rng, 4)]);
    }
    p.set_negative(coin_flip(rng));
    return p;
}

/// Dense matrix of a Pauli; qubit q is bit q of the basis index.
inline Eigen::MatrixXcd dense_pauli(const PauliOperator &p) {
    using C = std::complex<double>;
    size_t n = p.num_qubits();
    size_t dim = size_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t j = 0; j < dim; j++) {
        size_t out = j;
        C amp = p.negative() ? -1.0 : 1.0;
        for (size_t q = 0; q < n; q++) {
            int b = (j >> q) & 1;
            switch (p.at(q)) {
                case 'X':
                    out ^= size_t{1} << q;
                    break;
                case 'Z':
                    amp *= b ? -1.0 : 1.0;
                    break;
                case 'Y':
                    out ^= size_t{1} << q;
                    amp *= b ? C(0, -1) : C(0, 1);
                    break;
                default:
                    break;
            }
        }
        m(out, j) = amp;
    }
    return m;
}

/// Projector onto the code space: product of (I + g) / 2 over stabilizers.
inline Eigen::MatrixXcd dense_projector(const SubsystemCode &code) {
    size_t dim = size_t{1} << code.num_qubits();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &s : code.stabilizers) {
        p = p * (Eigen::MatrixXcd::Identity(dim, dim) + dense_pauli(s)) * 0.5;
    }
    return p;
}

/// Von Neumann entropy in bits of a Hermitian PSD matrix.
inline double dense_entropy(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    double s = 0;
    for (int i = 0; i < es.eigenvalues().size(); i++) {
        double l = es.eigenvalues()(i);
        if (l > 1e-12) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

/// Partial trace keeping `keep` (sorted qubit indices) of an n-qubit matrix.
inline Eigen::MatrixXcd partial_trace_keep(const Eigen::MatrixXcd &rho, size_t n, const std::vector<size_t> &keep) {
    std::vector<size_t> traced;
    for (size_t q = 0; q < n; q++) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    size_t dk = size_t{1} << keep.size();
    size_t dt = size_t{1} << traced.size();
    auto index = [&](size_t a, size_t b) {
        size_t idx = 0;
        for (size_t i = 0; i < keep.size(); i++) {
            idx |= ((a >> i) & 1) << keep[i];
        }
        for (size_t i = 0; i < traced.size(); i++) {
            idx |= ((b >> i) & 1) << traced[i];
        }
        return idx;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (size_t a = 0; a < dk; a++) {
        for (size_t b = 0; b < dk; b++) {
            std::complex<double> s = 0;
            for (size_t t = 0; t < dt; t++) {
                s += rho(index(a, t), index(b, t));
            }
            out(a, b) = s;
        }
    }
    return out;
}

/// Random encoding: k logical sites on a trivial code, then depth * n
/// uniform two-qubit Cliffords on random pairs (so odd N works too).
inline SubsystemCode random_code(size_t n, size_t k, size_t depth, Rng &rng) {
    std::vector<size_t> sites(n);
    for (size_t i = 0; i < n; i++) {
        sites[i] = i;
    }
    for (size_t i = 0; i < k; i++) {
        std::swap(sites[i], sites[i + uniform_index(rng, n - i)]);
    }
    sites.resize(k);
    SubsystemCode code = SubsystemCode::trivial(n, sites);
    for (size_t g = 0; n > 1 && g < depth * n; g++) {
        size_t a = uniform_index(rng, n);
        size_t b = (a + 1 + uniform_index(rng, n - 1)) % n;
        code.apply_gate(sample_two_qubit_clifford(rng), a, b);
    }
    return code;
}

}  // namespace qeclab::testing

#endif

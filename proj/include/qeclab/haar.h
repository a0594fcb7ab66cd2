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

#ifndef QECLAB_HAAR_H
#define QECLAB_HAAR_H

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qeclab/decoder.h"
#include "qeclab/rng.h"
#include "qeclab/subsystem_code.h"

namespace qeclab {

/// Pure state on `num_qubits` qubits; qubit q is bit q of the amplitude index.
struct DenseState {
    Eigen::VectorXcd amps;
    size_t num_qubits = 0;
};

/// Largest total qubit count of a DenseState (2^26 amplitudes, 1 GiB).
constexpr size_t kMaxDenseQubits = 26;
/// Largest dense Haar unitary.
constexpr size_t kMaxHaarUnitaryQubits = 13;

/// Haar unitary on num_qubits qubits (QR of a complex Ginibre matrix with
/// R's diagonal phases divided out).
Eigen::MatrixXcd haar_unitary(size_t num_qubits, Rng &rng);
Eigen::MatrixXcd haar_unitary_dim(size_t dim, Rng &rng);

/// First `cols` columns of a Haar unitary of dimension `rows`.
Eigen::MatrixXcd haar_isometry(size_t rows, size_t cols, Rng &rng);

/// Von Neumann entropy (bits) of the reduced state on `subset`.
double subsystem_entropy(const DenseState &state, std::span<const size_t> subset);

/// Entropy in bits of a density matrix's spectrum, eigenvalues floored at 1e-14.
double spectrum_entropy(const Eigen::MatrixXcd &rho);

/// Entropy of the reduced state of a dense n-qubit density matrix.
double density_subsystem_entropy(const Eigen::MatrixXcd &rho, size_t num_qubits, std::span<const size_t> subset);

/// psi <- P psi for a Pauli on the first P.num_qubits() qubits.
void apply_pauli(DenseState &state, const PauliOperator &p);

/// Applies a 4x4 unitary to qubits (i, j); basis order |q_i q_j> = i + 2 j.
void apply_two_qubit(DenseState &state, const Eigen::Matrix4cd &u, size_t i, size_t j);

/// Pure state of the code qubits (0..N-1) with one reference qubit per
/// logical pair (N..N+k-1), stabilized by the code stabilizers, X_j (x) X_Rj
/// and Z_j (x) Z_Rj. Gauge pairs get a reference each as well (after the
/// logical ones).
DenseState stabilizer_state_with_references(const SubsystemCode &code, Rng &rng);

/// Code-space mixture: product of (I + g)/2 over stabilizers and measured
/// gauge members, normalized.
Eigen::MatrixXcd stabilizer_density_matrix(const SubsystemCode &code);

struct HaarTrialResult {
    double i_c = 0;
    double i_re = 0;
    size_t n_e = 0;
    size_t n = 0;
    size_t k = 0;
    uint64_t seed = 0;
};

enum class HaarEncoding { Dense, LocalCircuit };

/// Coherent information of the erased system for a state on N system
/// qubits (0..N-1) and k reference qubits (N..N+k-1).
HaarTrialResult erasure_information(const DenseState &state, size_t n, size_t k, const ErasurePattern &pattern);

/// Encodes k reference-entangled qubits into N with a Haar unitary (or a
/// brickwork of two-qubit Haar gates of the given depth) and erases `pattern`.
HaarTrialResult haar_erasure_trial(size_t n, size_t k, const ErasurePattern &pattern, Rng &rng,
                                   HaarEncoding encoding = HaarEncoding::Dense, size_t circuit_depth = 0);

}  // namespace qeclab

#endif

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

#ifndef QECLAB_DECODER_H
#define QECLAB_DECODER_H

#include <string>
#include <vector>

#include "qeclab/circuit.h"
#include "qeclab/gf2.h"
#include "qeclab/rng.h"
#include "qeclab/subsystem_code.h"

namespace qeclab {

enum class ErasureKind { FixedFraction, IID, Regular };

struct ErasureModel {
    ErasureKind kind = ErasureKind::FixedFraction;
    size_t count = 0;
    double probability = 0;
    size_t spacing = 4;

    static ErasureModel fixed(size_t n_e) {
        return {ErasureKind::FixedFraction, n_e, 0, 0};
    }
    static ErasureModel iid(double e) {
        return {ErasureKind::IID, 0, e, 0};
    }
    static ErasureModel regular(size_t spacing) {
        return {ErasureKind::Regular, 0, 0, spacing};
    }
    void validate(size_t num_qubits) const;
    std::string describe() const;
};

/// Sorted erased sites.
struct ErasurePattern {
    std::vector<size_t> sites;
    size_t size() const {
        return sites.size();
    }
    bool operator==(const ErasurePattern &) const = default;
};

ErasurePattern make_pattern(std::vector<size_t> sites, size_t num_qubits);

ErasurePattern sample_erasure(const ErasureModel &model, size_t num_qubits, Rng &rng);

/// M(S, L, e): 2 n_e rows (Z then X of each erased site, ascending) and
/// n_s + 2k columns (stabilizers, then X_1, Z_1, X_2, Z_2, ... logicals).
struct SyndromeMatrix {
    BitMatrix m;
    size_t split = 0;
};

SyndromeMatrix syndrome_matrix(const SubsystemCode &code, const ErasurePattern &pattern);
SyndromeMatrix syndrome_matrix(const PackedTableau &tab, const ErasurePattern &pattern);

struct Recovery {
    size_t r_m = 0;
    /// 2^-r_M.
    double p = 1;
    /// k - r_M.
    long coherent_information = 0;
};

Recovery recovery_probability(const SubsystemCode &code, const ErasurePattern &pattern);

/// Allocation-free r_M straight from the packed columns. Holds scratch space.
class RankEvaluator {
   public:
    size_t r_m(const PackedTableau &tab, const ErasurePattern &pattern);

   private:
    EchelonBasis basis_;
    std::vector<uint64_t> row_;
};

/// Exhaustive recovery probability over all 4^{n_e} Paulis on the erased
/// sites, computed from commutators directly. Throws ResourceLimitError for
/// n_e > 8.
double brute_force_recovery(const SubsystemCode &code, const ErasurePattern &pattern);

struct ProbeReport {
    /// Rank of the zero-syndrome logical span on each probe's two columns.
    std::vector<int> d;
    std::vector<bool> flag;
    /// True when every requested probe fails.
    bool joint_all = false;
    /// True when at least one requested probe fails.
    bool joint_any = false;
};

ProbeReport probe_failures(const SubsystemCode &code, const ErasurePattern &pattern, const std::vector<size_t> &probes);
ProbeReport probe_failures(const PackedTableau &tab, const ErasurePattern &pattern, const std::vector<size_t> &probes);

/// Pauli on the erased sites whose stabilizer syndrome equals `syndrome`
/// (length n_s). Throws NoSolutionError if no such Pauli exists.
PauliOperator most_likely_correction(const SubsystemCode &code, const ErasurePattern &pattern, const BitVector &syndrome);

/// Stabilizer syndrome of an arbitrary Pauli.
BitVector stabilizer_syndrome(const SubsystemCode &code, const PauliOperator &error);

}  // namespace qeclab

#endif

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

#ifndef QECLAB_SUBSYSTEM_CODE_H
#define QECLAB_SUBSYSTEM_CODE_H

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qeclab/clifford_gate.h"
#include "qeclab/pauli.h"
#include "qeclab/rng.h"

namespace qeclab {

/// An anticommuting pair of generators. For logical qubits `x` and `z` are
/// the logical X and Z; for gauge pairs the labels are only positional.
struct PauliPair {
    PauliOperator x;
    PauliOperator z;
    bool operator==(const PauliPair &) const = default;
};

enum class PartnerKind { None, Stabilizer, Logical, Gauge };

struct MeasurementResult {
    /// +1 or -1.
    int outcome = 1;
    bool deterministic = false;
    /// What kind of generator `measured` was paired against. For Logical and
    /// Gauge the consumed pair index is `pair_index`; g itself now sits as
    /// the last stabilizer with partner as its destabilizer.
    PartnerKind partner = PartnerKind::None;
    size_t pair_index = 0;
};

/// Stabilizer/subsystem code tableau.
///
/// The generators (stabilizers, destabilizers, logical pairs, gauge pairs)
/// always form a symplectic basis of the 2N dimensional Pauli space:
/// stabilizer i anticommutes only with destabilizer i, each pair member
/// anticommutes only with its partner.
class SubsystemCode {
   public:
    SubsystemCode() = default;
    explicit SubsystemCode(size_t num_qubits) : n_(num_qubits) {
    }

    static SubsystemCode trivial(size_t num_qubits, std::span<const size_t> logical_sites);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_stabilizers() const {
        return stabilizers.size();
    }
    size_t num_logicals() const {
        return logicals.size();
    }
    size_t num_gauge() const {
        return gauges.size();
    }

    std::vector<PauliOperator> stabilizers;
    std::vector<PauliOperator> destabilizers;
    std::vector<PauliPair> logicals;
    std::vector<PauliPair> gauges;

    /// Conjugates every generator by the gate acting on sites (i, j).
    void apply_gate(const CliffordGate &gate, size_t i, size_t j);

    /// Projective measurement of g (Aaronson-Gottesman style update).
    MeasurementResult measure(const PauliOperator &g, Rng &rng);

    /// Moves stabilizer `index` and its destabilizer into a new gauge pair.
    void demote_stabilizer_to_gauge(size_t index);

    /// Returns an empty string when all invariants hold, else a description of
    /// the first violation.
    std::string check_invariants() const;

    /// Entropy in bits of the region for the code-space mixture.
    double entanglement_entropy(std::span<const size_t> region) const;

    bool operator==(const SubsystemCode &) const = default;

   private:
    size_t n_ = 0;
};

/// Free-function form of SubsystemCode::apply_gate returning a new code.
SubsystemCode apply_gate(SubsystemCode code, const CliffordGate &gate, size_t i, size_t j);

/// Minimum weight of a Pauli commuting with all stabilizers but not with
/// every logical generator (gauge operators do not count as logical). Returns
/// nullopt when k = 0. Throws ResourceLimitError for N > 12.
std::optional<size_t> distance_bruteforce(const SubsystemCode &code);

/// Text form: section headers STAB, DESTAB, LOGICAL, GAUGE, one signed Pauli
/// string per line; pairs take two consecutive lines (x then z).
void write_code(std::ostream &out, const SubsystemCode &code);
std::string code_to_string(const SubsystemCode &code);
SubsystemCode read_code(std::istream &in);
SubsystemCode code_from_string(const std::string &text);

}  // namespace qeclab

#endif

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

#ifndef QECLAB_CIRCUIT_H
#define QECLAB_CIRCUIT_H

#include <string>
#include <utility>
#include <vector>

#include "qeclab/clifford_gate.h"
#include "qeclab/rng.h"
#include "qeclab/subsystem_code.h"

namespace qeclab {

enum class GeometryKind { Chain1D, Grid2D, AllToAll, Blocks };

/// Interaction graph of the encoding circuit. Chain and grid are periodic.
struct Geometry {
    GeometryKind kind = GeometryKind::Chain1D;
    size_t n = 0;
    size_t lx = 0;
    size_t ly = 0;
    size_t block_size = 0;

    static Geometry chain(size_t n);
    /// Site (x, y) is x + lx * y.
    static Geometry grid(size_t lx, size_t ly);
    static Geometry all_to_all(size_t n);
    static Geometry blocks(size_t n, size_t block_size);
    /// Parses "chain1d", "grid2d", "all2all", "blocks".
    static GeometryKind parse_kind(const std::string &name);
    static std::string kind_name(GeometryKind kind);

    /// Throws std::invalid_argument when the extent is inconsistent.
    void validate() const;
    /// Spatial dimension reported in result tables (0 for all-to-all).
    int dimension() const;
};

enum class GateEnsemble { UniformClifford2Q, ISwapPlusSingles };

GateEnsemble parse_ensemble(const std::string &name);
std::string ensemble_name(GateEnsemble e);

/// All 11520 two-qubit Cliffords modulo phase: 720 symplectic bases of
/// F_2^4 (chosen one vector at a time) times 16 sign patterns.
const std::vector<CliffordGate> &two_qubit_clifford_group();
/// The 24 single-qubit Cliffords as images (X, Z) on the first slot.
const std::vector<std::pair<TwoQubitPauli, TwoQubitPauli>> &single_qubit_cliffords();
/// All 576 gates (C_a ⊗ C_b) * iSWAP.
const std::vector<CliffordGate> &iswap_dressed_gates();

const CliffordGate &sample_two_qubit_clifford(Rng &rng);
const CliffordGate &sample_iswap_dressed(Rng &rng);
const CliffordGate &sample_gate(GateEnsemble ensemble, Rng &rng);

using SitePair = std::pair<size_t, size_t>;

/// Gates of one layer. Every site appears in exactly one pair.
std::vector<SitePair> layer_schedule(const Geometry &geom, size_t layer, Rng &rng);

/// Logical input sites for k logical qubits. Half rate puts them on odd
/// sites (chain) or on the x+y odd sublattice (grid); other rates spread them
/// evenly at floor((j + 1/2) N / k).
std::vector<size_t> default_logical_sites(const Geometry &geom, size_t k);

/// Column-major copy of a tableau, for applying long circuits.
///
/// Rows are generators, stored as one bit column per (qubit, x/z) so a gate
/// touches 4 columns with word-parallel XORs. Row order puts the
/// stabilizers first and the logical generators (X_1, Z_1, X_2, ...) right
/// after, which is also the column order of the syndrome matrix.
class PackedTableau {
   public:
    enum class Rows {
        /// Stabilizers and logicals only; enough for decoding.
        CheckAndLogical,
        /// Every generator, so the code can be written back.
        All,
    };

    PackedTableau(const SubsystemCode &code, Rows rows);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_rows() const {
        return rows_;
    }
    size_t num_words() const {
        return w_;
    }
    size_t num_stabilizers() const {
        return ns_;
    }
    size_t num_logicals() const {
        return k_;
    }
    /// Stabilizer rows plus logical rows.
    size_t num_check_rows() const {
        return ns_ + 2 * k_;
    }

    /// Bit r says whether generator row r has an X (Z) component on qubit q.
    const uint64_t *x_col(size_t q) const {
        return data_.data() + (2 * q) * w_;
    }
    const uint64_t *z_col(size_t q) const {
        return data_.data() + (2 * q + 1) * w_;
    }

    void apply(const CliffordGate &gate, size_t i, size_t j);

    /// Row r as a Pauli.
    PauliOperator row(size_t r) const;

    /// Copies all generators into `code`. Requires Rows::All.
    void write_back(SubsystemCode &code) const;

   private:
    size_t n_ = 0;
    size_t rows_ = 0;
    size_t w_ = 0;
    size_t ns_ = 0;
    size_t k_ = 0;
    size_t ng_ = 0;
    Rows layout_;
    std::vector<uint64_t> data_;
    std::vector<uint64_t> signs_;
};

/// Applies layers [first_layer, first_layer + num_layers) with fresh gates.
void apply_random_layers(
    PackedTableau &tab, const Geometry &geom, GateEnsemble ensemble, size_t first_layer, size_t num_layers, Rng &rng);

/// Applies `depth` random layers to the code, in place.
void apply_random_circuit(SubsystemCode &code, const Geometry &geom, GateEnsemble ensemble, size_t depth, Rng &rng);

}  // namespace qeclab

#endif

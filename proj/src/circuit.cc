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

#include "qeclab/circuit.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qeclab {

Geometry Geometry::chain(size_t n) {
    Geometry g;
    g.kind = GeometryKind::Chain1D;
    g.n = n;
    g.validate();
    return g;
}

Geometry Geometry::grid(size_t lx, size_t ly) {
    Geometry g;
    g.kind = GeometryKind::Grid2D;
    g.lx = lx;
    g.ly = ly;
    g.n = lx * ly;
    g.validate();
    return g;
}

Geometry Geometry::all_to_all(size_t n) {
    Geometry g;
    g.kind = GeometryKind::AllToAll;
    g.n = n;
    g.validate();
    return g;
}

Geometry Geometry::blocks(size_t n, size_t block_size) {
    Geometry g;
    g.kind = GeometryKind::Blocks;
    g.n = n;
    g.block_size = block_size;
    g.validate();
    return g;
}

GeometryKind Geometry::parse_kind(const std::string &name) {
    if (name == "chain1d") {
        return GeometryKind::Chain1D;
    }
    if (name == "grid2d") {
        return GeometryKind::Grid2D;
    }
    if (name == "all2all") {
        return GeometryKind::AllToAll;
    }
    if (name == "blocks") {
        return GeometryKind::Blocks;
    }
    throw std::invalid_argument("unknown geometry '" + name + "'");
}

std::string Geometry::kind_name(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::Chain1D:
            return "chain1d";
        case GeometryKind::Grid2D:
            return "grid2d";
        case GeometryKind::AllToAll:
            return "all2all";
        case GeometryKind::Blocks:
            return "blocks";
    }
    return "?";
}

void Geometry::validate() const {
    if (n == 0 || n % 2) {
        throw std::invalid_argument("geometry needs an even, positive number of sites (got " + std::to_string(n) + ")");
    }
    if (kind == GeometryKind::Grid2D) {
        if (lx * ly != n || lx % 2 || ly % 2 || lx == 0 || ly == 0) {
            throw std::invalid_argument("grid2d needs even Lx, Ly with Lx*Ly = N");
        }
    }
    if (kind == GeometryKind::Blocks) {
        if (block_size == 0 || block_size % 2 || n % block_size) {
            throw std::invalid_argument("blocks needs an even block size dividing N");
        }
    }
}

int Geometry::dimension() const {
    switch (kind) {
        case GeometryKind::Chain1D:
        case GeometryKind::Blocks:
            return 1;
        case GeometryKind::Grid2D:
            return 2;
        case GeometryKind::AllToAll:
            return 0;
    }
    return 0;
}

GateEnsemble parse_ensemble(const std::string &name) {
    if (name == "clifford2q") {
        return GateEnsemble::UniformClifford2Q;
    }
    if (name == "iswap_singles") {
        return GateEnsemble::ISwapPlusSingles;
    }
    throw std::invalid_argument("unknown ensemble '" + name + "'");
}

std::string ensemble_name(GateEnsemble e) {
    return e == GateEnsemble::UniformClifford2Q ? "clifford2q" : "iswap_singles";
}

const std::vector<CliffordGate> &two_qubit_clifford_group() {
    static const std::vector<CliffordGate> group = [] {
        std::vector<CliffordGate> out;
        out.reserve(11520);
        for (uint8_t a1 = 1; a1 < 16; a1++) {
            for (uint8_t b1 = 1; b1 < 16; b1++) {
                if (!two_qubit_symplectic(a1, b1)) {
                    continue;
                }
                for (uint8_t a2 = 1; a2 < 16; a2++) {
                    if (two_qubit_symplectic(a2, a1) || two_qubit_symplectic(a2, b1)) {
                        continue;
                    }
                    for (uint8_t b2 = 1; b2 < 16; b2++) {
                        if (two_qubit_symplectic(b2, a1) || two_qubit_symplectic(b2, b1) ||
                            !two_qubit_symplectic(a2, b2)) {
                            continue;
                        }
                        for (int signs = 0; signs < 16; signs++) {
                            out.emplace_back(std::array<TwoQubitPauli, 4>{{{a1, (bool)(signs & 1)},
                                                                           {b1, (bool)(signs & 2)},
                                                                           {a2, (bool)(signs & 4)},
                                                                           {b2, (bool)(signs & 8)}}});
                        }
                    }
                }
            }
        }
        return out;
    }();
    return group;
}

const std::vector<std::pair<TwoQubitPauli, TwoQubitPauli>> &single_qubit_cliffords() {
    static const std::vector<std::pair<TwoQubitPauli, TwoQubitPauli>> group = [] {
        std::vector<std::pair<TwoQubitPauli, TwoQubitPauli>> out;
        for (uint8_t a = 1; a < 4; a++) {
            for (uint8_t b = 1; b < 4; b++) {
                if (a == b) {
                    continue;
                }
                for (int signs = 0; signs < 4; signs++) {
                    out.push_back({{a, (bool)(signs & 1)}, {b, (bool)(signs & 2)}});
                }
            }
        }
        return out;
    }();
    return group;
}

const std::vector<CliffordGate> &iswap_dressed_gates() {
    static const std::vector<CliffordGate> gates = [] {
        std::vector<CliffordGate> out;
        const auto &singles = single_qubit_cliffords();
        CliffordGate base = CliffordGate::iswap();
        for (const auto &ca : singles) {
            CliffordGate g1 = base.then(CliffordGate::single(0, ca.first, ca.second));
            for (const auto &cb : singles) {
                out.push_back(g1.then(CliffordGate::single(1, cb.first, cb.second)));
            }
        }
        return out;
    }();
    return gates;
}

const CliffordGate &sample_two_qubit_clifford(Rng &rng) {
    const auto &g = two_qubit_clifford_group();
    return g[uniform_index(rng, g.size())];
}

const CliffordGate &sample_iswap_dressed(Rng &rng) {
    const auto &g = iswap_dressed_gates();
    return g[uniform_index(rng, g.size())];
}

const CliffordGate &sample_gate(GateEnsemble ensemble, Rng &rng) {
    return ensemble == GateEnsemble::UniformClifford2Q ? sample_two_qubit_clifford(rng) : sample_iswap_dressed(rng);
}

std::vector<SitePair> layer_schedule(const Geometry &geom, size_t layer, Rng &rng) {
    geom.validate();
    size_t n = geom.n;
    std::vector<SitePair> pairs;
    pairs.reserve(n / 2);
    switch (geom.kind) {
        case GeometryKind::Chain1D: {
            size_t offset = layer % 2;
            for (size_t i = 0; i < n / 2; i++) {
                pairs.push_back({2 * i + offset, (2 * i + offset + 1) % n});
            }
            break;
        }
        case GeometryKind::Blocks: {
            size_t nb = geom.block_size;
            size_t offset = layer % 2;
            for (size_t base = 0; base < n; base += nb) {
                for (size_t i = 0; i < nb / 2; i++) {
                    pairs.push_back({base + 2 * i + offset, base + (2 * i + offset + 1) % nb});
                }
            }
            break;
        }
        case GeometryKind::Grid2D: {
            static constexpr int kDx[4] = {0, 1, 0, -1};
            static constexpr int kDy[4] = {1, 0, -1, 0};
            int dir = (int)(layer % 4);
            size_t lx = geom.lx;
            size_t ly = geom.ly;
            for (size_t y = 0; y < ly; y++) {
                for (size_t x = 0; x < lx; x++) {
                    if ((x + y) % 2) {
                        continue;
                    }
                    size_t px = (x + lx + kDx[dir]) % lx;
                    size_t py = (y + ly + kDy[dir]) % ly;
                    pairs.push_back({x + lx * y, px + lx * py});
                }
            }
            break;
        }
        case GeometryKind::AllToAll: {
            std::vector<size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            for (size_t i = n - 1; i > 0; i--) {
                std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
            }
            for (size_t i = 0; i < n; i += 2) {
                pairs.push_back({perm[i], perm[i + 1]});
            }
            break;
        }
    }
    return pairs;
}

std::vector<size_t> default_logical_sites(const Geometry &geom, size_t k) {
    size_t n = geom.n;
    if (k > n) {
        throw std::invalid_argument("more logical qubits than sites");
    }
    std::vector<size_t> out;
    if (k == 0) {
        return out;
    }
    if (geom.kind == GeometryKind::Grid2D && 2 * k == n) {
        for (size_t y = 0; y < geom.ly; y++) {
            for (size_t x = 0; x < geom.lx; x++) {
                if ((x + y) % 2) {
                    out.push_back(x + geom.lx * y);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    for (size_t j = 0; j < k; j++) {
        out.push_back((size_t)(((2 * j + 1) * n) / (2 * k)));
    }
    return out;
}

PackedTableau::PackedTableau(const SubsystemCode &code, Rows rows)
    : n_(code.num_qubits()),
      ns_(code.num_stabilizers()),
      k_(code.num_logicals()),
      ng_(code.num_gauge()),
      layout_(rows) {
    std::vector<const PauliOperator *> order;
    for (const auto &s : code.stabilizers) {
        order.push_back(&s);
    }
    for (const auto &l : code.logicals) {
        order.push_back(&l.x);
        order.push_back(&l.z);
    }
    if (rows == Rows::All) {
        for (const auto &d : code.destabilizers) {
            order.push_back(&d);
        }
        for (const auto &g : code.gauges) {
            order.push_back(&g.x);
            order.push_back(&g.z);
        }
    }
    rows_ = order.size();
    w_ = words_for_bits(rows_);
    if (w_ == 0) {
        w_ = 1;
    }
    data_.assign(2 * n_ * w_, 0);
    signs_.assign(w_, 0);
    for (size_t r = 0; r < rows_; r++) {
        const PauliOperator &p = *order[r];
        uint64_t bit = uint64_t{1} << (r & 63);
        size_t word = r >> 6;
        for (int part = 0; part < 2; part++) {
            auto ws = part == 0 ? p.x().words() : p.z().words();
            for (size_t w = 0; w < ws.size(); w++) {
                uint64_t v = ws[w];
                while (v) {
                    size_t q = (w << 6) + std::countr_zero(v);
                    v &= v - 1;
                    data_[(2 * q + part) * w_ + word] |= bit;
                }
            }
        }
        if (p.negative()) {
            signs_[word] |= bit;
        }
    }
}

void PackedTableau::apply(const CliffordGate &gate, size_t i, size_t j) {
    if (i >= n_ || j >= n_ || i == j) {
        throw std::invalid_argument("bad gate sites for packed tableau");
    }
    uint64_t *cols[4] = {
        data_.data() + (2 * i) * w_,
        data_.data() + (2 * i + 1) * w_,
        data_.data() + (2 * j) * w_,
        data_.data() + (2 * j + 1) * w_,
    };
    uint8_t lin[4] = {gate.out_linear(0), gate.out_linear(1), gate.out_linear(2), gate.out_linear(3)};
    uint16_t anf = gate.sign_anf();
    for (size_t w = 0; w < w_; w++) {
        uint64_t in[4] = {cols[0][w], cols[1][w], cols[2][w], cols[3][w]};
        uint64_t mono[16];
        mono[0] = ~uint64_t{0};
        uint64_t flip = 0;
        for (int m = 1; m < 16; m++) {
            int low = std::countr_zero((unsigned)m);
            mono[m] = mono[m & (m - 1)] & in[low];
            if ((anf >> m) & 1) {
                flip ^= mono[m];
            }
        }
        signs_[w] ^= flip;
        for (int b = 0; b < 4; b++) {
            uint64_t v = 0;
            for (int u = 0; u < 4; u++) {
                if ((lin[b] >> u) & 1) {
                    v ^= in[u];
                }
            }
            cols[b][w] = v;
        }
    }
}

PauliOperator PackedTableau::row(size_t r) const {
    if (r >= rows_) {
        throw std::invalid_argument("row index out of range");
    }
    PauliOperator p(n_);
    size_t word = r >> 6;
    uint64_t bit = uint64_t{1} << (r & 63);
    for (size_t q = 0; q < n_; q++) {
        if (x_col(q)[word] & bit) {
            p.x().set(q, true);
        }
        if (z_col(q)[word] & bit) {
            p.z().set(q, true);
        }
    }
    p.set_negative((signs_[word] & bit) != 0);
    return p;
}

void PackedTableau::write_back(SubsystemCode &code) const {
    if (layout_ != Rows::All) {
        throw std::logic_error("write_back needs a tableau holding every generator");
    }
    if (code.num_qubits() != n_ || code.num_stabilizers() != ns_ || code.num_logicals() != k_ ||
        code.num_gauge() != ng_) {
        throw std::invalid_argument("write_back target has a different shape");
    }
    size_t r = 0;
    for (auto &s : code.stabilizers) {
        s = row(r++);
    }
    for (auto &l : code.logicals) {
        l.x = row(r++);
        l.z = row(r++);
    }
    for (auto &d : code.destabilizers) {
        d = row(r++);
    }
    for (auto &g : code.gauges) {
        g.x = row(r++);
        g.z = row(r++);
    }
}

void apply_random_layers(
    PackedTableau &tab, const Geometry &geom, GateEnsemble ensemble, size_t first_layer, size_t num_layers, Rng &rng) {
    if (geom.n != tab.num_qubits()) {
        throw std::invalid_argument("geometry size does not match the code");
    }
    for (size_t layer = first_layer; layer < first_layer + num_layers; layer++) {
        for (const auto &[a, b] : layer_schedule(geom, layer, rng)) {
            tab.apply(sample_gate(ensemble, rng), a, b);
        }
    }
}

void apply_random_circuit(SubsystemCode &code, const Geometry &geom, GateEnsemble ensemble, size_t depth, Rng &rng) {
    if (geom.n != code.num_qubits()) {
        throw std::invalid_argument("geometry size does not match the code");
    }
    if (depth == 0) {
        return;
    }
    PackedTableau tab(code, PackedTableau::Rows::All);
    apply_random_layers(tab, geom, ensemble, 0, depth, rng);
    tab.write_back(code);
}

}  // namespace qeclab

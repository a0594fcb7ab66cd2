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

#include "qeclab/subsystem_code.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qeclab/errors.h"

namespace qeclab {

namespace {

void conjugate_row(PauliOperator &p, const CliffordGate &gate, size_t i, size_t j) {
    uint8_t in = p.x().get(i) | (p.z().get(i) << 1) | (p.x().get(j) << 2) | (p.z().get(j) << 3);
    if (in == 0) {
        return;
    }
    uint8_t out = gate.out_bits(in);
    if (gate.flips_sign(in)) {
        p.set_negative(!p.negative());
    }
    p.x().set(i, out & 1);
    p.z().set(i, (out >> 1) & 1);
    p.x().set(j, (out >> 2) & 1);
    p.z().set(j, (out >> 3) & 1);
}

void multiply_commuting(PauliOperator &target, const PauliOperator &by) {
    if (target.multiply_in_place(by)) {
        throw std::logic_error("tableau update multiplied anticommuting generators");
    }
}

}  // namespace

SubsystemCode SubsystemCode::trivial(size_t num_qubits, std::span<const size_t> logical_sites) {
    std::vector<bool> is_logical(num_qubits, false);
    for (size_t s : logical_sites) {
        if (s >= num_qubits) {
            throw std::invalid_argument("logical site " + std::to_string(s) + " out of range");
        }
        if (is_logical[s]) {
            throw std::invalid_argument("logical site " + std::to_string(s) + " repeated");
        }
        is_logical[s] = true;
    }
    SubsystemCode code(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        if (!is_logical[q]) {
            code.stabilizers.push_back(PauliOperator::single(num_qubits, q, 'Z'));
            code.destabilizers.push_back(PauliOperator::single(num_qubits, q, 'X'));
        }
    }
    std::vector<size_t> sorted(logical_sites.begin(), logical_sites.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t q : sorted) {
        code.logicals.push_back({PauliOperator::single(num_qubits, q, 'X'), PauliOperator::single(num_qubits, q, 'Z')});
    }
    return code;
}

void SubsystemCode::apply_gate(const CliffordGate &gate, size_t i, size_t j) {
    if (i >= n_ || j >= n_) {
        throw std::invalid_argument("gate site out of range");
    }
    if (i == j) {
        throw std::invalid_argument("two-qubit gate needs distinct sites");
    }
    for (auto &p : stabilizers) {
        conjugate_row(p, gate, i, j);
    }
    for (auto &p : destabilizers) {
        conjugate_row(p, gate, i, j);
    }
    for (auto &pair : logicals) {
        conjugate_row(pair.x, gate, i, j);
        conjugate_row(pair.z, gate, i, j);
    }
    for (auto &pair : gauges) {
        conjugate_row(pair.x, gate, i, j);
        conjugate_row(pair.z, gate, i, j);
    }
}

SubsystemCode apply_gate(SubsystemCode code, const CliffordGate &gate, size_t i, size_t j) {
    code.apply_gate(gate, i, j);
    return code;
}

MeasurementResult SubsystemCode::measure(const PauliOperator &g, Rng &rng) {
    if (g.num_qubits() != n_) {
        throw std::invalid_argument("measured Pauli has the wrong length");
    }
    MeasurementResult result;

    size_t p = 0;
    while (p < stabilizers.size() && !symplectic_product(g, stabilizers[p])) {
        p++;
    }
    if (p < stabilizers.size()) {
        const PauliOperator pivot = stabilizers[p];
        for (size_t i = 0; i < stabilizers.size(); i++) {
            if (i != p && symplectic_product(g, stabilizers[i])) {
                multiply_commuting(stabilizers[i], pivot);
            }
        }
        for (size_t i = 0; i < destabilizers.size(); i++) {
            if (i != p && symplectic_product(g, destabilizers[i])) {
                multiply_commuting(destabilizers[i], pivot);
            }
        }
        for (auto *list : {&logicals, &gauges}) {
            for (auto &pair : *list) {
                if (symplectic_product(g, pair.x)) {
                    multiply_commuting(pair.x, pivot);
                }
                if (symplectic_product(g, pair.z)) {
                    multiply_commuting(pair.z, pivot);
                }
            }
        }
        destabilizers[p] = pivot;
        stabilizers[p] = g;
        bool minus = coin_flip(rng);
        stabilizers[p].set_negative(g.negative() ^ minus);
        result.outcome = minus ? -1 : 1;
        result.partner = PartnerKind::Stabilizer;
        result.pair_index = p;
        return result;
    }

    // g commutes with the stabilizers. Look for a logical partner first, then gauge.
    for (PartnerKind kind : {PartnerKind::Logical, PartnerKind::Gauge}) {
        auto &list = kind == PartnerKind::Logical ? logicals : gauges;
        for (size_t q = 0; q < list.size(); q++) {
            bool ax = symplectic_product(g, list[q].x);
            bool az = symplectic_product(g, list[q].z);
            if (!ax && !az) {
                continue;
            }
            const PauliOperator h = ax ? list[q].x : list[q].z;
            for (auto &d : destabilizers) {
                if (symplectic_product(g, d)) {
                    multiply_commuting(d, h);
                }
            }
            for (auto *other_list : {&logicals, &gauges}) {
                for (size_t r = 0; r < other_list->size(); r++) {
                    if (other_list == &list && r == q) {
                        continue;
                    }
                    auto &pair = (*other_list)[r];
                    if (symplectic_product(g, pair.x)) {
                        multiply_commuting(pair.x, h);
                    }
                    if (symplectic_product(g, pair.z)) {
                        multiply_commuting(pair.z, h);
                    }
                }
            }
            list.erase(list.begin() + q);
            bool minus = coin_flip(rng);
            PauliOperator s = g;
            s.set_negative(g.negative() ^ minus);
            stabilizers.push_back(std::move(s));
            destabilizers.push_back(h);
            result.outcome = minus ? -1 : 1;
            result.partner = kind;
            result.pair_index = q;
            return result;
        }
    }

    // g is in the stabilizer group: its expansion coefficients are read off
    // the destabilizers.
    PauliOperator acc(n_);
    for (size_t i = 0; i < stabilizers.size(); i++) {
        if (symplectic_product(g, destabilizers[i])) {
            multiply_commuting(acc, stabilizers[i]);
        }
    }
    if (!acc.same_support_pattern(g)) {
        throw std::logic_error("measured Pauli commutes with every generator but is not a stabilizer");
    }
    result.deterministic = true;
    result.outcome = acc.negative() == g.negative() ? 1 : -1;
    return result;
}

void SubsystemCode::demote_stabilizer_to_gauge(size_t index) {
    if (index >= stabilizers.size()) {
        throw std::invalid_argument("stabilizer index out of range");
    }
    gauges.push_back({stabilizers[index], destabilizers[index]});
    stabilizers.erase(stabilizers.begin() + index);
    destabilizers.erase(destabilizers.begin() + index);
}

std::string SubsystemCode::check_invariants() const {
    if (stabilizers.size() != destabilizers.size()) {
        return "stabilizer and destabilizer counts differ";
    }
    std::vector<const PauliOperator *> firsts;
    std::vector<const PauliOperator *> seconds;
    std::vector<std::string> names;
    for (size_t i = 0; i < stabilizers.size(); i++) {
        firsts.push_back(&stabilizers[i]);
        seconds.push_back(&destabilizers[i]);
        names.push_back("stabilizer pair " + std::to_string(i));
    }
    for (size_t i = 0; i < logicals.size(); i++) {
        firsts.push_back(&logicals[i].x);
        seconds.push_back(&logicals[i].z);
        names.push_back("logical pair " + std::to_string(i));
    }
    for (size_t i = 0; i < gauges.size(); i++) {
        firsts.push_back(&gauges[i].x);
        seconds.push_back(&gauges[i].z);
        names.push_back("gauge pair " + std::to_string(i));
    }
    if (firsts.size() != n_) {
        return "generator pairs (" + std::to_string(firsts.size()) + ") do not match qubit count " +
               std::to_string(n_);
    }
    for (size_t a = 0; a < firsts.size(); a++) {
        if (firsts[a]->num_qubits() != n_ || seconds[a]->num_qubits() != n_) {
            return names[a] + " has the wrong length";
        }
        for (size_t b = 0; b < firsts.size(); b++) {
            if (symplectic_product(*firsts[a], *seconds[b]) != (a == b)) {
                return names[a] + " vs " + names[b] + ": wrong first/second commutation";
            }
            if (b > a) {
                if (symplectic_product(*firsts[a], *firsts[b])) {
                    return names[a] + " vs " + names[b] + ": firsts anticommute";
                }
                if (symplectic_product(*seconds[a], *seconds[b])) {
                    return names[a] + " vs " + names[b] + ": seconds anticommute";
                }
            }
        }
    }
    return "";
}

double SubsystemCode::entanglement_entropy(std::span<const size_t> region) const {
    std::vector<bool> in_region(n_, false);
    for (size_t s : region) {
        if (s >= n_) {
            throw std::invalid_argument("region site out of range");
        }
        in_region[s] = true;
    }
    size_t region_size = (size_t)std::count(in_region.begin(), in_region.end(), true);
    std::vector<size_t> outside;
    for (size_t q = 0; q < n_; q++) {
        if (!in_region[q]) {
            outside.push_back(q);
        }
    }
    // The state's group is generated by the stabilizers and the measured
    // member of each gauge pair.
    std::vector<const PauliOperator *> group;
    for (const auto &s : stabilizers) {
        group.push_back(&s);
    }
    for (const auto &g : gauges) {
        group.push_back(&g.x);
    }
    EchelonBasis basis(2 * outside.size());
    BitVector row(2 * outside.size());
    for (const PauliOperator *p : group) {
        row.clear();
        for (size_t t = 0; t < outside.size(); t++) {
            row.set(2 * t, p->x().get(outside[t]));
            row.set(2 * t + 1, p->z().get(outside[t]));
        }
        basis.insert(row);
    }
    size_t inside = group.size() - basis.rank();
    return (double)region_size - (double)inside;
}

std::optional<size_t> distance_bruteforce(const SubsystemCode &code) {
    size_t n = code.num_qubits();
    if (n > 12) {
        throw ResourceLimitError("distance_bruteforce supports at most 12 qubits, got " + std::to_string(n));
    }
    if (code.num_logicals() == 0) {
        return std::nullopt;
    }
    std::vector<const PauliOperator *> gens;
    for (const auto &s : code.stabilizers) {
        gens.push_back(&s);
    }
    for (const auto &l : code.logicals) {
        gens.push_back(&l.x);
        gens.push_back(&l.z);
    }
    size_t ns = code.num_stabilizers();
    uint64_t stab_mask = ns == 64 ? ~uint64_t{0} : (uint64_t{1} << ns) - 1;
    // Commutator masks of X_q (bit 2q) and Z_q (bit 2q+1) with every generator.
    std::vector<uint64_t> flip_mask(2 * n, 0);
    for (size_t g = 0; g < gens.size(); g++) {
        for (size_t q = 0; q < n; q++) {
            if (gens[g]->z().get(q)) {
                flip_mask[2 * q] |= uint64_t{1} << g;
            }
            if (gens[g]->x().get(q)) {
                flip_mask[2 * q + 1] |= uint64_t{1} << g;
            }
        }
    }
    size_t best = SIZE_MAX;
    uint64_t syndrome = 0;
    uint32_t bits = 0;
    size_t weight = 0;
    uint64_t total = uint64_t{1} << (2 * n);
    for (uint64_t t = 1; t < total; t++) {
        int b = std::countr_zero(t);
        size_t q = (size_t)b >> 1;
        uint32_t site_before = (bits >> (2 * q)) & 3;
        bits ^= 1u << b;
        uint32_t site_after = (bits >> (2 * q)) & 3;
        weight += (site_after != 0) - (site_before != 0);
        syndrome ^= flip_mask[b];
        if ((syndrome & stab_mask) == 0 && syndrome != 0 && weight < best) {
            best = weight;
        }
    }
    return best;
}

void write_code(std::ostream &out, const SubsystemCode &code) {
    out << "QUBITS " << code.num_qubits() << "\n";
    out << "STAB\n";
    for (const auto &p : code.stabilizers) {
        out << p.str() << "\n";
    }
    out << "DESTAB\n";
    for (const auto &p : code.destabilizers) {
        out << p.str() << "\n";
    }
    out << "LOGICAL\n";
    for (const auto &p : code.logicals) {
        out << p.x.str() << "\n" << p.z.str() << "\n";
    }
    out << "GAUGE\n";
    for (const auto &p : code.gauges) {
        out << p.x.str() << "\n" << p.z.str() << "\n";
    }
}

std::string code_to_string(const SubsystemCode &code) {
    std::ostringstream ss;
    write_code(ss, code);
    return ss.str();
}

SubsystemCode read_code(std::istream &in) {
    std::string line;
    std::optional<size_t> n;
    std::string section;
    std::vector<PauliOperator> stab, destab, logical, gauge;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.rfind("QUBITS ", 0) == 0) {
            n = std::stoul(line.substr(7));
            continue;
        }
        if (line == "STAB" || line == "DESTAB" || line == "LOGICAL" || line == "GAUGE") {
            section = line;
            continue;
        }
        if (section.empty()) {
            throw std::invalid_argument("code text: generator before any section header");
        }
        PauliOperator p = PauliOperator::from_string(line);
        if (!n) {
            n = p.num_qubits();
        }
        if (p.num_qubits() != *n) {
            throw std::invalid_argument("code text: generator length mismatch in line '" + line + "'");
        }
        (section == "STAB" ? stab : section == "DESTAB" ? destab : section == "LOGICAL" ? logical : gauge)
            .push_back(std::move(p));
    }
    if (!n) {
        throw std::invalid_argument("code text: no qubit count");
    }
    if (logical.size() % 2 || gauge.size() % 2) {
        throw std::invalid_argument("code text: pair sections need an even number of lines");
    }
    SubsystemCode code(*n);
    code.stabilizers = std::move(stab);
    code.destabilizers = std::move(destab);
    for (size_t i = 0; i < logical.size(); i += 2) {
        code.logicals.push_back({logical[i], logical[i + 1]});
    }
    for (size_t i = 0; i < gauge.size(); i += 2) {
        code.gauges.push_back({gauge[i], gauge[i + 1]});
    }
    std::string bad = code.check_invariants();
    if (!bad.empty()) {
        throw std::invalid_argument("code text: " + bad);
    }
    return code;
}

SubsystemCode code_from_string(const std::string &text) {
    std::istringstream ss(text);
    return read_code(ss);
}

}  // namespace qeclab

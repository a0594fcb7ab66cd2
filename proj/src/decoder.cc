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

#include "qeclab/decoder.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qeclab/errors.h"

namespace qeclab {

namespace {

std::vector<const PauliOperator *> check_and_logical_rows(const SubsystemCode &code) {
    std::vector<const PauliOperator *> gens;
    for (const auto &s : code.stabilizers) {
        gens.push_back(&s);
    }
    for (const auto &l : code.logicals) {
        gens.push_back(&l.x);
        gens.push_back(&l.z);
    }
    return gens;
}

/// Span of logical parts of zero-syndrome combinations of M's rows.
BitMatrix zero_syndrome_logical_span(const SyndromeMatrix &sm) {
    RowReduction red = row_reduce(sm.m, sm.split);
    size_t klen = sm.m.num_cols() - sm.split;
    BitMatrix span(0, klen);
    for (size_t r = red.rank; r < red.reduced.num_rows(); r++) {
        const BitVector &row = red.reduced.row(r);
        if (!row.any()) {
            continue;
        }
        span.append_row(row.slice(sm.split, klen));
    }
    return span;
}

ProbeReport probes_from_matrix(const SyndromeMatrix &sm, size_t num_logicals, const std::vector<size_t> &probes) {
    for (size_t p : probes) {
        if (p >= num_logicals) {
            throw std::invalid_argument("probe index " + std::to_string(p) + " out of range");
        }
    }
    BitMatrix span = zero_syndrome_logical_span(sm);
    ProbeReport rep;
    rep.joint_all = !probes.empty();
    for (size_t p : probes) {
        EchelonBasis b(2);
        BitVector two(2);
        for (const auto &row : span.rows()) {
            two.set(0, row.get(2 * p));
            two.set(1, row.get(2 * p + 1));
            b.insert(two);
        }
        int d = (int)b.rank();
        rep.d.push_back(d);
        rep.flag.push_back(d > 0);
        rep.joint_all = rep.joint_all && d > 0;
        rep.joint_any = rep.joint_any || d > 0;
    }
    return rep;
}

}  // namespace

void ErasureModel::validate(size_t num_qubits) const {
    switch (kind) {
        case ErasureKind::FixedFraction:
            if (count > num_qubits) {
                throw std::invalid_argument(
                    "fixed-fraction erasure count " + std::to_string(count) + " exceeds " + std::to_string(num_qubits));
            }
            break;
        case ErasureKind::IID:
            if (!(probability >= 0 && probability <= 1)) {
                throw std::invalid_argument("iid erasure probability must lie in [0, 1]");
            }
            break;
        case ErasureKind::Regular:
            if (spacing == 0 || num_qubits % spacing) {
                throw std::invalid_argument("regular erasure spacing must divide N");
            }
            break;
    }
}

std::string ErasureModel::describe() const {
    switch (kind) {
        case ErasureKind::FixedFraction:
            return "fixed:" + std::to_string(count);
        case ErasureKind::IID:
            return "iid:" + std::to_string(probability);
        case ErasureKind::Regular:
            return "regular:" + std::to_string(spacing);
    }
    return "?";
}

ErasurePattern make_pattern(std::vector<size_t> sites, size_t num_qubits) {
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
        throw std::invalid_argument("erasure pattern has duplicate sites");
    }
    if (!sites.empty() && sites.back() >= num_qubits) {
        throw std::invalid_argument("erasure site out of range");
    }
    return {std::move(sites)};
}

ErasurePattern sample_erasure(const ErasureModel &model, size_t num_qubits, Rng &rng) {
    model.validate(num_qubits);
    ErasurePattern pat;
    switch (model.kind) {
        case ErasureKind::FixedFraction: {
            // Floyd's algorithm: uniform subset with exactly `count` draws.
            std::vector<bool> chosen(num_qubits, false);
            for (size_t j = num_qubits - model.count; j < num_qubits; j++) {
                size_t t = uniform_index(rng, j + 1);
                if (chosen[t]) {
                    t = j;
                }
                chosen[t] = true;
            }
            for (size_t q = 0; q < num_qubits; q++) {
                if (chosen[q]) {
                    pat.sites.push_back(q);
                }
            }
            break;
        }
        case ErasureKind::IID:
            for (size_t q = 0; q < num_qubits; q++) {
                if (uniform_double(rng) < model.probability) {
                    pat.sites.push_back(q);
                }
            }
            break;
        case ErasureKind::Regular: {
            size_t offset = uniform_index(rng, model.spacing);
            for (size_t q = offset; q < num_qubits; q += model.spacing) {
                pat.sites.push_back(q);
            }
            break;
        }
    }
    return pat;
}

SyndromeMatrix syndrome_matrix(const SubsystemCode &code, const ErasurePattern &pattern) {
    auto gens = check_and_logical_rows(code);
    SyndromeMatrix sm;
    sm.split = code.num_stabilizers();
    sm.m = BitMatrix(2 * pattern.size(), gens.size());
    for (size_t t = 0; t < pattern.size(); t++) {
        size_t q = pattern.sites[t];
        if (q >= code.num_qubits()) {
            throw std::invalid_argument("erasure site out of range");
        }
        for (size_t g = 0; g < gens.size(); g++) {
            // Z_q anticommutes with generators having X on q, X_q with Z.
            if (gens[g]->x().get(q)) {
                sm.m.set(2 * t, g, true);
            }
            if (gens[g]->z().get(q)) {
                sm.m.set(2 * t + 1, g, true);
            }
        }
    }
    return sm;
}

SyndromeMatrix syndrome_matrix(const PackedTableau &tab, const ErasurePattern &pattern) {
    size_t cols = tab.num_check_rows();
    SyndromeMatrix sm;
    sm.split = tab.num_stabilizers();
    sm.m = BitMatrix(2 * pattern.size(), cols);
    size_t nw = words_for_bits(cols);
    for (size_t t = 0; t < pattern.size(); t++) {
        size_t q = pattern.sites[t];
        if (q >= tab.num_qubits()) {
            throw std::invalid_argument("erasure site out of range");
        }
        sm.m.row(2 * t).assign_words({tab.x_col(q), nw});
        sm.m.row(2 * t + 1).assign_words({tab.z_col(q), nw});
    }
    return sm;
}

Recovery recovery_probability(const SubsystemCode &code, const ErasurePattern &pattern) {
    SyndromeMatrix sm = syndrome_matrix(code, pattern);
    RankPair rp = rank_pair(sm.m, sm.split);
    Recovery r;
    r.r_m = rp.rank_full - rp.rank_left;
    r.p = std::ldexp(1.0, -(int)r.r_m);
    r.coherent_information = (long)code.num_logicals() - (long)r.r_m;
    return r;
}

size_t RankEvaluator::r_m(const PackedTableau &tab, const ErasurePattern &pattern) {
    size_t cols = tab.num_check_rows();
    size_t nw = words_for_bits(cols);
    basis_.reset(cols);
    if (cols == 0) {
        return 0;
    }
    row_.resize(nw);
    uint64_t tail = (cols & 63) ? (uint64_t{1} << (cols & 63)) - 1 : ~uint64_t{0};
    for (size_t q : pattern.sites) {
        for (const uint64_t *col : {tab.x_col(q), tab.z_col(q)}) {
            std::copy_n(col, nw, row_.data());
            row_[nw - 1] &= tail;
            basis_.insert(row_.data());
        }
    }
    return basis_.rank() - basis_.rank_below(tab.num_stabilizers());
}

double brute_force_recovery(const SubsystemCode &code, const ErasurePattern &pattern) {
    size_t ne = pattern.size();
    if (ne > 8) {
        throw ResourceLimitError("brute_force_recovery supports at most 8 erased sites, got " + std::to_string(ne));
    }
    size_t n = code.num_qubits();
    std::vector<const PauliOperator *> logical_gens;
    for (const auto &l : code.logicals) {
        logical_gens.push_back(&l.x);
        logical_gens.push_back(&l.z);
    }
    std::map<std::string, std::map<std::string, uint64_t>> classes;
    uint64_t total = uint64_t{1} << (2 * ne);
    static constexpr char kPaulis[4] = {'I', 'X', 'Y', 'Z'};
    for (uint64_t e = 0; e < total; e++) {
        PauliOperator err(n);
        for (size_t t = 0; t < ne; t++) {
            err.set(pattern.sites[t], kPaulis[(e >> (2 * t)) & 3]);
        }
        std::string s;
        for (const auto &stab : code.stabilizers) {
            s.push_back(symplectic_product(err, stab) ? '1' : '0');
        }
        std::string l;
        for (const PauliOperator *g : logical_gens) {
            l.push_back(symplectic_product(err, *g) ? '1' : '0');
        }
        classes[s][l]++;
    }
    uint64_t good = 0;
    for (const auto &[s, by_class] : classes) {
        uint64_t best = 0;
        for (const auto &[l, count] : by_class) {
            best = std::max(best, count);
        }
        good += best;
    }
    return (double)good / (double)total;
}

ProbeReport probe_failures(const SubsystemCode &code, const ErasurePattern &pattern, const std::vector<size_t> &probes) {
    return probes_from_matrix(syndrome_matrix(code, pattern), code.num_logicals(), probes);
}

ProbeReport probe_failures(const PackedTableau &tab, const ErasurePattern &pattern, const std::vector<size_t> &probes) {
    return probes_from_matrix(syndrome_matrix(tab, pattern), tab.num_logicals(), probes);
}

BitVector stabilizer_syndrome(const SubsystemCode &code, const PauliOperator &error) {
    BitVector s(code.num_stabilizers());
    for (size_t i = 0; i < code.num_stabilizers(); i++) {
        s.set(i, symplectic_product(error, code.stabilizers[i]));
    }
    return s;
}

PauliOperator most_likely_correction(const SubsystemCode &code, const ErasurePattern &pattern, const BitVector &syndrome) {
    if (syndrome.size() != code.num_stabilizers()) {
        throw std::invalid_argument("syndrome length must equal the stabilizer count");
    }
    SyndromeMatrix sm = syndrome_matrix(code, pattern);
    BitMatrix ms(sm.m.num_rows(), sm.split);
    for (size_t r = 0; r < sm.m.num_rows(); r++) {
        ms.row(r) = sm.m.row(r).slice(0, sm.split);
    }
    BitVector pick = solve_row_combination(ms, syndrome);
    PauliOperator out(code.num_qubits());
    for (size_t t = 0; t < pattern.size(); t++) {
        if (pick.get(2 * t)) {
            out.z().flip(pattern.sites[t]);
        }
        if (pick.get(2 * t + 1)) {
            out.x().flip(pattern.sites[t]);
        }
    }
    return out;
}

}  // namespace qeclab

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

#include "qeclab/expurgation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qeclab {

ExpurgationMode parse_expurgation_mode(const std::string &name) {
    if (name == "stabilizer") {
        return ExpurgationMode::ToStabilizer;
    }
    if (name == "gauge") {
        return ExpurgationMode::ToGauge;
    }
    throw std::invalid_argument("unknown expurgation mode '" + name + "' (want stabilizer or gauge)");
}

std::vector<PauliOperator> zero_syndrome_logical_basis(const SubsystemCode &code, const ErasurePattern &pattern) {
    SyndromeMatrix sm = syndrome_matrix(code, pattern);
    size_t cols = sm.m.num_cols();
    size_t rows = sm.m.num_rows();
    // Tag each row with its own unit vector so the reduced rows remember
    // which local Paulis they combine.
    BitMatrix aug(rows, cols + rows);
    for (size_t r = 0; r < rows; r++) {
        auto src = sm.m.row(r).words();
        BitVector &dst = aug.row(r);
        for (size_t c = 0; c < cols; c++) {
            if ((src[c >> 6] >> (c & 63)) & 1) {
                dst.set(c, true);
            }
        }
        dst.set(cols + r, true);
    }
    RowReduction red = row_reduce(aug, cols);
    std::vector<PauliOperator> out;
    for (size_t p = 0; p < red.rank; p++) {
        if (red.pivots[p] < sm.split) {
            continue;
        }
        const BitVector &row = red.reduced.row(p);
        PauliOperator g(code.num_qubits());
        for (size_t t = 0; t < pattern.size(); t++) {
            if (row.get(cols + 2 * t)) {
                g.z().flip(pattern.sites[t]);
            }
            if (row.get(cols + 2 * t + 1)) {
                g.x().flip(pattern.sites[t]);
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

size_t expurgation_round(SubsystemCode &code, const ErasurePattern &pattern, ExpurgationMode mode, Rng &rng, size_t limit) {
    size_t removed = 0;
    while (removed < limit) {
        std::vector<PauliOperator> basis = zero_syndrome_logical_basis(code, pattern);
        if (basis.empty()) {
            break;
        }
        auto key = [](const PauliOperator &p) {
            return std::make_pair(p.weight(), p.str().substr(1));
        };
        const PauliOperator &g = *std::min_element(basis.begin(), basis.end(), [&](const auto &a, const auto &b) {
            return key(a) < key(b);
        });
        // g may be a dressed logical. Strip its gauge part so the
        // measurement consumes a logical pair rather than a gauge pair.
        PauliOperator bare = g;
        for (const auto &gp : code.gauges) {
            if (!bare.commutes_with(gp.x)) {
                bare.multiply_in_place(gp.z);
            }
            if (!bare.commutes_with(gp.z)) {
                bare.multiply_in_place(gp.x);
            }
        }
        MeasurementResult res = code.measure(bare, rng);
        if (res.partner != PartnerKind::Logical) {
            throw std::logic_error("zero-syndrome logical error did not pair with a logical generator");
        }
        if (mode == ExpurgationMode::ToGauge) {
            code.demote_stabilizer_to_gauge(code.num_stabilizers() - 1);
        }
        removed++;
    }
    return removed;
}

FailureEstimate wilson_interval(size_t failures, size_t samples, double z) {
    FailureEstimate f;
    f.samples = samples;
    if (samples == 0) {
        f.upper = 1;
        return f;
    }
    double n = (double)samples;
    double p = (double)failures / n;
    double z2 = z * z;
    double center = (p + z2 / (2 * n)) / (1 + z2 / n);
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    f.rate = p;
    f.lower = std::max(0.0, center - half);
    f.upper = std::min(1.0, center + half);
    return f;
}

FailureEstimate estimate_failure(const SubsystemCode &code, const ErasureModel &model, size_t samples, double z, Rng &rng) {
    PackedTableau tab(code, PackedTableau::Rows::CheckAndLogical);
    RankEvaluator eval;
    size_t failures = 0;
    for (size_t s = 0; s < samples; s++) {
        ErasurePattern pat = sample_erasure(model, code.num_qubits(), rng);
        failures += eval.r_m(tab, pat) > 0;
    }
    return wilson_interval(failures, samples, z);
}

ExpurgationResult run_expurgation(
    SubsystemCode code, const ErasureModel &model, ExpurgationMode mode, const StopCriteria &stop, Rng &rng) {
    if (!stop.any_set()) {
        throw std::invalid_argument("run_expurgation needs at least one stop criterion");
    }
    size_t n = code.num_qubits();
    size_t k_floor = 0;
    if (stop.min_rate) {
        k_floor = (size_t)std::max(0.0, std::ceil(*stop.min_rate * (double)n - 1e-9));
    }
    ExpurgationResult out{std::move(code), {}};
    SubsystemCode &c = out.code;
    ExpurgationTrace &trace = out.trace;
    for (size_t round = 0;; round++) {
        if (c.num_logicals() == 0) {
            trace.failed = true;
            trace.stop_reason = "no logical qubits left";
            break;
        }
        if (stop.max_rounds && round >= *stop.max_rounds) {
            trace.stop_reason = "max rounds";
            break;
        }
        if (stop.min_rate && c.num_logicals() <= k_floor) {
            trace.stop_reason = "target rate";
            break;
        }
        RoundRecord rec;
        rec.round = round;
        rec.pattern_seed = rng();
        Rng round_rng(rec.pattern_seed);
        ErasurePattern pat = sample_erasure(model, n, round_rng);
        size_t limit = SIZE_MAX;
        if (stop.min_rate) {
            limit = c.num_logicals() - k_floor;
        }
        rec.n_expurgated = expurgation_round(c, pat, mode, round_rng, limit);
        rec.k_remaining = c.num_logicals();
        rec.failure_estimate = std::numeric_limits<double>::quiet_NaN();
        bool good_enough = false;
        if (stop.max_failure && c.num_logicals() > 0) {
            FailureEstimate f = estimate_failure(c, model, stop.failure_samples, stop.wilson_z, rng);
            rec.failure_estimate = f.rate;
            good_enough = f.upper <= *stop.max_failure;
        }
        trace.rounds.push_back(rec);
        if (good_enough) {
            trace.stop_reason = "failure target";
            break;
        }
    }
    return out;
}

}  // namespace qeclab

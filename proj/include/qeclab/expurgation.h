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

#ifndef QECLAB_EXPURGATION_H
#define QECLAB_EXPURGATION_H

#include <optional>
#include <string>
#include <vector>

#include "qeclab/decoder.h"
#include "qeclab/subsystem_code.h"

namespace qeclab {

enum class ExpurgationMode { ToStabilizer, ToGauge };

ExpurgationMode parse_expurgation_mode(const std::string &name);

struct StopCriteria {
    /// Stop before k / N would drop below this rate.
    std::optional<double> min_rate;
    /// Stop once the upper Wilson bound on the failure flag rate is at or
    /// below this value.
    std::optional<double> max_failure;
    std::optional<size_t> max_rounds;
    size_t failure_samples = 200;
    /// Normal quantile for the Wilson interval.
    double wilson_z = 1.96;

    bool any_set() const {
        return min_rate || max_failure || max_rounds;
    }
};

struct RoundRecord {
    size_t round = 0;
    uint64_t pattern_seed = 0;
    size_t n_expurgated = 0;
    size_t k_remaining = 0;
    /// NaN unless the failure criterion was evaluated this round.
    double failure_estimate = 0;
};

struct ExpurgationTrace {
    std::vector<RoundRecord> rounds;
    /// Set when every logical qubit was removed.
    bool failed = false;
    std::string stop_reason;
};

/// Independent zero-syndrome Paulis on the erased sites that carry logical
/// content; there are exactly r_M of them.
std::vector<PauliOperator> zero_syndrome_logical_basis(const SubsystemCode &code, const ErasurePattern &pattern);

/// Measures failing directions for `pattern` one at a time (lowest weight
/// first, basis recomputed after each), until none remain or `limit` is hit.
/// Returns how many logical qubits were removed.
size_t expurgation_round(
    SubsystemCode &code, const ErasurePattern &pattern, ExpurgationMode mode, Rng &rng, size_t limit = SIZE_MAX);

/// Fraction of fresh erasures with r_M > 0, plus its Wilson interval.
struct FailureEstimate {
    double rate = 0;
    double lower = 0;
    double upper = 0;
    size_t samples = 0;
};

FailureEstimate wilson_interval(size_t failures, size_t samples, double z);

FailureEstimate estimate_failure(const SubsystemCode &code, const ErasureModel &model, size_t samples, double z, Rng &rng);

struct ExpurgationResult {
    SubsystemCode code;
    ExpurgationTrace trace;
};

ExpurgationResult run_expurgation(
    SubsystemCode code, const ErasureModel &model, ExpurgationMode mode, const StopCriteria &stop, Rng &rng);

}  // namespace qeclab

#endif

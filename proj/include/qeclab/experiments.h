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

#ifndef QECLAB_EXPERIMENTS_H
#define QECLAB_EXPERIMENTS_H

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qeclab/circuit.h"
#include "qeclab/decoder.h"
#include "qeclab/expurgation.h"
#include "qeclab/harness.h"

namespace qeclab {

/// Geometry, ensemble and logical layout of one code size.
struct CodeFamily {
    Geometry geom;
    GateEnsemble ensemble = GateEnsemble::UniformClifford2Q;
    size_t k = 0;

    /// Depth-zero code: Z stabilizers off the logical sites.
    SubsystemCode initial_code() const;
};

/// grid2d takes N = L^2 with even L; blocks needs block_size.
CodeFamily make_family(const std::string &geometry, size_t n, double rate, GateEnsemble ensemble, size_t block_size = 0);

/// Runs one circuit to each listed depth (ascending) and calls
/// visit(index, tableau) there. Later depths extend the same circuit.
void walk_depths(
    const CodeFamily &family, std::span<const size_t> depths, uint64_t circuit_seed, PackedTableau::Rows rows,
    const std::function<void(size_t, const PackedTableau &)> &visit);

/// Seed of the erasure drawn at `depth` in a trial.
uint64_t erasure_seed(uint64_t trial_seed, size_t depth);

struct ErrorModelConfig {
    std::string kind = "fixed";
    std::optional<size_t> n_e;
    std::optional<double> fraction;
    std::optional<double> e;
    size_t spacing = 4;

    /// Concrete model for N qubits at the given rate. A fixed model with
    /// neither n_e nor fraction erases floor(e_c N) sites.
    ErasureModel resolve(size_t n, double rate) const;
    std::string point_kind() const;
    double point_value(size_t n, double rate) const;
};

struct ExperimentConfig {
    std::string experiment;
    std::string geometry = "chain1d";
    std::optional<std::string> ensemble;
    std::vector<size_t> n_list;
    size_t block_size = 0;
    std::vector<size_t> depths;
    std::optional<double> depth_factor;
    double rate = 0.5;
    ErrorModelConfig error_model;
    std::vector<long> deltas;
    std::vector<size_t> separations;
    std::vector<double> e_values;
    std::string haar_model = "fixed";
    std::string encoding = "dense";
    size_t circuit_depth = 0;
    size_t trials = 100;
    uint64_t seed = 1;
    size_t threads = 1;
    std::string output;
    std::optional<double> dstar_target;
    std::string dstar_statistic = "failure_mass";
    size_t dstar_min_depth = 0;
    std::string mode = "stabilizer";
    double expurgation_budget_offset = 0;
    std::optional<double> stop_rate;
    std::optional<double> stop_failure;
    std::optional<size_t> max_rounds;
    size_t eval_samples = 200;
    size_t failure_samples = 200;
    double erasure_fraction = 0.125;
    size_t patterns_per_code = 1000;
    size_t exact_limit = 5000;
    std::vector<std::string> statistics;

    GateEnsemble resolved_ensemble() const;
    /// Depth list for N: explicit `depths`, else round(depth_factor * N).
    std::vector<size_t> depths_for(size_t n) const;
    /// Throws ConfigError naming the first bad key.
    void validate() const;
};

/// Strict JSON parsing: unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string &json_text);
ExperimentConfig load_config(const std::string &path);

struct ExperimentOutput {
    std::vector<ResultRecord> records;
    std::vector<RawRecord> raw;
};

ExperimentOutput run_experiment(const ExperimentConfig &config, bool keep_raw = false);

uint64_t point_seed(const ExperimentConfig &config, size_t n, double point);
uint64_t trial_seed(uint64_t point_seed, size_t trial);

/// r_M of one recovery trial, recomputed from its seed alone.
size_t replay_recovery_trial(const ExperimentConfig &config, size_t n, double point, size_t depth, size_t trial);

/// r_M at each depth for the trial with this seed.
std::vector<size_t> trial_ranks(
    const CodeFamily &family, std::span<const size_t> depths, const ErasureModel &model, uint64_t trial_seed);

/// Per-trial recovery ranks at each requested depth, for one code size and
/// one erasure model. Index [trial][depth_index].
std::vector<std::vector<size_t>> recovery_ranks(
    const CodeFamily &family, std::span<const size_t> depths, const ErasureModel &model, uint64_t seed, size_t trials,
    size_t threads);

}  // namespace qeclab

#endif

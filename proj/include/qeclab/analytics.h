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

#ifndef QECLAB_ANALYTICS_H
#define QECLAB_ANALYTICS_H

#include <cstddef>

namespace qeclab {

/// Erasure threshold at channel capacity, (1 - R) / 2.
double capacity_erasure_rate(double rate);

/// log2 of the number of a x b binary matrices with rank m.
double count_rank_matrices_log2(size_t a, size_t b, size_t m);

/// Average recovery probability when M_S is a uniformly random 2n_e x n_s
/// matrix and M has full row rank.
double rmt_recovery(size_t n_e, size_t n_s);

/// 1 - rmt_recovery, summed directly so small failures keep full precision.
double rmt_failure(size_t n_e, size_t n_s);

/// Leading asymptotics in delta = 2 n_e - n_s.
double rmt_failure_asymptotic(long delta);

/// Limit of rmt_recovery(n, 2n) for large n.
double critical_recovery_constant();

/// Scaling function of -<log2 P(F)> / sqrt(N) for iid erasures, with
/// x = (e - e_c) sqrt(N) / sqrt(e (1 - e)).
double iid_scaling(double x, double e);

/// Cap applied to -log2 P(F | n_e) when the failure underflows.
constexpr double kIidLog2Cap = 128.0;

/// E over n_e ~ Binomial(N, e) of min(cap, -log2 rmt_failure(n_e, n_s)).
double iid_failure_exact(size_t n, size_t n_s, double e);
/// Same with n_s = N - round(R N).
double iid_failure_exact_rate(size_t n, double rate, double e);

struct BlockModelParams {
    size_t n = 0;
    size_t block_size = 0;
    double e = 0;
    double rate = 0.5;
};

/// Below-threshold failure of independent blocks, clamped to [0, 1].
/// Throws std::domain_error for e >= e_c.
double block_model_failure(const BlockModelParams &p);

/// Piecewise minimal-surface estimate of I(R':E').
double ising_surface_estimate(size_t n_e, size_t n_s, double rate, size_t n);

}  // namespace qeclab

#endif

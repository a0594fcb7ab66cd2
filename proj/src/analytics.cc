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

#include "qeclab/analytics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qeclab {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

/// log2(2^a - 2^k) for k < a.
double log2_diff_pow2(size_t a, size_t k) {
    return (double)a + std::log1p(-std::ldexp(1.0, (int)k - (int)a)) / kLn2;
}

/// log2 of the probability that a uniformly random a x b matrix has rank m.
double rank_probability_log2(size_t a, size_t b, size_t m) {
    return count_rank_matrices_log2(a, b, m) - (double)a * (double)b;
}

}  // namespace

double capacity_erasure_rate(double rate) {
    if (!(rate >= 0 && rate <= 1)) {
        throw std::invalid_argument("rate must lie in [0, 1]");
    }
    return (1 - rate) / 2;
}

double count_rank_matrices_log2(size_t a, size_t b, size_t m) {
    if (m > std::min(a, b)) {
        throw std::invalid_argument(
            "rank " + std::to_string(m) + " impossible for a " + std::to_string(a) + "x" + std::to_string(b) +
            " matrix");
    }
    double acc = 0;
    for (size_t k = 0; k < m; k++) {
        acc += log2_diff_pow2(a, k) + log2_diff_pow2(b, k) - log2_diff_pow2(m, k);
    }
    return acc;
}

double rmt_recovery(size_t n_e, size_t n_s) {
    size_t a = 2 * n_e;
    size_t top = std::min(n_s, a);
    double sum = 0;
    for (size_t m = 0; m <= top; m++) {
        sum += std::exp2(rank_probability_log2(a, n_s, m) + (double)m - (double)a);
    }
    return std::clamp(sum, 0.0, 1.0);
}

double rmt_failure(size_t n_e, size_t n_s) {
    size_t a = 2 * n_e;
    size_t top = std::min(n_s, a);
    double sum = 0;
    for (size_t m = 0; m <= top; m++) {
        double lose = -std::expm1(((double)m - (double)a) * kLn2);
        sum += std::exp2(rank_probability_log2(a, n_s, m)) * lose;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double rmt_failure_asymptotic(long delta) {
    if (delta < 0) {
        return std::ldexp(1.0, (int)delta - 1);
    }
    if (delta == 0) {
        return 1 - critical_recovery_constant();
    }
    return 1 - std::ldexp(1.0, -(int)delta);
}

double critical_recovery_constant() {
    constexpr int kTerms = 64;
    double denom = 1;
    for (int k = 1; k <= kTerms; k++) {
        denom *= 1 - std::ldexp(1.0, -k);
    }
    double sum = 0;
    for (int m = 0; m <= kTerms; m++) {
        double num = 1;
        for (int k = 1; k <= kTerms; k++) {
            double f = 1 - std::ldexp(1.0, -(m + k));
            num *= f * f;
        }
        sum += num * std::ldexp(1.0, -m * (m + 1)) / denom;
    }
    return sum;
}

double iid_scaling(double x, double e) {
    if (!(e > 0 && e < 1)) {
        throw std::invalid_argument("iid_scaling needs 0 < e < 1");
    }
    constexpr double kSqrtHalfPi = 1.2533141373155002512;
    return std::sqrt(e * (1 - e)) * (std::exp(-x * x / 2) / kSqrtHalfPi - x * std::erfc(x / std::sqrt(2.0)));
}

double iid_failure_exact(size_t n, size_t n_s, double e) {
    if (!(e >= 0 && e <= 1)) {
        throw std::invalid_argument("iid_failure_exact needs 0 <= e <= 1");
    }
    auto capped = [&](size_t n_e) {
        double f = rmt_failure(n_e, n_s);
        if (f <= 0) {
            return kIidLog2Cap;
        }
        return std::min(kIidLog2Cap, -std::log2(f));
    };
    if (e == 0) {
        return capped(0);
    }
    if (e == 1) {
        return capped(n);
    }
    double acc = 0;
    double lg_n = std::lgamma((double)n + 1);
    for (size_t k = 0; k <= n; k++) {
        double lw = lg_n - std::lgamma((double)k + 1) - std::lgamma((double)(n - k) + 1) + (double)k * std::log(e) +
                    (double)(n - k) * std::log1p(-e);
        double w = std::exp(lw);
        if (w == 0) {
            continue;
        }
        acc += w * capped(k);
    }
    return acc;
}

double iid_failure_exact_rate(size_t n, double rate, double e) {
    size_t k = (size_t)std::llround(rate * (double)n);
    return iid_failure_exact(n, n - k, e);
}

double block_model_failure(const BlockModelParams &p) {
    if (p.block_size == 0 || p.n % p.block_size) {
        throw std::invalid_argument("block size must divide N");
    }
    if (!(p.e > 0 && p.e < 1)) {
        throw std::invalid_argument("block model needs 0 < e < 1");
    }
    double ec = capacity_erasure_rate(p.rate);
    if (p.e >= ec) {
        throw std::domain_error("block model formula only holds below threshold (e < e_c)");
    }
    double nb = (double)p.block_size;
    double per_block = std::exp2(2 * (p.e - ec) * nb) / (std::sqrt(2 * M_PI * p.e * (1 - p.e) * nb) * std::log(4.0));
    double f = (double)p.n / (2 * nb) * per_block;
    return std::clamp(f, 0.0, 1.0);
}

double ising_surface_estimate(size_t n_e, size_t n_s, double rate, size_t n) {
    double two_ne = 2.0 * (double)n_e;
    if (two_ne <= (double)n_s) {
        return 0;
    }
    if (two_ne <= (1 + rate) * (double)n) {
        return two_ne - (double)n_s;
    }
    return 2 * rate * (double)n;
}

}  // namespace qeclab

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

#ifndef QECLAB_HARNESS_H
#define QECLAB_HARNESS_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qeclab {

struct SummaryStats {
    double mean = 0;
    /// Sample standard deviation over sqrt(count); 0 for a single sample.
    double std_error = 0;
    size_t count = 0;
};

SummaryStats summarize(std::span<const double> samples);

/// First crossing of `target` by linear interpolation in depth.
double interpolate_dstar(const std::vector<std::pair<double, double>> &series, double target);

enum class FitModel { Log, Sqrt, Linear };

struct FitResult {
    double a = 0;
    double b = 0;
    /// Sum of squared residuals.
    double residual = 0;
};

/// Least squares y = a g(x) + b with g = log2, sqrt or identity.
FitResult fit_scaling(std::span<const double> xs, std::span<const double> ys, FitModel model);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

/// One row of the result table.
struct ResultRecord {
    std::string experiment;
    size_t n = 0;
    int dim = 1;
    /// Negative means "not applicable" and prints as an empty field.
    double depth = -1;
    std::string point_kind;
    double point = 0;
    std::string statistic;
    double value = 0;
    double std_error = 0;
    size_t trials = 0;
    uint64_t seed = 0;
};

/// Per-trial value, emitted with --raw.
struct RawRecord {
    std::string experiment;
    size_t n = 0;
    double depth = -1;
    double point = 0;
    size_t trial = 0;
    std::string statistic;
    double value = 0;
    uint64_t seed = 0;
};

constexpr int kSchemaVersion = 1;

/// %.9g, with nan/inf spelled out.
std::string format_double(double v);

void write_csv(std::ostream &out, const std::vector<ResultRecord> &records);
void write_raw_csv(std::ostream &out, const std::vector<RawRecord> &records);

/// Runs fn(i) for i in [0, count) on `threads` workers. Each index runs
/// exactly once; callers store results by index so output does not depend
/// on the thread count. The first exception thrown is rethrown.
void parallel_for(size_t count, size_t threads, const std::function<void(size_t)> &fn);

}  // namespace qeclab

#endif

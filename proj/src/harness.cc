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

#include "qeclab/harness.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qeclab/errors.h"

namespace qeclab {

SummaryStats summarize(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("summarize needs at least one sample");
    }
    SummaryStats s;
    s.count = samples.size();
    double sum = 0;
    for (double v : samples) {
        sum += v;
    }
    s.mean = sum / (double)s.count;
    if (s.count > 1) {
        double ss = 0;
        for (double v : samples) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std_error = std::sqrt(ss / (double)(s.count - 1)) / std::sqrt((double)s.count);
    }
    return s;
}

double interpolate_dstar(const std::vector<std::pair<double, double>> &series, double target) {
    for (size_t i = 1; i < series.size(); i++) {
        if (series[i].first < series[i - 1].first) {
            throw std::invalid_argument("d* series must be sorted by depth");
        }
    }
    for (size_t i = 0; i < series.size(); i++) {
        if (series[i].second == target) {
            return series[i].first;
        }
        if (i + 1 < series.size()) {
            double f0 = series[i].second - target;
            double f1 = series[i + 1].second - target;
            if ((f0 < 0) != (f1 < 0) && f1 != 0) {
                double d0 = series[i].first;
                double d1 = series[i + 1].first;
                return d0 + (target - series[i].second) * (d1 - d0) / (series[i + 1].second - series[i].second);
            }
        }
    }
    double lo = series.empty() ? 0 : series.front().first;
    double hi = series.empty() ? 0 : series.back().first;
    throw NoCrossingError(
        "series over depths [" + format_double(lo) + ", " + format_double(hi) + "] never crosses " +
            format_double(target),
        lo, hi);
}

FitResult fit_scaling(std::span<const double> xs, std::span<const double> ys, FitModel model) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit needs equally many x and y values");
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("fit needs at least 3 points");
    }
    std::vector<double> g(xs.size());
    for (size_t i = 0; i < xs.size(); i++) {
        double x = xs[i];
        switch (model) {
            case FitModel::Log:
                if (x <= 0) {
                    throw std::invalid_argument("log model needs positive x");
                }
                g[i] = std::log2(x);
                break;
            case FitModel::Sqrt:
                if (x < 0) {
                    throw std::invalid_argument("sqrt model needs non-negative x");
                }
                g[i] = std::sqrt(x);
                break;
            case FitModel::Linear:
                g[i] = x;
                break;
        }
    }
    LineFit lf = fit_line(g, ys);
    FitResult r;
    r.a = lf.slope;
    r.b = lf.intercept;
    for (size_t i = 0; i < g.size(); i++) {
        double e = ys[i] - (r.a * g[i] + r.b);
        r.residual += e * e;
    }
    return r;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("line fit needs at least 2 paired points");
    }
    double n = (double)xs.size();
    double mx = 0;
    double my = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 1e-300 * std::max(1.0, mx * mx)) {
        throw SingularFitError("fit design is degenerate (all x equal)");
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_csv(std::ostream &out, const std::vector<ResultRecord> &records) {
    out << "schema_version,experiment,N,D,depth,point_kind,point,statistic,value,stderr,trials,seed\n";
    for (const auto &r : records) {
        out << kSchemaVersion << ',' << r.experiment << ',' << r.n << ',' << r.dim << ',';
        if (r.depth >= 0) {
            out << format_double(r.depth);
        }
        out << ',' << r.point_kind << ',' << format_double(r.point) << ',' << r.statistic << ','
            << format_double(r.value) << ',' << format_double(r.std_error) << ',' << r.trials << ',' << r.seed << '\n';
    }
}

void write_raw_csv(std::ostream &out, const std::vector<RawRecord> &records) {
    out << "schema_version,experiment,N,depth,point,trial,statistic,value,seed\n";
    for (const auto &r : records) {
        out << kSchemaVersion << ',' << r.experiment << ',' << r.n << ',';
        if (r.depth >= 0) {
            out << format_double(r.depth);
        }
        out << ',' << format_double(r.point) << ',' << r.trial << ',' << r.statistic << ',' << format_double(r.value)
            << ',' << r.seed << '\n';
    }
}

void parallel_for(size_t count, size_t threads, const std::function<void(size_t)> &fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    size_t t = std::min(threads, count);
    for (size_t k = 0; k < t; k++) {
        pool.emplace_back(worker);
    }
    for (auto &th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace qeclab

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

#include "qeclab/experiments.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qeclab/analytics.h"
#include "qeclab/errors.h"
#include "qeclab/haar.h"

namespace qeclab {

using nlohmann::json;

namespace {

const std::set<std::string> kExperiments = {"rmt-sweep", "depth-sweep",    "regular-erasure", "probes",
                                            "expurgate-dstar", "haar", "self-averaging", "predict"};

size_t logical_count(size_t n, double rate) {
    return (size_t)std::llround(rate * (double)n);
}

uint64_t double_bits(double v) {
    return std::bit_cast<uint64_t>(v);
}

template <typename T>
T get_as(const json &j, const std::string &key) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw ConfigError(key, "wrong type");
    }
}

size_t get_count(const json &j, const std::string &key) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError(key, "expected a non-negative integer");
    }
    return j.get<size_t>();
}

double get_number(const json &j, const std::string &key) {
    if (!j.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return j.get<double>();
}

template <typename F>
auto get_list(const json &j, const std::string &key, F item) {
    using T = decltype(item(j, key));
    std::vector<T> out;
    if (j.is_array()) {
        for (size_t i = 0; i < j.size(); i++) {
            out.push_back(item(j[i], key + "[" + std::to_string(i) + "]"));
        }
    } else {
        out.push_back(item(j, key));
    }
    return out;
}

long get_long(const json &j, const std::string &key) {
    if (!j.is_number_integer()) {
        throw ConfigError(key, "expected an integer");
    }
    return j.get<long>();
}

std::string get_string(const json &j, const std::string &key) {
    if (!j.is_string()) {
        throw ConfigError(key, "expected a string");
    }
    return j.get<std::string>();
}

ErrorModelConfig parse_error_model(const json &j) {
    if (!j.is_object()) {
        throw ConfigError("error_model", "expected an object");
    }
    ErrorModelConfig m;
    for (const auto &[key, value] : j.items()) {
        std::string full = "error_model." + key;
        if (key == "kind") {
            m.kind = get_string(value, full);
        } else if (key == "n_e") {
            m.n_e = get_count(value, full);
        } else if (key == "fraction") {
            m.fraction = get_number(value, full);
        } else if (key == "e") {
            m.e = get_number(value, full);
        } else if (key == "spacing") {
            m.spacing = get_count(value, full);
        } else {
            throw ConfigError(full, "unknown key");
        }
    }
    return m;
}

struct TrialStats {
    std::vector<double> recovery;
    std::vector<double> mass;
    std::vector<double> flag;
    std::vector<double> rank;
};

TrialStats stats_from_ranks(const std::vector<size_t> &ranks) {
    TrialStats s;
    for (size_t r : ranks) {
        double p = std::ldexp(1.0, -(int)std::min<size_t>(r, 2000));
        s.recovery.push_back(p);
        s.mass.push_back(1 - p);
        s.flag.push_back(r > 0 ? 1 : 0);
        s.rank.push_back((double)r);
    }
    return s;
}

class Emitter {
   public:
    Emitter(const ExperimentConfig &c, ExperimentOutput &out) : config_(c), out_(out) {
    }

    ResultRecord base(size_t n, int dim, double depth, const std::string &kind, double point, size_t trials,
                      uint64_t seed) const {
        ResultRecord r;
        r.experiment = config_.experiment;
        r.n = n;
        r.dim = dim;
        r.depth = depth;
        r.point_kind = kind;
        r.point = point;
        r.trials = trials;
        r.seed = seed;
        return r;
    }

    bool wanted(const std::string &stat) const {
        return config_.statistics.empty() ||
               std::find(config_.statistics.begin(), config_.statistics.end(), stat) != config_.statistics.end();
    }

    void value(ResultRecord r, const std::string &stat, double v, double se = 0) {
        if (!wanted(stat)) {
            return;
        }
        r.statistic = stat;
        r.value = v;
        r.std_error = se;
        out_.records.push_back(std::move(r));
    }

    void summary(const ResultRecord &r, const std::string &stat, const std::vector<double> &samples) {
        SummaryStats s = summarize(samples);
        value(r, stat, s.mean, s.std_error);
    }

   private:
    const ExperimentConfig &config_;
    ExperimentOutput &out_;
};

CodeFamily family_for(const ExperimentConfig &c, size_t n) {
    return make_family(c.geometry, n, c.rate, c.resolved_ensemble(), c.block_size);
}

/// The sweep points of a recovery experiment for one N.
struct SweepPoint {
    double value;
    std::string kind;
    ErasureModel model;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig &c, size_t n) {
    std::vector<SweepPoint> out;
    size_t k = logical_count(n, c.rate);
    size_t n_s = n - k;
    if (c.experiment == "rmt-sweep") {
        for (long delta : c.deltas) {
            long twice = (long)n_s + delta;
            if (twice < 0 || twice % 2 != 0 || twice / 2 > (long)n) {
                throw ConfigError("deltas", "delta " + std::to_string(delta) + " is not reachable at N = " +
                                                std::to_string(n));
            }
            out.push_back({(double)delta, "delta", ErasureModel::fixed((size_t)(twice / 2))});
        }
        return out;
    }
    if (!c.e_values.empty()) {
        for (double e : c.e_values) {
            if (c.error_model.kind == "iid") {
                out.push_back({e, "e", ErasureModel::iid(e)});
            } else {
                out.push_back({e, "e", ErasureModel::fixed((size_t)std::floor(e * (double)n + 1e-9))});
            }
        }
        return out;
    }
    out.push_back({c.error_model.point_value(n, c.rate), c.error_model.point_kind(), c.error_model.resolve(n, c.rate)});
    return out;
}

void emit_rank_stats(Emitter &em, const ResultRecord &base, const std::vector<size_t> &ranks) {
    TrialStats s = stats_from_ranks(ranks);
    em.summary(base, "recovery", s.recovery);
    em.summary(base, "failure_mass", s.mass);
    em.summary(base, "failure_flag", s.flag);
    em.summary(base, "r_M", s.rank);
}

void emit_dstar_fits(Emitter &em, const ExperimentConfig &c, const std::string &prefix, const std::string &kind,
                     double point, const std::vector<double> &ns, const std::vector<double> &ds) {
    if (ns.size() < 3) {
        return;
    }
    ResultRecord r = em.base(0, 1, -1, kind, point, c.trials, c.seed);
    for (auto [model, name] : {std::pair{FitModel::Log, "log"}, std::pair{FitModel::Sqrt, "sqrt"}}) {
        FitResult f = fit_scaling(ns, ds, model);
        em.value(r, prefix + "_fit_" + name + "_a", f.a);
        em.value(r, prefix + "_fit_" + name + "_b", f.b);
        em.value(r, prefix + "_fit_" + name + "_residual", f.residual);
    }
}

void run_recovery_sweep(const ExperimentConfig &c, ExperimentOutput &out, bool keep_raw) {
    Emitter em(c, out);
    // Fits of d*(N) are grouped by sweep point.
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> dstars;
    std::string point_kind;
    for (size_t n : c.n_list) {
        CodeFamily fam = family_for(c, n);
        std::vector<size_t> depths = c.depths_for(n);
        for (const SweepPoint &pt : sweep_points(c, n)) {
            point_kind = pt.kind;
            uint64_t ps = point_seed(c, n, pt.value);
            auto ranks = recovery_ranks(fam, depths, pt.model, ps, c.trials, c.threads);
            std::vector<std::pair<double, double>> series;
            for (size_t di = 0; di < depths.size(); di++) {
                std::vector<size_t> at(c.trials);
                for (size_t t = 0; t < c.trials; t++) {
                    at[t] = ranks[t][di];
                }
                ResultRecord base = em.base(n, fam.geom.dimension(), (double)depths[di], pt.kind, pt.value, c.trials, ps);
                emit_rank_stats(em, base, at);
                if (pt.model.kind == ErasureKind::FixedFraction) {
                    em.value(base, "rmt_recovery", rmt_recovery(pt.model.count, n - fam.k));
                }
                if (keep_raw) {
                    for (size_t t = 0; t < c.trials; t++) {
                        out.raw.push_back({c.experiment, n, (double)depths[di], pt.value, t, "r_M", (double)at[t],
                                           trial_seed(ps, t)});
                    }
                }
                if (depths[di] >= c.dstar_min_depth) {
                    TrialStats s = stats_from_ranks(at);
                    const auto &v = c.dstar_statistic == "failure_flag" ? s.flag : s.mass;
                    series.push_back({(double)depths[di], summarize(v).mean});
                }
            }
            if (c.dstar_target && !series.empty()) {
                double d = interpolate_dstar(series, *c.dstar_target);
                em.value(em.base(n, fam.geom.dimension(), -1, pt.kind, pt.value, c.trials, ps), "d_star", d);
                dstars[pt.value].first.push_back((double)n);
                dstars[pt.value].second.push_back(d);
            }
        }
    }
    for (const auto &[point, nd] : dstars) {
        emit_dstar_fits(em, c, "d_star", point_kind, point, nd.first, nd.second);
    }
}

void run_probes(const ExperimentConfig &c, ExperimentOutput &out, bool keep_raw) {
    Emitter em(c, out);
    for (size_t n : c.n_list) {
        CodeFamily fam = family_for(c, n);
        if (fam.k == 0) {
            throw ConfigError("rate", "probes need at least one logical qubit");
        }
        std::vector<size_t> depths = c.depths_for(n);
        ErasureModel model = c.error_model.resolve(n, c.rate);
        double point = c.error_model.point_value(n, c.rate);
        std::vector<size_t> offsets;
        for (size_t x : c.separations) {
            offsets.push_back((size_t)std::llround((double)x * (double)fam.k / (double)n) % fam.k);
        }
        uint64_t ps = point_seed(c, n, point);
        // p1[t][di] and p12[t][di][s]: per-trial translation averages.
        std::vector<std::vector<double>> p1(c.trials, std::vector<double>(depths.size()));
        std::vector<std::vector<std::vector<double>>> p12(
            c.trials, std::vector<std::vector<double>>(depths.size(), std::vector<double>(offsets.size())));
        std::vector<size_t> all(fam.k);
        for (size_t j = 0; j < fam.k; j++) {
            all[j] = j;
        }
        parallel_for(c.trials, c.threads, [&](size_t t) {
            uint64_t ts = trial_seed(ps, t);
            walk_depths(fam, depths, ts, PackedTableau::Rows::CheckAndLogical, [&](size_t di, const PackedTableau &tab) {
                Rng er(erasure_seed(ts, depths[di]));
                ErasurePattern pat = sample_erasure(model, n, er);
                ProbeReport rep = probe_failures(tab, pat, all);
                double fails = 0;
                for (bool f : rep.flag) {
                    fails += f ? 1 : 0;
                }
                p1[t][di] = fails / (double)fam.k;
                for (size_t s = 0; s < offsets.size(); s++) {
                    double both = 0;
                    for (size_t j = 0; j < fam.k; j++) {
                        both += (rep.flag[j] && rep.flag[(j + offsets[s]) % fam.k]) ? 1 : 0;
                    }
                    p12[t][di][s] = both / (double)fam.k;
                }
            });
        });
        for (size_t di = 0; di < depths.size(); di++) {
            double depth = (double)depths[di];
            std::vector<double> a(c.trials);
            for (size_t t = 0; t < c.trials; t++) {
                a[t] = p1[t][di];
            }
            SummaryStats s1 = summarize(a);
            em.value(em.base(n, fam.geom.dimension(), depth, "x", 0, c.trials, ps), "P_1", s1.mean, s1.std_error);
            for (size_t s = 0; s < offsets.size(); s++) {
                ResultRecord base =
                    em.base(n, fam.geom.dimension(), depth, "x", (double)c.separations[s], c.trials, ps);
                std::vector<double> b(c.trials);
                for (size_t t = 0; t < c.trials; t++) {
                    b[t] = p12[t][di][s];
                }
                SummaryStats s12 = summarize(b);
                em.value(base, "P_12", s12.mean, s12.std_error);
                // Ratio estimator sum(b) / sum(a) with its linearized error.
                double ratio = s1.mean > 0 ? s12.mean / s1.mean : std::nan("");
                double se = 0;
                if (s1.mean > 0 && c.trials > 1) {
                    double ss = 0;
                    for (size_t t = 0; t < c.trials; t++) {
                        double d = b[t] - ratio * a[t];
                        ss += d * d;
                    }
                    se = std::sqrt(ss / (double)(c.trials - 1) / (double)c.trials) / s1.mean;
                }
                em.value(base, "P_2_given_1", ratio, se);
                if (keep_raw) {
                    for (size_t t = 0; t < c.trials; t++) {
                        out.raw.push_back({c.experiment, n, depth, (double)c.separations[s], t, "P_12", b[t],
                                           trial_seed(ps, t)});
                    }
                }
            }
            if (keep_raw) {
                for (size_t t = 0; t < c.trials; t++) {
                    out.raw.push_back({c.experiment, n, depth, 0, t, "P_1", a[t], trial_seed(ps, t)});
                }
            }
        }
    }
}

StopCriteria stop_criteria(const ExperimentConfig &c) {
    StopCriteria stop;
    if (c.stop_rate) {
        stop.min_rate = *c.stop_rate;
    } else {
        stop.min_rate = c.rate - c.expurgation_budget_offset;
    }
    stop.max_failure = c.stop_failure;
    stop.max_rounds = c.max_rounds;
    stop.failure_samples = c.failure_samples;
    return stop;
}

void run_expurgate_dstar(const ExperimentConfig &c, ExperimentOutput &out, bool keep_raw) {
    Emitter em(c, out);
    ExpurgationMode mode = parse_expurgation_mode(c.mode);
    StopCriteria base_stop = stop_criteria(c);
    double target = c.dstar_target.value_or(0.5);
    std::vector<double> ns;
    std::vector<double> d_pre;
    std::vector<double> d_post;
    for (size_t n : c.n_list) {
        CodeFamily fam = family_for(c, n);
        std::vector<size_t> depths = c.depths_for(n);
        ErasureModel model = ErasureModel::fixed((size_t)std::floor(c.erasure_fraction * (double)n + 1e-9));
        double point = c.erasure_fraction;
        // A good code rarely fails, so the rate floor alone might never be
        // reached. Cap the rounds at N unless told otherwise.
        StopCriteria stop = base_stop;
        if (!stop.max_rounds) {
            stop.max_rounds = n;
        }
        uint64_t ps = point_seed(c, n, point);
        std::vector<std::vector<double>> pre(depths.size(), std::vector<double>(c.trials));
        std::vector<std::vector<double>> post(depths.size(), std::vector<double>(c.trials));
        std::vector<std::vector<double>> k_after(depths.size(), std::vector<double>(c.trials));
        parallel_for(c.trials, c.threads, [&](size_t t) {
            uint64_t ts = trial_seed(ps, t);
            walk_depths(fam, depths, ts, PackedTableau::Rows::All, [&](size_t di, const PackedTableau &tab) {
                SubsystemCode code = fam.initial_code();
                tab.write_back(code);
                uint64_t eval_seed = derive_seed(ts, {depths[di], 0xE7A1});
                Rng eval_pre(eval_seed);
                pre[di][t] = estimate_failure(code, model, c.eval_samples, 1.96, eval_pre).rate;
                Rng exp_rng(derive_seed(ts, {depths[di], 0x5A}));
                ExpurgationResult res = run_expurgation(std::move(code), model, mode, stop, exp_rng);
                Rng eval_post(eval_seed);
                post[di][t] = estimate_failure(res.code, model, c.eval_samples, 1.96, eval_post).rate;
                k_after[di][t] = (double)res.code.num_logicals();
            });
        });
        std::vector<std::pair<double, double>> s_pre;
        std::vector<std::pair<double, double>> s_post;
        for (size_t di = 0; di < depths.size(); di++) {
            ResultRecord base = em.base(n, fam.geom.dimension(), (double)depths[di], "e", point, c.trials, ps);
            SummaryStats a = summarize(pre[di]);
            SummaryStats b = summarize(post[di]);
            em.value(base, "failure_pre", a.mean, a.std_error);
            em.value(base, "failure_post", b.mean, b.std_error);
            em.summary(base, "k_post", k_after[di]);
            if (depths[di] >= c.dstar_min_depth) {
                s_pre.push_back({(double)depths[di], a.mean});
                s_post.push_back({(double)depths[di], b.mean});
            }
            if (keep_raw) {
                for (size_t t = 0; t < c.trials; t++) {
                    out.raw.push_back({c.experiment, n, (double)depths[di], point, t, "failure_pre", pre[di][t],
                                       trial_seed(ps, t)});
                    out.raw.push_back({c.experiment, n, (double)depths[di], point, t, "failure_post", post[di][t],
                                       trial_seed(ps, t)});
                }
            }
        }
        ResultRecord base = em.base(n, fam.geom.dimension(), -1, "e", point, c.trials, ps);
        double a = interpolate_dstar(s_pre, target);
        double b = interpolate_dstar(s_post, target);
        em.value(base, "d_star_pre", a);
        em.value(base, "d_star_post", b);
        ns.push_back((double)n);
        d_pre.push_back(a);
        d_post.push_back(b);
    }
    if (ns.size() >= 2) {
        std::vector<double> logn;
        for (double n : ns) {
            logn.push_back(std::log2(n));
        }
        ResultRecord base = em.base(0, family_for(c, c.n_list[0]).geom.dimension(), -1, "e", c.erasure_fraction,
                                    c.trials, c.seed);
        em.value(base, "d_star_pre_slope_log2N", fit_line(logn, d_pre).slope);
        em.value(base, "d_star_post_slope_log2N", fit_line(logn, d_post).slope);
    }
}

double binomial_pmf(size_t n, size_t m, double e) {
    if (e <= 0) {
        return m == 0 ? 1 : 0;
    }
    if (e >= 1) {
        return m == n ? 1 : 0;
    }
    double lg = std::lgamma((double)n + 1) - std::lgamma((double)m + 1) - std::lgamma((double)(n - m) + 1);
    return std::exp(lg + (double)m * std::log(e) + (double)(n - m) * std::log1p(-e));
}

void run_haar(const ExperimentConfig &c, ExperimentOutput &out, bool keep_raw) {
    Emitter em(c, out);
    HaarEncoding enc = c.encoding == "circuit" ? HaarEncoding::LocalCircuit : HaarEncoding::Dense;
    for (size_t n : c.n_list) {
        size_t k = logical_count(n, c.rate);
        auto run_point = [&](double point, const ErasureModel &model, std::vector<double> &ic,
                             std::vector<double> &ire) -> uint64_t {
            uint64_t ps = point_seed(c, n, point);
            ic.assign(c.trials, 0);
            ire.assign(c.trials, 0);
            parallel_for(c.trials, c.threads, [&](size_t t) {
                uint64_t ts = trial_seed(ps, t);
                Rng er(erasure_seed(ts, 0));
                ErasurePattern pat = sample_erasure(model, n, er);
                Rng rng(ts);
                HaarTrialResult r = haar_erasure_trial(n, k, pat, rng, enc, c.circuit_depth);
                ic[t] = r.i_c;
                ire[t] = r.i_re;
            });
            if (keep_raw) {
                for (size_t t = 0; t < c.trials; t++) {
                    out.raw.push_back({c.experiment, n, -1, point, t, "I_RE", ire[t], trial_seed(ps, t)});
                }
            }
            return ps;
        };
        if (c.haar_model == "iid_mixture") {
            // Conditional means per erasure count, mixed with binomial weights.
            std::vector<SummaryStats> ic_by(n + 1);
            std::vector<SummaryStats> ire_by(n + 1);
            for (size_t m = 0; m <= n; m++) {
                std::vector<double> ic;
                std::vector<double> ire;
                uint64_t ps = run_point((double)m, ErasureModel::fixed(m), ic, ire);
                ic_by[m] = summarize(ic);
                ire_by[m] = summarize(ire);
                ResultRecord base = em.base(n, 0, -1, "n_e", (double)m, c.trials, ps);
                em.value(base, "I_c_given_n_e", ic_by[m].mean, ic_by[m].std_error);
                em.value(base, "I_RE_given_n_e", ire_by[m].mean, ire_by[m].std_error);
            }
            for (double e : c.e_values) {
                double ic = 0;
                double ire = 0;
                double var = 0;
                for (size_t m = 0; m <= n; m++) {
                    double w = binomial_pmf(n, m, e);
                    ic += w * ic_by[m].mean;
                    ire += w * ire_by[m].mean;
                    var += w * w * ire_by[m].std_error * ire_by[m].std_error;
                }
                ResultRecord base = em.base(n, 0, -1, "e", e, c.trials, c.seed);
                em.value(base, "I_c", ic);
                em.value(base, "I_RE", ire, std::sqrt(var));
            }
            continue;
        }
        for (double e : c.e_values) {
            ErasureModel model = c.haar_model == "iid" ? ErasureModel::iid(e)
                                                       : ErasureModel::fixed((size_t)std::floor(e * (double)n + 1e-9));
            std::vector<double> ic;
            std::vector<double> ire;
            uint64_t ps = run_point(e, model, ic, ire);
            ResultRecord base = em.base(n, 0, -1, "e", e, c.trials, ps);
            em.summary(base, "I_c", ic);
            em.summary(base, "I_RE", ire);
        }
    }
}

/// All n_e-subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_subset(size_t n, size_t m, F fn) {
    std::vector<size_t> idx(m);
    for (size_t i = 0; i < m; i++) {
        idx[i] = i;
    }
    while (true) {
        fn(idx);
        size_t i = m;
        while (i > 0 && idx[i - 1] == n - m + i - 1) {
            i--;
        }
        if (i == 0) {
            return;
        }
        idx[i - 1]++;
        for (size_t j = i; j < m; j++) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

double binomial_coefficient(size_t n, size_t m) {
    return std::round(std::exp(std::lgamma((double)n + 1) - std::lgamma((double)m + 1) -
                               std::lgamma((double)(n - m) + 1)));
}

void run_self_averaging(const ExperimentConfig &c, ExperimentOutput &out, bool keep_raw) {
    Emitter em(c, out);
    for (size_t n : c.n_list) {
        CodeFamily fam = family_for(c, n);
        std::vector<size_t> depths = c.depths_for(n);
        if (depths.size() != 1) {
            throw ConfigError("depths", "self-averaging takes a single depth");
        }
        ErasureModel model = c.error_model.resolve(n, c.rate);
        if (model.kind != ErasureKind::FixedFraction) {
            throw ConfigError("error_model.kind", "self-averaging needs a fixed erasure count");
        }
        double point = c.error_model.point_value(n, c.rate);
        uint64_t ps = point_seed(c, n, point);
        bool exact = binomial_coefficient(n, model.count) <= (double)c.exact_limit;
        std::vector<double> mean(c.trials);
        std::vector<double> noise(c.trials);
        parallel_for(c.trials, c.threads, [&](size_t t) {
            uint64_t ts = trial_seed(ps, t);
            walk_depths(fam, depths, ts, PackedTableau::Rows::CheckAndLogical, [&](size_t, const PackedTableau &tab) {
                RankEvaluator ev;
                std::vector<double> p;
                if (exact) {
                    for_each_subset(n, model.count, [&](const std::vector<size_t> &s) {
                        p.push_back(std::ldexp(1.0, -(int)ev.r_m(tab, ErasurePattern{s})));
                    });
                } else {
                    Rng er(erasure_seed(ts, depths[0]));
                    for (size_t i = 0; i < c.patterns_per_code; i++) {
                        p.push_back(std::ldexp(1.0, -(int)ev.r_m(tab, sample_erasure(model, n, er))));
                    }
                }
                SummaryStats s = summarize(p);
                mean[t] = s.mean;
                noise[t] = exact ? 0 : s.std_error * s.std_error;
            });
        });
        ResultRecord base = em.base(n, fam.geom.dimension(), (double)depths[0], c.error_model.point_kind(), point,
                                    c.trials, ps);
        SummaryStats s = summarize(mean);
        double var_raw = s.std_error * s.std_error * (double)c.trials;
        double noise_mean = 0;
        for (double v : noise) {
            noise_mean += v / (double)c.trials;
        }
        double r_rmt = rmt_recovery(model.count, n - fam.k);
        double rms = 0;
        for (double m : mean) {
            rms += (m - r_rmt) * (m - r_rmt) / (double)c.trials;
        }
        em.value(base, "mean_recovery", s.mean, s.std_error);
        em.value(base, "std_raw", std::sqrt(var_raw));
        em.value(base, "pattern_noise_var", noise_mean);
        em.value(base, "std_denoised", std::sqrt(std::max(0.0, var_raw - noise_mean)));
        em.value(base, "rms_from_rmt", std::sqrt(std::max(0.0, rms - noise_mean)));
        em.value(base, "rmt_recovery", r_rmt);
        em.value(base, "exact_enumeration", exact ? 1 : 0);
        if (keep_raw) {
            for (size_t t = 0; t < c.trials; t++) {
                out.raw.push_back({c.experiment, n, (double)depths[0], point, t, "code_recovery", mean[t],
                                   trial_seed(ps, t)});
            }
        }
    }
}

void run_predict(const ExperimentConfig &c, ExperimentOutput &out) {
    Emitter em(c, out);
    for (size_t n : c.n_list) {
        size_t k = logical_count(n, c.rate);
        size_t n_s = n - k;
        for (size_t m = 0; m <= n; m++) {
            ResultRecord base = em.base(n, 0, -1, "n_e", (double)m, 0, 0);
            long delta = 2 * (long)m - (long)n_s;
            em.value(base, "p_recover_rmt", rmt_recovery(m, n_s));
            em.value(base, "p_fail_rmt", rmt_failure(m, n_s));
            em.value(base, "p_fail_asymptotic", rmt_failure_asymptotic(delta));
            em.value(base, "ising_estimate", ising_surface_estimate(m, n_s, c.rate, n));
        }
    }
}

}  // namespace

SubsystemCode CodeFamily::initial_code() const {
    std::vector<size_t> sites = default_logical_sites(geom, k);
    return SubsystemCode::trivial(geom.n, sites);
}

CodeFamily make_family(const std::string &geometry, size_t n, double rate, GateEnsemble ensemble, size_t block_size) {
    CodeFamily f;
    f.ensemble = ensemble;
    switch (Geometry::parse_kind(geometry)) {
        case GeometryKind::Chain1D:
            f.geom = Geometry::chain(n);
            break;
        case GeometryKind::Grid2D: {
            size_t l = (size_t)std::llround(std::sqrt((double)n));
            if (l * l != n) {
                throw std::invalid_argument("grid2d needs N to be a perfect square");
            }
            f.geom = Geometry::grid(l, l);
            break;
        }
        case GeometryKind::AllToAll:
            f.geom = Geometry::all_to_all(n);
            break;
        case GeometryKind::Blocks:
            f.geom = Geometry::blocks(n, block_size);
            break;
    }
    f.geom.validate();
    if (rate < 0 || rate > 1) {
        throw std::invalid_argument("rate must lie in [0, 1]");
    }
    f.k = logical_count(n, rate);
    return f;
}

void walk_depths(
    const CodeFamily &family, std::span<const size_t> depths, uint64_t circuit_seed, PackedTableau::Rows rows,
    const std::function<void(size_t, const PackedTableau &)> &visit) {
    PackedTableau tab(family.initial_code(), rows);
    Rng rng(derive_seed(circuit_seed, {0xC12C}));
    size_t layer = 0;
    for (size_t i = 0; i < depths.size(); i++) {
        if (depths[i] < layer) {
            throw std::invalid_argument("depths must be ascending");
        }
        apply_random_layers(tab, family.geom, family.ensemble, layer, depths[i] - layer, rng);
        layer = depths[i];
        visit(i, tab);
    }
}

uint64_t erasure_seed(uint64_t trial_seed, size_t depth) {
    return derive_seed(trial_seed, {depth, 0xE4A5});
}

ErasureModel ErrorModelConfig::resolve(size_t n, double rate) const {
    ErasureModel m;
    if (kind == "fixed") {
        if (n_e) {
            m = ErasureModel::fixed(*n_e);
        } else {
            double f = fraction.value_or(capacity_erasure_rate(rate));
            m = ErasureModel::fixed((size_t)std::floor(f * (double)n + 1e-9));
        }
    } else if (kind == "iid") {
        m = ErasureModel::iid(e.value_or(capacity_erasure_rate(rate)));
    } else if (kind == "regular") {
        m = ErasureModel::regular(spacing);
    } else {
        throw ConfigError("error_model.kind", "unknown erasure model '" + kind + "'");
    }
    m.validate(n);
    return m;
}

std::string ErrorModelConfig::point_kind() const {
    if (kind == "fixed") {
        return n_e ? "n_e" : "e";
    }
    return kind == "iid" ? "e" : "spacing";
}

double ErrorModelConfig::point_value(size_t n, double rate) const {
    (void)n;
    if (kind == "fixed") {
        return n_e ? (double)*n_e : fraction.value_or(capacity_erasure_rate(rate));
    }
    if (kind == "iid") {
        return e.value_or(capacity_erasure_rate(rate));
    }
    return (double)spacing;
}

GateEnsemble ExperimentConfig::resolved_ensemble() const {
    if (ensemble) {
        return parse_ensemble(*ensemble);
    }
    if (experiment == "depth-sweep" && geometry == "grid2d") {
        return GateEnsemble::ISwapPlusSingles;
    }
    return GateEnsemble::UniformClifford2Q;
}

std::vector<size_t> ExperimentConfig::depths_for(size_t n) const {
    if (!depths.empty()) {
        return depths;
    }
    double f = depth_factor.value_or(2.0);
    return {(size_t)std::llround(f * (double)n)};
}

void ExperimentConfig::validate() const {
    if (!kExperiments.count(experiment)) {
        throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
    }
    if (n_list.empty()) {
        throw ConfigError("N", "at least one system size is required");
    }
    for (size_t n : n_list) {
        if (n == 0 || n % 2 != 0) {
            throw ConfigError("N", "system sizes must be even and positive");
        }
    }
    if (trials < 1 && experiment != "predict") {
        throw ConfigError("trials", "must be at least 1");
    }
    if (!std::is_sorted(depths.begin(), depths.end())) {
        throw ConfigError("depths", "must be sorted ascending");
    }
    if (rate < 0 || rate > 1) {
        throw ConfigError("rate", "must lie in [0, 1]");
    }
    if (threads < 1) {
        throw ConfigError("threads", "must be at least 1");
    }
    try {
        Geometry::parse_kind(geometry);
    } catch (const std::exception &e) {
        throw ConfigError("geometry", e.what());
    }
    try {
        resolved_ensemble();
    } catch (const std::exception &e) {
        throw ConfigError("ensemble", e.what());
    }
    if (experiment == "predict") {
        return;
    }
    if (experiment != "haar") {
        for (size_t n : n_list) {
            try {
                make_family(geometry, n, rate, resolved_ensemble(), block_size);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(geometry == "blocks" ? "block_size" : "N", e.what());
            }
        }
    }
    if (experiment == "rmt-sweep" && deltas.empty()) {
        throw ConfigError("deltas", "rmt-sweep needs at least one delta");
    }
    if (experiment == "haar") {
        if (e_values.empty()) {
            throw ConfigError("e_values", "haar needs at least one erasure rate");
        }
        if (haar_model != "fixed" && haar_model != "iid" && haar_model != "iid_mixture") {
            throw ConfigError("haar_model", "expected fixed, iid or iid_mixture");
        }
        if (encoding != "dense" && encoding != "circuit") {
            throw ConfigError("encoding", "expected dense or circuit");
        }
    }
    if (experiment == "probes" && separations.empty()) {
        throw ConfigError("separations", "probes need at least one separation");
    }
    if (experiment == "expurgate-dstar") {
        try {
            parse_expurgation_mode(mode);
        } catch (const std::exception &e) {
            throw ConfigError("mode", e.what());
        }
    }
    if (dstar_statistic != "failure_mass" && dstar_statistic != "failure_flag") {
        throw ConfigError("dstar_statistic", "expected failure_mass or failure_flag");
    }
    if (experiment != "haar" && experiment != "expurgate-dstar") {
        for (size_t n : n_list) {
            try {
                error_model.resolve(n, rate);
            } catch (const ConfigError &) {
                throw;
            } catch (const std::exception &e) {
                throw ConfigError("error_model", e.what());
            }
        }
    }
}

ExperimentConfig parse_config_text(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<document>", e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("<document>", "expected a JSON object");
    }
    ExperimentConfig c;
    for (const auto &[key, v] : j.items()) {
        if (key == "experiment") {
            c.experiment = get_string(v, key);
        } else if (key == "geometry") {
            c.geometry = get_string(v, key);
        } else if (key == "ensemble") {
            c.ensemble = get_string(v, key);
        } else if (key == "N") {
            c.n_list = get_list(v, key, get_count);
        } else if (key == "block_size") {
            c.block_size = get_count(v, key);
        } else if (key == "depths") {
            c.depths = get_list(v, key, get_count);
        } else if (key == "depth_factor") {
            c.depth_factor = get_number(v, key);
        } else if (key == "rate") {
            c.rate = get_number(v, key);
        } else if (key == "error_model") {
            c.error_model = parse_error_model(v);
        } else if (key == "deltas") {
            c.deltas = get_list(v, key, get_long);
        } else if (key == "separations") {
            c.separations = get_list(v, key, get_count);
        } else if (key == "e_values") {
            c.e_values = get_list(v, key, get_number);
        } else if (key == "haar_model") {
            c.haar_model = get_string(v, key);
        } else if (key == "encoding") {
            c.encoding = get_string(v, key);
        } else if (key == "circuit_depth") {
            c.circuit_depth = get_count(v, key);
        } else if (key == "trials") {
            c.trials = get_count(v, key);
        } else if (key == "seed") {
            c.seed = get_as<uint64_t>(v, key);
        } else if (key == "threads") {
            c.threads = get_count(v, key);
        } else if (key == "output") {
            c.output = get_string(v, key);
        } else if (key == "dstar_target") {
            c.dstar_target = get_number(v, key);
        } else if (key == "dstar_statistic") {
            c.dstar_statistic = get_string(v, key);
        } else if (key == "dstar_min_depth") {
            c.dstar_min_depth = get_count(v, key);
        } else if (key == "mode") {
            c.mode = get_string(v, key);
        } else if (key == "expurgation_budget_offset") {
            c.expurgation_budget_offset = get_number(v, key);
        } else if (key == "stop_rate") {
            c.stop_rate = get_number(v, key);
        } else if (key == "stop_failure") {
            c.stop_failure = get_number(v, key);
        } else if (key == "max_rounds") {
            c.max_rounds = get_count(v, key);
        } else if (key == "eval_samples") {
            c.eval_samples = get_count(v, key);
        } else if (key == "failure_samples") {
            c.failure_samples = get_count(v, key);
        } else if (key == "erasure_fraction") {
            c.erasure_fraction = get_number(v, key);
        } else if (key == "patterns_per_code") {
            c.patterns_per_code = get_count(v, key);
        } else if (key == "exact_limit") {
            c.exact_limit = get_count(v, key);
        } else if (key == "statistics") {
            c.statistics = get_list(v, key, get_string);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    if (c.experiment.empty()) {
        throw ConfigError("experiment", "missing");
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

uint64_t point_seed(const ExperimentConfig &config, size_t n, double point) {
    return derive_seed(config.seed, {hash_string(config.experiment), n, double_bits(point)});
}

uint64_t trial_seed(uint64_t point_seed, size_t trial) {
    return derive_seed(point_seed, {trial});
}

std::vector<size_t> trial_ranks(
    const CodeFamily &family, std::span<const size_t> depths, const ErasureModel &model, uint64_t trial_seed) {
    std::vector<size_t> out(depths.size());
    RankEvaluator ev;
    walk_depths(family, depths, trial_seed, PackedTableau::Rows::CheckAndLogical, [&](size_t di, const PackedTableau &tab) {
        Rng er(erasure_seed(trial_seed, depths[di]));
        out[di] = ev.r_m(tab, sample_erasure(model, family.geom.n, er));
    });
    return out;
}

std::vector<std::vector<size_t>> recovery_ranks(
    const CodeFamily &family, std::span<const size_t> depths, const ErasureModel &model, uint64_t seed, size_t trials,
    size_t threads) {
    std::vector<std::vector<size_t>> out(trials);
    parallel_for(trials, threads, [&](size_t t) { out[t] = trial_ranks(family, depths, model, trial_seed(seed, t)); });
    return out;
}

size_t replay_recovery_trial(const ExperimentConfig &config, size_t n, double point, size_t depth, size_t trial) {
    if (config.experiment != "rmt-sweep" && config.experiment != "depth-sweep" &&
        config.experiment != "regular-erasure") {
        throw ConfigError("experiment", "replay supports rmt-sweep, depth-sweep and regular-erasure");
    }
    const SweepPoint *found = nullptr;
    auto points = sweep_points(config, n);
    for (const auto &p : points) {
        if (p.value == point) {
            found = &p;
        }
    }
    if (!found) {
        throw ConfigError("point", "no sweep point " + format_double(point) + " at N = " + std::to_string(n));
    }
    CodeFamily fam = family_for(config, n);
    size_t d[1] = {depth};
    return trial_ranks(fam, d, found->model, trial_seed(point_seed(config, n, point), trial))[0];
}

ExperimentOutput run_experiment(const ExperimentConfig &config, bool keep_raw) {
    config.validate();
    ExperimentOutput out;
    const std::string &e = config.experiment;
    if (e == "rmt-sweep" || e == "depth-sweep" || e == "regular-erasure") {
        run_recovery_sweep(config, out, keep_raw);
    } else if (e == "probes") {
        run_probes(config, out, keep_raw);
    } else if (e == "expurgate-dstar") {
        run_expurgate_dstar(config, out, keep_raw);
    } else if (e == "haar") {
        run_haar(config, out, keep_raw);
    } else if (e == "self-averaging") {
        run_self_averaging(config, out, keep_raw);
    } else {
        run_predict(config, out);
    }
    return out;
}

}  // namespace qeclab

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

// qeclab command line: run experiments, print predictions, expurgate a code,
// run Haar trials and replay single trials.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qeclab/analytics.h"
#include "qeclab/errors.h"
#include "qeclab/experiments.h"

namespace {

using namespace qeclab;

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;
constexpr int kExitNoCrossing = 4;

struct CommonArgs {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<size_t> threads;
    std::string out;
    bool raw = false;
};

void add_common(CLI::App *cmd, CommonArgs &a, bool config_required = true) {
    auto *opt = cmd->add_option("--config", a.config, "JSON experiment config");
    if (config_required) {
        opt->required();
    }
    cmd->add_option("--seed", a.seed, "Master seed (overrides the config)");
    cmd->add_option("--threads", a.threads, "Worker threads");
    cmd->add_option("--out", a.out, "Output CSV path (default: stdout)");
    cmd->add_flag("--raw", a.raw, "Also write per-trial values to <out>.raw.csv");
}

ExperimentConfig load(const CommonArgs &a) {
    ExperimentConfig c = load_config(a.config);
    if (a.seed) {
        c.seed = *a.seed;
    }
    if (a.threads) {
        c.threads = *a.threads;
    }
    c.validate();
    return c;
}

std::string output_path(const CommonArgs &a, const ExperimentConfig &c) {
    return a.out.empty() ? c.output : a.out;
}

/// Calls write(stream) on the file, or on stdout for an empty path.
template <typename F>
void emit(const std::string &path, F write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("--out", "cannot write '" + path + "'");
    }
    write(f);
}

int cmd_run(const CommonArgs &a) {
    ExperimentConfig c = load(a);
    ExperimentOutput out = run_experiment(c, a.raw);
    std::string path = output_path(a, c);
    emit(path, [&](std::ostream &s) { write_csv(s, out.records); });
    if (a.raw) {
        std::string raw_path = (path.empty() ? std::string("qeclab") : path) + ".raw.csv";
        emit(raw_path, [&](std::ostream &s) { write_raw_csv(s, out.raw); });
    }
    return 0;
}

int cmd_predict(const CommonArgs &a, std::vector<size_t> ns, double rate) {
    if (!a.config.empty()) {
        ExperimentConfig c = load(a);
        ns = c.n_list;
        rate = c.rate;
    }
    if (ns.empty()) {
        throw ConfigError("N", "give --config or --N");
    }
    emit(a.out, [&](std::ostream &s) {
        s << "n_e,n_s,p_recover_rmt,p_fail_asymptotic\n";
        for (size_t n : ns) {
            size_t k = (size_t)std::llround(rate * (double)n);
            size_t n_s = n - k;
            for (size_t m = 0; m <= n; m++) {
                long delta = 2 * (long)m - (long)n_s;
                s << m << ',' << n_s << ',' << format_double(rmt_recovery(m, n_s)) << ','
                  << format_double(rmt_failure_asymptotic(delta)) << '\n';
            }
        }
    });
    return 0;
}

struct ExpurgateArgs {
    std::optional<std::string> mode;
    std::optional<double> erasure_fraction;
    std::optional<double> stop_rate;
    std::optional<double> stop_failure;
    std::optional<size_t> max_rounds;
    std::string dump_code;
};

int cmd_expurgate(const CommonArgs &a, const ExpurgateArgs &x) {
    ExperimentConfig c = load(a);
    if (x.mode) {
        c.mode = *x.mode;
    }
    if (x.erasure_fraction) {
        c.erasure_fraction = *x.erasure_fraction;
    }
    if (x.stop_rate) {
        c.stop_rate = *x.stop_rate;
    }
    if (x.stop_failure) {
        c.stop_failure = *x.stop_failure;
    }
    if (x.max_rounds) {
        c.max_rounds = *x.max_rounds;
    }
    ExpurgationMode mode;
    try {
        mode = parse_expurgation_mode(c.mode);
    } catch (const std::exception &e) {
        throw ConfigError("--mode", e.what());
    }
    size_t n = c.n_list.front();
    CodeFamily fam = make_family(c.geometry, n, c.rate, c.resolved_ensemble(), c.block_size);
    size_t depth = c.depths_for(n).back();
    uint64_t seed = trial_seed(point_seed(c, n, c.erasure_fraction), 0);
    SubsystemCode code = fam.initial_code();
    size_t d[1] = {depth};
    walk_depths(fam, d, seed, PackedTableau::Rows::All, [&](size_t, const PackedTableau &tab) { tab.write_back(code); });

    StopCriteria stop;
    stop.min_rate = c.stop_rate ? *c.stop_rate : c.rate - c.expurgation_budget_offset;
    stop.max_failure = c.stop_failure;
    stop.max_rounds = c.max_rounds;
    stop.failure_samples = c.failure_samples;
    ErasureModel model = ErasureModel::fixed((size_t)std::floor(c.erasure_fraction * (double)n + 1e-9));
    Rng rng(derive_seed(seed, {depth, 0x5A}));
    ExpurgationResult res = run_expurgation(std::move(code), model, mode, stop, rng);

    emit(output_path(a, c), [&](std::ostream &s) {
        s << "schema_version,N,depth,round,pattern_seed,n_expurgated,k_remaining,failure_estimate\n";
        for (const auto &r : res.trace.rounds) {
            s << kSchemaVersion << ',' << n << ',' << depth << ',' << r.round << ',' << r.pattern_seed << ','
              << r.n_expurgated << ',' << r.k_remaining << ',' << format_double(r.failure_estimate) << '\n';
        }
    });
    std::cerr << "stop: " << res.trace.stop_reason << (res.trace.failed ? " (failed)" : "") << "\n";
    if (!x.dump_code.empty()) {
        emit(x.dump_code, [&](std::ostream &s) { write_code(s, res.code); });
    }
    return res.trace.failed ? 1 : 0;
}

int cmd_haar(const CommonArgs &a) {
    ExperimentConfig c = load(a);
    if (c.experiment != "haar") {
        throw ConfigError("experiment", "the haar command needs experiment = haar");
    }
    ExperimentOutput out = run_experiment(c, a.raw);
    std::string path = output_path(a, c);
    emit(path, [&](std::ostream &s) {
        s << "schema_version,N,k,model,point_kind,point,I_c_mean,I_RE_mean,stderr,trials,seed\n";
        for (size_t i = 0; i + 1 < out.records.size(); i++) {
            const ResultRecord &ic = out.records[i];
            const ResultRecord &ire = out.records[i + 1];
            bool pair = (ic.statistic == "I_c" && ire.statistic == "I_RE") ||
                        (ic.statistic == "I_c_given_n_e" && ire.statistic == "I_RE_given_n_e");
            if (!pair) {
                continue;
            }
            std::string model = ic.point_kind == "n_e" ? std::string("fixed") : c.haar_model;
            size_t k = (size_t)std::llround(c.rate * (double)ic.n);
            s << kSchemaVersion << ',' << ic.n << ',' << k << ',' << model << ',' << ic.point_kind << ','
              << format_double(ic.point) << ',' << format_double(ic.value) << ',' << format_double(ire.value) << ','
              << format_double(ire.std_error) << ',' << ic.trials << ',' << ic.seed << '\n';
            i++;
        }
    });
    if (a.raw) {
        std::string raw_path = (path.empty() ? std::string("qeclab") : path) + ".raw.csv";
        emit(raw_path, [&](std::ostream &s) { write_raw_csv(s, out.raw); });
    }
    return 0;
}

int cmd_replay(const CommonArgs &a, size_t n, double point, size_t depth, size_t trial) {
    ExperimentConfig c = load(a);
    size_t r = replay_recovery_trial(c, n, point, depth, trial);
    uint64_t seed = trial_seed(point_seed(c, n, point), trial);
    emit(a.out, [&](std::ostream &s) {
        s << "N,depth,point,trial,seed,r_M,recovery\n";
        s << n << ',' << depth << ',' << format_double(point) << ',' << trial << ',' << seed << ',' << r << ','
          << format_double(std::ldexp(1.0, -(int)r)) << '\n';
    });
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qeclab: erasure decoding of random Clifford circuit codes"};
    app.require_subcommand(1);

    CommonArgs run_args;
    auto *run = app.add_subcommand("run", "Run the experiment described by a config");
    add_common(run, run_args);

    CommonArgs predict_args;
    std::vector<size_t> predict_n;
    double predict_rate = 0.5;
    auto *predict = app.add_subcommand("predict", "Random-matrix recovery predictions");
    add_common(predict, predict_args, false);
    predict->add_option("--N", predict_n, "System sizes");
    predict->add_option("--rate", predict_rate, "Code rate k/N");

    CommonArgs exp_args;
    ExpurgateArgs exp;
    auto *expurgate = app.add_subcommand("expurgate", "Expurgate one encoded code and print the trace");
    add_common(expurgate, exp_args);
    expurgate->add_option("--mode", exp.mode, "stabilizer or gauge");
    expurgate->add_option("--erasure-fraction", exp.erasure_fraction, "n_e / N of the training erasures");
    expurgate->add_option("--stop-rate", exp.stop_rate, "Lowest allowed rate k/N");
    expurgate->add_option("--stop-failure", exp.stop_failure, "Target failure probability");
    expurgate->add_option("--max-rounds", exp.max_rounds, "Round limit");
    expurgate->add_option("--dump-code", exp.dump_code, "Write the final tableau here");

    CommonArgs haar_args;
    auto *haar = app.add_subcommand("haar", "Haar-random encoding trials");
    add_common(haar, haar_args);

    CommonArgs replay_args;
    size_t replay_n = 0;
    double replay_point = 0;
    size_t replay_depth = 0;
    size_t replay_trial = 0;
    auto *replay = app.add_subcommand("replay", "Recompute one recovery trial from its seed");
    add_common(replay, replay_args);
    replay->add_option("--N", replay_n, "System size")->required();
    replay->add_option("--point", replay_point, "Sweep point (delta, n_e, e or spacing)")->required();
    replay->add_option("--depth", replay_depth, "Circuit depth")->required();
    replay->add_option("--trial", replay_trial, "Trial index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(run_args);
        }
        if (*predict) {
            return cmd_predict(predict_args, predict_n, predict_rate);
        }
        if (*expurgate) {
            return cmd_expurgate(exp_args, exp);
        }
        if (*haar) {
            return cmd_haar(haar_args);
        }
        return cmd_replay(replay_args, replay_n, replay_point, replay_depth, replay_trial);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ResourceLimitError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const NoCrossingError &e) {
        std::cerr << "no crossing: " << e.what() << "\n";
        return kExitNoCrossing;
    } catch (const SingularFitError &e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return kExitNoCrossing;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

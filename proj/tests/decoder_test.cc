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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "qeclab/errors.h"
#include "qeclab/haar.h"
#include "test_util.h"

namespace qeclab {
namespace {

SubsystemCode encoded(size_t n, const std::vector<size_t> &sites, size_t depth, Rng &rng, GeometryKind kind) {
    SubsystemCode c = SubsystemCode::trivial(n, sites);
    Geometry g = kind == GeometryKind::Chain1D ? Geometry::chain(n) : Geometry::all_to_all(n);
    apply_random_circuit(c, g, GateEnsemble::UniformClifford2Q, depth, rng);
    return c;
}

std::vector<size_t> random_sites(size_t n, size_t k, Rng &rng) {
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; i++) {
        all[i] = i;
    }
    for (size_t i = 0; i < k; i++) {
        std::swap(all[i], all[i + uniform_index(rng, n - i)]);
    }
    all.resize(k);
    return all;
}

TEST(SampleErasure, Models) {
    Rng rng(1);
    EXPECT_EQ(sample_erasure(ErasureModel::fixed(0), 10, rng).size(), 0u);
    for (int t = 0; t < 100; t++) {
        ErasurePattern p = sample_erasure(ErasureModel::fixed(5), 12, rng);
        ASSERT_EQ(p.size(), 5u);
        EXPECT_TRUE(std::is_sorted(p.sites.begin(), p.sites.end()));
        EXPECT_EQ(std::adjacent_find(p.sites.begin(), p.sites.end()), p.sites.end());
    }
    std::set<std::vector<size_t>> regular;
    for (int t = 0; t < 200; t++) {
        ErasurePattern p = sample_erasure(ErasureModel::regular(4), 16, rng);
        ASSERT_EQ(p.size(), 4u);
        for (size_t i = 1; i < 4; i++) {
            EXPECT_EQ(p.sites[i] - p.sites[i - 1], 4u);
        }
        regular.insert(p.sites);
    }
    EXPECT_EQ(regular.size(), 4u);
    EXPECT_THROW(sample_erasure(ErasureModel::fixed(11), 10, rng), std::invalid_argument);
    EXPECT_THROW(sample_erasure(ErasureModel::regular(3), 16, rng), std::invalid_argument);
}

TEST(SampleErasure, IidMeanIsBinomial) {
    Rng rng(2);
    const size_t n = 40;
    const double e = 0.3;
    const int draws = 100000;
    double total = 0;
    for (int t = 0; t < draws; t++) {
        total += (double)sample_erasure(ErasureModel::iid(e), n, rng).size();
    }
    double sigma = std::sqrt(n * e * (1 - e) / draws);
    EXPECT_LT(std::abs(total / draws - e * n), 3 * sigma);
}

TEST(SampleErasure, FixedIsUniformOverSubsets) {
    Rng rng(3);
    std::map<std::vector<size_t>, int> counts;
    const int draws = 60000;
    for (int t = 0; t < draws; t++) {
        counts[sample_erasure(ErasureModel::fixed(2), 6, rng).sites]++;
    }
    ASSERT_EQ(counts.size(), 15u);
    double expect = draws / 15.0;
    for (const auto &[s, c] : counts) {
        EXPECT_LT(std::abs(c - expect), 5 * std::sqrt(expect));
    }
}

TEST(SyndromeMatrix, TrivialCodeRows) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    SyndromeMatrix s = syndrome_matrix(c, make_pattern({2}, 4));
    ASSERT_EQ(s.m.num_rows(), 2u);
    ASSERT_EQ(s.m.num_cols(), 6u);
    EXPECT_EQ(s.split, 2u);
    EXPECT_EQ(s.m.row(0).str(), "000000");
    EXPECT_EQ(s.m.row(1).str(), "010000");

    SyndromeMatrix l = syndrome_matrix(c, make_pattern({3}, 4));
    // Z_3 anticommutes with X-bar_2 (column 4), X_3 with Z-bar_2 (column 5).
    EXPECT_EQ(l.m.row(0).str(), "000010");
    EXPECT_EQ(l.m.row(1).str(), "000001");

    EXPECT_EQ(syndrome_matrix(c, make_pattern({}, 4)).m.num_rows(), 0u);
}

TEST(SyndromeMatrix, PackedMatchesRowwise) {
    Rng rng(4);
    for (int t = 0; t < 100; t++) {
        size_t n = 2 * (1 + uniform_index(rng, 20));
        SubsystemCode c = encoded(n, random_sites(n, uniform_index(rng, n + 1), rng), 4, rng, GeometryKind::Chain1D);
        PackedTableau tab(c, PackedTableau::Rows::CheckAndLogical);
        ErasurePattern p = sample_erasure(ErasureModel::fixed(uniform_index(rng, n + 1)), n, rng);
        SyndromeMatrix a = syndrome_matrix(c, p);
        SyndromeMatrix b = syndrome_matrix(tab, p);
        EXPECT_EQ(a.m, b.m);
        EXPECT_EQ(a.split, b.split);
        RankEvaluator ev;
        EXPECT_EQ(ev.r_m(tab, p), recovery_probability(c, p).r_m);
    }
}

TEST(Recovery, Examples) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    Recovery none = recovery_probability(c, make_pattern({}, 4));
    EXPECT_EQ(none.r_m, 0u);
    EXPECT_EQ(none.p, 1.0);
    Recovery logical = recovery_probability(c, make_pattern({1}, 4));
    EXPECT_EQ(logical.r_m, 2u);
    EXPECT_EQ(logical.p, 0.25);
    EXPECT_EQ(logical.coherent_information, 0);
    EXPECT_EQ(recovery_probability(c, make_pattern({0}, 4)).p, 1.0);
    EXPECT_EQ(brute_force_recovery(c, make_pattern({}, 4)), 1.0);
    EXPECT_EQ(brute_force_recovery(c, make_pattern({1}, 4)), 0.25);
}

TEST(Recovery, MatchesBruteForceExactly) {
    Rng rng(5);
    int checked = 0;
    for (int t = 0; t < 600; t++) {
        size_t n = 2 * (1 + uniform_index(rng, 4));
        size_t k = uniform_index(rng, n + 1);
        size_t depth = uniform_index(rng, 9);
        GeometryKind kind = coin_flip(rng) ? GeometryKind::Chain1D : GeometryKind::AllToAll;
        SubsystemCode c = encoded(n, random_sites(n, k, rng), depth, rng, kind);
        if (c.num_stabilizers() > 0 && uniform_index(rng, 4) == 0) {
            c.demote_stabilizer_to_gauge(uniform_index(rng, c.num_stabilizers()));
        }
        size_t ne = uniform_index(rng, std::min<size_t>(3, n) + 1);
        ErasurePattern p = sample_erasure(ErasureModel::fixed(ne), n, rng);
        ASSERT_EQ(recovery_probability(c, p).p, brute_force_recovery(c, p)) << code_to_string(c);
        checked++;
    }
    EXPECT_GE(checked, 500);
    EXPECT_THROW(brute_force_recovery(SubsystemCode::trivial(10, std::vector<size_t>{}),
                                      make_pattern({0, 1, 2, 3, 4, 5, 6, 7, 8}, 10)),
                 ResourceLimitError);
}

TEST(Recovery, Properties) {
    Rng rng(6);
    for (int t = 0; t < 300; t++) {
        size_t n = 2 * (1 + uniform_index(rng, 12));
        size_t k = uniform_index(rng, n + 1);
        SubsystemCode c = encoded(n, random_sites(n, k, rng), 3, rng, GeometryKind::Chain1D);
        ErasurePattern p = sample_erasure(ErasureModel::iid(0.4), n, rng);
        Recovery r = recovery_probability(c, p);
        EXPECT_LE(r.r_m, 2 * k);
        EXPECT_GE(r.coherent_information, -(long)k);
        EXPECT_LE(r.coherent_information, (long)k);
        // Adding a site never helps.
        std::vector<size_t> bigger = p.sites;
        size_t extra = uniform_index(rng, n);
        if (std::find(bigger.begin(), bigger.end(), extra) == bigger.end()) {
            bigger.push_back(extra);
            EXPECT_GE(recovery_probability(c, make_pattern(bigger, n)).r_m, r.r_m);
        }
        std::vector<size_t> probes(k);
        for (size_t j = 0; j < k; j++) {
            probes[j] = j;
        }
        ProbeReport rep = probe_failures(c, p, probes);
        if (r.r_m == 0) {
            for (bool f : rep.flag) {
                EXPECT_FALSE(f);
            }
        }
    }
    SubsystemCode pure = encoded(8, {}, 4, rng, GeometryKind::Chain1D);
    EXPECT_EQ(recovery_probability(pure, make_pattern({0, 1, 2, 3, 4, 5, 6, 7}, 8)).p, 1.0);
}

TEST(Probes, DepthZeroExamples) {
    std::vector<size_t> sites = {1, 3, 5};
    SubsystemCode c = SubsystemCode::trivial(6, sites);
    ProbeReport hit = probe_failures(c, make_pattern({1, 2}, 6), {0, 1});
    EXPECT_EQ(hit.d, (std::vector<int>{2, 0}));
    EXPECT_EQ(hit.flag, (std::vector<bool>{true, false}));
    EXPECT_FALSE(hit.joint_all);
    EXPECT_TRUE(hit.joint_any);
    ProbeReport miss = probe_failures(c, make_pattern({0, 2, 4}, 6), {0, 1, 2});
    EXPECT_FALSE(miss.joint_any);
    ProbeReport both = probe_failures(c, make_pattern({1, 5}, 6), {0, 2});
    EXPECT_TRUE(both.joint_all);
    EXPECT_THROW(probe_failures(c, make_pattern({1}, 6), {3}), std::invalid_argument);
}

// d_i is the information about reference R_i lost to the erasure:
// 2 - I(R_i : kept qubits), computed here from a dense purified state.
TEST(Probes, MatchDenseMutualInformation) {
    Rng rng(7);
    for (int t = 0; t < 150; t++) {
        size_t n = 2 * (1 + uniform_index(rng, 3));
        size_t k = 1 + uniform_index(rng, std::min<size_t>(n, 3));
        SubsystemCode c = encoded(n, random_sites(n, k, rng), uniform_index(rng, 4), rng, GeometryKind::AllToAll);
        ErasurePattern p = sample_erasure(ErasureModel::fixed(uniform_index(rng, n + 1)), n, rng);
        DenseState st = stabilizer_state_with_references(c, rng);
        std::vector<size_t> kept;
        for (size_t q = 0; q < n; q++) {
            if (!std::binary_search(p.sites.begin(), p.sites.end(), q)) {
                kept.push_back(q);
            }
        }
        std::vector<size_t> probes(k);
        for (size_t j = 0; j < k; j++) {
            probes[j] = j;
        }
        ProbeReport rep = probe_failures(c, p, probes);
        for (size_t j = 0; j < k; j++) {
            std::vector<size_t> r = {n + j};
            std::vector<size_t> rk = kept;
            rk.push_back(n + j);
            double info = subsystem_entropy(st, r) + subsystem_entropy(st, kept) - subsystem_entropy(st, rk);
            EXPECT_NEAR(rep.d[j], 2 - info, 1e-8);
        }
    }
}

TEST(Correction, Examples) {
    std::vector<size_t> sites = {1};
    SubsystemCode c = SubsystemCode::trivial(3, sites);
    ErasurePattern p = make_pattern({0, 2}, 3);
    BitVector zero(2);
    EXPECT_EQ(stabilizer_syndrome(c, most_likely_correction(c, p, zero)), zero);
    BitVector s = BitVector::from_string("10");
    PauliOperator fix = most_likely_correction(c, p, s);
    EXPECT_EQ(stabilizer_syndrome(c, fix), s);
    EXPECT_EQ(fix.at(0), 'X');
    // Only site 2 erased: syndrome on stabilizer 0 (site 0) is impossible.
    EXPECT_THROW(most_likely_correction(c, make_pattern({2}, 3), s), NoSolutionError);
}

TEST(Correction, ReproducesSyndromesOfRandomErrors) {
    Rng rng(8);
    for (int t = 0; t < 200; t++) {
        size_t n = 2 * (1 + uniform_index(rng, 10));
        SubsystemCode c = encoded(n, random_sites(n, n / 2, rng), 4, rng, GeometryKind::Chain1D);
        ErasurePattern p = sample_erasure(ErasureModel::fixed(uniform_index(rng, n + 1)), n, rng);
        PauliOperator err(n);
        for (size_t q : p.sites) {
            err.set(q, "IXYZ"[uniform_index(rng, 4)]);
        }
        BitVector syn = stabilizer_syndrome(c, err);
        PauliOperator fix = most_likely_correction(c, p, syn);
        EXPECT_EQ(stabilizer_syndrome(c, fix), syn);
        for (size_t q : fix.support()) {
            EXPECT_TRUE(std::binary_search(p.sites.begin(), p.sites.end(), q));
        }
    }
}

TEST(RegularErasure, DepthZeroFailsOnHalfTheOffsets) {
    for (size_t n : {16, 32, 64}) {
        std::vector<size_t> sites;
        for (size_t q = 1; q < n; q += 2) {
            sites.push_back(q);
        }
        SubsystemCode c = SubsystemCode::trivial(n, sites);
        int failures = 0;
        for (size_t r = 0; r < 4; r++) {
            std::vector<size_t> e;
            for (size_t q = r; q < n; q += 4) {
                e.push_back(q);
            }
            failures += recovery_probability(c, make_pattern(e, n)).r_m > 0;
        }
        EXPECT_EQ(failures, 2);
    }
}

}  // namespace
}  // namespace qeclab

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

#include <gtest/gtest.h>

#include <cmath>

#include "qeclab/experiments.h"
#include "test_util.h"

namespace qeclab {
namespace {

using testing::random_code;

ErasurePattern random_pattern(size_t n, size_t n_e, Rng &rng) {
    return sample_erasure(ErasureModel::fixed(n_e), n, rng);
}

bool supported_on(const PauliOperator &p, const ErasurePattern &pat) {
    for (size_t q : p.support()) {
        if (!std::binary_search(pat.sites.begin(), pat.sites.end(), q)) {
            return false;
        }
    }
    return true;
}

TEST(ZeroSyndromeBasis, EmptyWhenRecoverable) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    // Sites 0 and 2 carry only stabilizers.
    EXPECT_TRUE(zero_syndrome_logical_basis(c, make_pattern({0, 2}, 4)).empty());
}

TEST(ZeroSyndromeBasis, TrivialLogicalSite) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    auto basis = zero_syndrome_logical_basis(c, make_pattern({3}, 4));
    ASSERT_EQ(basis.size(), 2u);
    std::vector<std::string> got = {basis[0].str(), basis[1].str()};
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<std::string>{"+IIIX", "+IIIZ"}));
}

// Each basis element is a zero-syndrome logical supported on the erasure
// and there are exactly r_M of them. Expurgating one lowers r_M.
TEST(ZeroSyndromeBasis, PropertiesOnRandomCodes) {
    Rng rng(61);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 2 + uniform_index(rng, 11);
        size_t k = 1 + uniform_index(rng, n);
        SubsystemCode c = random_code(n, k, 3, rng);
        if (c.num_stabilizers() > 1 && coin_flip(rng)) {
            c.demote_stabilizer_to_gauge(0);
        }
        ErasurePattern pat = random_pattern(n, uniform_index(rng, n + 1), rng);
        auto basis = zero_syndrome_logical_basis(c, pat);
        size_t r = recovery_probability(c, pat).r_m;
        ASSERT_EQ(basis.size(), r);
        for (const auto &g : basis) {
            EXPECT_TRUE(supported_on(g, pat));
            for (const auto &s : c.stabilizers) {
                EXPECT_TRUE(g.commutes_with(s));
            }
            bool hits_logical = false;
            for (const auto &lp : c.logicals) {
                hits_logical |= !g.commutes_with(lp.x) || !g.commutes_with(lp.z);
            }
            EXPECT_TRUE(hits_logical);
        }
        if (!basis.empty()) {
            SubsystemCode d = c;
            EXPECT_EQ(expurgation_round(d, pat, ExpurgationMode::ToStabilizer, rng, 1), 1u);
            size_t after = recovery_probability(d, pat).r_m;
            // One logical qubit accounts for at most two units of r_M.
            EXPECT_LT(after, r);
            if (c.num_gauge() == 0) {
                EXPECT_GE(after + 2, r);
            }
        }
    }
}

TEST(ExpurgationRound, NoOpWhenRecoverable) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    SubsystemCode before = c;
    Rng rng(1);
    EXPECT_EQ(expurgation_round(c, make_pattern({0, 2}, 4), ExpurgationMode::ToStabilizer, rng), 0u);
    EXPECT_EQ(c, before);
}

TEST(ExpurgationRound, GaugeModeOnTrivialSite) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    Rng rng(2);
    size_t removed = expurgation_round(c, make_pattern({3}, 4), ExpurgationMode::ToGauge, rng);
    EXPECT_EQ(removed, 1u);
    EXPECT_EQ(c.num_logicals(), 1u);
    EXPECT_EQ(c.num_gauge(), 1u);
    EXPECT_EQ(c.num_stabilizers(), 2u);
    EXPECT_EQ(c.check_invariants(), "");
}

TEST(ExpurgationRound, StabilizerModeOnTrivialSite) {
    std::vector<size_t> sites = {1, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    Rng rng(3);
    EXPECT_EQ(expurgation_round(c, make_pattern({3}, 4), ExpurgationMode::ToStabilizer, rng), 1u);
    EXPECT_EQ(c.num_logicals(), 1u);
    EXPECT_EQ(c.num_stabilizers(), 3u);
    EXPECT_EQ(c.num_gauge(), 0u);
}

TEST(ExpurgationRound, RespectsLimit) {
    std::vector<size_t> sites = {0, 1, 2, 3};
    SubsystemCode c = SubsystemCode::trivial(4, sites);
    Rng rng(4);
    EXPECT_EQ(expurgation_round(c, make_pattern({0, 1, 2}, 4), ExpurgationMode::ToStabilizer, rng, 2), 2u);
    EXPECT_EQ(c.num_logicals(), 2u);
}

// Expurgation only removes logicals, so it can neither lower the distance
// nor make any erasure pattern less recoverable. The expurgated pattern
// itself becomes perfectly recoverable.
void check_monotone(ExpurgationMode mode, uint64_t seed) {
    Rng rng(seed);
    for (int trial = 0; trial < 500; trial++) {
        size_t n = 4 + uniform_index(rng, 5);
        size_t k = 1 + uniform_index(rng, n - 1);
        SubsystemCode pre = random_code(n, k, 4, rng);
        // Half the time start from an already expurgated code, so gauge
        // mode also sees codes that carry gauge qubits.
        if (coin_flip(rng)) {
            expurgation_round(pre, random_pattern(n, 1 + uniform_index(rng, n - 1), rng), mode, rng, 1);
            if (pre.num_logicals() == 0) {
                continue;
            }
        }
        ErasurePattern pat = random_pattern(n, 1 + uniform_index(rng, n - 1), rng);
        SubsystemCode post = pre;
        size_t removed = expurgation_round(post, pat, mode, rng);
        ASSERT_EQ(post.check_invariants(), "");
        EXPECT_EQ(post.num_logicals() + removed, pre.num_logicals());
        EXPECT_EQ(recovery_probability(post, pat).r_m, 0u);
        if (mode == ExpurgationMode::ToGauge) {
            EXPECT_EQ(post.stabilizers, pre.stabilizers);
        }
        if (post.num_logicals() > 0) {
            EXPECT_GE(*distance_bruteforce(post), *distance_bruteforce(pre));
        }
        for (int probe = 0; probe < 4; probe++) {
            ErasurePattern other = random_pattern(n, uniform_index(rng, n + 1), rng);
            EXPECT_LE(recovery_probability(post, other).r_m, recovery_probability(pre, other).r_m);
        }
    }
}

TEST(ExpurgationRound, MonotoneToStabilizer) {
    check_monotone(ExpurgationMode::ToStabilizer, 71);
}

TEST(ExpurgationRound, MonotoneToGauge) {
    check_monotone(ExpurgationMode::ToGauge, 73);
}

TEST(Wilson, KnownValues) {
    FailureEstimate f = wilson_interval(0, 200, 1.96);
    EXPECT_EQ(f.rate, 0.0);
    EXPECT_EQ(f.lower, 0.0);
    EXPECT_NEAR(f.upper, 1.96 * 1.96 / (200 + 1.96 * 1.96), 1e-12);
    FailureEstimate g = wilson_interval(50, 100, 1.96);
    EXPECT_NEAR(g.lower, 0.4038, 1e-4);
    EXPECT_NEAR(g.upper, 0.5962, 1e-4);
    EXPECT_EQ(wilson_interval(0, 0, 1.96).upper, 1.0);
}

TEST(EstimateFailure, MatchesRecoveryFlag) {
    CodeFamily fam = make_family("all2all", 16, 0.5, GateEnsemble::UniformClifford2Q);
    SubsystemCode c = fam.initial_code();
    Rng rng(5);
    apply_random_circuit(c, fam.geom, fam.ensemble, 32, rng);
    Rng a(6);
    Rng b(6);
    FailureEstimate f = estimate_failure(c, ErasureModel::fixed(4), 300, 1.96, a);
    size_t fails = 0;
    for (int s = 0; s < 300; s++) {
        fails += recovery_probability(c, sample_erasure(ErasureModel::fixed(4), 16, b)).r_m > 0;
    }
    EXPECT_DOUBLE_EQ(f.rate, fails / 300.0);
}

TEST(RunExpurgation, NeedsStopCriterion) {
    SubsystemCode c = SubsystemCode::trivial(4, std::vector<size_t>{1, 3});
    Rng rng(7);
    EXPECT_THROW(run_expurgation(c, ErasureModel::fixed(1), ExpurgationMode::ToGauge, {}, rng), std::invalid_argument);
    EXPECT_THROW(parse_expurgation_mode("logical"), std::invalid_argument);
}

TEST(RunExpurgation, BelowThresholdStopsQuickly) {
    CodeFamily fam = make_family("all2all", 32, 0.5, GateEnsemble::UniformClifford2Q);
    SubsystemCode c = fam.initial_code();
    Rng rng(8);
    apply_random_circuit(c, fam.geom, fam.ensemble, 64, rng);
    StopCriteria stop;
    stop.max_failure = 0.05;
    stop.max_rounds = 50;
    auto res = run_expurgation(c, ErasureModel::iid(0.1), ExpurgationMode::ToStabilizer, stop, rng);
    EXPECT_EQ(res.trace.stop_reason, "failure target");
    EXPECT_LE(res.trace.rounds.size(), 3u);
    EXPECT_GE(res.code.num_logicals(), 14u);
}

TEST(RunExpurgation, TraceAndRateFloor) {
    CodeFamily fam = make_family("all2all", 16, 0.5, GateEnsemble::UniformClifford2Q);
    SubsystemCode c = fam.initial_code();
    Rng rng(9);
    apply_random_circuit(c, fam.geom, fam.ensemble, 32, rng);
    StopCriteria stop;
    stop.min_rate = 0.25;
    stop.max_rounds = 200;
    auto res = run_expurgation(c, ErasureModel::fixed(6), ExpurgationMode::ToGauge, stop, rng);
    EXPECT_FALSE(res.trace.failed);
    EXPECT_EQ(res.code.num_logicals(), 4u);
    EXPECT_EQ(res.trace.stop_reason, "target rate");
    EXPECT_EQ(res.code.stabilizers, c.stabilizers);
    size_t prev = 8;
    for (const auto &r : res.trace.rounds) {
        EXPECT_LE(r.k_remaining, prev);
        EXPECT_EQ(prev - r.k_remaining, r.n_expurgated);
        EXPECT_TRUE(std::isnan(r.failure_estimate));
        prev = r.k_remaining;
    }
}

TEST(RunExpurgation, Deterministic) {
    CodeFamily fam = make_family("chain1d", 16, 0.5, GateEnsemble::UniformClifford2Q);
    SubsystemCode c = fam.initial_code();
    Rng rng(10);
    apply_random_circuit(c, fam.geom, fam.ensemble, 16, rng);
    StopCriteria stop;
    stop.max_rounds = 10;
    stop.max_failure = 0.1;
    Rng a(11);
    Rng b(11);
    auto ra = run_expurgation(c, ErasureModel::fixed(4), ExpurgationMode::ToStabilizer, stop, a);
    auto rb = run_expurgation(c, ErasureModel::fixed(4), ExpurgationMode::ToStabilizer, stop, b);
    EXPECT_EQ(ra.code, rb.code);
    ASSERT_EQ(ra.trace.rounds.size(), rb.trace.rounds.size());
    for (size_t i = 0; i < ra.trace.rounds.size(); i++) {
        EXPECT_EQ(ra.trace.rounds[i].pattern_seed, rb.trace.rounds[i].pattern_seed);
    }
}

}  // namespace
}  // namespace qeclab

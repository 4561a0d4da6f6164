// Copyright 2026 The wsnsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wsnsec/montecarlo.hpp"

using namespace wsnsec;

namespace {

NodeChannel node(double beta_s, double snr_s_db, double beta_e, double snr_e_db, double rho) {
    return {LinkParams::from_db(beta_s, snr_s_db), WiretapModel(LinkParams::from_db(beta_e, snr_e_db), rho)};
}

double joint(const McEstimate& a, const McEstimate& b) { return std::hypot(a.std_error, b.std_error); }

McSettings settings(std::uint64_t seed, std::uint64_t samples = 1'000'000) {
    McSettings mc;
    mc.seed = seed;
    mc.samples = samples;
    return mc;
}

}  // namespace

TEST(McSettings, Validation) {
    McSettings mc;
    mc.samples = 0;
    EXPECT_THROW(mc.validate(), domain_error);
    mc.samples = 10;
    mc.chunk = 0;
    EXPECT_THROW(mc.validate(), domain_error);
}

TEST(McEstimate, BernoulliStandardError) {
    const McEstimate e = bernoulli_estimate(250, 1000, 9);
    EXPECT_DOUBLE_EQ(e.value, 0.25);
    EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(0.25 * 0.75 / 1000));
    EXPECT_EQ(e.samples, 1000u);
    EXPECT_EQ(e.seed, 9u);
}

TEST(McSopPerNode, ExponentialClosedForm) {
    const NodeChannel ch{LinkParams(1.0, 100.0), WiretapModel(LinkParams(1.0, 10.0), 1.0)};
    const McEstimate e = mc_sop_per_node(ch, 1.0, settings(42));
    EXPECT_NEAR(e.value, 1.0 - std::exp(-0.01) * (100.0 / 120.0), 3.0 * e.std_error);
    EXPECT_EQ(e.samples, 1'000'000u);
}

TEST(McSopPerNode, MatchesAnalyticAtRhoOne) {
    const NodeChannel ch = node(3, 20, 3, 15, 1.0);
    const McEstimate e = mc_sop_per_node(ch, 1.0, settings(43));
    EXPECT_NEAR(e.value, sop_per_node(ch, 1.0), kZ99 * e.std_error);
}

TEST(McSopPerNode, RecordsPrintedSeriesDiscrepancyAtRhoPointNine) {
    const NodeChannel ch = node(3, 20, 3, 15, 0.9);
    const McEstimate e = mc_sop_per_node(ch, 1.0, settings(44));
    const double defect = normalization_defect(ch.wiretap);
    const auto prev = set_warning_handler(nullptr);
    const double analytic = sop_per_node(ch, 1.0);
    set_warning_handler(prev);
    RecordProperty("mc", std::to_string(e.value));
    RecordProperty("analytic", std::to_string(analytic));
    RecordProperty("defect", std::to_string(defect));
    EXPECT_GT(defect, 0.0);
}

TEST(McSopPerNode, OutdatedModeIsRhoInvariant) {
    McSettings mc = settings(45);
    mc.eval_mode = EvalMode::outdated;
    const McEstimate a = mc_sop_per_node(node(3, 20, 3, 15, 0.7), 1.0, mc);
    mc.seed = 46;
    const McEstimate b = mc_sop_per_node(node(3, 20, 3, 15, 0.99), 1.0, mc);
    EXPECT_NEAR(a.value, b.value, 3.0 * joint(a, b));
}

TEST(McSopPerNode, HugeRateIsSureOutage) {
    const McEstimate e = mc_sop_per_node(node(3, 20, 3, 15, 0.8), 40.0, settings(47, 100'000));
    EXPECT_EQ(e.value, 1.0);
    EXPECT_EQ(e.std_error, 0.0);
}

TEST(McRoundRobin, SingleNodeIsPerNode) {
    const NodeChannel ch = node(2, 15, 3, 10, 0.8);
    const auto cfg = NetworkConfig::identical(1, ch, 1.0, 1.0);
    const McSettings mc = settings(48, 200'000);
    EXPECT_EQ(mc_round_robin(cfg, mc).value, mc_sop_per_node(ch, 1.0, mc).value);
}

TEST(McRoundRobin, FlatInNAndMatchesAnalytic) {
    const NodeChannel ch = node(3, 20, 3, 15, 1.0);
    const McEstimate one = mc_round_robin(NetworkConfig::identical(1, ch, 1.0, 1.0), settings(49));
    const McEstimate eight = mc_round_robin(NetworkConfig::identical(8, ch, 1.0, 1.0), settings(50));
    EXPECT_NEAR(one.value, eight.value, 3.0 * joint(one, eight));
    EXPECT_NEAR(eight.value, sop_round_robin(NetworkConfig::identical(8, ch, 1.0, 1.0)), 3.0 * eight.std_error);
}

TEST(McBestNode, SingleNodeIsPerNode) {
    const NodeChannel ch = node(2, 15, 3, 10, 0.8);
    const McSettings mc = settings(51, 200'000);
    EXPECT_EQ(mc_best_node(NetworkConfig::identical(1, ch, 1.0, 1.0), mc).value, mc_sop_per_node(ch, 1.0, mc).value);
}

TEST(McBestNode, MatchesProductFormAtRhoOne) {
    const std::vector<NetworkConfig> cfgs{
        NetworkConfig::identical(2, node(3, 20, 3, 15, 1.0), 1.0, 1.0),
        NetworkConfig::identical(3, node(2, 15, 2, 5, 1.0), 1.0, 1.0),
        NetworkConfig({node(1.5, 20, 3, 15, 1.0), node(1.5, 20, 1.0, 10, 1.0), node(1.5, 20, 2.5, 12, 1.0)}, 1.0, 1.0),
    };
    std::uint64_t seed = 52;
    for (const auto& cfg : cfgs) {
        const McEstimate e = mc_best_node(cfg, settings(seed++));
        EXPECT_NEAR(e.value, sop_best_node(cfg), 3.0 * e.std_error) << cfg.size();
    }
}

TEST(McBestNode, FigureThreeAnchorAtRhoPointNine) {
    const auto cfg = NetworkConfig::identical(5, node(3, 20, 3, 15, 0.9), 1.0, 1.0);
    const McEstimate e = mc_best_node(cfg, settings(42));
    EXPECT_GE(e.value, 0.005);
    EXPECT_LE(e.value, 0.02);
}

TEST(McBestNode, DominatedByRoundRobinAtRhoOne) {
    const NodeChannel ch = node(3, 20, 3, 15, 1.0);
    for (int n : {2, 4, 8}) {
        const auto cfg = NetworkConfig::identical(n, ch, 1.0, 1.0);
        const McEstimate best = mc_best_node(cfg, settings(60 + n, 200'000));
        const McEstimate rr = mc_round_robin(cfg, settings(70 + n, 200'000));
        EXPECT_LE(best.value, rr.value + 3.0 * joint(best, rr)) << n;
    }
}

TEST(McConditionalSop, Values) {
    const NodeChannel ch{LinkParams(1.0, 100.0), WiretapModel(LinkParams(1.0, 10.0), 1.0)};
    EXPECT_EQ(mc_conditional_sop(ch, 1.0, 1.0, settings(80)).value, 0.0);
    const McEstimate e = mc_conditional_sop(ch, 2.0, 1.0, settings(81));
    EXPECT_NEAR(e.value, 1.0 - std::exp(-0.1), 3.0 * e.std_error);
    const NodeChannel b3 = node(3, 20, 3, 10, 1.0);
    const McEstimate f = mc_conditional_sop(b3, 4.0, 1.0, settings(82));
    EXPECT_NEAR(f.value, conditional_sop(b3, 4.0, 1.0), 3.0 * f.std_error);
    EXPECT_THROW(mc_conditional_sop(ch, 0.5, 1.0, settings(83)), domain_error);
}

TEST(McConditionalSop, RecordsDiscrepancyAtRhoPointSeven) {
    const NodeChannel ch = node(3, 20, 3, 10, 0.7);
    const McEstimate e = mc_conditional_sop(ch, 4.0, 1.0, settings(84));
    RecordProperty("mc", std::to_string(e.value));
    RecordProperty("analytic", std::to_string(conditional_sop(ch, 4.0, 1.0)));
    SUCCEED();
}

TEST(MonteCarlo, BitReproducibleAcrossRunsAndWorkers) {
    const auto cfg = NetworkConfig::identical(4, node(3, 20, 3, 15, 0.8), 1.0, 1.0);
    McSettings mc = settings(90, 300'000);
    mc.chunk = 10'000;
    mc.workers = 1;
    const McEstimate ref = mc_best_node(cfg, mc);
    for (unsigned w : {1u, 2u, 8u}) {
        mc.workers = w;
        const McEstimate e = mc_best_node(cfg, mc);
        EXPECT_EQ(e.value, ref.value) << w;
        EXPECT_EQ(e.std_error, ref.std_error) << w;
        EXPECT_EQ(mc_round_robin(cfg, mc).value, mc_round_robin(cfg, McSettings{mc.samples, mc.seed, mc.chunk,
                                                                              mc.eval_mode, 1u})
                                                     .value);
    }
}

TEST(MonteCarlo, OutageIndicatorMonotoneInRateUnderCoupling) {
    const NodeChannel ch = node(2, 15, 2.5, 10, 0.8);
    McEngine rng = chunk_engine(123, 0);
    for (int t = 0; t < 10'000; ++t) {
        const NodeDraw d = draw_node(ch, rng);
        for (EvalMode mode : {EvalMode::current, EvalMode::outdated}) {
            bool prev = false;
            for (double r : {0.1, 0.5, 1.0, 1.5, 2.0, 4.0}) {
                const bool out = is_secrecy_outage(d, r, mode);
                ASSERT_TRUE(!prev || out);
                prev = out;
            }
        }
    }
}

TEST(MonteCarlo, OutdatedModeChiSquareAcrossRho) {
    const std::vector<double> rhos{0.3, 0.5, 0.7, 0.9, 1.0};
    McSettings mc = settings(0, 400'000);
    mc.eval_mode = EvalMode::outdated;
    std::vector<double> hits;
    double total_hits = 0.0;
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        mc.seed = 100 + i;
        const McEstimate e = mc_sop_per_node(node(3, 20, 3, 15, rhos[i]), 1.0, mc);
        hits.push_back(e.value * mc.samples);
        total_hits += hits.back();
    }
    const double n = static_cast<double>(mc.samples);
    const double pooled = total_hits / (n * rhos.size());
    double chi2 = 0.0;
    for (double h : hits) {
        chi2 += (h - n * pooled) * (h - n * pooled) / (n * pooled);
        chi2 += ((n - h) - n * (1 - pooled)) * ((n - h) - n * (1 - pooled)) / (n * (1 - pooled));
    }
    EXPECT_LT(chi2, 13.2767);  // chi-square 99% quantile, 4 degrees of freedom
}

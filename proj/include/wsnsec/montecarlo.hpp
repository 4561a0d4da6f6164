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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

#include "wsnsec/analytic.hpp"
#include "wsnsec/channel.hpp"
#include "wsnsec/errors.hpp"
#include "wsnsec/schemes.hpp"

namespace wsnsec {

/// Which wiretap SNR decides the outage. Node selection always uses the
/// outdated value, because that is what the sink knows.
enum class EvalMode { current, outdated };

inline std::string_view to_string(EvalMode m) { return m == EvalMode::current ? "current" : "outdated"; }

struct McSettings {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk = 65'536;
    EvalMode eval_mode = EvalMode::current;
    /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned workers = 0;

    void validate() const {
        detail::require(samples >= 1, "McSettings: samples must be at least 1");
        detail::require(chunk >= 1, "McSettings: chunk must be at least 1");
    }
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    double ci_low(double z) const { return std::max(0.0, value - z * std_error); }
    double ci_high(double z) const { return std::min(1.0, value + z * std_error); }
};

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

using McEngine = std::mt19937_64;

/// Independent random stream owned by one chunk of trials.
inline McEngine chunk_engine(std::uint64_t seed, std::uint64_t chunk_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk_index), static_cast<std::uint32_t>(chunk_index >> 32),
                      0x5eedu};
    return McEngine(seq);
}

inline McEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, seed};
}

/// Runs trial(engine, trial_index) -> bool over all samples. Chunk c draws from
/// chunk_engine(seed, c); per-chunk counts are reduced in chunk order, so the
/// estimate is bit-identical for any worker count.
template <class Trial>
McEstimate run_bernoulli(const McSettings& mc, Trial trial) {
    mc.validate();
    const std::uint64_t n_chunks = (mc.samples + mc.chunk - 1) / mc.chunk;
    std::vector<std::uint64_t> hits(n_chunks, 0);
    std::atomic<std::uint64_t> next{0};

    const auto work = [&] {
        for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
            McEngine rng = chunk_engine(mc.seed, c);
            const std::uint64_t begin = c * mc.chunk;
            const std::uint64_t end = std::min(mc.samples, begin + mc.chunk);
            std::uint64_t count = 0;
            for (std::uint64_t t = begin; t < end; ++t) count += trial(rng, t) ? 1u : 0u;
            hits[c] = count;
        }
    };

    unsigned workers = mc.workers ? mc.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return bernoulli_estimate(total, mc.samples, mc.seed);
}

/// One channel realization for one node.
struct NodeDraw {
    double main;
    SnrPair wiretap;
};

template <class Rng>
NodeDraw draw_node(const NodeChannel& ch, Rng& rng) {
    const double main = sample_snr(ch.main, rng);
    return {main, sample_correlated_pair(ch.wiretap, rng)};
}

inline double evaluated_wiretap_snr(const NodeDraw& d, EvalMode mode) {
    return mode == EvalMode::current ? d.wiretap.current : d.wiretap.outdated;
}

inline bool is_secrecy_outage(const NodeDraw& d, double rate_s, EvalMode mode) {
    return secrecy_rate(d.main, evaluated_wiretap_snr(d, mode)) < rate_s;
}

/// Secrecy rate as estimated by the sink from outdated CSI. Not clamped, so
/// ties between nodes that are all in outage still respect the ordering.
inline double sink_rate_estimate(const NodeDraw& d) {
    return std::log2((1.0 + d.main) / (1.0 + d.wiretap.outdated));
}

inline McEstimate mc_sop_per_node(const NodeChannel& ch, double rate_s, const McSettings& mc = {}) {
    detail::require(rate_s > 0.0 && std::isfinite(rate_s), "mc_sop_per_node: rate_s must be positive");
    return run_bernoulli(mc, [&](McEngine& rng, std::uint64_t) {
        return is_secrecy_outage(draw_node(ch, rng), rate_s, mc.eval_mode);
    });
}

/// Trial t is served by node t mod N.
inline McEstimate mc_round_robin(const NetworkConfig& cfg, const McSettings& mc = {}) {
    const auto& nodes = cfg.nodes();
    const std::uint64_t n = nodes.size();
    return run_bernoulli(mc, [&](McEngine& rng, std::uint64_t t) {
        return is_secrecy_outage(draw_node(nodes[t % n], rng), cfg.rate_s(), mc.eval_mode);
    });
}

/// The sink picks the node with the largest secrecy rate it can see (outdated
/// wiretap CSI); outage is then judged on that node per eval_mode.
inline McEstimate mc_best_node(const NetworkConfig& cfg, const McSettings& mc = {}) {
    const auto& nodes = cfg.nodes();
    return run_bernoulli(mc, [&](McEngine& rng, std::uint64_t) {
        NodeDraw chosen = draw_node(nodes.front(), rng);
        double best = sink_rate_estimate(chosen);
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const NodeDraw d = draw_node(nodes[i], rng);
            const double r = sink_rate_estimate(d);
            if (r > best) {
                best = r;
                chosen = d;
            }
        }
        return is_secrecy_outage(chosen, cfg.rate_s(), mc.eval_mode);
    });
}

/// Frequency of log2(1 + gamma_e) <= rate_tx - rate_s, i.e. the same CDF that
/// conditional_sop evaluates analytically.
inline McEstimate mc_conditional_sop(const NodeChannel& node, double rate_tx, double rate_s,
                                     const McSettings& mc = {}) {
    detail::require(rate_s > 0.0 && std::isfinite(rate_s), "mc_conditional_sop: rate_s must be positive");
    detail::require(rate_tx >= rate_s && std::isfinite(rate_tx), "mc_conditional_sop: rate_tx must be >= rate_s");
    if (rate_tx == rate_s) return bernoulli_estimate(0, mc.samples, mc.seed);
    const double x = std::exp2(rate_tx - rate_s) - 1.0;
    return run_bernoulli(mc, [&](McEngine& rng, std::uint64_t) {
        const SnrPair p = sample_correlated_pair(node.wiretap, rng);
        return (mc.eval_mode == EvalMode::current ? p.current : p.outdated) <= x;
    });
}

}  // namespace wsnsec

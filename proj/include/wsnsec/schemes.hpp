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
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "wsnsec/analytic.hpp"
#include "wsnsec/errors.hpp"

namespace wsnsec {

/// N sensors sharing one sink. Main links are identically distributed;
/// wiretap links may differ per node.
class NetworkConfig {
public:
    NetworkConfig(std::vector<NodeChannel> nodes, double rate_s, double rate_tx)
        : nodes_(std::move(nodes)), rate_s_(rate_s), rate_tx_(rate_tx) {
        detail::require(!nodes_.empty(), "NetworkConfig: at least one node required");
        detail::require(rate_s_ > 0.0 && std::isfinite(rate_s_), "NetworkConfig: rate_s must be positive");
        detail::require(rate_tx_ >= rate_s_ && std::isfinite(rate_tx_), "NetworkConfig: rate_tx must be >= rate_s");
        for (const auto& n : nodes_)
            detail::require(n.main == nodes_.front().main, "NetworkConfig: main links must be identically distributed");
    }

    static NetworkConfig identical(int n_nodes, const NodeChannel& node, double rate_s, double rate_tx) {
        detail::require(n_nodes >= 1, "NetworkConfig: n_nodes must be at least 1");
        return NetworkConfig(std::vector<NodeChannel>(static_cast<std::size_t>(n_nodes), node), rate_s, rate_tx);
    }

    const std::vector<NodeChannel>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double rate_s() const noexcept { return rate_s_; }
    double rate_tx() const noexcept { return rate_tx_; }

private:
    std::vector<NodeChannel> nodes_;
    double rate_s_;
    double rate_tx_;
};

inline double secrecy_rate(double gamma_s, double gamma_e) {
    detail::require(gamma_s >= 0.0 && gamma_e >= 0.0, "secrecy_rate: SNRs must be nonnegative");
    return std::max(std::log2(1.0 + gamma_s) - std::log2(1.0 + gamma_e), 0.0);
}

/// Mean of per-node outage probabilities. Running mean, so equal inputs give
/// exactly that value back.
inline double combine_round_robin(std::span<const double> per_node) {
    detail::require(!per_node.empty(), "combine_round_robin: empty input");
    double mean = 0.0;
    for (std::size_t i = 0; i < per_node.size(); ++i) mean += (per_node[i] - mean) / static_cast<double>(i + 1);
    return mean;
}

/// Product of per-node outage probabilities.
inline double combine_best_node(std::span<const double> per_node) {
    detail::require(!per_node.empty(), "combine_best_node: empty input");
    double prod = 1.0;
    for (double p : per_node) prod *= p;
    return prod;
}

/// Per-node SOPs in node order; nodes equal to an earlier one reuse its value.
inline std::vector<double> per_node_sops(const NetworkConfig& cfg, const SeriesSettings& s = {},
                                         const QuadratureSettings& q = {}) {
    const auto& nodes = cfg.nodes();
    std::vector<double> out;
    out.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto same = [&](const NodeChannel& o) {
            return o.main == nodes[i].main && o.wiretap.link() == nodes[i].wiretap.link() &&
                   o.wiretap.rho() == nodes[i].wiretap.rho();
        };
        const auto prev = std::find_if(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(i), same);
        if (prev != nodes.begin() + static_cast<std::ptrdiff_t>(i))
            out.push_back(out[static_cast<std::size_t>(prev - nodes.begin())]);
        else
            out.push_back(sop_per_node(nodes[i], cfg.rate_s(), s, q));
    }
    return out;
}

inline double sop_round_robin(const NetworkConfig& cfg, const SeriesSettings& s = {},
                              const QuadratureSettings& q = {}) {
    return combine_round_robin(per_node_sops(cfg, s, q));
}

inline double sop_best_node(const NetworkConfig& cfg, const SeriesSettings& s = {},
                            const QuadratureSettings& q = {}) {
    return combine_best_node(per_node_sops(cfg, s, q));
}

/// Probability that a message decoded at the sink is exposed, evaluated as the
/// outdated wiretap CDF at 2^(rate_tx - rate_s) - 1.
inline double conditional_sop(const NodeChannel& node, double rate_tx, double rate_s,
                              const SeriesSettings& s = {}) {
    detail::require(rate_s > 0.0 && std::isfinite(rate_s), "conditional_sop: rate_s must be positive");
    detail::require(rate_tx >= rate_s && std::isfinite(rate_tx), "conditional_sop: rate_tx must be >= rate_s");
    if (rate_tx == rate_s) return 0.0;
    const double x = std::exp2(rate_tx - rate_s) - 1.0;
    return detail::clamp_probability(outdated_wiretap_cdf(x, node.wiretap, s), "conditional_sop");
}

}  // namespace wsnsec

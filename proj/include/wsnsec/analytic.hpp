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

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wsnsec/channel.hpp"
#include "wsnsec/errors.hpp"
#include "wsnsec/quadrature.hpp"
#include "wsnsec/specfun.hpp"

namespace wsnsec {

/// Truncation of the outer series index k; the inner index m runs 0..k.
struct SeriesSettings {
    int k_max = 10;
    double term_tol = 1e-12;

    void validate() const {
        detail::require(k_max >= 1, "SeriesSettings: k_max must be at least 1");
        detail::require(term_tol > 0.0, "SeriesSettings: term_tol must be positive");
    }
};

/// One sensor: its link to the sink and its link to the eavesdropper.
struct NodeChannel {
    LinkParams main;
    WiretapModel wiretap;
};

namespace detail {

inline constexpr int kMinSeriesTerms = 3;

inline void require_rho(double rho) {
    if (!(rho > kRhoMin)) throw singularity_error("rho must exceed 1e-6");
    require(rho <= 1.0, "rho must not exceed 1");
}

/// ln k! for k = 0..k_max.
inline std::vector<double> log_factorials(int k_max) {
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) out[k] = specfun::log_gamma(k + 1.0);
    return out;
}

/// Series blocks are accumulated in k order; a block below term_tol of the
/// running sum ends the series once k >= kMinSeriesTerms.
inline bool block_negligible(int k, double block, double sum, double term_tol) {
    return k >= kMinSeriesTerms && block <= term_tol * std::abs(sum);
}

/// Clamps a raw probability to [0, 1], warning if it was more than 1e-6 outside.
inline double clamp_probability(double raw, const char* what) {
    if (std::isnan(raw)) throw quadrature_error(std::string(what) + ": NaN probability");
    if (raw < -1e-6 || raw > 1.0 + 1e-6)
        warn(std::string(what) + ": raw value " + std::to_string(raw) + " clamped to [0,1]");
    return std::clamp(raw, 0.0, 1.0);
}

}  // namespace detail

/// Correlated bivariate Weibull density as a series in k. mu1, mu2 enter as
/// y^beta / mu, so at rho = 1 only k = 0 survives and the density factorizes.
inline double bivariate_weibull_pdf(double y1, double y2, double mu1, double mu2, double beta, double rho,
                                    const SeriesSettings& s = {}) {
    detail::require(y1 > 0.0 && y2 > 0.0, "bivariate_weibull_pdf: y1, y2 must be positive");
    detail::require(mu1 > 0.0 && mu2 > 0.0, "bivariate_weibull_pdf: mu1, mu2 must be positive");
    detail::require(beta > 0.0, "bivariate_weibull_pdf: beta must be positive");
    detail::require_rho(rho);
    s.validate();

    const double ln_rho = std::log(rho);
    const double ln_decor = rho == 1.0 ? 0.0 : std::log1p(-rho * rho);
    const double ln_y = std::log(y1) + std::log(y2);
    const double ln_mu = std::log(mu1) + std::log(mu2);
    const double exponent = -(std::pow(y1, beta) / mu1 + std::pow(y2, beta) / mu2) / (rho * rho);
    const double ln_base = 2.0 * std::log(beta) + exponent;
    const int k_last = rho == 1.0 ? 0 : s.k_max;

    double sum = 0.0;
    for (int k = 0; k <= k_last; ++k) {
        const double ln_fact = specfun::log_gamma(k + 1.0);
        const double ln_term = ln_base - 2.0 * ln_fact + k * ln_decor - (2.0 * k + 1.0) * ln_rho +
                               (-1.0 + (k + 1.0) * beta) * ln_y - (k + 1.0) * ln_mu;
        const double term = std::exp(ln_term);
        sum += term;
        if (detail::block_negligible(k, term, sum, s.term_tol)) break;
    }
    return sum;
}

/// Density of the outdated wiretap SNR as the printed double series
/// (k outer, m = 0..k inner). Not a normalized density for rho < 1; see
/// normalization_defect().
inline double outdated_wiretap_pdf(double g, const WiretapModel& model, const SeriesSettings& s = {}) {
    detail::require(g >= 0.0, "outdated_wiretap_pdf: g must be nonnegative");
    s.validate();
    const double rho = model.rho();
    const double b = model.link().shape();
    const double lam = model.link().scale();
    const int k_last = rho == 1.0 ? 0 : s.k_max;

    if (g == 0.0) {
        // Only the leading power g^(b-1) can be nonzero.
        if (b == 1.0) return 1.0 / lam;
        return b > 1.0 ? 0.0 : HUGE_VAL;
    }

    const double ln_u = b * (std::log(g) - std::log(lam));
    const double u = std::exp(ln_u);
    const double ln_rho = std::log(rho);
    const double ln_decor = rho == 1.0 ? 0.0 : std::log1p(-rho * rho);
    const double ln_base = std::log(b) - std::log(g) + ln_u - u / rho;
    const auto ln_fact = detail::log_factorials(2 * k_last + 1);

    double sum = 0.0;
    for (int k = 0; k <= k_last; ++k) {
        double block = 0.0;
        for (int m = 0; m <= k; ++m) {
            const int n = m + k;
            const double ln_term =
                ln_base + n * (ln_u - ln_rho) + k * ln_decor - ln_fact[m] - ln_fact[k];
            block += std::exp(ln_term);
        }
        sum += block;
        if (detail::block_negligible(k, block, sum, s.term_tol)) break;
    }
    return sum;
}

/// Integral of the truncated outdated-CSI series density minus 1.
inline double normalization_defect(const WiretapModel& model, const SeriesSettings& s = {},
                                   const QuadratureSettings& q = {}) {
    s.validate();
    const auto pdf = [&](double g) { return outdated_wiretap_pdf(g, model, s); };
    return integrate_half_line(pdf, model.link().mean_snr(), q) - 1.0;
}

/// Outdated wiretap SNR CDF series:
/// rho * sum_k (1 - rho^2)^k / k! * gamma(k + 1, (x / scale)^beta / rho).
/// (1/k!) gamma(k+1, z) is evaluated as the regularized P(k+1, z).
/// Returned unclamped; its limit as x grows is rho * sum_k (1 - rho^2)^k.
inline double outdated_wiretap_cdf(double x, const WiretapModel& model, const SeriesSettings& s = {}) {
    detail::require(x >= 0.0, "outdated_wiretap_cdf: x must be nonnegative");
    s.validate();
    if (x == 0.0) return 0.0;
    const double rho = model.rho();
    const double z = std::pow(x / model.link().scale(), model.link().shape()) / rho;
    const int k_last = rho == 1.0 ? 0 : s.k_max;
    const double ln_rho = std::log(rho);
    const double ln_decor = rho == 1.0 ? 0.0 : std::log1p(-rho * rho);

    double sum = 0.0;
    for (int k = 0; k <= k_last; ++k) {
        const double term = std::exp(ln_rho + k * ln_decor) * specfun::regularized_lower_gamma(k + 1.0, z);
        sum += term;
        if (detail::block_negligible(k, term, sum, s.term_tol)) break;
    }
    return sum;
}

/// Limit of the truncated CDF series as x grows, minus 1. Zero at rho = 1.
inline double cdf_limit_defect(const WiretapModel& model, const SeriesSettings& s = {}) {
    return outdated_wiretap_cdf(std::numeric_limits<double>::infinity(), model, s) - 1.0;
}

/// Raw coverage integral: integral of (1 - F_main(2^Rs (1 + g) - 1)) f_outdated(g) dg.
inline double coverage_integral(const NodeChannel& ch, double rate_s, const SeriesSettings& s = {},
                                const QuadratureSettings& q = {}) {
    detail::require(rate_s > 0.0 && std::isfinite(rate_s), "sop_per_node: rate_s must be positive");
    s.validate();
    const double gain = std::exp2(rate_s);
    const double threshold = gain - 1.0;
    const double main_scale = ch.main.scale();
    const double main_shape = ch.main.shape();
    const auto integrand = [&](double g) {
        const double f = outdated_wiretap_pdf(g, ch.wiretap, s);
        if (f == 0.0) return 0.0;
        const double theta = std::pow((gain * g + threshold) / main_scale, main_shape);
        return std::exp(-theta) * f;
    };
    return integrate_half_line(integrand, ch.wiretap.link().mean_snr(), q);
}

/// Per-node secrecy outage probability, 1 - coverage_integral, clamped to [0, 1].
inline double sop_per_node(const NodeChannel& ch, double rate_s, const SeriesSettings& s = {},
                           const QuadratureSettings& q = {}) {
    return detail::clamp_probability(1.0 - coverage_integral(ch, rate_s, s, q), "sop_per_node");
}

}  // namespace wsnsec

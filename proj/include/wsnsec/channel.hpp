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
#include <random>

#include "wsnsec/errors.hpp"
#include "wsnsec/specfun.hpp"

namespace wsnsec {

/// Correlation coefficients at or below this are rejected; the outdated-CSI
/// series divide by powers of rho.
inline constexpr double kRhoMin = 1e-6;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Weibull-faded link in the SNR domain. Transmit power and noise are folded
/// into mean_snr.
class LinkParams {
public:
    LinkParams(double shape, double mean_snr) : shape_(shape), mean_snr_(mean_snr) {
        detail::require(shape > 0.0 && std::isfinite(shape), "LinkParams: shape must be positive");
        detail::require(mean_snr > 0.0 && std::isfinite(mean_snr), "LinkParams: mean_snr must be positive");
        alpha_ = 1.0 + 1.0 / shape_;
        scale_ = mean_snr_ / specfun::gamma(alpha_);
    }

    static LinkParams from_db(double shape, double mean_snr_db) {
        return LinkParams(shape, db_to_linear(mean_snr_db));
    }

    double shape() const noexcept { return shape_; }
    double mean_snr() const noexcept { return mean_snr_; }
    /// 1 + 1/shape
    double alpha() const noexcept { return alpha_; }
    /// mean_snr / Gamma(alpha)
    double scale() const noexcept { return scale_; }

    friend bool operator==(const LinkParams& a, const LinkParams& b) noexcept {
        return a.shape_ == b.shape_ && a.mean_snr_ == b.mean_snr_;
    }

private:
    double shape_;
    double mean_snr_;
    double alpha_;
    double scale_;
};

/// Eavesdropper link plus the correlation between the SNR the sink knows
/// (outdated) and the one in effect (current).
class WiretapModel {
public:
    WiretapModel(LinkParams link, double rho) : link_(link), rho_(rho) {
        if (!(rho > kRhoMin)) throw singularity_error("WiretapModel: rho must exceed 1e-6");
        detail::require(rho <= 1.0, "WiretapModel: rho must not exceed 1");
    }

    const LinkParams& link() const noexcept { return link_; }
    double rho() const noexcept { return rho_; }

private:
    LinkParams link_;
    double rho_;
};

struct SnrPair {
    double outdated;  ///< known at the sink
    double current;   ///< actually seen by the eavesdropper
};

inline double weibull_snr_cdf(double x, const LinkParams& link) {
    detail::require(x >= 0.0, "weibull_snr_cdf: x must be nonnegative");
    return -std::expm1(-std::pow(x / link.scale(), link.shape()));
}

inline double weibull_snr_pdf(double x, const LinkParams& link) {
    detail::require(x >= 0.0, "weibull_snr_pdf: x must be nonnegative");
    const double b = link.shape();
    const double lam = link.scale();
    if (x == 0.0) {
        if (b == 1.0) return 1.0 / lam;
        return b > 1.0 ? 0.0 : HUGE_VAL;
    }
    const double u = std::pow(x / lam, b);
    return b / x * u * std::exp(-u);
}

/// Maps a standard exponential variate onto the link's Weibull SNR.
inline double snr_from_exponential(const LinkParams& link, double e) {
    return link.scale() * std::pow(e, 1.0 / link.shape());
}

template <class Rng>
double sample_snr(const LinkParams& link, Rng& rng) {
    std::exponential_distribution<double> exp1(1.0);
    return snr_from_exponential(link, exp1(rng));
}

/// Draws (outdated, current) through correlated complex Gaussians:
/// h_out = rho h_cur + sqrt(1 - rho^2) v. Unit-mean powers |h|^2 are
/// exponential with Pearson correlation rho^2, then power-transformed to Weibull.
template <class Rng>
SnrPair sample_correlated_pair(const WiretapModel& model, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double cur_re = normal(rng);
    const double cur_im = normal(rng);
    const double v_re = normal(rng);
    const double v_im = normal(rng);
    const double e_cur = 0.5 * (cur_re * cur_re + cur_im * cur_im);
    const LinkParams& link = model.link();
    const double current = snr_from_exponential(link, e_cur);
    if (model.rho() == 1.0) return {current, current};
    const double rho = model.rho();
    const double spread = std::sqrt(1.0 - rho * rho);
    const double out_re = rho * cur_re + spread * v_re;
    const double out_im = rho * cur_im + spread * v_im;
    const double e_out = 0.5 * (out_re * out_re + out_im * out_im);
    return {snr_from_exponential(link, e_out), current};
}

}  // namespace wsnsec

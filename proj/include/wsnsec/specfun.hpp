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

#include <boost/math/special_functions/gamma.hpp>

#include "wsnsec/errors.hpp"

/// Gamma-family special functions used by every series expression.
namespace wsnsec::specfun {

inline double gamma(double x) {
    detail::require(x > 0.0 && std::isfinite(x), "gamma: argument must be positive and finite");
    return boost::math::tgamma(x);
}

/// Overflow-safe ln Gamma(x); series coefficients are assembled from this.
inline double log_gamma(double x) {
    detail::require(x > 0.0 && std::isfinite(x), "log_gamma: argument must be positive and finite");
    return boost::math::lgamma(x);
}

/// gamma(s, z) = integral of t^(s-1) e^-t over [0, z].
inline double lower_incomplete_gamma(double s, double z) {
    detail::require(s > 0.0 && std::isfinite(s), "lower_incomplete_gamma: s must be positive");
    detail::require(z >= 0.0, "lower_incomplete_gamma: z must be nonnegative");
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return gamma(s);
    return boost::math::tgamma_lower(s, z);
}

/// P(s, z) = gamma(s, z) / Gamma(s), in [0, 1].
inline double regularized_lower_gamma(double s, double z) {
    detail::require(s > 0.0 && std::isfinite(s), "regularized_lower_gamma: s must be positive");
    detail::require(z >= 0.0, "regularized_lower_gamma: z must be nonnegative");
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return 1.0;
    return boost::math::gamma_p(s, z);
}

}  // namespace wsnsec::specfun

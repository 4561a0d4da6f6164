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

#include <atomic>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wsnsec {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Correlation coefficient too close to zero for the series expressions.
class singularity_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Adaptive integration ran out of refinement budget before meeting tolerance.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw domain_error(what);
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw domain_error(what);
}

inline void default_warning_handler(std::string_view msg) {
    std::cerr << "wsnsec: warning: " << msg << '\n';
}

using warning_handler = void (*)(std::string_view);

inline std::atomic<warning_handler>& warning_sink() {
    static std::atomic<warning_handler> sink{&default_warning_handler};
    return sink;
}

inline void warn(std::string_view msg) {
    if (auto* h = warning_sink().load(std::memory_order_relaxed)) h(msg);
}

}  // namespace detail

/// Replace the process-wide warning sink; pass nullptr to silence. Returns the previous sink.
inline detail::warning_handler set_warning_handler(detail::warning_handler h) {
    return detail::warning_sink().exchange(h);
}

}  // namespace wsnsec

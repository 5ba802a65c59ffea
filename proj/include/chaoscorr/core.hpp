// Copyright 2026 The chaoscorr Authors
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

#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace chaoscorr {

using Complex = std::complex<double>;

/// Tolerance for physical identities (normalization, Hermiticity, Born sums).
inline constexpr double kPhysicalTol = 1e-10;
/// Tolerance for identities that only re-arrange the same floating-point sums.
inline constexpr double kAlgebraicTol = 1e-12;

inline constexpr int kDefaultMaxStateSites = 20;
inline constexpr int kDefaultMaxDenseSites = 14;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: size caps, malformed parameters, bad experiment setup.
class ConfigError : public Error {
  public:
    using Error::Error;
};

namespace detail {

inline int env_cap_or(int fallback) {
    const char *raw = std::getenv("CHAOSCORR_MAX_N");
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    char *end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1 || value > 40) {
        throw ConfigError("CHAOSCORR_MAX_N must be an integer in [1, 40], got '" +
                          std::string(raw) + "'");
    }
    return static_cast<int>(value);
}

} // namespace detail

/// Largest N for which a 2^N state vector may be allocated.
inline int max_state_sites() { return detail::env_cap_or(kDefaultMaxStateSites); }

/// Largest N for which a dense 2^N x 2^N matrix may be allocated.
inline int max_dense_sites() { return detail::env_cap_or(kDefaultMaxDenseSites); }

inline void require_state_cap(int n_sites) {
    if (n_sites < 1) {
        throw ConfigError("number of sites must be >= 1, got " + std::to_string(n_sites));
    }
    if (n_sites > max_state_sites()) {
        throw ConfigError("N = " + std::to_string(n_sites) + " exceeds the state-vector cap " +
                          std::to_string(max_state_sites()) + " (set CHAOSCORR_MAX_N to raise it)");
    }
}

inline void require_dense_cap(int n_sites) {
    require_state_cap(n_sites);
    if (n_sites > max_dense_sites()) {
        throw ConfigError("N = " + std::to_string(n_sites) + " exceeds the dense-matrix cap " +
                          std::to_string(max_dense_sites()) + " (set CHAOSCORR_MAX_N to raise it)");
    }
}

/// Site l (1-based) is stored in bit l-1 of a basis index.
inline constexpr std::uint64_t site_bit(int site) { return std::uint64_t{1} << (site - 1); }

inline constexpr std::uint64_t dimension_of(int n_sites) { return std::uint64_t{1} << n_sites; }

} // namespace chaoscorr

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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chaoscorr {

/// Neumaier-compensated running sum. Adding the same values in the same order always
/// gives the same bits.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
    CompensatedSum s;
    for (double v : values) {
        s.add(v);
    }
    return s.value();
}

/// Sample statistics of a sequence of per-sample values.
struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double std = 0.0;       ///< sample standard deviation (n-1 denominator); 0 when count < 2
    double std_error = 0.0; ///< std / sqrt(count)
};

inline SampleSummary summarize(std::span<const double> values) {
    SampleSummary out;
    out.count = values.size();
    if (values.empty()) {
        return out;
    }
    out.mean = compensated_sum(values) / static_cast<double>(values.size());
    if (values.size() > 1) {
        CompensatedSum sq;
        for (double v : values) {
            const double d = v - out.mean;
            sq.add(d * d);
        }
        out.std = std::sqrt(sq.value() / static_cast<double>(values.size() - 1));
        out.std_error = out.std / std::sqrt(static_cast<double>(values.size()));
    }
    return out;
}

/// z-score of an empirical mean against a prediction. A zero standard error gives 0 when
/// the mean hits the prediction exactly and +-inf otherwise.
inline double z_score(double mean, double predicted, double std_error) {
    const double diff = mean - predicted;
    if (std_error > 0.0) {
        return diff / std_error;
    }
    if (diff == 0.0) {
        return 0.0;
    }
    return diff > 0.0 ? INFINITY : -INFINITY;
}

/// Per-(N, quantity) aggregation with an optional analytic prediction.
struct EnsembleSummary {
    std::string quantity;
    std::string group_key;
    SampleSummary stats;
    std::optional<double> prediction;

    std::optional<double> z() const {
        if (!prediction) {
            return std::nullopt;
        }
        return z_score(stats.mean, *prediction, stats.std_error);
    }
};

inline EnsembleSummary make_summary(std::string quantity, std::string group_key,
                                    std::span<const double> values,
                                    std::optional<double> prediction = std::nullopt) {
    return EnsembleSummary{std::move(quantity), std::move(group_key), summarize(values), prediction};
}

} // namespace chaoscorr

// Copyright 2026 The ACQST Authors
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

#ifndef ACQST_STATS_H
#define ACQST_STATS_H

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace acqst {

/// Running mean and variance (Welford).
class RunningStats {
  public:
    void add(double x) {
        count_++;
        double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    void merge(const RunningStats &o) {
        if (o.count_ == 0) {
            return;
        }
        if (count_ == 0) {
            *this = o;
            return;
        }
        double total = static_cast<double>(count_ + o.count_);
        double delta = o.mean_ - mean_;
        mean_ += delta * static_cast<double>(o.count_) / total;
        m2_ += o.m2_ + delta * delta * static_cast<double>(count_) * static_cast<double>(o.count_) / total;
        count_ += o.count_;
    }

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance.
    double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
    double std_error() const { return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0; }

  private:
    std::size_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

inline double normal_cdf(double x, double mu = 0.0, double sigma = 1.0) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

/// Asymptotic Kolmogorov distribution survival function Q(lambda).
inline double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) {
        return 1.0;
    }
    double sum = 0;
    for (int k = 1; k <= 100; k++) {
        double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) {
            break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

struct KsResult {
    double statistic = 0;
    double p_value = 1;
};

/// One-sample Kolmogorov-Smirnov test against Normal(mu, sigma), with the
/// Stephens small-sample correction to the p-value.
inline KsResult ks_test_normal(std::vector<double> xs, double mu, double sigma) {
    if (xs.empty()) {
        throw std::invalid_argument("KS test needs samples");
    }
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0;
    for (std::size_t k = 0; k < xs.size(); k++) {
        double f = normal_cdf(xs[k], mu, sigma);
        d = std::max(d, std::max(f - static_cast<double>(k) / n, static_cast<double>(k + 1) / n - f));
    }
    double sn = std::sqrt(n);
    return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d)};
}

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

inline LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("linear fit needs at least two paired points");
    }
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    LinearFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    f.r_squared = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

}  // namespace acqst

#endif  // ACQST_STATS_H

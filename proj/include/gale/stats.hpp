#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gale/galt.hpp"

namespace gale::stats {

/// Two-sided normal quantile (inverse Phi), Acklam's rational approximation.
double normal_quantile(double p);

/// Wilson score interval for a binomial proportion.
struct ProportionCI {
  long successes = 0;
  long trials = 0;
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double alpha = 0.05;
};

ProportionCI wilson_ci(long successes, long trials, double alpha = 0.05);

/// Pooled success rate across equal-trial cells with a Wilson CI on the
/// pool; the point equals the unweighted task average at equal trials.
/// Cells with unequal trial counts are rejected.
ProportionCI suite_mean(const std::vector<std::pair<long, long>>& cells, double alpha = 0.05);

/// Detection rate plus mean/median over the valid values only.
struct GaltSummary {
  long n_valid = 0;
  long n_total = 0;
  double detection_rate = 0.0;
  std::optional<double> mean_s;
  std::optional<double> median_s;
  std::vector<double> values;  // sorted, valid episodes only
};

GaltSummary summarize_values(std::vector<double> values, long n_total);
GaltSummary summarize_galt(const std::vector<galt::GaltOutcome>& outcomes);

/// Fixed-range histogram; bins are [lo + b*w, lo + (b+1)*w) with the last bin
/// closed at hi. Values outside [lo, hi] land in n_dropped.
struct Histogram {
  double lo = -0.5;
  double hi = 3.5;
  int n_bins = 20;
  std::vector<long> counts;
  long n_dropped = 0;
};

Histogram histogram(const std::vector<double>& values, double lo = -0.5, double hi = 3.5,
                    int n_bins = 20);

struct MedianDelta {
  double median_policy_s = 0.0;
  double median_ref_s = 0.0;
  double abs_delta_s = 0.0;
  std::optional<double> rel_delta;  // absent when the reference median is 0
};

MedianDelta median_delta(const GaltSummary& policy, const GaltSummary& reference);

}  // namespace gale::stats

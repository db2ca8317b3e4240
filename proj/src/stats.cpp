#include "gale/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gale::stats {

namespace {

// Two-sided z for alpha = 0.05 is pinned; the tables only ever use 0.05.
constexpr double kZ95 = 1.9599639845;

double median_of_sorted(const std::vector<double>& v) {
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  // Acklam's rational approximation, |relative error| < 1.15e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double q, r;
  if (p < p_low) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

ProportionCI wilson_ci(long successes, long trials, double alpha) {
  if (trials < 1) throw std::invalid_argument("wilson_ci: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("wilson_ci: successes must be in [0, trials]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("wilson_ci: alpha in (0, 1)");

  const double z = std::abs(alpha - 0.05) < 1e-12 ? kZ95 : normal_quantile(1.0 - alpha / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));

  ProportionCI ci;
  ci.successes = successes;
  ci.trials = trials;
  ci.point = p;
  ci.lo = std::max(0.0, center - half);
  ci.hi = std::min(1.0, center + half);
  ci.alpha = alpha;
  return ci;
}

ProportionCI suite_mean(const std::vector<std::pair<long, long>>& cells, double alpha) {
  if (cells.empty()) throw std::invalid_argument("suite_mean: no cells");
  long successes = 0;
  const long trials_per_cell = cells.front().second;
  for (const auto& [k, n] : cells) {
    if (n != trials_per_cell)
      throw std::invalid_argument("suite_mean: all cells must have equal trial counts");
    successes += k;
  }
  return wilson_ci(successes, trials_per_cell * static_cast<long>(cells.size()), alpha);
}

GaltSummary summarize_values(std::vector<double> values, long n_total) {
  GaltSummary s;
  s.n_total = n_total;
  s.n_valid = static_cast<long>(values.size());
  s.detection_rate = n_total > 0 ? static_cast<double>(s.n_valid) / static_cast<double>(n_total) : 0.0;
  std::sort(values.begin(), values.end());
  s.values = std::move(values);
  if (!s.values.empty()) {
    double sum = 0.0;
    for (double v : s.values) sum += v;
    s.mean_s = sum / static_cast<double>(s.values.size());
    s.median_s = median_of_sorted(s.values);
  }
  return s;
}

GaltSummary summarize_galt(const std::vector<galt::GaltOutcome>& outcomes) {
  std::vector<double> values;
  values.reserve(outcomes.size());
  for (const auto& o : outcomes)
    if (o.ok()) values.push_back(*o.galt_s);
  return summarize_values(std::move(values), static_cast<long>(outcomes.size()));
}

Histogram histogram(const std::vector<double>& values, double lo, double hi, int n_bins) {
  if (!(lo < hi)) throw std::invalid_argument("histogram: lo must be < hi");
  if (n_bins < 1) throw std::invalid_argument("histogram: n_bins must be >= 1");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.n_bins = n_bins;
  h.counts.assign(static_cast<size_t>(n_bins), 0);
  const double w = (hi - lo) / n_bins;
  for (double v : values) {
    if (v < lo || v > hi) {
      ++h.n_dropped;
      continue;
    }
    auto b = static_cast<long>(std::floor((v - lo) / w));
    if (b >= n_bins) b = n_bins - 1;  // hi is closed into the last bin
    ++h.counts[static_cast<size_t>(b)];
  }
  return h;
}

MedianDelta median_delta(const GaltSummary& policy, const GaltSummary& reference) {
  if (!policy.median_s || !reference.median_s)
    throw std::invalid_argument("median_delta: both summaries need at least one valid value");
  MedianDelta d;
  d.median_policy_s = *policy.median_s;
  d.median_ref_s = *reference.median_s;
  d.abs_delta_s = std::abs(d.median_policy_s - d.median_ref_s);
  if (d.median_ref_s != 0.0) d.rel_delta = d.abs_delta_s / std::abs(d.median_ref_s);
  return d;
}

}  // namespace gale::stats

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gale {

/// Per-dimension first/second moment estimates.
struct DimStats {
  double mean = 0.0;
  double std = 0.0;
};

struct NormalizationRecord {
  double mean = 0.0;
  double std = 1.0;
  bool identity = false;  // true => mean forced to 0, std to 1
};

struct NormalizationSpec {
  std::vector<NormalizationRecord> dims;
};

/// Replace near-constant dimensions (std < epsilon) with identity
/// normalization so tiny deviations are not amplified; everything else
/// passes through untouched.
inline NormalizationSpec fix_constant_dims(const std::vector<DimStats>& stats,
                                           double epsilon = 1e-8) {
  if (epsilon < 0) throw std::invalid_argument("fix_constant_dims: epsilon must be >= 0");
  NormalizationSpec spec;
  spec.dims.reserve(stats.size());
  for (const auto& s : stats) {
    if (s.std < 0 || !std::isfinite(s.std))
      throw std::invalid_argument("fix_constant_dims: std estimates must be finite and >= 0");
    if (s.std < epsilon)
      spec.dims.push_back({0.0, 1.0, true});
    else
      spec.dims.push_back({s.mean, s.std, false});
  }
  return spec;
}

/// Column-wise mean and (population) standard deviation.
template <typename Derived>
std::vector<DimStats> column_stats(const Eigen::MatrixBase<Derived>& x) {
  std::vector<DimStats> out(static_cast<size_t>(x.cols()));
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double mean = x.col(c).template cast<double>().mean();
    const double var = (x.col(c).template cast<double>().array() - mean).square().sum() / n;
    out[static_cast<size_t>(c)] = {mean, std::sqrt(var)};
  }
  return out;
}

}  // namespace gale

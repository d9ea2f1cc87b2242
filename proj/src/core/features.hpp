#pragma once

#include <cstdint>

#include "core/templates.hpp"

namespace gir {

struct FeatureMeta {
  int m = 0;
  int n = 0;
  double s = 0.0;
  std::int64_t group_size = 0;

  bool operator==(const FeatureMeta&) const = default;
};

// The m * (2n + 1) signature, entry (j, k) for template j and bin
// k in {-n..n} stored at index j * (2n + 1) + (k + n).
struct FeatureVector {
  Vec values;
  FeatureMeta meta;
};

// (1/|G|) sum_i 1{<g_i t_j, x> <= tau}, indicator inclusive.
double empirical_cdf(const ProjectionTable& table, const Vec& x, int j,
                     double tau);

// Entry (j, k) = sqrt(s) / (sqrt(n m) |G|) * sum_i 1{<g_i t_j, x> <= s k / n}.
// Strict mode requires |x| within 1e-6 of 1; relaxed mode skips the check.
FeatureVector compute_features(const ProjectionTable& table, const Vec& x,
                               int n, bool relaxed = false);

double feature_dot(const FeatureVector& a, const FeatureVector& b);

// <Phi(x), Phi(z)> streamed per template, never materializing the features.
// Matches feature_dot(compute_features(x), compute_features(z)) to rounding.
double phi_dot(const ProjectionTable& table, const Vec& x, const Vec& z, int n,
               bool relaxed = false);

// Feature matrix for N points (rows), chunked through a dense GEMM.
Mat compute_feature_matrix(const ProjectionTable& table, const Mat& points,
                           int n, bool relaxed = false, int workers = 1);

}  // namespace gir

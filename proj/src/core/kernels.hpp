#pragma once

#include <functional>
#include <string>

#include "core/templates.hpp"

namespace gir {

// integral over [-s, s] of 1{a <= tau} 1{b <= tau} d tau  =  s - max(a, b)
double integrated_indicator(double a, double b, double s);

enum class BaseKernel { Linear, Rbf };

struct KsEstimate {
  double value = 0.0;       // mean over templates of the per-template estimate
  double std_error = 0.0;   // MC standard error across templates
};

// (1 / (m |G|^2)) sum_j sum_{i,i'} [ s - max(<g_i t_j, x>, <g_{i'} t_j, z>) ],
// the n -> infinity limit of <Phi(x), Phi(z)> on the same samples.
KsEstimate sampled_ks(const ProjectionTable& table, const Vec& x, const Vec& z,
                      bool relaxed = false);

// (1 / |G|^2) sum_{g,g'} k0(g x, g' z)
double exact_haar_kernel(const GroupAction& action, const Vec& x, const Vec& z,
                         BaseKernel base, double gamma = -1.0);

// d_G = (1 / (sqrt(2 pi d) |G|^2)) sum_{g,g'} |g x - g' z|
double orbit_distance(const GroupAction& action, const Vec& x, const Vec& z);

// s - d_G(x, z), with s = 1 + epsilon.
double asymptotic_ks(const GroupAction& action, const Vec& x, const Vec& z,
                     double epsilon);

struct GramMatrix {
  Mat values;
  std::string descriptor;

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  void write_csv(const std::string& path) const;
};

using KernelFn = std::function<double(const Vec&, const Vec&)>;

GramMatrix gram(const Mat& points, const KernelFn& kernel,
                const std::string& descriptor = "custom");

// Gram of sampled_ks values; per-point projection profiles are cached so
// assembly is O(N m |G| d + N^2 m |G|) instead of per-pair recomputation.
GramMatrix gram_sampled_ks(const ProjectionTable& table, const Mat& points,
                           bool relaxed = false);

}  // namespace gir

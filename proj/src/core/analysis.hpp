#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/kernels.hpp"

namespace gir {

struct BoundReport {
  std::string name;
  std::string inputs;
  double value = 0.0;
  std::optional<double> empirical;
  bool pass = true;
};

void write_bound_reports_csv(const std::vector<BoundReport>& reports,
                             const std::string& path);

// Truncation windows of the expected-kernel sandwich; both vanish as d grows.
struct DeltaBounds {
  double delta1 = 0.0;
  double delta2 = 0.0;
};
DeltaBounds delta_bounds(int d, double epsilon);

// Analytic moments of max(X, Y) for correlated Gaussians.
struct ClarkMoments {
  double mean = 0.0;       // E max(X, Y)
  double second = 0.0;     // E max(X, Y)^2
  double variance = 0.0;
};
ClarkMoments clark_max_moments(double mu_x, double mu_y, double sigma_x,
                               double sigma_y, double rho);

// P(X/k >= 1 + eps) <= exp(-k eps^2 / 8) for X ~ chi^2_k.
double chi2_tail_upper(int k, double epsilon);
// P(X/k < 1 + eps) <= 1 - (1/2) exp(-eps k / 2) (1 + eps)^{(k-2)/2} / sqrt(k).
double chi2_tail_lower(int k, double epsilon);

// P(sup |F_hat - F| > gamma) <= 2 exp(-2 n gamma^2).
double dkw_bound(std::int64_t nsamples, double gamma);

struct SampleSizes {
  std::int64_t bins = 0;        // n
  std::int64_t templates = 0;   // m
  std::int64_t group = 0;       // |G|
};
SampleSizes theorem2_sample_sizes(std::int64_t npoints, double eps0, double eps1,
                                  double eps2, double delta1, double delta2,
                                  double c1, double c2);

// Defaults for the unnamed universal constants, read off the Hoeffding and
// DKW steps of the concentration proof; configurable at every call site.
double theorem2_default_c1(double s);
constexpr double kTheorem2DefaultC2 = 18.0;

double theorem3_bound(std::int64_t npoints, std::int64_t templates,
                      std::int64_t group, std::int64_t bins, double lipschitz,
                      double weight_bound, double loss_at_zero, double s,
                      double delta);

// Decomposition of |<Phi(x_i), Phi(x_j)> - K| into the binning, group
// sampling, and template sampling terms, maximized over the given pairs.
struct ConcentrationTerms {
  double binning_max = 0.0;    // vs sampled_ks on identical samples
  double group_max = 0.0;      // sampled elements vs full enumeration
  double template_max = 0.0;   // m templates vs a high-m reference
};
ConcentrationTerms measure_concentration(
    const Mat& points, const std::vector<std::pair<int, int>>& pairs,
    const TemplateBank& bank, const GroupAction& action,
    const std::vector<std::int64_t>& sampled_elements, int n,
    int reference_m, std::uint64_t reference_seed);

}  // namespace gir

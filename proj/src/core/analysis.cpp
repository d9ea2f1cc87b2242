#include "core/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "core/features.hpp"

namespace gir {

void write_bound_reports_csv(const std::vector<BoundReport>& reports,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_bound_reports_csv: cannot open " + path);
  out << "bound,inputs,value,empirical,pass\n";
  char buf[32];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    out << r.name << ",\"" << r.inputs << "\"," << buf << ',';
    if (r.empirical) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.empirical);
      out << buf;
    }
    out << ',' << (r.pass ? 1 : 0) << "\n";
  }
}

DeltaBounds delta_bounds(int d, double epsilon) {
  if (d < 2) throw std::invalid_argument("delta_bounds: d < 2");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("delta_bounds: epsilon not in (0,1)");
  const double dd = static_cast<double>(d);
  const double sqrt_d = std::sqrt(dd);
  const double head = std::exp(-dd * epsilon * epsilon / 16.0) / sqrt_d;
  // (1+eps)^{d/2} e^{-eps d/2} / sqrt(d), evaluated in log space
  const double lower_tail =
      std::exp(0.5 * dd * (std::log1p(epsilon) - epsilon) - 0.5 * std::log(dd));
  DeltaBounds b;
  b.delta1 = head - 0.5 * lower_tail;
  b.delta2 = head + (1.0 + epsilon) * std::exp(-dd * epsilon * epsilon / 8.0);
  return b;
}

namespace {
double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

ClarkMoments clark_max_moments(double mu_x, double mu_y, double sigma_x,
                               double sigma_y, double rho) {
  if (sigma_x <= 0.0 || sigma_y <= 0.0)
    throw std::invalid_argument("clark_max_moments: sigma must be positive");
  if (rho < -1.0 || rho > 1.0)
    throw std::invalid_argument("clark_max_moments: rho outside [-1,1]");
  const double a2 =
      sigma_x * sigma_x + sigma_y * sigma_y - 2.0 * rho * sigma_x * sigma_y;
  ClarkMoments cm;
  if (a2 <= 0.0) {
    // Perfectly correlated identical marginals: max(X, X) = X.
    cm.mean = mu_x;
    cm.second = sigma_x * sigma_x + mu_x * mu_x;
    cm.variance = sigma_x * sigma_x;
    return cm;
  }
  const double a = std::sqrt(a2);
  const double alpha = (mu_x - mu_y) / a;
  cm.mean = mu_x * norm_cdf(alpha) + mu_y * norm_cdf(-alpha) + a * norm_pdf(alpha);
  cm.second = (sigma_x * sigma_x + mu_x * mu_x) * norm_cdf(alpha) +
              (sigma_y * sigma_y + mu_y * mu_y) * norm_cdf(-alpha) +
              (mu_x + mu_y) * a * norm_pdf(alpha);
  cm.variance = cm.second - cm.mean * cm.mean;
  return cm;
}

double chi2_tail_upper(int k, double epsilon) {
  if (k < 2) throw std::invalid_argument("chi2_tail_upper: k < 2");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("chi2_tail_upper: epsilon not in (0,1)");
  double b = std::exp(-static_cast<double>(k) * epsilon * epsilon / 8.0);
  return std::min(1.0, b);
}

double chi2_tail_lower(int k, double epsilon) {
  if (k < 2) throw std::invalid_argument("chi2_tail_lower: k < 2");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("chi2_tail_lower: epsilon not in (0,1)");
  const double kk = static_cast<double>(k);
  const double term = 0.5 * std::exp(-epsilon * kk / 2.0 +
                                     0.5 * (kk - 2.0) * std::log1p(epsilon) -
                                     0.5 * std::log(kk));
  return std::min(1.0, std::max(0.0, 1.0 - term));
}

double dkw_bound(std::int64_t nsamples, double gamma) {
  if (nsamples < 1) throw std::invalid_argument("dkw_bound: nsamples < 1");
  if (gamma <= 0.0) throw std::invalid_argument("dkw_bound: gamma <= 0");
  return std::min(1.0, 2.0 * std::exp(-2.0 * static_cast<double>(nsamples) *
                                      gamma * gamma));
}

double theorem2_default_c1(double s) { return 8.0 * s * s; }

SampleSizes theorem2_sample_sizes(std::int64_t npoints, double eps0, double eps1,
                                  double eps2, double delta1, double delta2,
                                  double c1, double c2) {
  if (npoints < 2) throw std::invalid_argument("theorem2_sample_sizes: N < 2");
  auto in01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in01(eps0) || !in01(eps1) || !in01(eps2) || !in01(delta1) || !in01(delta2))
    throw std::invalid_argument("theorem2_sample_sizes: tolerance not in (0,1)");
  if (c1 <= 0.0 || c2 <= 0.0)
    throw std::invalid_argument("theorem2_sample_sizes: constants must be positive");
  SampleSizes sz;
  sz.bins = static_cast<std::int64_t>(std::ceil(1.0 / eps0));
  const double nn = static_cast<double>(npoints);
  sz.templates = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(c1 / (eps1 * eps1) * std::log(nn / delta1))));
  sz.group = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(
             c2 / (eps2 * eps2) *
             std::log(nn * static_cast<double>(sz.templates) / delta2))));
  return sz;
}

double theorem3_bound(std::int64_t npoints, std::int64_t templates,
                      std::int64_t group, std::int64_t bins, double lipschitz,
                      double weight_bound, double loss_at_zero, double s,
                      double delta) {
  if (npoints < 1 || templates < 1 || group < 1 || bins < 1)
    throw std::invalid_argument("theorem3_bound: sizes must be positive");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("theorem3_bound: delta not in (0,1)");
  if (lipschitz <= 0.0 || weight_bound <= 0.0 || s <= 0.0)
    throw std::invalid_argument("theorem3_bound: parameters must be positive");
  const double N = static_cast<double>(npoints);
  const double m = static_cast<double>(templates);
  const double G = static_cast<double>(group);
  const double n = static_cast<double>(bins);
  const double L = lipschitz, C = weight_bound, V0 = loss_at_zero;
  const double statistical =
      2.0 / std::sqrt(N) *
      (4.0 * L * s * C + 2.0 * V0 + L * C * std::sqrt(0.5 * std::log(1.0 / delta)));
  const double template_term = 2.0 * s * L * C / std::sqrt(m) *
                               (1.0 + std::sqrt(2.0 * std::log(1.0 / delta)));
  const double group_term = L * (2.0 * s * C / std::sqrt(G) *
                                     (1.0 + std::sqrt(2.0 * std::log(m / delta))) +
                                 2.0 * s * C / n);
  return statistical + template_term + group_term;
}

ConcentrationTerms measure_concentration(
    const Mat& points, const std::vector<std::pair<int, int>>& pairs,
    const TemplateBank& bank, const GroupAction& action,
    const std::vector<std::int64_t>& sampled_elements, int n,
    int reference_m, std::uint64_t reference_seed) {
  ProjectionTable sampled = build_projection_table(bank, action, sampled_elements);
  ProjectionTable full =
      build_projection_table(bank, action, action.enumerate());
  TemplateBank ref_bank = make_template_bank(bank.d(), reference_m, bank.epsilon,
                                             bank.kind, reference_seed);
  ProjectionTable ref =
      build_projection_table(ref_bank, action, action.enumerate());

  ConcentrationTerms terms;
  for (auto [i, j] : pairs) {
    Vec x = points.row(i).transpose();
    Vec z = points.row(j).transpose();
    double phi = phi_dot(sampled, x, z, n);
    double ks_same = sampled_ks(sampled, x, z).value;
    double ks_full = sampled_ks(full, x, z).value;
    double ks_ref = sampled_ks(ref, x, z).value;
    terms.binning_max = std::max(terms.binning_max, std::abs(phi - ks_same));
    terms.group_max = std::max(terms.group_max, std::abs(ks_same - ks_full));
    terms.template_max = std::max(terms.template_max, std::abs(ks_full - ks_ref));
  }
  return terms;
}

}  // namespace gir

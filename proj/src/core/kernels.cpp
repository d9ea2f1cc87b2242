#include "core/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gir {

double integrated_indicator(double a, double b, double s) {
  if (s <= 0.0) throw std::invalid_argument("integrated_indicator: s <= 0");
  if (a < -s || a > s || b < -s || b > s)
    throw std::invalid_argument("integrated_indicator: argument outside [-s, s]");
  return s - std::max(a, b);
}

namespace {

void check_unit(const Vec& v, bool relaxed, const char* who) {
  if (relaxed) return;
  if (std::abs(v.norm() - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(who) + ": input not unit norm");
}

// Per-point, per-template sorted projections with suffix sums, so that
// sum_{i'} max(a, b_{i'}) costs one binary search.
struct Profile {
  Mat sorted;  // |G| x m, column j = sorted projections onto template j's orbit
  Mat suffix;  // suffix[i, j] = sum of sorted(i..|G|-1, j)
};

Profile make_profile(const ProjectionTable& table, const Vec& x) {
  Profile p;
  const std::int64_t g = table.group_size;
  p.sorted.resize(g, table.m);
  p.suffix.resize(g + 1, table.m);
  Vec proj;
  for (int j = 0; j < table.m; ++j) {
    proj = table.rows_for_template(j) * x;
    std::sort(proj.data(), proj.data() + g);
    p.sorted.col(j) = proj;
    double acc = 0.0;
    p.suffix(g, j) = 0.0;
    for (std::int64_t i = g - 1; i >= 0; --i) {
      acc += proj[i];
      p.suffix(i, j) = acc;
    }
  }
  return p;
}

// sum_{i,i'} max(a_i, b_{i'}) over one template column.
double sum_pairwise_max(const Profile& a, const Profile& b, int j,
                        std::int64_t g) {
  const double* bs = b.sorted.col(j).data();
  double total = 0.0;
  for (std::int64_t i = 0; i < g; ++i) {
    const double ai = a.sorted(i, j);
    const auto lo = std::upper_bound(bs, bs + g, ai) - bs;
    total += static_cast<double>(lo) * ai + b.suffix(lo, j);
  }
  return total;
}

KsEstimate ks_from_profiles(const Profile& a, const Profile& b,
                            const ProjectionTable& table) {
  const std::int64_t g = table.group_size;
  const double gg = static_cast<double>(g) * static_cast<double>(g);
  double mean = 0.0, meansq = 0.0;
  for (int j = 0; j < table.m; ++j) {
    double xj = table.s - sum_pairwise_max(a, b, j, g) / gg;
    mean += xj;
    meansq += xj * xj;
  }
  mean /= table.m;
  meansq /= table.m;
  KsEstimate est;
  est.value = mean;
  if (table.m > 1) {
    double var = std::max(0.0, meansq - mean * mean) * table.m / (table.m - 1);
    est.std_error = std::sqrt(var / table.m);
  }
  return est;
}

}  // namespace

KsEstimate sampled_ks(const ProjectionTable& table, const Vec& x, const Vec& z,
                      bool relaxed) {
  if (x.size() != table.d || z.size() != table.d)
    throw std::invalid_argument("sampled_ks: dimension mismatch");
  check_unit(x, relaxed, "sampled_ks");
  check_unit(z, relaxed, "sampled_ks");
  Profile a = make_profile(table, x);
  Profile b = make_profile(table, z);
  return ks_from_profiles(a, b, table);
}

double exact_haar_kernel(const GroupAction& action, const Vec& x, const Vec& z,
                         BaseKernel base, double gamma) {
  if (x.size() != action.dimension() || z.size() != action.dimension())
    throw std::invalid_argument("exact_haar_kernel: dimension mismatch");
  auto elements = action.enumerate();
  const auto g = static_cast<Eigen::Index>(elements.size());
  Mat ox(g, x.size()), oz(g, x.size());
  Vec tmp;
  for (Eigen::Index i = 0; i < g; ++i) {
    action.apply(elements[static_cast<std::size_t>(i)], x, tmp);
    ox.row(i) = tmp.transpose();
    action.apply(elements[static_cast<std::size_t>(i)], z, tmp);
    oz.row(i) = tmp.transpose();
  }
  if (base == BaseKernel::Linear)
    return ox.colwise().mean().dot(oz.colwise().mean());

  if (gamma <= 0.0) gamma = 1.0 / static_cast<double>(action.dimension());
  Vec nx = ox.rowwise().squaredNorm();
  Vec nz = oz.rowwise().squaredNorm();
  Mat cross = ox * oz.transpose();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index k = 0; k < g; ++k)
      acc += std::exp(-gamma * (nx[i] + nz[k] - 2.0 * cross(i, k)));
  return acc / (static_cast<double>(g) * static_cast<double>(g));
}

double orbit_distance(const GroupAction& action, const Vec& x, const Vec& z) {
  if (x.size() != action.dimension() || z.size() != action.dimension())
    throw std::invalid_argument("orbit_distance: dimension mismatch");
  auto elements = action.enumerate();
  const auto g = static_cast<Eigen::Index>(elements.size());
  Mat ox(g, x.size()), oz(g, x.size());
  Vec tmp;
  for (Eigen::Index i = 0; i < g; ++i) {
    action.apply(elements[static_cast<std::size_t>(i)], x, tmp);
    ox.row(i) = tmp.transpose();
    action.apply(elements[static_cast<std::size_t>(i)], z, tmp);
    oz.row(i) = tmp.transpose();
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index k = 0; k < g; ++k)
      acc += (ox.row(i) - oz.row(k)).norm();
  const double d = static_cast<double>(action.dimension());
  return acc / (std::sqrt(2.0 * M_PI * d) * static_cast<double>(g) *
                static_cast<double>(g));
}

double asymptotic_ks(const GroupAction& action, const Vec& x, const Vec& z,
                     double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("asymptotic_ks: epsilon not in (0,1)");
  return (1.0 + epsilon) - orbit_distance(action, x, z);
}

double GramMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> solver(values, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double GramMatrix::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> solver(values, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

void GramMatrix::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("GramMatrix::write_csv: cannot open " + path);
  out << "# " << descriptor << "\n";
  char buf[32];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

GramMatrix gram(const Mat& points, const KernelFn& kernel,
                const std::string& descriptor) {
  if (points.rows() < 1) throw std::invalid_argument("gram: no points");
  const Eigen::Index n = points.rows();
  GramMatrix gm;
  gm.descriptor = descriptor;
  gm.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double v;
      try {
        v = kernel(points.row(i).transpose(), points.row(j).transpose());
      } catch (const std::exception& e) {
        throw std::runtime_error("gram: kernel failed at (" + std::to_string(i) +
                                 "," + std::to_string(j) + "): " + e.what());
      }
      gm.values(i, j) = v;
      gm.values(j, i) = v;
    }
  }
  return gm;
}

GramMatrix gram_sampled_ks(const ProjectionTable& table, const Mat& points,
                           bool relaxed) {
  if (points.rows() < 1) throw std::invalid_argument("gram_sampled_ks: no points");
  if (points.cols() != table.d)
    throw std::invalid_argument("gram_sampled_ks: dimension mismatch");
  const Eigen::Index n = points.rows();
  std::vector<Profile> profiles;
  profiles.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec p = points.row(i).transpose();
    check_unit(p, relaxed, "gram_sampled_ks");
    profiles.push_back(make_profile(table, p));
  }
  GramMatrix gm;
  gm.descriptor = "sampled_ks;" + table.provenance;
  gm.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      double v = ks_from_profiles(profiles[static_cast<std::size_t>(i)],
                                  profiles[static_cast<std::size_t>(j)], table)
                     .value;
      gm.values(i, j) = v;
      gm.values(j, i) = v;
    }
  return gm;
}

}  // namespace gir

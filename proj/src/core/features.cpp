#include "core/features.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gir {

namespace {

void check_norm(const Vec& x, bool relaxed) {
  if (relaxed) return;
  double nrm = x.norm();
  if (std::abs(nrm - 1.0) > 1e-6)
    throw std::invalid_argument(
        "compute_features: input not unit norm (strict mode)");
}

// counts[k + n] = #{i : p_i <= s k / n} for k = -n..n.
void bin_counts(const double* proj, std::int64_t g, int n, double s,
                std::vector<std::int64_t>& counts) {
  counts.assign(static_cast<std::size_t>(2 * n + 1), 0);
  std::vector<std::int64_t> hist(static_cast<std::size_t>(2 * n + 2), 0);
  const double scale = n / s;
  for (std::int64_t i = 0; i < g; ++i) {
    // smallest k with s k / n >= p, inclusive at ties
    double kf = std::ceil(proj[i] * scale);
    std::int64_t k = static_cast<std::int64_t>(kf);
    if (k < -n) k = -n;
    if (k > n + 1) k = n + 1;  // never counted (projection above s)
    ++hist[static_cast<std::size_t>(k + n)];
  }
  std::int64_t cum = 0;
  for (int k = 0; k < 2 * n + 1; ++k) {
    cum += hist[static_cast<std::size_t>(k)];
    counts[static_cast<std::size_t>(k)] = cum;
  }
}

}  // namespace

double empirical_cdf(const ProjectionTable& table, const Vec& x, int j,
                     double tau) {
  if (x.size() != table.d)
    throw std::invalid_argument("empirical_cdf: dimension mismatch");
  if (j < 0 || j >= table.m)
    throw std::invalid_argument("empirical_cdf: template index out of range");
  if (tau < -table.s || tau > table.s)
    throw std::invalid_argument("empirical_cdf: tau outside [-s, s]");
  Vec proj = table.rows_for_template(j) * x;
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < table.group_size; ++i)
    if (proj[i] <= tau) ++count;
  return static_cast<double>(count) / static_cast<double>(table.group_size);
}

FeatureVector compute_features(const ProjectionTable& table, const Vec& x,
                               int n, bool relaxed) {
  if (x.size() != table.d)
    throw std::invalid_argument("compute_features: dimension mismatch");
  if (n < 1) throw std::invalid_argument("compute_features: n < 1");
  check_norm(x, relaxed);

  FeatureVector f;
  f.meta = {table.m, n, table.s, table.group_size};
  const int bins = 2 * n + 1;
  f.values.resize(static_cast<Eigen::Index>(table.m) * bins);
  const double norm = std::sqrt(table.s) /
                      (std::sqrt(static_cast<double>(n) * table.m) *
                       static_cast<double>(table.group_size));
  Vec proj;
  std::vector<std::int64_t> counts;
  for (int j = 0; j < table.m; ++j) {
    proj = table.rows_for_template(j) * x;
    bin_counts(proj.data(), table.group_size, n, table.s, counts);
    for (int k = 0; k < bins; ++k)
      f.values[static_cast<Eigen::Index>(j) * bins + k] =
          norm * static_cast<double>(counts[static_cast<std::size_t>(k)]);
  }
  return f;
}

double feature_dot(const FeatureVector& a, const FeatureVector& b) {
  if (!(a.meta == b.meta))
    throw std::invalid_argument("feature_dot: metadata mismatch");
  return a.values.dot(b.values);
}

double phi_dot(const ProjectionTable& table, const Vec& x, const Vec& z, int n,
               bool relaxed) {
  if (x.size() != table.d || z.size() != table.d)
    throw std::invalid_argument("phi_dot: dimension mismatch");
  if (n < 1) throw std::invalid_argument("phi_dot: n < 1");
  check_norm(x, relaxed);
  check_norm(z, relaxed);
  Vec px, pz;
  std::vector<std::int64_t> cx, cz;
  double acc = 0.0;
  for (int j = 0; j < table.m; ++j) {
    px = table.rows_for_template(j) * x;
    pz = table.rows_for_template(j) * z;
    bin_counts(px.data(), table.group_size, n, table.s, cx);
    bin_counts(pz.data(), table.group_size, n, table.s, cz);
    double t = 0.0;
    for (int k = 0; k < 2 * n + 1; ++k)
      t += static_cast<double>(cx[static_cast<std::size_t>(k)]) *
           static_cast<double>(cz[static_cast<std::size_t>(k)]);
    acc += t;
  }
  const double g = static_cast<double>(table.group_size);
  return acc * table.s / (static_cast<double>(n) * table.m * g * g);
}

Mat compute_feature_matrix(const ProjectionTable& table, const Mat& points,
                           int n, bool relaxed, int workers) {
  if (points.cols() != table.d)
    throw std::invalid_argument("compute_feature_matrix: dimension mismatch");
  if (n < 1) throw std::invalid_argument("compute_feature_matrix: n < 1");
  const Eigen::Index npts = points.rows();
  const int bins = 2 * n + 1;
  Mat out(npts, static_cast<Eigen::Index>(table.m) * bins);
  const double norm = std::sqrt(table.s) /
                      (std::sqrt(static_cast<double>(n) * table.m) *
                       static_cast<double>(table.group_size));
  if (!relaxed)
    for (Eigen::Index p = 0; p < npts; ++p)
      if (std::abs(points.row(p).norm() - 1.0) > 1e-6)
        throw std::invalid_argument(
            "compute_feature_matrix: non-unit point in strict mode");

  constexpr Eigen::Index kChunk = 256;
  const Eigen::Index nchunks = (npts + kChunk - 1) / kChunk;
  auto work = [&](Eigen::Index chunk_begin, Eigen::Index chunk_end) {
    Mat proj;
    std::vector<std::int64_t> counts;
    std::vector<double> scratch(static_cast<std::size_t>(table.group_size));
    for (Eigen::Index c = chunk_begin; c < chunk_end; ++c) {
      const Eigen::Index lo = c * kChunk;
      const Eigen::Index hi = std::min(npts, lo + kChunk);
      proj.noalias() = points.middleRows(lo, hi - lo) * table.vectors.transpose();
      for (Eigen::Index p = lo; p < hi; ++p) {
        for (int j = 0; j < table.m; ++j) {
          for (std::int64_t i = 0; i < table.group_size; ++i)
            scratch[static_cast<std::size_t>(i)] =
                proj(p - lo, static_cast<Eigen::Index>(j) * table.group_size + i);
          bin_counts(scratch.data(), table.group_size, n, table.s, counts);
          for (int k = 0; k < bins; ++k)
            out(p, static_cast<Eigen::Index>(j) * bins + k) =
                norm * static_cast<double>(counts[static_cast<std::size_t>(k)]);
        }
      }
    }
  };
  workers = std::max(1, workers);
  if (workers == 1 || nchunks <= 1) {
    work(0, nchunks);
  } else {
    const int nthreads = static_cast<int>(
        std::min<Eigen::Index>(workers, nchunks));
    std::vector<std::thread> threads;
    Eigen::Index per = (nchunks + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      Eigen::Index lo = t * per, hi = std::min(nchunks, lo + per);
      if (lo >= hi) break;
      threads.emplace_back(work, lo, hi);
    }
    for (auto& th : threads) th.join();
  }
  return out;
}

}  // namespace gir

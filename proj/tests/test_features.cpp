#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/datasets.hpp"
#include "core/features.hpp"
#include "core/kernels.hpp"

using gir::GroupAction;
using gir::Mat;
using gir::ProjectionTable;
using gir::Rng;
using gir::TemplateBank;
using gir::TemplateKind;
using gir::Vec;

namespace {

Vec random_unit(int d, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = normal(rng);
  return x / x.norm();
}

// single-template, trivial-group table with the given template row
ProjectionTable single_row_table(const Vec& t, double epsilon) {
  ProjectionTable table;
  table.vectors = t.transpose();
  table.m = 1;
  table.d = static_cast<int>(t.size());
  table.group_size = 1;
  table.epsilon = epsilon;
  table.s = 1.0 + epsilon;
  return table;
}

ProjectionTable xperm_table(int m, double eps, std::uint64_t seed) {
  GroupAction action = GroupAction::block_permutation(5, 8);
  TemplateBank bank = gir::make_template_bank(
      40, m, eps, TemplateKind::GaussianRejection, seed);
  return gir::build_projection_table(bank, action, action.enumerate());
}

}  // namespace

TEST_CASE("empirical cdf endpoints") {
  ProjectionTable table = xperm_table(4, 0.1, 1);
  Vec x = gir::gen_xperm(2).points.row(17).transpose();
  for (int j = 0; j < table.m; ++j) {
    CHECK(gir::empirical_cdf(table, x, j, table.s) == 1.0);
    CHECK(gir::empirical_cdf(table, x, j, -table.s) == 0.0);
  }
  CHECK_THROWS_AS(gir::empirical_cdf(table, x, 0, table.s + 0.01),
                  std::invalid_argument);
}

TEST_CASE("empirical cdf on the trivial group is a plain indicator") {
  // x = e0 and t[0] = 0.25 make the projection exactly representable,
  // so the tie check at tau = p is meaningful
  Vec x = Vec::Zero(10);
  x[0] = 1.0;
  Vec t = 0.5 * random_unit(10, 3);
  t[0] = 0.25;
  t *= 0.9 / t.norm();
  t[0] = 0.25;
  ProjectionTable table = single_row_table(t, 0.1);
  const double p = 0.25;
  CHECK(gir::empirical_cdf(table, x, 0, p + 0.01) == 1.0);
  CHECK(gir::empirical_cdf(table, x, 0, p - 0.01) == 0.0);
  CHECK(gir::empirical_cdf(table, x, 0, p) == 1.0);  // inclusive at equality
}

TEST_CASE("feature entries: range, monotonicity, top-bin saturation") {
  ProjectionTable table = xperm_table(6, 0.1, 5);
  Vec x = gir::gen_xperm(6).points.row(123).transpose();
  const int n = 7;
  gir::FeatureVector f = gir::compute_features(table, x, n);
  REQUIRE(f.values.size() == 6 * (2 * n + 1));
  const double cap = std::sqrt(table.s) / std::sqrt(n * 6.0);
  for (int j = 0; j < 6; ++j) {
    double prev = -1.0;
    for (int k = -n; k <= n; ++k) {
      double v = f.values[j * (2 * n + 1) + (k + n)];
      CHECK(v >= 0.0);
      CHECK(v <= cap + 1e-15);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(f.values[j * (2 * n + 1) + 2 * n] == doctest::Approx(cap).epsilon(1e-12));
  }
}

TEST_CASE("single bin, zero projection: tie at tau=0 is inclusive") {
  Vec x = random_unit(8, 7);
  Vec t(8);
  // build t orthogonal to x with norm 0.9
  Vec r = random_unit(8, 8);
  t = r - r.dot(x) * x;
  t *= 0.9 / t.norm();
  ProjectionTable table = single_row_table(t, 0.1);
  gir::FeatureVector f = gir::compute_features(table, x, 1);
  const double cap = std::sqrt(1.1);
  CHECK(f.values[0] == 0.0);
  CHECK(f.values[1] == doctest::Approx(cap).epsilon(1e-12));
  CHECK(f.values[2] == doctest::Approx(cap).epsilon(1e-12));
}

TEST_CASE("full-enumeration features are exactly invariant") {
  GroupAction action = GroupAction::block_permutation(5, 8);
  ProjectionTable table = xperm_table(5, 0.1, 9);
  gir::XpermDataset ds = gir::gen_xperm(10);
  Rng rng(11);
  std::uniform_int_distribution<std::int64_t> pick(0, ds.size() - 1);
  for (int trial = 0; trial < 5; ++trial) {
    Vec x = ds.points.row(pick(rng)).transpose();
    gir::FeatureVector fx = gir::compute_features(table, x, 10);
    for (auto g : action.enumerate()) {
      gir::FeatureVector fg = gir::compute_features(table, action.apply(g, x), 10);
      CHECK((fg.values - fx.values).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("feature dot product bounds") {
  ProjectionTable table = xperm_table(8, 0.1, 12);
  gir::XpermDataset ds = gir::gen_xperm(13);
  const int n = 9;
  gir::FeatureVector a = gir::compute_features(table, ds.points.row(3).transpose(), n);
  gir::FeatureVector b = gir::compute_features(table, ds.points.row(900).transpose(), n);
  const double dot = gir::feature_dot(a, b);
  CHECK(dot <= table.s * (2 * n + 1) / n);
  CHECK(dot >= table.s / n);  // saturated top bins alone contribute s/n
}

TEST_CASE("feature dot rejects mismatched metadata") {
  ProjectionTable table = xperm_table(3, 0.1, 14);
  Vec x = gir::gen_xperm(15).points.row(0).transpose();
  gir::FeatureVector a = gir::compute_features(table, x, 4);
  gir::FeatureVector b = gir::compute_features(table, x, 5);
  CHECK_THROWS_AS(gir::feature_dot(a, b), std::invalid_argument);
}

TEST_CASE("streamed dot equals materialized dot to rounding") {
  ProjectionTable table = xperm_table(7, 0.1, 16);
  gir::XpermDataset ds = gir::gen_xperm(17);
  Vec x = ds.points.row(41).transpose();
  Vec z = ds.points.row(4242).transpose();
  for (int n : {3, 11, 37}) {
    gir::FeatureVector fx = gir::compute_features(table, x, n);
    gir::FeatureVector fz = gir::compute_features(table, z, n);
    CHECK(gir::phi_dot(table, x, z, n) ==
          doctest::Approx(gir::feature_dot(fx, fz)).epsilon(1e-13));
  }
}

TEST_CASE("binning error against the exact threshold integral") {
  ProjectionTable table = xperm_table(10, 0.1, 18);
  gir::XpermDataset ds = gir::gen_xperm(19);
  Rng rng(20);
  std::uniform_int_distribution<std::int64_t> pick(0, ds.size() - 1);
  for (int n : {5, 20, 100}) {
    for (int trial = 0; trial < 5; ++trial) {
      Vec x = ds.points.row(pick(rng)).transpose();
      Vec z = ds.points.row(pick(rng)).transpose();
      const double binned = gir::phi_dot(table, x, z, n);
      const double exact = gir::sampled_ks(table, x, z).value;
      CHECK(std::abs(binned - exact) <= table.s / n + 1e-9);
    }
  }
}

TEST_CASE("strict mode rejects non-unit inputs, relaxed mode accepts them") {
  ProjectionTable table = xperm_table(2, 0.1, 21);
  Vec x = 0.5 * gir::gen_xperm(22).points.row(8).transpose();
  CHECK_THROWS_AS(gir::compute_features(table, x, 4), std::invalid_argument);
  CHECK_NOTHROW(gir::compute_features(table, x, 4, /*relaxed=*/true));
}

TEST_CASE("feature matrix matches per-point features and ignores worker count") {
  ProjectionTable table = xperm_table(4, 0.1, 23);
  gir::XpermDataset ds = gir::gen_xperm(24);
  Mat pts = ds.points.topRows(300);
  const int n = 6;
  Mat serial = gir::compute_feature_matrix(table, pts, n, false, 1);
  Mat parallel = gir::compute_feature_matrix(table, pts, n, false, 4);
  CHECK((serial - parallel).cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index i : {Eigen::Index{0}, Eigen::Index{123}, Eigen::Index{299}}) {
    gir::FeatureVector f = gir::compute_features(table, pts.row(i).transpose(), n);
    CHECK((serial.row(i).transpose() - f.values).cwiseAbs().maxCoeff() == 0.0);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
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

ProjectionTable table_for(const GroupAction& action, int d, int m, double eps,
                          std::uint64_t seed) {
  TemplateBank bank =
      gir::make_template_bank(d, m, eps, TemplateKind::GaussianRejection, seed);
  return gir::build_projection_table(bank, action, action.enumerate());
}

}  // namespace

TEST_CASE("integrated indicator formula and range checks") {
  CHECK(gir::integrated_indicator(-1.1, -1.1, 1.1) == doctest::Approx(2.2));
  CHECK(gir::integrated_indicator(1.1, 0.0, 1.1) == 0.0);
  CHECK(gir::integrated_indicator(0.2, -0.5, 1.1) == doctest::Approx(0.9));
  CHECK_THROWS_AS(gir::integrated_indicator(1.2, 0.0, 1.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gir::integrated_indicator(0.0, -1.2, 1.1),
                  std::invalid_argument);
}

TEST_CASE("sampled kernel degenerates correctly on a single row") {
  Vec x = random_unit(12, 1);
  Vec t = 0.7 * random_unit(12, 2);
  ProjectionTable table;
  table.vectors = t.transpose();
  table.m = 1;
  table.d = 12;
  table.group_size = 1;
  table.epsilon = 0.1;
  table.s = 1.1;
  const double c = t.dot(x);
  CHECK(gir::sampled_ks(table, x, x).value == doctest::Approx(1.1 - c));
  CHECK(gir::sampled_ks(table, x, x).std_error == 0.0);
}

TEST_CASE("sampled kernel is the binning limit of the feature dot") {
  GroupAction action = GroupAction::cyclic_shift(10);
  ProjectionTable table = table_for(action, 10, 20, 0.1, 3);
  Vec x = random_unit(10, 4);
  Vec z = random_unit(10, 5);
  const int n = 10000;
  CHECK(std::abs(gir::phi_dot(table, x, z, n) -
                 gir::sampled_ks(table, x, z).value) <= table.s / n);
}

TEST_CASE("sampled kernel is symmetric") {
  GroupAction action = GroupAction::cyclic_shift(9);
  ProjectionTable table = table_for(action, 9, 15, 0.1, 6);
  Vec x = random_unit(9, 7);
  Vec z = random_unit(9, 8);
  CHECK(std::abs(gir::sampled_ks(table, x, z).value -
                 gir::sampled_ks(table, z, x).value) <= 1e-12);
}

TEST_CASE("sampled kernel with full enumeration is invariant") {
  GroupAction action = GroupAction::cyclic_shift(8);
  ProjectionTable table = table_for(action, 8, 30, 0.1, 9);
  Vec x = random_unit(8, 10);
  Vec z = random_unit(8, 11);
  const double base = gir::sampled_ks(table, x, z).value;
  for (auto g : action.enumerate()) {
    for (auto h : action.enumerate()) {
      CHECK(std::abs(gir::sampled_ks(table, action.apply(g, x),
                                     action.apply(h, z)).value -
                     base) <= 1e-10);
    }
  }
}

TEST_CASE("exact Haar kernel: trivial group and invariance") {
  GroupAction trivial = GroupAction::block_permutation(1, 6);
  Vec x = random_unit(6, 12);
  Vec z = random_unit(6, 13);
  CHECK(gir::exact_haar_kernel(trivial, x, z, gir::BaseKernel::Linear) ==
        doctest::Approx(x.dot(z)).epsilon(1e-12));
  CHECK(gir::exact_haar_kernel(trivial, x, x, gir::BaseKernel::Rbf) ==
        doctest::Approx(1.0).epsilon(1e-12));

  GroupAction action = GroupAction::cyclic_shift(6);
  for (auto base : {gir::BaseKernel::Linear, gir::BaseKernel::Rbf}) {
    const double k0 = gir::exact_haar_kernel(action, x, z, base);
    for (auto g : action.enumerate())
      CHECK(std::abs(gir::exact_haar_kernel(action, action.apply(g, x), z,
                                            base) -
                     k0) <= 1e-10);
  }
}

TEST_CASE("orbit distance: zero, closed form, invariance") {
  GroupAction trivial = GroupAction::block_permutation(1, 2);
  Vec x(2), z(2);
  x << 1, 0;
  z << 0, 1;
  CHECK(gir::orbit_distance(trivial, x, x) == 0.0);
  CHECK(gir::orbit_distance(trivial, x, z) ==
        doctest::Approx(std::sqrt(2.0) / std::sqrt(4.0 * M_PI)).epsilon(1e-12));

  GroupAction action = GroupAction::cyclic_shift(7);
  Vec a = random_unit(7, 14);
  Vec b = random_unit(7, 15);
  const double d0 = gir::orbit_distance(action, a, b);
  for (auto g : action.enumerate())
    CHECK(std::abs(gir::orbit_distance(action, action.apply(g, a), b) - d0) <=
          1e-10);
}

TEST_CASE("asymptotic kernel is s minus the orbit distance") {
  GroupAction trivial = GroupAction::block_permutation(1, 5);
  Vec x = random_unit(5, 16);
  CHECK(gir::asymptotic_ks(trivial, x, x, 0.1) == doctest::Approx(1.1));

  GroupAction action = GroupAction::cyclic_shift(5);
  Vec z = random_unit(5, 17);
  CHECK(gir::asymptotic_ks(action, x, z, 0.1) ==
        doctest::Approx(1.1 - gir::orbit_distance(action, x, z)).epsilon(1e-12));
}

TEST_CASE("gram assembly: single point, symmetry, factorization identity") {
  GroupAction action = GroupAction::block_permutation(5, 8);
  ProjectionTable table = table_for(action, 40, 6, 0.1, 18);
  gir::XpermDataset ds = gir::gen_xperm(19);
  Mat pts = ds.points.topRows(12);

  gir::GramMatrix one = gir::gram(pts.topRows(1), [&](const Vec& a, const Vec& b) {
    return gir::sampled_ks(table, a, b).value;
  });
  CHECK(one.values.rows() == 1);
  CHECK(one.values(0, 0) ==
        doctest::Approx(gir::sampled_ks(table, pts.row(0).transpose(),
                                        pts.row(0).transpose()).value));

  const int n = 8;
  Mat features = gir::compute_feature_matrix(table, pts, n);
  Mat outer = features * features.transpose();
  gir::GramMatrix phi_gram = gir::gram(pts, [&](const Vec& a, const Vec& b) {
    return gir::phi_dot(table, a, b, n);
  });
  CHECK((phi_gram.values - phi_gram.values.transpose()).cwiseAbs().maxCoeff() <=
        1e-10);
  CHECK((phi_gram.values - outer).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("cached gram equals pairwise sampled kernel evaluations") {
  GroupAction action = GroupAction::cyclic_shift(10);
  ProjectionTable table = table_for(action, 10, 12, 0.1, 20);
  Mat pts(5, 10);
  for (int i = 0; i < 5; ++i)
    pts.row(i) = random_unit(10, 100 + static_cast<std::uint64_t>(i)).transpose();
  gir::GramMatrix cached = gir::gram_sampled_ks(table, pts);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(cached.values(i, j) ==
            doctest::Approx(gir::sampled_ks(table, pts.row(i).transpose(),
                                            pts.row(j).transpose()).value)
                .epsilon(1e-12));
}

TEST_CASE("gram csv export and eigenvalue accessors") {
  Mat pts(3, 4);
  for (int i = 0; i < 3; ++i)
    pts.row(i) = random_unit(4, 200 + static_cast<std::uint64_t>(i)).transpose();
  gir::GramMatrix g = gir::gram(
      pts, [](const Vec& a, const Vec& b) { return a.dot(b); }, "linear");
  CHECK(g.min_eigenvalue() >= -1e-12);
  CHECK(g.max_eigenvalue() > 0.0);
  const std::string path = "test_gram.csv";
  g.write_csv(path);
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}

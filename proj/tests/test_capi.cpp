#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "gir/gir.h"

TEST_CASE("group lifecycle and queries through the C boundary") {
  gir_group* g = nullptr;
  REQUIRE(gir_group_block_permutation(5, 8, &g) == GIR_OK);
  CHECK(gir_group_dimension(g) == 40);
  CHECK(gir_group_order(g) == 120);
  CHECK(gir_group_exactly_unitary(g) == 1);

  std::vector<double> x(40, 0.0);
  x[0] = 1.0;
  std::vector<double> out(40, -1.0);
  CHECK(gir_group_apply(g, gir_group_identity(g), x.data(), 40, out.data()) ==
        GIR_OK);
  CHECK(std::memcmp(x.data(), out.data(), sizeof(double) * 40) == 0);

  std::vector<int64_t> elems(50);
  CHECK(gir_group_sample(g, 50, 7, elems.data()) == GIR_OK);
  for (auto e : elems) {
    CHECK(e >= 0);
    CHECK(e < 120);
  }
  gir_group_free(g);
}

TEST_CASE("error taxonomy: argument, capacity, config") {
  gir_group* g = nullptr;
  CHECK(gir_group_block_permutation(5, 8, nullptr) == GIR_ERR_ARGUMENT);
  CHECK(gir_group_block_permutation(9, 2, &g) == GIR_ERR_CAPACITY);
  CHECK(std::strlen(gir_last_error()) > 0);

  CHECK(gir_config_validate("kind = invariance-check\nseed = nope\n") ==
        GIR_ERR_CONFIG);
  CHECK(std::strlen(gir_last_error()) > 0);
  CHECK(gir_config_validate(nullptr) == GIR_ERR_ARGUMENT);
  CHECK(gir_config_validate("kind = invariance-check\nseed = 1\n") == GIR_OK);
  CHECK(gir_last_error()[0] == '\0');
}

TEST_CASE("bank, table, features, and kernels through the C boundary") {
  gir_group* g = nullptr;
  REQUIRE(gir_group_cyclic_shift(10, &g) == GIR_OK);
  gir_bank* bank = nullptr;
  REQUIRE(gir_bank_create(10, 6, 0.1, GIR_TEMPLATES_GAUSSIAN, 21, &bank) ==
          GIR_OK);
  CHECK(gir_bank_s(bank) == 1.1);
  std::vector<double> t(10);
  CHECK(gir_bank_template(bank, 0, t.data()) == GIR_OK);
  double sq = 0.0;
  for (double v : t) sq += v * v;
  CHECK(sq < 1.1);
  CHECK(gir_bank_template(bank, 6, t.data()) == GIR_ERR_ARGUMENT);

  gir_table* table = nullptr;
  REQUIRE(gir_table_build(bank, g, nullptr, 0, &table) == GIR_OK);
  const int n = 8;
  const int64_t len = gir_table_feature_length(table, n);
  CHECK(len == 6 * (2 * n + 1));

  std::vector<double> x(10, 0.0), z(10, 0.0);
  x[0] = 1.0;
  z[3] = 1.0;
  std::vector<double> fx(static_cast<std::size_t>(len)), fz(fx);
  REQUIRE(gir_features(table, x.data(), 10, n, 0, fx.data()) == GIR_OK);
  REQUIRE(gir_features(table, z.data(), 10, n, 0, fz.data()) == GIR_OK);
  // z is a cyclic shift of x, so the features must coincide exactly
  CHECK(std::memcmp(fx.data(), fz.data(), sizeof(double) * fx.size()) == 0);

  double ks = 0.0, se = -1.0;
  REQUIRE(gir_sampled_ks(table, x.data(), z.data(), 10, 0, &ks, &se) == GIR_OK);
  CHECK(ks > 0.0);
  CHECK(se >= 0.0);
  double dot = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) dot += fx[i] * fz[i];
  CHECK(std::abs(dot - ks) <= 1.1 / n + 1e-9);

  double haar = 0.0, dist = 0.0, asym = 0.0;
  REQUIRE(gir_exact_haar(g, x.data(), z.data(), 10, GIR_BASE_LINEAR, -1.0,
                         &haar) == GIR_OK);
  REQUIRE(gir_orbit_distance(g, x.data(), z.data(), 10, &dist) == GIR_OK);
  REQUIRE(gir_asymptotic_ks(g, x.data(), z.data(), 10, 0.1, &asym) == GIR_OK);
  CHECK(asym == doctest::Approx(1.1 - dist).epsilon(1e-12));
  CHECK(haar == doctest::Approx(0.1).epsilon(1e-12));  // mean of <gx, g'z>

  gir_table_free(table);
  gir_bank_free(bank);
  gir_group_free(g);
}

TEST_CASE("bound evaluators through the C boundary") {
  double d1 = 0.0, d2 = 0.0;
  REQUIRE(gir_delta_bounds(1000, 0.5, &d1, &d2) == GIR_OK);
  CHECK(d2 < 1e-6);
  CHECK(gir_delta_bounds(1, 0.5, &d1, &d2) == GIR_ERR_ARGUMENT);

  double mean = 0.0, second = 0.0, var = 0.0;
  REQUIRE(gir_clark_max_moments(0, 0, 1, 1, 0.0, &mean, &second, &var) ==
          GIR_OK);
  CHECK(mean == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(second == doctest::Approx(1.0).epsilon(1e-12));

  double v = 0.0;
  REQUIRE(gir_chi2_tail_upper(100, 0.3, &v) == GIR_OK);
  CHECK(v == doctest::Approx(std::exp(-100 * 0.09 / 8.0)));
  REQUIRE(gir_dkw_bound(100, 0.1, &v) == GIR_OK);
  CHECK(v == doctest::Approx(2.0 * std::exp(-2.0)));

  int64_t bins = 0, templates = 0, group = 0;
  REQUIRE(gir_theorem2_sample_sizes(4000, 0.1, 0.1, 0.1, 0.05, 0.05, 9.68,
                                    18.0, &bins, &templates, &group) == GIR_OK);
  CHECK(bins == 10);
  CHECK(templates > 0);
  CHECK(group > templates);

  REQUIRE(gir_theorem3_bound(4000, 25, 120, 20, 1, 1, 1, 1.1, 0.05, &v) ==
          GIR_OK);
  CHECK(v > 0.0);
}

TEST_CASE("experiment run and dataset generation through the C boundary") {
  const std::string out = "test_capi_bounds.csv";
  const std::string cfg =
      "kind = bounds-report\nseed = 1\noutput = " + out + "\n";
  REQUIRE(gir_experiment_run(cfg.c_str(), 1) == GIR_OK);
  std::FILE* f = std::fopen(out.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(out.c_str());

  CHECK(gir_experiment_run("kind = bad\nseed = 1\n", 1) == GIR_ERR_CONFIG);

  const std::string ds = "test_capi_xperm.csv";
  REQUIRE(gir_gen_xperm_csv(5, ds.c_str()) == GIR_OK);
  f = std::fopen(ds.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(ds.c_str());
}

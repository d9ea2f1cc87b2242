// Experiment runner CLI. Talks to the core exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gir/gir.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

int worker_count() {
  const char* env = std::getenv("GIR_WORKERS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v < 1 ? 1 : v;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int report(gir_status status) {
  if (status == GIR_OK) return kExitOk;
  std::fprintf(stderr, "error: %s\n", gir_last_error());
  return status == GIR_ERR_CONFIG || status == GIR_ERR_ARGUMENT
             ? kExitValidation
             : kExitRuntime;
}

int cmd_run(const std::string& config_path) {
  std::string text;
  if (!read_file(config_path, text)) {
    std::fprintf(stderr, "error: cannot read config %s\n", config_path.c_str());
    return kExitRuntime;
  }
  if (gir_status st = gir_config_validate(text.c_str()); st != GIR_OK)
    return report(st);
  return report(gir_experiment_run(text.c_str(), worker_count()));
}

int cmd_validate(const std::string& config_path) {
  std::string text;
  if (!read_file(config_path, text)) {
    std::fprintf(stderr, "error: cannot read config %s\n", config_path.c_str());
    return kExitRuntime;
  }
  int rc = report(gir_config_validate(text.c_str()));
  if (rc == kExitOk) std::printf("ok\n");
  return rc;
}

int cmd_gen_dataset(const std::string& spec, const std::string& out_path,
                    std::uint64_t seed) {
  if (spec != "xperm") {
    std::fprintf(stderr, "error: unknown dataset spec `%s` (supported: xperm)\n",
                 spec.c_str());
    return kExitValidation;
  }
  return report(gir_gen_xperm_csv(seed, out_path.c_str()));
}

int cmd_bounds(int d, double epsilon, std::int64_t npoints, std::int64_t m,
               std::int64_t group, std::int64_t bins, double lipschitz,
               double weight_bound, double loss_at_zero, double delta,
               double c1, double c2, double e0, double e1, double e2,
               double jl_delta1, double jl_delta2) {
  const double s = 1.0 + epsilon;
  double delta1, delta2;
  if (gir_status st = gir_delta_bounds(d, epsilon, &delta1, &delta2);
      st != GIR_OK)
    return report(st);
  if (c1 <= 0.0) c1 = 8.0 * s * s;
  std::int64_t jl_bins, jl_templates, jl_group;
  if (gir_status st =
          gir_theorem2_sample_sizes(npoints, e0, e1, e2, jl_delta1, jl_delta2,
                                    c1, c2, &jl_bins, &jl_templates, &jl_group);
      st != GIR_OK)
    return report(st);
  double risk;
  if (gir_status st =
          gir_theorem3_bound(npoints, m, group, bins, lipschitz, weight_bound,
                             loss_at_zero, s, delta, &risk);
      st != GIR_OK)
    return report(st);

  std::printf("bound,inputs,value\n");
  std::printf("delta1,\"d=%d;eps=%g\",%.12g\n", d, epsilon, delta1);
  std::printf("delta2,\"d=%d;eps=%g\",%.12g\n", d, epsilon, delta2);
  std::printf("theorem2_bins,\"e0=%g\",%lld\n", e0,
              static_cast<long long>(jl_bins));
  std::printf("theorem2_templates,\"N=%lld;e1=%g;C1=%g\",%lld\n",
              static_cast<long long>(npoints), e1, c1,
              static_cast<long long>(jl_templates));
  std::printf("theorem2_group,\"N=%lld;e2=%g;C2=%g\",%lld\n",
              static_cast<long long>(npoints), e2, c2,
              static_cast<long long>(jl_group));
  std::printf("theorem3_risk,\"N=%lld;m=%lld;G=%lld;n=%lld;delta=%g\",%.12g\n",
              static_cast<long long>(npoints), static_cast<long long>(m),
              static_cast<long long>(group), static_cast<long long>(bins),
              delta, risk);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-invariant random feature experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "config file")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a config");
  validate->add_option("config", validate_path, "config file")->required();

  std::string ds_spec, ds_out;
  std::uint64_t ds_seed = 0;
  auto* gen = app.add_subcommand("gen-dataset", "generate a dataset as CSV");
  gen->add_option("spec", ds_spec, "dataset spec (xperm)")->required();
  gen->add_option("out", ds_out, "output CSV path")->required();
  gen->add_option("--seed", ds_seed, "rng seed")->required();

  int b_d = 1000;
  double b_eps = 0.1;
  std::int64_t b_n = 4000, b_m = 25, b_g = 120, b_bins = 20;
  double b_l = 1.0, b_c = 1.0, b_v0 = 1.0, b_delta = 0.05;
  double b_c1 = 0.0, b_c2 = 18.0;
  double b_e0 = 0.1, b_e1 = 0.1, b_e2 = 0.1, b_jd1 = 0.05, b_jd2 = 0.05;
  auto* bounds = app.add_subcommand("bounds", "print closed-form bounds as CSV");
  bounds->add_option("--d", b_d, "ambient dimension");
  bounds->add_option("--epsilon", b_eps, "truncation epsilon");
  bounds->add_option("--npoints", b_n, "training/uniformity set size N");
  bounds->add_option("--m", b_m, "number of templates");
  bounds->add_option("--group", b_g, "number of group elements");
  bounds->add_option("--bins", b_bins, "number of CDF bins n");
  bounds->add_option("--lipschitz", b_l, "loss Lipschitz constant L");
  bounds->add_option("--weight-bound", b_c, "weight bound C");
  bounds->add_option("--loss-at-zero", b_v0, "V(0)");
  bounds->add_option("--delta", b_delta, "confidence delta");
  bounds->add_option("--c1", b_c1, "JL constant C1 (0 = default 8 s^2)");
  bounds->add_option("--c2", b_c2, "JL constant C2");
  bounds->add_option("--e0", b_e0, "binning tolerance");
  bounds->add_option("--e1", b_e1, "template tolerance");
  bounds->add_option("--e2", b_e2, "group tolerance");
  bounds->add_option("--jl-delta1", b_jd1, "template failure probability");
  bounds->add_option("--jl-delta2", b_jd2, "group failure probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (run->parsed()) return cmd_run(config_path);
  if (validate->parsed()) return cmd_validate(validate_path);
  if (gen->parsed()) return cmd_gen_dataset(ds_spec, ds_out, ds_seed);
  if (bounds->parsed())
    return cmd_bounds(b_d, b_eps, b_n, b_m, b_g, b_bins, b_l, b_c, b_v0,
                      b_delta, b_c1, b_c2, b_e0, b_e1, b_e2, b_jd1, b_jd2);
  return kExitValidation;
}

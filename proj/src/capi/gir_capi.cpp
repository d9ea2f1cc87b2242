#include "gir/gir.h"

#include <cstring>
#include <string>

#include "core/analysis.hpp"
#include "core/datasets.hpp"
#include "core/experiment.hpp"
#include "core/features.hpp"
#include "core/kernels.hpp"
#include "core/templates.hpp"

namespace {

thread_local std::string g_last_error;

gir_status fail(gir_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Maps C++ exceptions onto status codes; argument errors and capacity
// errors keep their distinct codes.
template <typename Fn>
gir_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GIR_OK;
  } catch (const gir::ConfigError& e) {
    return fail(GIR_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GIR_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(GIR_ERR_ARGUMENT, e.what());
  } catch (const std::length_error& e) {
    return fail(GIR_ERR_CAPACITY, e.what());
  } catch (const std::exception& e) {
    return fail(GIR_ERR_RUNTIME, e.what());
  }
}

gir::Vec to_vec(const double* x, int d) {
  return Eigen::Map<const gir::Vec>(x, d);
}

}  // namespace

struct gir_group {
  gir::GroupAction action;
};
struct gir_bank {
  gir::TemplateBank bank;
};
struct gir_table {
  gir::ProjectionTable table;
};

extern "C" {

const char* gir_last_error(void) { return g_last_error.c_str(); }

gir_status gir_group_block_permutation(int num_blocks, int block_size,
                                       gir_group** out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new gir_group{gir::GroupAction::block_permutation(num_blocks,
                                                             block_size)};
  });
}

gir_status gir_group_cyclic_shift(int dimension, gir_group** out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded(
      [&] { *out = new gir_group{gir::GroupAction::cyclic_shift(dimension)}; });
}

gir_status gir_group_image_euclidean(int rows, int cols, int max_shift,
                                     double angle_range_deg,
                                     double angle_step_deg, gir_group** out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new gir_group{gir::GroupAction::image_euclidean(
        rows, cols, max_shift, angle_range_deg, angle_step_deg)};
  });
}

void gir_group_free(gir_group* group) { delete group; }

int gir_group_dimension(const gir_group* group) {
  return group ? group->action.dimension() : 0;
}

int64_t gir_group_order(const gir_group* group) {
  return group ? group->action.order() : 0;
}

int gir_group_exactly_unitary(const gir_group* group) {
  return group && group->action.exactly_unitary() ? 1 : 0;
}

int64_t gir_group_identity(const gir_group* group) {
  return group ? group->action.identity() : -1;
}

gir_status gir_group_apply(const gir_group* group, int64_t element,
                           const double* x, int d, double* out) {
  if (!group || !x || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    gir::Vec result = group->action.apply(element, to_vec(x, d));
    std::memcpy(out, result.data(), sizeof(double) * static_cast<size_t>(d));
  });
}

gir_status gir_group_sample(const gir_group* group, int64_t count,
                            uint64_t seed, int64_t* out_elements) {
  if (!group || !out_elements) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    auto elements = group->action.sample_elements(count, seed);
    std::memcpy(out_elements, elements.data(),
                sizeof(int64_t) * elements.size());
  });
}

gir_status gir_bank_create(int d, int m, double epsilon, int kind,
                           uint64_t seed, gir_bank** out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  if (kind != GIR_TEMPLATES_GAUSSIAN && kind != GIR_TEMPLATES_SPHERE)
    return fail(GIR_ERR_ARGUMENT, "unknown template kind");
  return guarded([&] {
    *out = new gir_bank{gir::make_template_bank(
        d, m, epsilon,
        kind == GIR_TEMPLATES_GAUSSIAN ? gir::TemplateKind::GaussianRejection
                                       : gir::TemplateKind::UniformSphere,
        seed)};
  });
}

void gir_bank_free(gir_bank* bank) { delete bank; }

double gir_bank_s(const gir_bank* bank) { return bank ? bank->bank.s : 0.0; }

gir_status gir_bank_template(const gir_bank* bank, int j, double* out) {
  if (!bank || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    if (j < 0 || j >= bank->bank.m())
      throw std::invalid_argument("template index out of range");
    for (int i = 0; i < bank->bank.d(); ++i) out[i] = bank->bank.templates(j, i);
  });
}

gir_status gir_table_build(const gir_bank* bank, const gir_group* group,
                           const int64_t* elements, int64_t count,
                           gir_table** out) {
  if (!bank || !group || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    std::vector<int64_t> elems;
    if (elements && count > 0)
      elems.assign(elements, elements + count);
    else
      elems = group->action.enumerate();
    *out = new gir_table{
        gir::build_projection_table(bank->bank, group->action, elems)};
  });
}

void gir_table_free(gir_table* table) { delete table; }

int64_t gir_table_feature_length(const gir_table* table, int bins) {
  if (!table || bins < 1) return 0;
  return static_cast<int64_t>(table->table.m) * (2 * bins + 1);
}

gir_status gir_features(const gir_table* table, const double* x, int d,
                        int bins, int relaxed, double* out) {
  if (!table || !x || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    gir::FeatureVector f =
        gir::compute_features(table->table, to_vec(x, d), bins, relaxed != 0);
    std::memcpy(out, f.values.data(),
                sizeof(double) * static_cast<size_t>(f.values.size()));
  });
}

gir_status gir_sampled_ks(const gir_table* table, const double* x,
                          const double* z, int d, int relaxed,
                          double* out_value, double* out_std_error) {
  if (!table || !x || !z || !out_value)
    return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    gir::KsEstimate est = gir::sampled_ks(table->table, to_vec(x, d),
                                          to_vec(z, d), relaxed != 0);
    *out_value = est.value;
    if (out_std_error) *out_std_error = est.std_error;
  });
}

gir_status gir_exact_haar(const gir_group* group, const double* x,
                          const double* z, int d, int base, double gamma,
                          double* out) {
  if (!group || !x || !z || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  if (base != GIR_BASE_LINEAR && base != GIR_BASE_RBF)
    return fail(GIR_ERR_ARGUMENT, "unknown base kernel");
  return guarded([&] {
    *out = gir::exact_haar_kernel(
        group->action, to_vec(x, d), to_vec(z, d),
        base == GIR_BASE_LINEAR ? gir::BaseKernel::Linear : gir::BaseKernel::Rbf,
        gamma);
  });
}

gir_status gir_orbit_distance(const gir_group* group, const double* x,
                              const double* z, int d, double* out) {
  if (!group || !x || !z || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    *out = gir::orbit_distance(group->action, to_vec(x, d), to_vec(z, d));
  });
}

gir_status gir_asymptotic_ks(const gir_group* group, const double* x,
                             const double* z, int d, double epsilon,
                             double* out) {
  if (!group || !x || !z || !out) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    *out = gir::asymptotic_ks(group->action, to_vec(x, d), to_vec(z, d),
                              epsilon);
  });
}

gir_status gir_delta_bounds(int d, double epsilon, double* delta1,
                            double* delta2) {
  if (!delta1 || !delta2) return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    gir::DeltaBounds b = gir::delta_bounds(d, epsilon);
    *delta1 = b.delta1;
    *delta2 = b.delta2;
  });
}

gir_status gir_clark_max_moments(double mu_x, double mu_y, double sigma_x,
                                 double sigma_y, double rho, double* mean,
                                 double* second_moment, double* variance) {
  if (!mean || !second_moment || !variance)
    return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    gir::ClarkMoments cm =
        gir::clark_max_moments(mu_x, mu_y, sigma_x, sigma_y, rho);
    *mean = cm.mean;
    *second_moment = cm.second;
    *variance = cm.variance;
  });
}

gir_status gir_chi2_tail_upper(int k, double epsilon, double* out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded([&] { *out = gir::chi2_tail_upper(k, epsilon); });
}

gir_status gir_chi2_tail_lower(int k, double epsilon, double* out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded([&] { *out = gir::chi2_tail_lower(k, epsilon); });
}

gir_status gir_dkw_bound(int64_t nsamples, double gamma, double* out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded([&] { *out = gir::dkw_bound(nsamples, gamma); });
}

gir_status gir_theorem2_sample_sizes(int64_t npoints, double eps0, double eps1,
                                     double eps2, double delta1, double delta2,
                                     double c1, double c2, int64_t* bins,
                                     int64_t* templates, int64_t* group) {
  if (!bins || !templates || !group)
    return fail(GIR_ERR_ARGUMENT, "null pointer");
  return guarded([&] {
    gir::SampleSizes sz = gir::theorem2_sample_sizes(npoints, eps0, eps1, eps2,
                                                     delta1, delta2, c1, c2);
    *bins = sz.bins;
    *templates = sz.templates;
    *group = sz.group;
  });
}

gir_status gir_theorem3_bound(int64_t npoints, int64_t templates,
                              int64_t group, int64_t bins, double lipschitz,
                              double weight_bound, double loss_at_zero,
                              double s, double delta, double* out) {
  if (!out) return fail(GIR_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    *out = gir::theorem3_bound(npoints, templates, group, bins, lipschitz,
                               weight_bound, loss_at_zero, s, delta);
  });
}

gir_status gir_config_validate(const char* text) {
  if (!text) return fail(GIR_ERR_ARGUMENT, "text is null");
  return guarded([&] { gir::ExperimentConfig::parse(text); });
}

gir_status gir_experiment_run(const char* text, int workers) {
  if (!text) return fail(GIR_ERR_ARGUMENT, "text is null");
  return guarded([&] {
    gir::ExperimentConfig cfg = gir::ExperimentConfig::parse(text);
    gir::run_experiment(cfg, workers < 1 ? 1 : workers);
  });
}

gir_status gir_gen_xperm_csv(uint64_t seed, const char* out_path) {
  if (!out_path) return fail(GIR_ERR_ARGUMENT, "out_path is null");
  return guarded([&] { gir::gen_xperm(seed).write_csv(out_path); });
}

}  // extern "C"

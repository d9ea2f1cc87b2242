#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/groups.hpp"
#include "core/rng.hpp"

namespace gir {

enum class TemplateKind { GaussianRejection, UniformSphere };

// m random templates of dimension d with the truncation level s = 1 + epsilon.
struct TemplateBank {
  Mat templates;  // m x d, row j = t_j
  double epsilon = 0.1;
  double s = 1.1;
  TemplateKind kind = TemplateKind::GaussianRejection;
  std::uint64_t seed = 0;

  int m() const { return static_cast<int>(templates.rows()); }
  int d() const { return static_cast<int>(templates.cols()); }
};

// One draw of N(0, I_d / d) conditioned on |n|^2 < 1 + epsilon.
Vec sample_gaussian_rejection(int d, double epsilon, Rng& rng);

// nu / |nu| with nu standard normal; unit norm.
Vec sample_uniform_sphere(int d, Rng& rng);

// Template j uses child_seed(master_seed, "template", j), so growing m
// keeps earlier templates unchanged.
TemplateBank make_template_bank(int d, int m, double epsilon, TemplateKind kind,
                                std::uint64_t master_seed);

// Stored transformed templates g_i t_j for a fixed list of group elements.
struct ProjectionTable {
  Mat vectors;  // (m * |G|) x d; row j * |G| + i  =  g_i t_j
  int m = 0;
  int d = 0;
  std::int64_t group_size = 0;
  double epsilon = 0.1;
  double s = 1.1;
  std::string provenance;

  Eigen::Ref<const Mat> rows_for_template(int j) const {
    return vectors.middleRows(static_cast<Eigen::Index>(j) * group_size,
                              group_size);
  }
};

ProjectionTable build_projection_table(const TemplateBank& bank,
                                       const GroupAction& action,
                                       const std::vector<std::int64_t>& elements);

// Flat binary cache: header (magic, d, m, group_size, epsilon, kind, seed)
// followed by row-major doubles.
void save_bank(const TemplateBank& bank, const std::string& path);
TemplateBank load_bank(const std::string& path);
void save_table_csv(const ProjectionTable& table, const std::string& path);

}  // namespace gir

#include "core/templates.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gir {

Vec sample_gaussian_rejection(int d, double epsilon, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_gaussian_rejection: d < 1");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("sample_gaussian_rejection: epsilon not in (0,1)");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
  const double bound = 1.0 + epsilon;
  constexpr int kMaxRejections = 1000000;
  Vec n(d);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    for (int i = 0; i < d; ++i) n[i] = normal(rng);
    if (n.squaredNorm() < bound) return n;
  }
  throw std::runtime_error("sample_gaussian_rejection: rejection limit reached");
}

Vec sample_uniform_sphere(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_uniform_sphere: d < 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec nu(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) nu[i] = normal(rng);
    norm = nu.norm();
  } while (norm == 0.0);
  return nu / norm;
}

TemplateBank make_template_bank(int d, int m, double epsilon, TemplateKind kind,
                                std::uint64_t master_seed) {
  if (m < 1) throw std::invalid_argument("make_template_bank: m < 1");
  TemplateBank bank;
  bank.templates.resize(m, d);
  bank.epsilon = epsilon;
  bank.s = 1.0 + epsilon;
  bank.kind = kind;
  bank.seed = master_seed;
  for (int j = 0; j < m; ++j) {
    Rng rng(child_seed(master_seed, "template", static_cast<std::uint64_t>(j)));
    Vec t = kind == TemplateKind::GaussianRejection
                ? sample_gaussian_rejection(d, epsilon, rng)
                : sample_uniform_sphere(d, rng);
    bank.templates.row(j) = t.transpose();
  }
  return bank;
}

ProjectionTable build_projection_table(const TemplateBank& bank,
                                       const GroupAction& action,
                                       const std::vector<std::int64_t>& elements) {
  if (bank.d() != action.dimension())
    throw std::invalid_argument("build_projection_table: dimension mismatch");
  if (elements.empty())
    throw std::invalid_argument("build_projection_table: no elements");

  ProjectionTable table;
  table.m = bank.m();
  table.d = bank.d();
  table.group_size = static_cast<std::int64_t>(elements.size());
  table.epsilon = bank.epsilon;
  table.s = bank.s;
  table.vectors.resize(static_cast<Eigen::Index>(table.m) * table.group_size,
                       table.d);
  Vec t(table.d), gt(table.d);
  for (int j = 0; j < table.m; ++j) {
    t = bank.templates.row(j).transpose();
    for (std::int64_t i = 0; i < table.group_size; ++i) {
      action.apply(elements[static_cast<std::size_t>(i)], t, gt);
      table.vectors.row(static_cast<Eigen::Index>(j) * table.group_size + i) =
          gt.transpose();
    }
  }
  std::ostringstream os;
  os << action.descriptor() << ";m=" << table.m << ";|G|=" << table.group_size
     << ";eps=" << bank.epsilon << ";seed=" << bank.seed;
  table.provenance = os.str();
  return table;
}

namespace {
constexpr std::uint32_t kBankMagic = 0x47524254;  // "GRBT"
}

void save_bank(const TemplateBank& bank, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_bank: cannot open " + path);
  std::uint32_t magic = kBankMagic;
  std::int32_t d = bank.d(), m = bank.m(),
               kind = static_cast<std::int32_t>(bank.kind);
  out.write(reinterpret_cast<const char*>(&magic), sizeof magic);
  out.write(reinterpret_cast<const char*>(&d), sizeof d);
  out.write(reinterpret_cast<const char*>(&m), sizeof m);
  out.write(reinterpret_cast<const char*>(&kind), sizeof kind);
  out.write(reinterpret_cast<const char*>(&bank.epsilon), sizeof bank.epsilon);
  out.write(reinterpret_cast<const char*>(&bank.seed), sizeof bank.seed);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < d; ++i) {
      double v = bank.templates(j, i);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  if (!out) throw std::runtime_error("save_bank: write failed for " + path);
}

TemplateBank load_bank(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_bank: cannot open " + path);
  std::uint32_t magic = 0;
  std::int32_t d = 0, m = 0, kind = 0;
  TemplateBank bank;
  in.read(reinterpret_cast<char*>(&magic), sizeof magic);
  if (!in || magic != kBankMagic)
    throw std::runtime_error("load_bank: bad magic in " + path);
  in.read(reinterpret_cast<char*>(&d), sizeof d);
  in.read(reinterpret_cast<char*>(&m), sizeof m);
  in.read(reinterpret_cast<char*>(&kind), sizeof kind);
  in.read(reinterpret_cast<char*>(&bank.epsilon), sizeof bank.epsilon);
  in.read(reinterpret_cast<char*>(&bank.seed), sizeof bank.seed);
  if (!in || d < 1 || m < 1) throw std::runtime_error("load_bank: truncated " + path);
  bank.kind = static_cast<TemplateKind>(kind);
  bank.s = 1.0 + bank.epsilon;
  bank.templates.resize(m, d);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < d; ++i) {
      double v;
      in.read(reinterpret_cast<char*>(&v), sizeof v);
      if (!in) throw std::runtime_error("load_bank: truncated " + path);
      bank.templates(j, i) = v;
    }
  return bank;
}

void save_table_csv(const ProjectionTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_table_csv: cannot open " + path);
  out << "# " << table.provenance << "\n";
  out << "template,element";
  for (int i = 0; i < table.d; ++i) out << ",c" << i;
  out << "\n";
  char buf[32];
  for (int j = 0; j < table.m; ++j)
    for (std::int64_t i = 0; i < table.group_size; ++i) {
      out << j << ',' << i;
      for (int c = 0; c < table.d; ++c) {
        std::snprintf(buf, sizeof buf, "%.17g",
                      table.vectors(static_cast<Eigen::Index>(j) * table.group_size + i, c));
        out << ',' << buf;
      }
      out << "\n";
    }
}

}  // namespace gir

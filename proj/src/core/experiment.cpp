#include "core/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "core/analysis.hpp"
#include "core/datasets.hpp"
#include "core/features.hpp"
#include "core/kernels.hpp"
#include "core/learning.hpp"
#include "core/rng.hpp"

namespace gir {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct KeySpec {
  const char* key;
  const char* default_value;  // nullptr = required
};

const std::map<std::string, std::vector<KeySpec>>& key_registry() {
  static const std::map<std::string, std::vector<KeySpec>> registry = {
      {"invariance-check",
       {{"seed", nullptr},
        {"output", "invariance-check.csv"},
        {"epsilon", "0.1"},
        {"points", "100"},
        {"m", "10"},
        {"n", "20"}}},
      {"kernel-concentration",
       {{"seed", nullptr},
        {"output", "kernel-concentration.csv"},
        {"epsilon", "0.1"},
        {"pairs", "20"},
        {"m", "64"},
        {"n", "100"},
        {"sampled_elements", "0"},  // 0 = full enumeration
        {"reference_m", "4096"}}},
      {"xperm-learning-curve",
       {{"seed", nullptr},
        {"output", "xperm-learning-curve.csv"},
        {"epsilon", "0.1"},
        {"sizes", "250,500,1000,2000,4000"},
        {"resamples", "20"},
        {"m", "25"},
        {"n", "20"},
        {"lambda", "1e-6"},
        {"methods", "phi,bow,raw"},
        {"core_only", "0"}}},
      {"bins-templates-sweep",
       {{"seed", nullptr},
        {"output", "bins-templates-sweep.csv"},
        {"epsilon", "0.1"},
        {"bins_list", "5,10,20"},
        {"templates_list", "5,10,25"},
        {"resamples", "30"},
        {"train_size", "2000"},
        {"test_size", "4000"},
        {"lambda", "1e-6"}}},
      {"group-subsample-sweep",
       {{"seed", nullptr},
        {"output", "group-subsample-sweep.csv"},
        {"epsilon", "0.1"},
        {"group_sizes", "10,30,60,120"},
        {"trials", "20"},
        {"m", "25"},
        {"n", "10"},
        {"train_size", "1000"},
        {"test_size", "2000"},
        {"lambda", "1e-6"}}},
      {"mnist-sweep",
       {{"seed", nullptr},
        {"output", "mnist-sweep.csv"},
        {"epsilon", "0.1"},
        {"images_path", nullptr},
        {"labels_path", nullptr},
        {"subsample", "500"},
        {"templates_list", "5,10,25,50"},
        {"n", "10"},
        {"max_shift", "3"},
        {"angle_range", "20"},
        {"angle_step", "5"},
        {"train_fraction", "0.7"},
        {"lambda", "1e-4"}}},
      {"bounds-report",
       {{"seed", nullptr},
        {"output", "bounds-report.csv"},
        {"epsilon", "0.1"},
        {"d", "1000"},
        {"npoints", "4000"},
        {"m", "25"},
        {"group_size", "120"},
        {"n", "20"},
        {"lipschitz", "1"},
        {"weight_bound", "1"},
        {"loss_at_zero", "1"},
        {"delta", "0.05"},
        {"c1", "0"},  // 0 = default 8 s^2
        {"c2", "18"},
        {"e0", "0.1"},
        {"e1", "0.1"},
        {"e2", "0.1"},
        {"jl_delta1", "0.05"},
        {"jl_delta2", "0.05"}}},
  };
  return registry;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  std::map<std::string, std::string> raw;
  std::map<std::string, int> line_of;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected `key = value`", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (!section.empty()) key = section + "." + key;
    if (raw.count(key))
      throw ConfigError("duplicate key `" + key + "`", line_no);
    raw[key] = value;
    line_of[key] = line_no;
  }

  auto kind_it = raw.find("kind");
  if (kind_it == raw.end()) throw ConfigError("missing required key `kind`", 0);
  const auto& registry = key_registry();
  auto spec_it = registry.find(kind_it->second);
  if (spec_it == registry.end())
    throw ConfigError("unknown experiment kind `" + kind_it->second + "`",
                      line_of.at("kind"));

  ExperimentConfig cfg;
  cfg.kind_ = kind_it->second;
  cfg.values_["kind"] = cfg.kind_;
  raw.erase(kind_it);

  for (const auto& spec : spec_it->second) {
    auto it = raw.find(spec.key);
    if (it != raw.end()) {
      cfg.values_[spec.key] = it->second;
      raw.erase(it);
    } else if (spec.default_value) {
      cfg.values_[spec.key] = spec.default_value;
    } else {
      throw ConfigError(std::string("missing required key `") + spec.key + "`",
                        0);
    }
  }
  if (!raw.empty()) {
    const auto& [key, value] = *raw.begin();
    (void)value;
    throw ConfigError("unknown key `" + key + "`", line_of.at(key));
  }

  try {
    cfg.seed_ = std::stoull(cfg.values_.at("seed"));
  } catch (const std::exception&) {
    throw ConfigError("key `seed` is not an unsigned integer",
                      line_of.count("seed") ? line_of.at("seed") : 0);
  }
  return cfg;
}

std::string ExperimentConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw std::out_of_range("config key not present: " + key);
  return it->second;
}

std::int64_t ExperimentConfig::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  std::size_t pos = 0;
  std::int64_t out;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key `" + key + "` is not an integer: " + v, 0);
  }
  if (pos != v.size())
    throw ConfigError("key `" + key + "` is not an integer: " + v, 0);
  return out;
}

double ExperimentConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key `" + key + "` is not a number: " + v, 0);
  }
  if (pos != v.size())
    throw ConfigError("key `" + key + "` is not a number: " + v, 0);
  return out;
}

bool ExperimentConfig::get_bool(const std::string& key) const {
  const std::string v = get_string(key);
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw ConfigError("key `" + key + "` is not a boolean: " + v, 0);
}

std::vector<std::int64_t> ExperimentConfig::get_int_list(
    const std::string& key) const {
  std::vector<std::int64_t> out;
  std::istringstream in(get_string(key));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ConfigError("key `" + key + "` has a non-integer entry: " + tok, 0);
    }
  }
  if (out.empty()) throw ConfigError("key `" + key + "` is an empty list", 0);
  return out;
}

std::vector<std::string> ExperimentConfig::get_string_list(
    const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream in(get_string(key));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  if (out.empty()) throw ConfigError("key `" + key + "` is an empty list", 0);
  return out;
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream os;
  for (const auto& [key, value] : values_) os << key << " = " << value << "\n";
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical_text()); }

int env_worker_count() {
  const char* env = std::getenv("GIR_WORKERS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v < 1 ? 1 : v;
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const ExperimentConfig& cfg, const std::string& columns)
      : out_(cfg.get_string("output")) {
    if (!out_)
      throw std::runtime_error("cannot open output file " +
                               cfg.get_string("output"));
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    out_ << "# config_hash = " << hash << "\n";
    std::istringstream in(cfg.canonical_text());
    std::string line;
    while (std::getline(in, line)) out_ << "# " << line << "\n";
    out_ << columns << "\n";
  }

  template <typename... Args>
  void row(Args&&... args) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, write(args)), ...);
    out_ << "\n";
  }

 private:
  void write(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out_ << buf;
  }
  void write(std::int64_t v) { out_ << v; }
  void write(int v) { out_ << v; }
  void write(const std::string& v) { out_ << v; }
  void write(const char* v) { out_ << v; }

  std::ofstream out_;
};

GroupAction xperm_group() {
  return GroupAction::block_permutation(kXpermLength, kXpermAlphabet);
}

void run_invariance_check(const ExperimentConfig& cfg) {
  const auto npoints = cfg.get_int("points");
  const int m = static_cast<int>(cfg.get_int("m"));
  const int n = static_cast<int>(cfg.get_int("n"));
  const double eps = cfg.get_double("epsilon");

  XpermDataset ds = gen_xperm(cfg.seed());
  GroupAction action = xperm_group();
  TemplateBank bank =
      make_template_bank(kXpermDim, m, eps, TemplateKind::GaussianRejection,
                         child_seed(cfg.seed(), "bank", 0));
  ProjectionTable table =
      build_projection_table(bank, action, action.enumerate());

  Rng rng(child_seed(cfg.seed(), "points", 0));
  std::uniform_int_distribution<std::int64_t> pick(0, ds.size() - 1);

  CsvWriter csv(cfg, "point_index,max_deviation");
  for (std::int64_t t = 0; t < npoints; ++t) {
    std::int64_t idx = pick(rng);
    Vec x = ds.points.row(idx).transpose();
    FeatureVector fx = compute_features(table, x, n);
    double max_dev = 0.0;
    for (auto g : action.enumerate()) {
      FeatureVector fg = compute_features(table, action.apply(g, x), n);
      max_dev = std::max(max_dev,
                         (fg.values - fx.values).cwiseAbs().maxCoeff());
    }
    csv.row(idx, max_dev);
  }
}

void run_kernel_concentration(const ExperimentConfig& cfg) {
  const auto npairs = cfg.get_int("pairs");
  const int m = static_cast<int>(cfg.get_int("m"));
  const int n = static_cast<int>(cfg.get_int("n"));
  const double eps = cfg.get_double("epsilon");
  const auto sampled = cfg.get_int("sampled_elements");
  const int reference_m = static_cast<int>(cfg.get_int("reference_m"));

  XpermDataset ds = gen_xperm(cfg.seed());
  GroupAction action = xperm_group();
  TemplateBank bank =
      make_template_bank(kXpermDim, m, eps, TemplateKind::GaussianRejection,
                         child_seed(cfg.seed(), "bank", 0));
  std::vector<std::int64_t> elements =
      sampled > 0 ? action.sample_elements(sampled,
                                           child_seed(cfg.seed(), "elements", 0))
                  : action.enumerate();

  Rng rng(child_seed(cfg.seed(), "pairs", 0));
  std::uniform_int_distribution<std::int64_t> pick(0, ds.size() - 1);
  std::vector<std::pair<int, int>> pairs;
  for (std::int64_t p = 0; p < npairs; ++p)
    pairs.emplace_back(static_cast<int>(pick(rng)), static_cast<int>(pick(rng)));

  ConcentrationTerms terms = measure_concentration(
      ds.points, pairs, bank, action, elements, n, reference_m,
      child_seed(cfg.seed(), "reference", 0));

  CsvWriter csv(cfg, "term,value,bound");
  csv.row("binning", terms.binning_max, bank.s / n);
  csv.row("group", terms.group_max, -1.0);
  csv.row("template", terms.template_max, -1.0);
}

struct XpermFeatures {
  Mat phi;  // full dataset feature matrix
  Mat bow;
  Mat raw;
};

XpermFeatures xperm_feature_sets(const XpermDataset& ds,
                                 const GroupAction& action,
                                 const std::vector<std::int64_t>& elements,
                                 int m, int n, double eps, std::uint64_t seed,
                                 int workers) {
  TemplateBank bank = make_template_bank(
      kXpermDim, m, eps, TemplateKind::GaussianRejection, seed);
  ProjectionTable table = build_projection_table(bank, action, elements);
  XpermFeatures f;
  f.phi = compute_feature_matrix(table, ds.points, n, false, workers);
  f.bow.resize(ds.size(), kXpermAlphabet);
  for (Eigen::Index i = 0; i < ds.size(); ++i)
    f.bow.row(i) = bag_of_words(ds.points.row(i).transpose()).transpose();
  f.raw = ds.points;
  return f;
}

double rls_accuracy(const Mat& features, const std::vector<int>& labels,
                    const Split& split, int classes, double lambda,
                    Eigen::Index max_test = -1) {
  Mat ftrain(static_cast<Eigen::Index>(split.train.size()), features.cols());
  std::vector<int> ltrain(split.train.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    ftrain.row(static_cast<Eigen::Index>(i)) = features.row(split.train[i]);
    ltrain[i] = labels[static_cast<std::size_t>(split.train[i])];
  }
  const Eigen::Index ntest =
      max_test > 0 ? std::min<Eigen::Index>(
                         max_test, static_cast<Eigen::Index>(split.test.size()))
                   : static_cast<Eigen::Index>(split.test.size());
  Mat ftest(ntest, features.cols());
  std::vector<int> ltest(static_cast<std::size_t>(ntest));
  for (Eigen::Index i = 0; i < ntest; ++i) {
    ftest.row(i) = features.row(split.test[static_cast<std::size_t>(i)]);
    ltest[static_cast<std::size_t>(i)] =
        labels[static_cast<std::size_t>(split.test[static_cast<std::size_t>(i)])];
  }
  RlsModel model = rls_train(ftrain, ltrain, classes, lambda);
  return accuracy(rls_predict(model, ftest), ltest);
}

void run_xperm_learning_curve(const ExperimentConfig& cfg, int workers) {
  const auto sizes = cfg.get_int_list("sizes");
  const auto resamples = cfg.get_int("resamples");
  const int m = static_cast<int>(cfg.get_int("m"));
  const int n = static_cast<int>(cfg.get_int("n"));
  const double eps = cfg.get_double("epsilon");
  const double lambda = cfg.get_double("lambda");
  const auto methods = cfg.get_string_list("methods");
  const bool core_only = cfg.get_bool("core_only");

  XpermDataset ds = gen_xperm(cfg.seed());
  GroupAction action = xperm_group();
  XpermFeatures feats =
      xperm_feature_sets(ds, action, action.enumerate(), m, n, eps,
                         child_seed(cfg.seed(), "bank", 0), workers);

  CsvWriter csv(cfg, "train_size,method,trial,accuracy");
  for (auto size : sizes) {
    for (std::int64_t trial = 0; trial < resamples; ++trial) {
      Split split = split_train_test(
          ds, size, /*balanced=*/size % 2 == 0, core_only,
          child_seed(cfg.seed(), "resample", static_cast<std::uint64_t>(
                                                 size * 10000 + trial)));
      for (const auto& method : methods) {
        const Mat* features = nullptr;
        if (method == "phi") features = &feats.phi;
        else if (method == "bow") features = &feats.bow;
        else if (method == "raw") features = &feats.raw;
        else throw std::runtime_error("unknown method `" + method + "`");
        double acc = rls_accuracy(*features, ds.labels, split, ds.classes,
                                  lambda);
        csv.row(size, method, trial, acc);
      }
    }
  }
}

void run_bins_templates_sweep(const ExperimentConfig& cfg, int workers) {
  const auto bins_list = cfg.get_int_list("bins_list");
  const auto templates_list = cfg.get_int_list("templates_list");
  const auto resamples = cfg.get_int("resamples");
  const auto train_size = cfg.get_int("train_size");
  const auto test_size = cfg.get_int("test_size");
  const double eps = cfg.get_double("epsilon");
  const double lambda = cfg.get_double("lambda");

  XpermDataset ds = gen_xperm(cfg.seed());
  GroupAction action = xperm_group();
  auto elements = action.enumerate();

  CsvWriter csv(cfg, "bins,templates,trial,accuracy");
  for (auto m : templates_list) {
    for (std::int64_t trial = 0; trial < resamples; ++trial) {
      TemplateBank bank = make_template_bank(
          kXpermDim, static_cast<int>(m), eps, TemplateKind::GaussianRejection,
          child_seed(cfg.seed(), "bank", static_cast<std::uint64_t>(trial)));
      ProjectionTable table = build_projection_table(bank, action, elements);
      Split split = split_train_test(
          ds, train_size, train_size % 2 == 0, false,
          child_seed(cfg.seed(), "resample", static_cast<std::uint64_t>(trial)));
      // feature the needed rows only, per bin count
      std::vector<Eigen::Index> rows = split.train;
      const Eigen::Index ntest = std::min<Eigen::Index>(
          test_size, static_cast<Eigen::Index>(split.test.size()));
      rows.insert(rows.end(), split.test.begin(), split.test.begin() + ntest);
      Mat pts(static_cast<Eigen::Index>(rows.size()), ds.points.cols());
      std::vector<int> labels(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        pts.row(static_cast<Eigen::Index>(i)) = ds.points.row(rows[i]);
        labels[i] = ds.labels[static_cast<std::size_t>(rows[i])];
      }
      for (auto n : bins_list) {
        Mat features = compute_feature_matrix(table, pts,
                                              static_cast<int>(n), false,
                                              workers);
        Mat ftrain = features.topRows(static_cast<Eigen::Index>(split.train.size()));
        Mat ftest = features.bottomRows(ntest);
        std::vector<int> ltrain(labels.begin(),
                                labels.begin() + split.train.size());
        std::vector<int> ltest(labels.begin() + split.train.size(), labels.end());
        RlsModel model = rls_train(ftrain, ltrain, ds.classes, lambda);
        csv.row(n, m, trial, accuracy(rls_predict(model, ftest), ltest));
      }
    }
  }
}

void run_group_subsample_sweep(const ExperimentConfig& cfg, int workers) {
  const auto group_sizes = cfg.get_int_list("group_sizes");
  const auto trials = cfg.get_int("trials");
  const int m = static_cast<int>(cfg.get_int("m"));
  const int n = static_cast<int>(cfg.get_int("n"));
  const auto train_size = cfg.get_int("train_size");
  const auto test_size = cfg.get_int("test_size");
  const double eps = cfg.get_double("epsilon");
  const double lambda = cfg.get_double("lambda");

  XpermDataset ds = gen_xperm(cfg.seed());
  GroupAction action = xperm_group();

  CsvWriter csv(cfg, "group_size,trial,accuracy");
  for (auto gsize : group_sizes) {
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t trial_seed = child_seed(
          cfg.seed(), "subsample-trial",
          static_cast<std::uint64_t>(gsize * 100000 + trial));
      std::vector<std::int64_t> elements =
          gsize >= action.order()
              ? action.enumerate()
              : action.sample_elements(gsize, child_seed(trial_seed, "elements", 0));
      TemplateBank bank = make_template_bank(
          kXpermDim, m, eps, TemplateKind::GaussianRejection,
          child_seed(cfg.seed(), "bank", static_cast<std::uint64_t>(trial)));
      ProjectionTable table = build_projection_table(bank, action, elements);
      Split split = split_train_test(ds, train_size, train_size % 2 == 0, false,
                                     child_seed(trial_seed, "split", 0));
      std::vector<Eigen::Index> rows = split.train;
      const Eigen::Index ntest = std::min<Eigen::Index>(
          test_size, static_cast<Eigen::Index>(split.test.size()));
      rows.insert(rows.end(), split.test.begin(), split.test.begin() + ntest);
      Mat pts(static_cast<Eigen::Index>(rows.size()), ds.points.cols());
      std::vector<int> labels(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        pts.row(static_cast<Eigen::Index>(i)) = ds.points.row(rows[i]);
        labels[i] = ds.labels[static_cast<std::size_t>(rows[i])];
      }
      Mat features = compute_feature_matrix(table, pts, n, false, workers);
      Mat ftrain = features.topRows(static_cast<Eigen::Index>(split.train.size()));
      Mat ftest = features.bottomRows(ntest);
      std::vector<int> ltrain(labels.begin(), labels.begin() + split.train.size());
      std::vector<int> ltest(labels.begin() + split.train.size(), labels.end());
      RlsModel model = rls_train(ftrain, ltrain, ds.classes, lambda);
      csv.row(gsize, trial, accuracy(rls_predict(model, ftest), ltest));
    }
  }
}

void run_mnist_sweep(const ExperimentConfig& cfg, int workers) {
  const auto templates_list = cfg.get_int_list("templates_list");
  const auto subsample = cfg.get_int("subsample");
  const int n = static_cast<int>(cfg.get_int("n"));
  const int max_shift = static_cast<int>(cfg.get_int("max_shift"));
  const double angle_range = cfg.get_double("angle_range");
  const double angle_step = cfg.get_double("angle_step");
  const double train_fraction = cfg.get_double("train_fraction");
  const double eps = cfg.get_double("epsilon");
  const double lambda = cfg.get_double("lambda");

  IdxImageSet images =
      load_idx(cfg.get_string("images_path"), cfg.get_string("labels_path"));
  LabeledDataset ds = idx_to_dataset(images);
  GroupAction action = build_image_group(images.rows, images.cols, max_shift,
                                         angle_range, angle_step);

  // deterministic subsample
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ds.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(child_seed(cfg.seed(), "subsample", 0));
  std::shuffle(order.begin(), order.end(), rng);
  const Eigen::Index nsub = std::min<Eigen::Index>(subsample, ds.size());
  Mat pts(nsub, ds.points.cols());
  std::vector<int> labels(static_cast<std::size_t>(nsub));
  for (Eigen::Index i = 0; i < nsub; ++i) {
    pts.row(i) = ds.points.row(order[static_cast<std::size_t>(i)]);
    labels[static_cast<std::size_t>(i)] =
        ds.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
  }
  const Eigen::Index ntrain =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(
                                    std::llround(train_fraction * nsub)));

  CsvWriter csv(cfg, "templates,accuracy");
  for (auto m : templates_list) {
    TemplateBank bank = make_template_bank(
        ds.points.cols(), static_cast<int>(m), eps,
        TemplateKind::GaussianRejection, child_seed(cfg.seed(), "bank", 0));
    ProjectionTable table =
        build_projection_table(bank, action, action.enumerate());
    Mat features = compute_feature_matrix(table, pts, n, /*relaxed=*/true,
                                          workers);
    Mat ftrain = features.topRows(ntrain);
    Mat ftest = features.bottomRows(nsub - ntrain);
    std::vector<int> ltrain(labels.begin(), labels.begin() + ntrain);
    std::vector<int> ltest(labels.begin() + ntrain, labels.end());
    RlsModel model = rls_train(ftrain, ltrain, ds.classes, lambda);
    csv.row(m, accuracy(rls_predict(model, ftest), ltest));
  }
}

void run_bounds_report(const ExperimentConfig& cfg) {
  const int d = static_cast<int>(cfg.get_int("d"));
  const double eps = cfg.get_double("epsilon");
  const double s = 1.0 + eps;
  const auto npoints = cfg.get_int("npoints");
  const auto m = cfg.get_int("m");
  const auto gsize = cfg.get_int("group_size");
  const auto n = cfg.get_int("n");
  double c1 = cfg.get_double("c1");
  if (c1 <= 0.0) c1 = theorem2_default_c1(s);
  const double c2 = cfg.get_double("c2");

  std::vector<BoundReport> reports;
  DeltaBounds db = delta_bounds(d, eps);
  {
    std::ostringstream in;
    in << "d=" << d << ";eps=" << eps;
    reports.push_back({"delta1", in.str(), db.delta1, std::nullopt, true});
    reports.push_back({"delta2", in.str(), db.delta2, std::nullopt, true});
  }
  {
    SampleSizes sz = theorem2_sample_sizes(
        npoints, cfg.get_double("e0"), cfg.get_double("e1"),
        cfg.get_double("e2"), cfg.get_double("jl_delta1"),
        cfg.get_double("jl_delta2"), c1, c2);
    std::ostringstream in;
    in << "N=" << npoints << ";C1=" << c1 << ";C2=" << c2;
    reports.push_back({"theorem2_bins", in.str(),
                       static_cast<double>(sz.bins), std::nullopt, true});
    reports.push_back({"theorem2_templates", in.str(),
                       static_cast<double>(sz.templates), std::nullopt, true});
    reports.push_back({"theorem2_group", in.str(),
                       static_cast<double>(sz.group), std::nullopt, true});
  }
  {
    double bound = theorem3_bound(
        npoints, m, gsize, n, cfg.get_double("lipschitz"),
        cfg.get_double("weight_bound"), cfg.get_double("loss_at_zero"), s,
        cfg.get_double("delta"));
    std::ostringstream in;
    in << "N=" << npoints << ";m=" << m << ";|G|=" << gsize << ";n=" << n
       << ";delta=" << cfg.get_double("delta");
    reports.push_back({"theorem3_risk", in.str(), bound, std::nullopt, true});
  }
  write_bound_reports_csv(reports, cfg.get_string("output"));
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, int workers) {
  const std::string& kind = cfg.kind();
  if (kind == "invariance-check") run_invariance_check(cfg);
  else if (kind == "kernel-concentration") run_kernel_concentration(cfg);
  else if (kind == "xperm-learning-curve") run_xperm_learning_curve(cfg, workers);
  else if (kind == "bins-templates-sweep") run_bins_templates_sweep(cfg, workers);
  else if (kind == "group-subsample-sweep") run_group_subsample_sweep(cfg, workers);
  else if (kind == "mnist-sweep") run_mnist_sweep(cfg, workers);
  else if (kind == "bounds-report") run_bounds_report(cfg);
  else throw std::runtime_error("unhandled experiment kind " + kind);
}

}  // namespace gir

#include "core/learning.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "core/rng.hpp"

namespace gir {

namespace {

Mat one_hot_labels(const std::vector<int>& labels, int classes) {
  Mat y(static_cast<Eigen::Index>(labels.size()), classes);
  y.setConstant(-1.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int t = labels[i];
    if (t < 0 || t >= classes)
      throw std::invalid_argument("rls_train: label out of range");
    y(static_cast<Eigen::Index>(i), t) = 1.0;
  }
  return y;
}

}  // namespace

RlsModel rls_train_targets(const Mat& features, const Mat& targets,
                           double lambda) {
  if (features.rows() < 1) throw std::invalid_argument("rls_train: empty input");
  if (features.rows() != targets.rows())
    throw std::invalid_argument("rls_train: feature/target count mismatch");
  if (lambda <= 0.0) throw std::invalid_argument("rls_train: lambda <= 0");
  if (!features.allFinite())
    throw std::invalid_argument("rls_train: non-finite features");

  const Eigen::Index n = features.rows();
  const Eigen::Index dim = features.cols();
  const double ridge = static_cast<double>(n) * lambda;

  RlsModel model;
  model.lambda = lambda;
  model.classes = static_cast<int>(targets.cols());
  if (dim <= n) {
    Mat normal = features.transpose() * features;
    normal.diagonal().array() += ridge;
    model.weights = Eigen::LDLT<Mat>(normal).solve(features.transpose() * targets);
  } else {
    // Dual form: W = F' (F F' + N lambda I)^{-1} Y, identical solution.
    Mat dual = features * features.transpose();
    dual.diagonal().array() += ridge;
    model.weights = features.transpose() * Eigen::LDLT<Mat>(dual).solve(targets);
  }
  return model;
}

RlsModel rls_train(const Mat& features, const std::vector<int>& labels,
                   int classes, double lambda) {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw std::invalid_argument("rls_train: feature/label count mismatch");
  return rls_train_targets(features, one_hot_labels(labels, classes), lambda);
}

std::vector<int> rls_predict(const RlsModel& model, const Mat& features) {
  if (features.cols() != model.weights.rows())
    throw std::invalid_argument("rls_predict: dimension mismatch");
  Mat scores = features * model.weights;
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    int best = 0;
    for (int t = 1; t < model.classes; ++t)
      if (scores(i, t) > scores(i, best)) best = t;
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth) {
  if (predicted.size() != truth.size() || predicted.empty())
    throw std::invalid_argument("accuracy: size mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

int nn_classify(const Mat& train_features, const std::vector<int>& train_labels,
                const Vec& query) {
  if (train_features.rows() < 1)
    throw std::invalid_argument("nn_classify: empty training set");
  if (train_features.cols() != query.size())
    throw std::invalid_argument("nn_classify: dimension mismatch");
  Eigen::Index best = 0;
  double best_dist = (train_features.row(0).transpose() - query).squaredNorm();
  for (Eigen::Index i = 1; i < train_features.rows(); ++i) {
    double dist = (train_features.row(i).transpose() - query).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return train_labels[static_cast<std::size_t>(best)];
}

Vec bag_of_words(const Vec& x) {
  constexpr int kAlphabet = 8;
  constexpr int kLength = 5;
  if (x.size() != kAlphabet * kLength)
    throw std::invalid_argument("bag_of_words: expected a length-40 encoding");
  Vec counts = Vec::Zero(kAlphabet);
  double scale = 0.0;
  for (int pos = 0; pos < kLength; ++pos) {
    int nonzero = -1;
    for (int c = 0; c < kAlphabet; ++c) {
      double v = x[pos * kAlphabet + c];
      if (v != 0.0) {
        if (nonzero >= 0)
          throw std::invalid_argument("bag_of_words: block is not one-hot");
        if (v < 0.0)
          throw std::invalid_argument("bag_of_words: negative entry");
        if (scale == 0.0) scale = v;
        if (std::abs(v - scale) > 1e-9 * std::max(1.0, scale))
          throw std::invalid_argument("bag_of_words: inconsistent block scale");
        nonzero = c;
      }
    }
    if (nonzero < 0)
      throw std::invalid_argument("bag_of_words: empty block");
    counts[nonzero] += 1.0;
  }
  return counts;
}

double select_lambda(const Mat& features, const std::vector<int>& labels,
                     int classes, const std::vector<double>& grid,
                     double holdout_fraction, std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("select_lambda: empty grid");
  if (grid.size() == 1) return grid.front();
  const Eigen::Index n = features.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const Eigen::Index nhold = std::max<Eigen::Index>(
      1, static_cast<Eigen::Index>(std::llround(holdout_fraction * n)));
  const Eigen::Index ntrain = n - nhold;
  if (ntrain < 1) throw std::invalid_argument("select_lambda: holdout too large");

  Mat ftrain(ntrain, features.cols()), fhold(nhold, features.cols());
  std::vector<int> ltrain(static_cast<std::size_t>(ntrain)),
      lhold(static_cast<std::size_t>(nhold));
  for (Eigen::Index i = 0; i < ntrain; ++i) {
    ftrain.row(i) = features.row(order[static_cast<std::size_t>(i)]);
    ltrain[static_cast<std::size_t>(i)] =
        labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
  }
  for (Eigen::Index i = 0; i < nhold; ++i) {
    fhold.row(i) = features.row(order[static_cast<std::size_t>(ntrain + i)]);
    lhold[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(
        order[static_cast<std::size_t>(ntrain + i)])];
  }
  bool degenerate =
      std::all_of(lhold.begin(), lhold.end(),
                  [&](int v) { return v == lhold.front(); }) ||
      std::all_of(ltrain.begin(), ltrain.end(),
                  [&](int v) { return v == ltrain.front(); });
  if (degenerate) return grid[grid.size() / 2];

  double best_lambda = grid.front();
  double best_acc = -1.0;
  for (double lambda : grid) {
    RlsModel model = rls_train(ftrain, ltrain, classes, lambda);
    double acc = accuracy(rls_predict(model, fhold), lhold);
    if (acc > best_acc || (acc == best_acc && lambda > best_lambda)) {
      best_acc = acc;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

void RlsModel::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("RlsModel::write_csv: cannot open " + path);
  out << "# lambda=" << lambda << ",classes=" << classes
      << ",dim=" << weights.rows() << "\n";
  char buf[32];
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    for (Eigen::Index t = 0; t < weights.cols(); ++t) {
      std::snprintf(buf, sizeof buf, "%.17g", weights(i, t));
      out << (t ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace gir

#pragma once

#include <cstdint>
#include <vector>

#include "core/groups.hpp"

namespace gir {

// One-vs-all ridge classifier: W solves (F'F + N lambda I) W = F' Y with
// +-1 one-hot label coding. The normal-equation residual stays below 1e-8
// relative on every trained model.
struct RlsModel {
  Mat weights;  // D x T
  double lambda = 0.0;
  int classes = 0;

  void write_csv(const std::string& path) const;
};

RlsModel rls_train(const Mat& features, const std::vector<int>& labels,
                   int classes, double lambda);

// Same solve with an explicit target matrix (one column per output).
RlsModel rls_train_targets(const Mat& features, const Mat& targets,
                           double lambda);

std::vector<int> rls_predict(const RlsModel& model, const Mat& features);

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth);

// Euclidean nearest neighbor; ties break toward the lowest training index.
int nn_classify(const Mat& train_features, const std::vector<int>& train_labels,
                const Vec& query);

// Character counts of an X_perm one-hot encoding (8 blocks of one-hot 8,
// possibly uniformly rescaled); permutation invariant by construction.
Vec bag_of_words(const Vec& x);

// Holdout selection over a lambda grid; ties prefer the larger lambda.
double select_lambda(const Mat& features, const std::vector<int>& labels,
                     int classes, const std::vector<double>& grid,
                     double holdout_fraction, std::uint64_t seed);

}  // namespace gir

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/groups.hpp"

namespace gir {

// Points are stored unit-normalized, ready for feature computation.
struct LabeledDataset {
  Mat points;                       // N x d
  std::vector<int> labels;          // N, in [0, classes)
  std::vector<std::int64_t> orbit_id;
  std::vector<std::uint8_t> core_mask;  // 1 = canonical orbit representative
  int classes = 2;

  Eigen::Index size() const { return points.rows(); }
  void write_csv(const std::string& path) const;
};

constexpr int kXpermAlphabet = 8;
constexpr int kXpermLength = 5;
constexpr int kXpermDim = kXpermAlphabet * kXpermLength;  // one-hot blocks
constexpr std::int64_t kXpermSize = 32768;                // 8^5

struct XpermDataset : LabeledDataset {
  int target1 = 0;
  int target2 = 1;
  // sequences[i] is the character string behind row i.
  std::vector<std::array<std::uint8_t, kXpermLength>> sequences;
};

// All 8^5 sequences, one-hot encoded and scaled to unit norm; label positive
// iff the sequence contains both target characters (drawn from the seed).
// Orbit id indexes the character multiset; the core representative is the
// lexicographically smallest (sorted) sequence of each orbit.
XpermDataset gen_xperm(std::uint64_t seed);

Vec encode_xperm(const std::array<std::uint8_t, kXpermLength>& seq,
                 bool normalized = true);

struct Split {
  std::vector<Eigen::Index> train;
  std::vector<Eigen::Index> test;
};

Split split_train_test(const LabeledDataset& dataset, Eigen::Index n_train,
                       bool balanced, bool core_only, std::uint64_t seed);

// IDX image container (big-endian, magic 2051 for images / 2049 for labels).
struct IdxImageSet {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> pixels;  // count * rows * cols
  std::vector<std::uint8_t> labels;

  std::int64_t count() const {
    return static_cast<std::int64_t>(labels.size());
  }
};

IdxImageSet load_idx(const std::string& images_path,
                     const std::string& labels_path);
void write_idx(const IdxImageSet& set, const std::string& images_path,
               const std::string& labels_path);

// Pixel values scaled to [0,1], flattened, each image normalized to unit norm.
LabeledDataset idx_to_dataset(const IdxImageSet& set);

GroupAction build_image_group(int rows, int cols, int max_shift = 3,
                              double angle_range_deg = 20.0,
                              double angle_step_deg = 5.0);

}  // namespace gir

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace gir {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class GroupKind { BlockPermutation, CyclicShift, ImageEuclidean };

struct ImageElementParams {
  int dx = 0;
  int dy = 0;
  double angle_deg = 0.0;
};

// A finite set of transforms acting on R^d. Elements are identified by their
// index into the element table; the table is immutable after construction.
//
// Block permutations and cyclic shifts are coordinate permutations and hence
// exactly unitary. Image transforms translate cyclically and rotate with
// nearest-neighbor resampling; rotation is only approximately unitary, so
// those actions carry exactly_unitary() == false unless all angles are zero.
class GroupAction {
 public:
  static GroupAction block_permutation(int num_blocks, int block_size);
  static GroupAction cyclic_shift(int dimension);
  static GroupAction image_euclidean(int rows, int cols, int max_shift,
                                     double angle_range_deg,
                                     double angle_step_deg);

  GroupKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  std::int64_t order() const { return order_; }
  bool exactly_unitary() const { return exactly_unitary_; }
  std::int64_t identity() const { return identity_; }

  void apply(std::int64_t element, const Vec& x, Vec& out) const;
  Vec apply(std::int64_t element, const Vec& x) const;

  // All element indices in deterministic order.
  std::vector<std::int64_t> enumerate() const;

  // count i.i.d. uniform draws with replacement, deterministic given seed.
  std::vector<std::int64_t> sample_elements(std::int64_t count,
                                            std::uint64_t seed) const;

  // Inverse element; defined for exactly-unitary kinds.
  std::int64_t inverse(std::int64_t element) const;

  ImageElementParams image_params(std::int64_t element) const;

  // One-line descriptor for provenance headers and config echoes.
  std::string descriptor() const;

  static constexpr int kMaxPermutationBlocks = 8;
  static constexpr std::int64_t kMaxElements = 1000000;

 private:
  GroupAction() = default;

  GroupKind kind_ = GroupKind::CyclicShift;
  int dimension_ = 0;
  std::int64_t order_ = 0;
  bool exactly_unitary_ = true;
  std::int64_t identity_ = 0;

  // Per-element coordinate gather map: out[i] = x[map[i]], -1 reads as zero.
  // Used by all kinds; image transforms bake rotation + translation into it.
  std::vector<std::vector<int>> gather_;
  std::vector<std::int64_t> inverse_;
  std::vector<ImageElementParams> image_params_;
  std::string descriptor_;
};

}  // namespace gir

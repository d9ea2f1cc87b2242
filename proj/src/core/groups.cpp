#include "core/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "core/rng.hpp"

namespace gir {

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

GroupAction GroupAction::block_permutation(int num_blocks, int block_size) {
  if (num_blocks < 1 || block_size < 1)
    throw std::invalid_argument("block_permutation: sizes must be positive");
  if (num_blocks > kMaxPermutationBlocks)
    throw std::length_error("block_permutation: block count exceeds cap of 8");

  GroupAction a;
  a.kind_ = GroupKind::BlockPermutation;
  a.dimension_ = num_blocks * block_size;
  a.order_ = factorial(num_blocks);
  a.exactly_unitary_ = true;

  std::vector<int> perm(num_blocks);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<int>, std::int64_t> index_of;
  std::vector<std::vector<int>> block_perms;
  block_perms.reserve(static_cast<std::size_t>(a.order_));
  std::int64_t idx = 0;
  do {
    index_of[perm] = idx++;
    block_perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  a.gather_.resize(block_perms.size());
  a.inverse_.resize(block_perms.size());
  for (std::size_t e = 0; e < block_perms.size(); ++e) {
    const auto& bp = block_perms[e];
    auto& g = a.gather_[e];
    g.resize(static_cast<std::size_t>(a.dimension_));
    for (int b = 0; b < num_blocks; ++b)
      for (int r = 0; r < block_size; ++r)
        g[static_cast<std::size_t>(b * block_size + r)] =
            bp[static_cast<std::size_t>(b)] * block_size + r;
    std::vector<int> inv(bp.size());
    for (int b = 0; b < num_blocks; ++b) inv[static_cast<std::size_t>(bp[b])] = b;
    a.inverse_[e] = index_of.at(inv);
  }
  a.identity_ = 0;  // lexicographic enumeration starts at the identity

  std::ostringstream os;
  os << "block-permutation(blocks=" << num_blocks << ",block_size=" << block_size
     << ")";
  a.descriptor_ = os.str();
  return a;
}

GroupAction GroupAction::cyclic_shift(int dimension) {
  if (dimension < 1)
    throw std::invalid_argument("cyclic_shift: dimension must be positive");
  GroupAction a;
  a.kind_ = GroupKind::CyclicShift;
  a.dimension_ = dimension;
  a.order_ = dimension;
  a.exactly_unitary_ = true;
  a.identity_ = 0;
  a.gather_.resize(static_cast<std::size_t>(dimension));
  a.inverse_.resize(static_cast<std::size_t>(dimension));
  for (int k = 0; k < dimension; ++k) {
    auto& g = a.gather_[static_cast<std::size_t>(k)];
    g.resize(static_cast<std::size_t>(dimension));
    for (int i = 0; i < dimension; ++i)
      g[static_cast<std::size_t>(i)] = ((i - k) % dimension + dimension) % dimension;
    a.inverse_[static_cast<std::size_t>(k)] = (dimension - k) % dimension;
  }
  std::ostringstream os;
  os << "cyclic-shift(d=" << dimension << ")";
  a.descriptor_ = os.str();
  return a;
}

GroupAction GroupAction::image_euclidean(int rows, int cols, int max_shift,
                                         double angle_range_deg,
                                         double angle_step_deg) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("image_euclidean: image dims must be positive");
  if (max_shift < 0) throw std::invalid_argument("image_euclidean: max_shift < 0");
  if (angle_range_deg < 0.0 || (angle_range_deg > 0.0 && angle_step_deg <= 0.0))
    throw std::invalid_argument("image_euclidean: bad angle range/step");

  std::vector<double> angles;
  if (angle_range_deg == 0.0) {
    angles.push_back(0.0);
  } else {
    for (double ang = -angle_range_deg; ang <= angle_range_deg + 1e-9;
         ang += angle_step_deg)
      angles.push_back(ang);
  }

  const int shifts = 2 * max_shift + 1;
  const std::int64_t order =
      static_cast<std::int64_t>(shifts) * shifts * static_cast<std::int64_t>(angles.size());
  if (order > kMaxElements)
    throw std::length_error("image_euclidean: element table exceeds cap");

  GroupAction a;
  a.kind_ = GroupKind::ImageEuclidean;
  a.dimension_ = rows * cols;
  a.order_ = order;
  // Rotation by nearest neighbor is not norm preserving.
  bool rotations = std::any_of(angles.begin(), angles.end(),
                               [](double v) { return v != 0.0; });
  a.exactly_unitary_ = !rotations;

  const double cr = (rows - 1) / 2.0;
  const double cc = (cols - 1) / 2.0;
  a.gather_.reserve(static_cast<std::size_t>(order));
  a.image_params_.reserve(static_cast<std::size_t>(order));
  for (int dy = -max_shift; dy <= max_shift; ++dy) {
    for (int dx = -max_shift; dx <= max_shift; ++dx) {
      for (double ang : angles) {
        ImageElementParams p;
        p.dx = dx;
        p.dy = dy;
        p.angle_deg = ang;
        if (dx == 0 && dy == 0 && ang == 0.0)
          a.identity_ = static_cast<std::int64_t>(a.gather_.size());
        std::vector<int> g(static_cast<std::size_t>(rows * cols), -1);
        const double rad = ang * M_PI / 180.0;
        const double c = std::cos(rad), s = std::sin(rad);
        for (int r = 0; r < rows; ++r) {
          for (int col = 0; col < cols; ++col) {
            // Undo the translation cyclically, then the rotation.
            int rr = ((r - dy) % rows + rows) % rows;
            int cc2 = ((col - dx) % cols + cols) % cols;
            if (ang == 0.0) {
              g[static_cast<std::size_t>(r * cols + col)] = rr * cols + cc2;
            } else {
              double yr = rr - cr, xr = cc2 - cc;
              int sr = static_cast<int>(std::lround(c * yr + s * xr + cr));
              int sc = static_cast<int>(std::lround(-s * yr + c * xr + cc));
              if (sr >= 0 && sr < rows && sc >= 0 && sc < cols)
                g[static_cast<std::size_t>(r * cols + col)] = sr * cols + sc;
            }
          }
        }
        a.gather_.push_back(std::move(g));
        a.image_params_.push_back(p);
      }
    }
  }

  if (a.exactly_unitary_) {
    // Pure cyclic translations: inverse is the opposite shift.
    std::map<std::pair<int, int>, std::int64_t> index_of;
    for (std::size_t e = 0; e < a.image_params_.size(); ++e)
      index_of[{a.image_params_[e].dx, a.image_params_[e].dy}] =
          static_cast<std::int64_t>(e);
    a.inverse_.resize(a.image_params_.size());
    for (std::size_t e = 0; e < a.image_params_.size(); ++e)
      a.inverse_[e] = index_of.at({-a.image_params_[e].dx, -a.image_params_[e].dy});
  }

  std::ostringstream os;
  os << "image-euclidean(rows=" << rows << ",cols=" << cols
     << ",max_shift=" << max_shift << ",angle_range=" << angle_range_deg
     << ",angle_step=" << angle_step_deg << ")";
  a.descriptor_ = os.str();
  return a;
}

void GroupAction::apply(std::int64_t element, const Vec& x, Vec& out) const {
  if (element < 0 || element >= order_)
    throw std::invalid_argument("apply: element index out of range");
  if (x.size() != dimension_)
    throw std::invalid_argument("apply: dimension mismatch");
  out.resize(dimension_);
  const auto& g = gather_[static_cast<std::size_t>(element)];
  for (int i = 0; i < dimension_; ++i) {
    int src = g[static_cast<std::size_t>(i)];
    out[i] = src < 0 ? 0.0 : x[src];
  }
}

Vec GroupAction::apply(std::int64_t element, const Vec& x) const {
  Vec out;
  apply(element, x, out);
  return out;
}

std::vector<std::int64_t> GroupAction::enumerate() const {
  if (order_ > kMaxElements)
    throw std::length_error("enumerate: element table exceeds cap");
  std::vector<std::int64_t> out(static_cast<std::size_t>(order_));
  std::iota(out.begin(), out.end(), std::int64_t{0});
  return out;
}

std::vector<std::int64_t> GroupAction::sample_elements(std::int64_t count,
                                                       std::uint64_t seed) const {
  if (count < 1) throw std::invalid_argument("sample_elements: count < 1");
  Rng rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(0, order_ - 1);
  std::vector<std::int64_t> out(static_cast<std::size_t>(count));
  for (auto& e : out) e = dist(rng);
  return out;
}

std::int64_t GroupAction::inverse(std::int64_t element) const {
  if (element < 0 || element >= order_)
    throw std::invalid_argument("inverse: element index out of range");
  if (inverse_.empty())
    throw std::logic_error("inverse: undefined for approximately-unitary action");
  return inverse_[static_cast<std::size_t>(element)];
}

ImageElementParams GroupAction::image_params(std::int64_t element) const {
  if (kind_ != GroupKind::ImageEuclidean)
    throw std::logic_error("image_params: not an image action");
  if (element < 0 || element >= order_)
    throw std::invalid_argument("image_params: element index out of range");
  return image_params_[static_cast<std::size_t>(element)];
}

std::string GroupAction::descriptor() const { return descriptor_; }

}  // namespace gir

#include "core/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "core/rng.hpp"

namespace gir {

Vec encode_xperm(const std::array<std::uint8_t, kXpermLength>& seq,
                 bool normalized) {
  Vec x = Vec::Zero(kXpermDim);
  const double v = normalized ? 1.0 / std::sqrt(static_cast<double>(kXpermLength))
                              : 1.0;
  for (int pos = 0; pos < kXpermLength; ++pos) {
    if (seq[static_cast<std::size_t>(pos)] >= kXpermAlphabet)
      throw std::invalid_argument("encode_xperm: character out of alphabet");
    x[pos * kXpermAlphabet + seq[static_cast<std::size_t>(pos)]] = v;
  }
  return x;
}

XpermDataset gen_xperm(std::uint64_t seed) {
  XpermDataset ds;
  Rng rng(child_seed(seed, "xperm-targets", 0));
  std::uniform_int_distribution<int> pick(0, kXpermAlphabet - 1);
  ds.target1 = pick(rng);
  do {
    ds.target2 = pick(rng);
  } while (ds.target2 == ds.target1);

  ds.points.resize(kXpermSize, kXpermDim);
  ds.labels.resize(static_cast<std::size_t>(kXpermSize));
  ds.orbit_id.resize(static_cast<std::size_t>(kXpermSize));
  ds.core_mask.resize(static_cast<std::size_t>(kXpermSize));
  ds.sequences.resize(static_cast<std::size_t>(kXpermSize));
  ds.classes = 2;

  std::map<std::array<std::uint8_t, kXpermLength>, std::int64_t> orbit_of;
  for (std::int64_t idx = 0; idx < kXpermSize; ++idx) {
    std::array<std::uint8_t, kXpermLength> seq;
    std::int64_t v = idx;
    for (int pos = kXpermLength - 1; pos >= 0; --pos) {
      seq[static_cast<std::size_t>(pos)] =
          static_cast<std::uint8_t>(v % kXpermAlphabet);
      v /= kXpermAlphabet;
    }
    ds.sequences[static_cast<std::size_t>(idx)] = seq;
    ds.points.row(idx) = encode_xperm(seq).transpose();

    bool has1 = false, has2 = false;
    for (auto c : seq) {
      has1 |= c == ds.target1;
      has2 |= c == ds.target2;
    }
    ds.labels[static_cast<std::size_t>(idx)] = (has1 && has2) ? 1 : 0;

    auto sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    auto [it, inserted] =
        orbit_of.try_emplace(sorted, static_cast<std::int64_t>(orbit_of.size()));
    ds.orbit_id[static_cast<std::size_t>(idx)] = it->second;
    ds.core_mask[static_cast<std::size_t>(idx)] = sorted == seq ? 1 : 0;
    (void)inserted;
  }
  return ds;
}

Split split_train_test(const LabeledDataset& dataset, Eigen::Index n_train,
                       bool balanced, bool core_only, std::uint64_t seed) {
  const Eigen::Index n = dataset.size();
  if (n_train < 1 || n_train > n)
    throw std::invalid_argument("split_train_test: infeasible train size");

  std::vector<Eigen::Index> candidates;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!core_only || dataset.core_mask[static_cast<std::size_t>(i)])
      candidates.push_back(i);

  Rng rng(child_seed(seed, "split", 0));
  std::shuffle(candidates.begin(), candidates.end(), rng);

  Split split;
  if (balanced) {
    if (dataset.classes != 2 || n_train % 2 != 0)
      throw std::invalid_argument(
          "split_train_test: balanced split needs an even size and 2 classes");
    const Eigen::Index per_class = n_train / 2;
    Eigen::Index got0 = 0, got1 = 0;
    for (Eigen::Index idx : candidates) {
      int label = dataset.labels[static_cast<std::size_t>(idx)];
      if (label == 0 && got0 < per_class) {
        split.train.push_back(idx);
        ++got0;
      } else if (label == 1 && got1 < per_class) {
        split.train.push_back(idx);
        ++got1;
      }
      if (got0 == per_class && got1 == per_class) break;
    }
    if (got0 < per_class || got1 < per_class)
      throw std::invalid_argument(
          "split_train_test: not enough points per class");
  } else {
    if (static_cast<std::size_t>(n_train) > candidates.size())
      throw std::invalid_argument(
          "split_train_test: not enough candidate points");
    split.train.assign(candidates.begin(), candidates.begin() + n_train);
  }

  std::vector<std::uint8_t> in_train(static_cast<std::size_t>(n), 0);
  for (Eigen::Index idx : split.train) in_train[static_cast<std::size_t>(idx)] = 1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!in_train[static_cast<std::size_t>(i)]) split.test.push_back(i);
  std::sort(split.train.begin(), split.train.end());
  return split;
}

namespace {

std::uint32_t read_be32(std::ifstream& in, const std::string& path) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("load_idx: truncated file " + path);
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
         (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

void write_be32(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

IdxImageSet load_idx(const std::string& images_path,
                     const std::string& labels_path) {
  std::ifstream imgs(images_path, std::ios::binary);
  if (!imgs) throw std::runtime_error("load_idx: cannot open " + images_path);
  std::uint32_t magic = read_be32(imgs, images_path);
  if (magic != 2051)
    throw std::runtime_error("load_idx: bad image magic in " + images_path +
                             " (expected 2051)");
  std::uint32_t count = read_be32(imgs, images_path);
  std::uint32_t rows = read_be32(imgs, images_path);
  std::uint32_t cols = read_be32(imgs, images_path);

  IdxImageSet set;
  set.rows = static_cast<int>(rows);
  set.cols = static_cast<int>(cols);
  set.pixels.resize(static_cast<std::size_t>(count) * rows * cols);
  imgs.read(reinterpret_cast<char*>(set.pixels.data()),
            static_cast<std::streamsize>(set.pixels.size()));
  if (imgs.gcount() != static_cast<std::streamsize>(set.pixels.size()))
    throw std::runtime_error("load_idx: truncated image data in " + images_path);

  std::ifstream labs(labels_path, std::ios::binary);
  if (!labs) throw std::runtime_error("load_idx: cannot open " + labels_path);
  magic = read_be32(labs, labels_path);
  if (magic != 2049)
    throw std::runtime_error("load_idx: bad label magic in " + labels_path +
                             " (expected 2049)");
  std::uint32_t lcount = read_be32(labs, labels_path);
  if (lcount != count)
    throw std::runtime_error("load_idx: image/label count mismatch");
  set.labels.resize(lcount);
  labs.read(reinterpret_cast<char*>(set.labels.data()),
            static_cast<std::streamsize>(set.labels.size()));
  if (labs.gcount() != static_cast<std::streamsize>(set.labels.size()))
    throw std::runtime_error("load_idx: truncated label data in " + labels_path);
  return set;
}

void write_idx(const IdxImageSet& set, const std::string& images_path,
               const std::string& labels_path) {
  std::ofstream imgs(images_path, std::ios::binary);
  if (!imgs) throw std::runtime_error("write_idx: cannot open " + images_path);
  write_be32(imgs, 2051);
  write_be32(imgs, static_cast<std::uint32_t>(set.count()));
  write_be32(imgs, static_cast<std::uint32_t>(set.rows));
  write_be32(imgs, static_cast<std::uint32_t>(set.cols));
  imgs.write(reinterpret_cast<const char*>(set.pixels.data()),
             static_cast<std::streamsize>(set.pixels.size()));

  std::ofstream labs(labels_path, std::ios::binary);
  if (!labs) throw std::runtime_error("write_idx: cannot open " + labels_path);
  write_be32(labs, 2049);
  write_be32(labs, static_cast<std::uint32_t>(set.count()));
  labs.write(reinterpret_cast<const char*>(set.labels.data()),
             static_cast<std::streamsize>(set.labels.size()));
}

LabeledDataset idx_to_dataset(const IdxImageSet& set) {
  const std::int64_t n = set.count();
  const int d = set.rows * set.cols;
  LabeledDataset ds;
  ds.points.resize(n, d);
  ds.labels.resize(static_cast<std::size_t>(n));
  ds.orbit_id.assign(static_cast<std::size_t>(n), -1);
  ds.core_mask.assign(static_cast<std::size_t>(n), 1);
  int max_label = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (int p = 0; p < d; ++p)
      ds.points(i, p) =
          static_cast<double>(set.pixels[static_cast<std::size_t>(i) * d + p]) /
          255.0;
    double nrm = ds.points.row(i).norm();
    if (nrm > 0.0) ds.points.row(i) /= nrm;
    ds.labels[static_cast<std::size_t>(i)] = set.labels[static_cast<std::size_t>(i)];
    max_label = std::max(max_label, ds.labels[static_cast<std::size_t>(i)]);
  }
  ds.classes = max_label + 1;
  return ds;
}

GroupAction build_image_group(int rows, int cols, int max_shift,
                              double angle_range_deg, double angle_step_deg) {
  return GroupAction::image_euclidean(rows, cols, max_shift, angle_range_deg,
                                      angle_step_deg);
}

void LabeledDataset::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("LabeledDataset::write_csv: cannot open " + path);
  out << "label,orbit_id,core";
  for (Eigen::Index c = 0; c < points.cols(); ++c) out << ",c" << c;
  out << "\n";
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    out << labels[static_cast<std::size_t>(i)] << ','
        << orbit_id[static_cast<std::size_t>(i)] << ','
        << int(core_mask[static_cast<std::size_t>(i)]);
    for (Eigen::Index c = 0; c < points.cols(); ++c)
      out << ',' << points(i, c);
    out << "\n";
  }
}

}  // namespace gir

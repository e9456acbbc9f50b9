#include "layerlearn/labels.hpp"

#include <algorithm>
#include <stdexcept>

#include "layerlearn/rng.hpp"

namespace layerlearn {

std::vector<int> LabelMatrix::labeled_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (node_class[static_cast<std::size_t>(i)] >= 0) out.push_back(i);
  }
  return out;
}

Eigen::MatrixXd LabelMatrix::one_hot() const {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, m);
  for (int i = 0; i < n; ++i) {
    const int c = node_class[static_cast<std::size_t>(i)];
    if (c >= 0) y(i, c) = 1.0;
  }
  return y;
}

LabelSplit split_labels(const LabelMatrix& labels, int fold_index, std::uint64_t seed,
                        int n_folds, bool stratified,
                        std::vector<std::string>* warnings) {
  if (n_folds < 2) throw std::invalid_argument("split_labels: n_folds must be >= 2");
  if (fold_index < 0 || fold_index >= n_folds)
    throw std::invalid_argument("split_labels: fold_index out of range");

  std::vector<std::vector<int>> fold_sets(static_cast<std::size_t>(n_folds));
  std::vector<int> pinned_train;
  Rng rng(seed);

  if (stratified) {
    for (int c = 0; c < labels.m; ++c) {
      std::vector<int> members;
      for (int i = 0; i < labels.n; ++i) {
        if (labels.node_class[static_cast<std::size_t>(i)] == c) members.push_back(i);
      }
      if (members.size() == 1) {
        pinned_train.push_back(members.front());
        if (warnings) {
          warnings->push_back("class '" + labels.class_names[static_cast<std::size_t>(c)] +
                              "' has a single label; kept in train for every fold");
        }
        continue;
      }
      if (members.size() < static_cast<std::size_t>(n_folds) && warnings) {
        warnings->push_back("class '" + labels.class_names[static_cast<std::size_t>(c)] +
                            "' has fewer labels than folds");
      }
      rng.shuffle(members);
      for (std::size_t t = 0; t < members.size(); ++t) {
        fold_sets[t % static_cast<std::size_t>(n_folds)].push_back(members[t]);
      }
    }
  } else {
    std::vector<int> members = labels.labeled_nodes();
    rng.shuffle(members);
    for (std::size_t t = 0; t < members.size(); ++t) {
      fold_sets[t % static_cast<std::size_t>(n_folds)].push_back(members[t]);
    }
  }

  LabelSplit split;
  split.test = fold_sets[static_cast<std::size_t>(fold_index)];
  for (int f = 0; f < n_folds; ++f) {
    if (f == fold_index) continue;
    split.train.insert(split.train.end(), fold_sets[static_cast<std::size_t>(f)].begin(),
                       fold_sets[static_cast<std::size_t>(f)].end());
  }
  split.train.insert(split.train.end(), pinned_train.begin(), pinned_train.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());

  std::vector<bool> labeled(static_cast<std::size_t>(labels.n), false);
  for (int i : split.train) labeled[static_cast<std::size_t>(i)] = true;
  for (int i : split.test) labeled[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < labels.n; ++i) {
    if (!labeled[static_cast<std::size_t>(i)]) split.held_out.push_back(i);
  }
  return split;
}

}  // namespace layerlearn

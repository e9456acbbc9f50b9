#ifndef LAYERLEARN_LABELS_HPP
#define LAYERLEARN_LABELS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace layerlearn {

// Partial node -> class assignment with one-hot view. Unlabeled nodes carry -1.
struct LabelMatrix {
  int n = 0;
  int m = 0;
  std::vector<int> node_class;           // size n, -1 where unlabeled
  std::vector<std::string> class_names;  // size m, first-appearance order

  std::vector<int> labeled_nodes() const;

  // N x m dense 0/1 matrix; unlabeled rows are all zero.
  Eigen::MatrixXd one_hot() const;
};

// Disjoint train/test/held-out partition of 0..N-1. train ∪ test is exactly
// the labeled support; held_out is everything else.
struct LabelSplit {
  std::vector<int> train;
  std::vector<int> test;
  std::vector<int> held_out;
};

// Cyclic n_folds split of the labeled nodes: a seeded shuffle deals nodes into
// n_folds near-equal sets, set `fold_index` becomes the test fold. Stratified
// mode shuffles and deals per class so each fold's train set keeps every class
// represented whenever possible; a class with a single label always stays in
// train (warning emitted). Deterministic in (seed, fold_index).
LabelSplit split_labels(const LabelMatrix& labels, int fold_index, std::uint64_t seed,
                        int n_folds = 5, bool stratified = true,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace layerlearn

#endif

#ifndef LAYERLEARN_SPARSE_SYM_HPP
#define LAYERLEARN_SPARSE_SYM_HPP

#include <cstddef>
#include <vector>

namespace layerlearn {

// Sparse symmetric nonnegative adjacency matrix. Each unordered pair is stored
// once with i <= j; queries and degree computation see both orientations.
// Entries with zero weight are absent by construction.
class SparseSym {
 public:
  struct Entry {
    int i;
    int j;
    double w;
  };

  enum class Duplicates { Sum, Max };

  SparseSym() = default;
  explicit SparseSym(int n) : n_(n) {}

  // Builds from raw (i, j, w) triples in any orientation. Exact duplicate
  // pairs are combined per `dup`. Zero weights are dropped, negative weights
  // and (unless allowed) self loops are rejected.
  static SparseSym from_entries(int n, std::vector<Entry> raw,
                                Duplicates dup = Duplicates::Sum,
                                bool allow_self_loops = false);

  int nodes() const { return n_; }
  std::size_t edge_count() const { return entries_.size(); }

  // Weight of (i, j) in either orientation; 0 when absent.
  double weight(int i, int j) const;

  // Entries normalized to i <= j, sorted lexicographically.
  const std::vector<Entry>& entries() const { return entries_; }

  // Weighted degree vector: deg[i] = sum_j A_ij.
  std::vector<double> degrees() const;

 private:
  int n_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace layerlearn

#endif

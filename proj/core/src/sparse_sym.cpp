#include "layerlearn/sparse_sym.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace layerlearn {

SparseSym SparseSym::from_entries(int n, std::vector<Entry> raw, Duplicates dup,
                                  bool allow_self_loops) {
  for (auto& e : raw) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw std::out_of_range("edge (" + std::to_string(e.i) + "," +
                              std::to_string(e.j) + ") outside node range 0.." +
                              std::to_string(n - 1));
    }
    if (e.w < 0.0) {
      throw std::invalid_argument("negative edge weight at (" +
                                  std::to_string(e.i) + "," +
                                  std::to_string(e.j) + ")");
    }
    if (e.i == e.j && !allow_self_loops) {
      throw std::invalid_argument("self loop at node " + std::to_string(e.i));
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  SparseSym g(n);
  g.entries_.reserve(raw.size());
  for (const auto& e : raw) {
    if (!g.entries_.empty() && g.entries_.back().i == e.i &&
        g.entries_.back().j == e.j) {
      auto& w = g.entries_.back().w;
      w = dup == Duplicates::Sum ? w + e.w : std::max(w, e.w);
    } else {
      g.entries_.push_back(e);
    }
  }
  std::erase_if(g.entries_, [](const Entry& e) { return e.w == 0.0; });
  return g;
}

double SparseSym::weight(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::pair<int, int>(i, j),
      [](const Entry& e, const std::pair<int, int>& key) {
        return e.i != key.first ? e.i < key.first : e.j < key.second;
      });
  if (it != entries_.end() && it->i == i && it->j == j) return it->w;
  return 0.0;
}

std::vector<double> SparseSym::degrees() const {
  std::vector<double> deg(static_cast<std::size_t>(n_), 0.0);
  for (const auto& e : entries_) {
    deg[static_cast<std::size_t>(e.i)] += e.w;
    if (e.j != e.i) deg[static_cast<std::size_t>(e.j)] += e.w;
  }
  return deg;
}

}  // namespace layerlearn

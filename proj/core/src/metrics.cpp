#include "layerlearn/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace layerlearn {

namespace {

std::size_t check_matrix(const std::vector<std::vector<double>>& acc) {
  if (acc.empty() || acc.front().empty())
    throw std::domain_error("metrics: empty accuracy matrix");
  const std::size_t d = acc.front().size();
  for (const auto& row : acc) {
    if (row.size() != d) throw std::domain_error("metrics: ragged accuracy matrix");
  }
  return d;
}

}  // namespace

std::vector<double> apr(const std::vector<std::vector<double>>& accuracies) {
  const std::size_t n_datasets = check_matrix(accuracies);
  const std::size_t n_algs = accuracies.size();
  std::vector<double> out(n_algs, 0.0);
  for (std::size_t d = 0; d < n_datasets; ++d) {
    double best = 0.0;
    for (std::size_t a = 0; a < n_algs; ++a) best = std::max(best, accuracies[a][d]);
    if (best <= 0.0) throw std::domain_error("apr: dataset column with no positive accuracy");
    for (std::size_t a = 0; a < n_algs; ++a) out[a] += accuracies[a][d] / best;
  }
  for (auto& v : out) v /= static_cast<double>(n_datasets);
  return out;
}

std::vector<double> avg_rank(const std::vector<std::vector<double>>& accuracies) {
  const std::size_t n_datasets = check_matrix(accuracies);
  const std::size_t n_algs = accuracies.size();
  std::vector<double> out(n_algs, 0.0);
  for (std::size_t d = 0; d < n_datasets; ++d) {
    std::vector<std::size_t> order(n_algs);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return accuracies[a][d] > accuracies[b][d];
    });
    // Ties share the mean of the positions they occupy.
    std::size_t pos = 0;
    while (pos < n_algs) {
      std::size_t end = pos + 1;
      while (end < n_algs &&
             accuracies[order[end]][d] == accuracies[order[pos]][d]) {
        ++end;
      }
      const double mean_rank = (static_cast<double>(pos + 1) + static_cast<double>(end)) / 2.0;
      for (std::size_t t = pos; t < end; ++t) out[order[t]] += mean_rank;
      pos = end;
    }
  }
  for (auto& v : out) v /= static_cast<double>(n_datasets);
  return out;
}

}  // namespace layerlearn

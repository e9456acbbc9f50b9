#ifndef LAYERLEARN_METRICS_HPP
#define LAYERLEARN_METRICS_HPP

#include <vector>

namespace layerlearn {

// accuracies[a][d] = accuracy of algorithm a on dataset d. Every dataset
// column must have a positive maximum.

// Average performance ratio: mean over datasets of acc / best-acc-on-dataset.
// The algorithm that is best everywhere scores exactly 1.
std::vector<double> apr(const std::vector<std::vector<double>>& accuracies);

// Average rank with 1 for the best accuracy per dataset; tied algorithms all
// receive the mean of the rank positions they occupy.
std::vector<double> avg_rank(const std::vector<std::vector<double>>& accuracies);

}  // namespace layerlearn

#endif

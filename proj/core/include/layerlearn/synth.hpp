#ifndef LAYERLEARN_SYNTH_HPP
#define LAYERLEARN_SYNTH_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "layerlearn/labels.hpp"
#include "layerlearn/multilayer.hpp"

namespace layerlearn {

enum class SynthSetting { Informative, Noisy, Complementary };

const char* synth_setting_name(SynthSetting s);
SynthSetting parse_synth_setting(const std::string& name);

struct SynthSpec {
  int n_per_community = 400;
  int n_communities = 3;
  int n_layers = 3;
  int dim = 5;
  double std_dev = 5.0;
  SynthSetting setting = SynthSetting::Informative;
  int knn_k = 5;
  double label_fraction = 0.20;
  std::uint64_t rng_seed = 0;

  int nodes() const { return n_per_community * n_communities; }
  void validate() const;
};

struct SynthInstance {
  MultilayerGraph graph;
  std::vector<int> truth;        // community per node
  std::vector<int> known_nodes;  // sampled labeled nodes, ascending
  int n_communities = 0;

  LabelMatrix known_labels() const;  // labels restricted to known_nodes
  LabelMatrix truth_labels() const;  // every node labeled
};

// Symmetrized k-NN graph over the rows of `points`: each node links to its
// knn_k nearest others (Euclidean, ties to the lower node index), the directed
// edge sets are united, and an edge gets weight exp(-d_ij + d_min) with d_min
// the minimum pairwise distance over the whole point set.
SparseSym knn_blob_layer(const Eigen::MatrixXd& points, int knn_k);

// Deterministic generator for the three benchmark families. Community c is
// centered at 10 * e_{c mod dim}; every layer draws fresh points.
SynthInstance generate(const SynthSpec& spec);

}  // namespace layerlearn

#endif

#include "layerlearn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "layerlearn/rng.hpp"

namespace layerlearn {

const char* synth_setting_name(SynthSetting s) {
  switch (s) {
    case SynthSetting::Informative: return "informative";
    case SynthSetting::Noisy: return "noisy";
    case SynthSetting::Complementary: return "complementary";
  }
  return "unknown";
}

SynthSetting parse_synth_setting(const std::string& name) {
  if (name == "informative") return SynthSetting::Informative;
  if (name == "noisy") return SynthSetting::Noisy;
  if (name == "complementary") return SynthSetting::Complementary;
  throw std::invalid_argument("unknown synthetic setting '" + name + "'");
}

void SynthSpec::validate() const {
  if (n_per_community < 2) throw std::invalid_argument("synth: n_per_community must be >= 2");
  if (n_communities < 2) throw std::invalid_argument("synth: n_communities must be >= 2");
  if (n_layers < 1) throw std::invalid_argument("synth: n_layers must be >= 1");
  if (dim < 1) throw std::invalid_argument("synth: dim must be >= 1");
  if (!(std_dev > 0.0)) throw std::invalid_argument("synth: std must be > 0");
  if (knn_k < 1) throw std::invalid_argument("synth: knn_k must be >= 1");
  if (!(label_fraction > 0.0) || label_fraction > 1.0)
    throw std::invalid_argument("synth: label_fraction must be in (0, 1]");
  if (std::lround(label_fraction * n_per_community) < 1)
    throw std::invalid_argument("synth: label_fraction yields no labels per community");
  if (setting == SynthSetting::Complementary && n_layers != n_communities)
    throw std::invalid_argument("synth: complementary setting needs n_layers == n_communities");
}

SparseSym knn_blob_layer(const Eigen::MatrixXd& points, int knn_k) {
  const int n = static_cast<int>(points.rows());
  if (n < knn_k + 1)
    throw std::invalid_argument("knn_blob_layer: need at least knn_k + 1 points");

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(knn_k));
  double d2_min = std::numeric_limits<double>::infinity();

  Eigen::VectorXd d2(n);
  std::vector<int> idx(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    d2 = (points.rowwise() - points.row(i)).rowwise().squaredNorm();
    int pos = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      idx[static_cast<std::size_t>(pos++)] = j;
      if (j > i) d2_min = std::min(d2_min, d2(j));
    }
    auto closer = [&](int a, int b) {
      return d2(a) != d2(b) ? d2(a) < d2(b) : a < b;  // ties to the lower index
    };
    std::partial_sort(idx.begin(), idx.begin() + knn_k, idx.end(), closer);
    for (int t = 0; t < knn_k; ++t) {
      const int j = idx[static_cast<std::size_t>(t)];
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  const double d_min = std::sqrt(d2_min);
  std::vector<SparseSym::Entry> entries;
  entries.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const double d = (points.row(i) - points.row(j)).norm();
    entries.push_back({i, j, std::exp(d_min - d)});
  }
  return SparseSym::from_entries(n, std::move(entries));
}

namespace {

Eigen::MatrixXd draw_points(const SynthSpec& spec, Rng& rng) {
  Eigen::MatrixXd pts(spec.nodes(), spec.dim);
  for (int c = 0; c < spec.n_communities; ++c) {
    Eigen::RowVectorXd center = Eigen::RowVectorXd::Zero(spec.dim);
    center(c % spec.dim) = 10.0;
    for (int t = 0; t < spec.n_per_community; ++t) {
      const int node = c * spec.n_per_community + t;
      for (int d = 0; d < spec.dim; ++d) {
        pts(node, d) = center(d) + spec.std_dev * rng.normal();
      }
    }
  }
  return pts;
}

SparseSym permute_nodes(const SparseSym& g, const std::vector<int>& perm) {
  std::vector<SparseSym::Entry> entries;
  entries.reserve(g.edge_count());
  for (const auto& e : g.entries()) {
    entries.push_back({perm[static_cast<std::size_t>(e.i)],
                       perm[static_cast<std::size_t>(e.j)], e.w});
  }
  return SparseSym::from_entries(g.nodes(), std::move(entries));
}

SparseSym complementary_layer(const SynthSpec& spec, const Eigen::MatrixXd& pts,
                              int focus, Rng& shuffle_rng) {
  const int n = spec.nodes();
  const int block = spec.n_per_community;
  const int lo = focus * block;

  // Informative part: the full-k kNN graph over the focus community alone.
  Eigen::MatrixXd own = pts.middleRows(lo, block);
  const SparseSym own_graph = knn_blob_layer(own, spec.knn_k);

  // Noise part: a k=1 graph over the remaining communities' points with its
  // node indices reshuffled among themselves.
  std::vector<int> others;
  others.reserve(static_cast<std::size_t>(n - block));
  for (int i = 0; i < n; ++i) {
    if (i < lo || i >= lo + block) others.push_back(i);
  }
  Eigen::MatrixXd rest(n - block, spec.dim);
  for (std::size_t t = 0; t < others.size(); ++t) {
    rest.row(static_cast<Eigen::Index>(t)) = pts.row(others[t]);
  }
  const SparseSym rest_graph = knn_blob_layer(rest, 1);
  const std::vector<int> perm = shuffle_rng.permutation(n - block);

  std::vector<SparseSym::Entry> entries;
  entries.reserve(own_graph.edge_count() + rest_graph.edge_count());
  for (const auto& e : own_graph.entries()) {
    entries.push_back({lo + e.i, lo + e.j, e.w});
  }
  for (const auto& e : rest_graph.entries()) {
    entries.push_back({others[static_cast<std::size_t>(perm[static_cast<std::size_t>(e.i)])],
                       others[static_cast<std::size_t>(perm[static_cast<std::size_t>(e.j)])],
                       e.w});
  }
  return SparseSym::from_entries(n, std::move(entries));
}

}  // namespace

SynthInstance generate(const SynthSpec& spec) {
  spec.validate();
  Rng master(spec.rng_seed);

  SynthInstance inst;
  inst.n_communities = spec.n_communities;
  inst.truth.resize(static_cast<std::size_t>(spec.nodes()));
  for (int c = 0; c < spec.n_communities; ++c) {
    for (int t = 0; t < spec.n_per_community; ++t) {
      inst.truth[static_cast<std::size_t>(c * spec.n_per_community + t)] = c;
    }
  }

  std::vector<SparseSym> layers;
  layers.reserve(static_cast<std::size_t>(spec.n_layers));
  for (int l = 0; l < spec.n_layers; ++l) {
    Rng point_rng = master.fork(static_cast<std::uint64_t>(l));
    Rng shuffle_rng = master.fork(100 + static_cast<std::uint64_t>(l));
    const Eigen::MatrixXd pts = draw_points(spec, point_rng);
    switch (spec.setting) {
      case SynthSetting::Informative:
        layers.push_back(knn_blob_layer(pts, spec.knn_k));
        break;
      case SynthSetting::Noisy:
        if (l == 0) {
          layers.push_back(knn_blob_layer(pts, spec.knn_k));
        } else {
          layers.push_back(
              permute_nodes(knn_blob_layer(pts, spec.knn_k), shuffle_rng.permutation(spec.nodes())));
        }
        break;
      case SynthSetting::Complementary:
        layers.push_back(complementary_layer(spec, pts, l, shuffle_rng));
        break;
    }
  }
  inst.graph = MultilayerGraph(std::move(layers));

  // Known labels: round(label_fraction * n_per_community) per community.
  Rng label_rng = master.fork(9000);
  const int per = static_cast<int>(std::lround(spec.label_fraction * spec.n_per_community));
  for (int c = 0; c < spec.n_communities; ++c) {
    std::vector<int> block(static_cast<std::size_t>(spec.n_per_community));
    std::iota(block.begin(), block.end(), c * spec.n_per_community);
    label_rng.shuffle(block);
    inst.known_nodes.insert(inst.known_nodes.end(), block.begin(), block.begin() + per);
  }
  std::sort(inst.known_nodes.begin(), inst.known_nodes.end());
  return inst;
}

namespace {

LabelMatrix make_labels(int n, int m, const std::vector<int>& truth,
                        const std::vector<int>* subset) {
  LabelMatrix labels;
  labels.n = n;
  labels.m = m;
  labels.node_class.assign(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < m; ++c) labels.class_names.push_back("c" + std::to_string(c));
  if (subset) {
    for (int i : *subset) labels.node_class[static_cast<std::size_t>(i)] = truth[static_cast<std::size_t>(i)];
  } else {
    labels.node_class = truth;
  }
  return labels;
}

}  // namespace

LabelMatrix SynthInstance::known_labels() const {
  return make_labels(graph.nodes(), n_communities, truth, &known_nodes);
}

LabelMatrix SynthInstance::truth_labels() const {
  return make_labels(graph.nodes(), n_communities, truth, nullptr);
}

}  // namespace layerlearn

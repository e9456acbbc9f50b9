#include "layerlearn/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "layerlearn/errors.hpp"

namespace layerlearn {

namespace {

std::string at_line(const std::string& path, int line) {
  return path + ":" + std::to_string(line);
}

bool parse_header(const std::string& line, int* n, int* k) {
  std::istringstream in(line);
  std::string tag_nodes, tag_layers;
  int nn = 0, kk = 0;
  if (!(in >> tag_nodes >> nn >> tag_layers >> kk)) return false;
  if (tag_nodes != "#nodes" || tag_layers != "#layers") return false;
  *n = nn;
  *k = kk;
  return true;
}

}  // namespace

MultilayerGraph load_multilayer(const std::string& path, std::optional<int> n_hint,
                                PairPolicy policy) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::optional<int> declared_n;
  std::optional<int> declared_k;
  std::vector<long long> layer_ids;                       // first-appearance order
  std::map<long long, std::size_t> layer_index;
  // Directed accumulation per layer; duplicates of the same direction sum.
  std::vector<std::map<std::pair<int, int>, double>> directed;
  int max_node = -1;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      int n = 0, k = 0;
      if (parse_header(line, &n, &k)) {
        if (n <= 0 || k <= 0)
          throw ParseError("bad header counts at " + at_line(path, line_no));
        declared_n = n;
        declared_k = k;
      }
      continue;
    }
    std::istringstream ls(line);
    long long layer = 0;
    long long u = 0, v = 0;
    double w = 0.0;
    if (!(ls >> layer >> u >> v >> w)) {
      throw ParseError("malformed edge line at " + at_line(path, line_no) + ": '" + line + "'");
    }
    std::string trailing;
    if (ls >> trailing) {
      throw ParseError("trailing tokens at " + at_line(path, line_no));
    }
    if (!std::isfinite(w)) {
      throw ParseError("non-finite weight at " + at_line(path, line_no));
    }
    if (w < 0.0) {
      throw std::invalid_argument("negative weight at " + at_line(path, line_no));
    }
    if (u < 0 || v < 0) {
      throw std::out_of_range("negative node index at " + at_line(path, line_no));
    }
    if (u == v) {
      throw std::invalid_argument("self loop at " + at_line(path, line_no));
    }
    const int limit = declared_n ? *declared_n : (n_hint ? *n_hint : -1);
    if (limit >= 0 && (u >= limit || v >= limit)) {
      throw std::out_of_range("node index " + std::to_string(std::max(u, v)) +
                              " >= declared node count " + std::to_string(limit) +
                              " at " + at_line(path, line_no));
    }
    auto [it, inserted] = layer_index.try_emplace(layer, layer_ids.size());
    if (inserted) {
      layer_ids.push_back(layer);
      directed.emplace_back();
    }
    directed[it->second][{static_cast<int>(u), static_cast<int>(v)}] += w;
    max_node = std::max(max_node, static_cast<int>(std::max(u, v)));
  }

  if (layer_ids.empty()) throw ParseError("no edges in " + path);

  const int n = declared_n ? *declared_n : (n_hint ? *n_hint : max_node + 1);
  if (declared_k && static_cast<std::size_t>(*declared_k) != layer_ids.size()) {
    throw ParseError("header declares " + std::to_string(*declared_k) + " layers but " +
                     std::to_string(layer_ids.size()) + " appear in " + path);
  }

  std::vector<SparseSym> layers;
  std::vector<std::string> names;
  layers.reserve(directed.size());
  for (std::size_t k = 0; k < directed.size(); ++k) {
    std::map<std::pair<int, int>, double> unified;
    for (const auto& [key, w] : directed[k]) {
      auto norm = key.first <= key.second ? key : std::pair<int, int>{key.second, key.first};
      auto [it, inserted] = unified.try_emplace(norm, w);
      if (!inserted) {
        it->second = policy == PairPolicy::Max ? std::max(it->second, w) : it->second + w;
      }
    }
    std::vector<SparseSym::Entry> entries;
    entries.reserve(unified.size());
    for (const auto& [key, w] : unified) entries.push_back({key.first, key.second, w});
    layers.push_back(SparseSym::from_entries(n, std::move(entries)));
    names.push_back(std::to_string(layer_ids[k]));
  }
  return MultilayerGraph(std::move(layers), std::move(names));
}

void write_multilayer(const std::string& path, const MultilayerGraph& g,
                      const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "#nodes " << g.nodes() << " #layers " << g.layer_count() << "\n";
  out.precision(17);
  for (int k = 0; k < g.layer_count(); ++k) {
    for (const auto& e : g.layer(k).entries()) {
      out << k << "\t" << e.i << "\t" << e.j << "\t" << e.w << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

LabelMatrix load_labels(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  LabelMatrix labels;
  labels.n = n;
  labels.node_class.assign(static_cast<std::size_t>(n), -1);
  std::map<std::string, int> class_index;

  std::string line;
  int line_no = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long node = 0;
    std::string cls;
    if (!(ls >> node >> cls)) {
      throw ParseError("malformed label line at " + at_line(path, line_no) + ": '" + line + "'");
    }
    if (node < 0 || node >= n) {
      throw std::out_of_range("node index " + std::to_string(node) +
                              " outside 0.." + std::to_string(n - 1) + " at " +
                              at_line(path, line_no));
    }
    auto [it, inserted] = class_index.try_emplace(cls, static_cast<int>(labels.class_names.size()));
    if (inserted) labels.class_names.push_back(cls);
    auto& slot = labels.node_class[static_cast<std::size_t>(node)];
    if (slot >= 0 && slot != it->second) {
      throw std::invalid_argument("node " + std::to_string(node) +
                                  " labeled with conflicting classes at " +
                                  at_line(path, line_no));
    }
    slot = it->second;
    any = true;
  }
  if (!any) throw std::invalid_argument("no labels in " + path);
  labels.m = static_cast<int>(labels.class_names.size());
  return labels;
}

void write_labels(const std::string& path, const LabelMatrix& labels,
                  const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& c : comments) out << "# " << c << "\n";
  for (int i = 0; i < labels.n; ++i) {
    const int c = labels.node_class[static_cast<std::size_t>(i)];
    if (c >= 0) out << i << "\t" << labels.class_names[static_cast<std::size_t>(c)] << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace layerlearn

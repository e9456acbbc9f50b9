#ifndef LAYERLEARN_GRAPH_IO_HPP
#define LAYERLEARN_GRAPH_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "layerlearn/labels.hpp"
#include "layerlearn/multilayer.hpp"

namespace layerlearn {

// How to unify the (i,j)/(j,i) orientation pair when an edge list contains
// both directions (e.g. a directed dump of an undirected graph).
enum class PairPolicy { Max, Sum };

// Text edge-list format: optional header line `#nodes N #layers K`, body lines
// `layer<TAB>u<TAB>v<TAB>weight` (any whitespace accepted), `#` starts a
// comment. Layers are indexed in first-appearance order; duplicate directed
// records are summed before the orientation pair is unified per `policy`.
MultilayerGraph load_multilayer(const std::string& path,
                                std::optional<int> n_hint = std::nullopt,
                                PairPolicy policy = PairPolicy::Max);

// Writes the header plus one line per stored (i <= j) entry. `comments` are
// emitted as leading `# ` lines.
void write_multilayer(const std::string& path, const MultilayerGraph& g,
                      const std::vector<std::string>& comments = {});

// Label format: lines `node<TAB>class_name`; class names are arbitrary tokens,
// densified to 0..m-1 in first-appearance order. `#` starts a comment.
LabelMatrix load_labels(const std::string& path, int n);

void write_labels(const std::string& path, const LabelMatrix& labels,
                  const std::vector<std::string>& comments = {});

}  // namespace layerlearn

#endif

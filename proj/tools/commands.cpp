#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "layerlearn/errors.hpp"
#include "layerlearn/metrics.hpp"
#include "layerlearn/propagate.hpp"
#include "layerlearn/rng.hpp"

namespace layerlearn::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string config_comment(const CliConfig& cfg) {
  return "config " + cfg.to_json().dump();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out.precision(17);
  return out;
}

json theta_json(const Theta& t) {
  json j;
  j["alpha"] = t.alpha;
  j["beta"] = std::vector<double>(t.beta.data(), t.beta.data() + t.beta.size());
  j["lambda"] = t.lambda;
  return j;
}

json learned_json(const LearnedParams& lp) {
  json j;
  j["theta"] = theta_json(lp.theta);
  j["loss"] = lp.loss;
  j["fold"] = lp.fold;
  j["start"] = lp.start;
  j["stop_reason"] = stop_reason_name(lp.trace.reason);
  j["fold_losses"] = lp.loss_table;
  return j;
}

void write_trace_csv(const fs::path& p, const CliConfig& cfg, const MethodResult& res) {
  auto out = open_out(p);
  out << "# " << config_comment(cfg) << "\n";
  const int k = res.learned.front().theta.k();
  out << "class,n,f,g_tilde,eta,h,backtracks,alpha";
  for (int i = 0; i < k; ++i) out << ",beta" << i;
  out << ",lambda\n";
  for (std::size_t c = 0; c < res.learned.size(); ++c) {
    const int cls = res.learned.size() > 1 ? static_cast<int>(c) : -1;
    for (const auto& it : res.learned[c].trace.iterations) {
      out << cls << "," << it.n << "," << it.f << "," << it.g_tilde << "," << it.eta << ","
          << it.h << "," << it.backtracks << "," << it.theta.alpha;
      for (int i = 0; i < k; ++i) out << "," << it.theta.beta(i);
      out << "," << it.theta.lambda << "\n";
    }
  }
}

std::vector<int> truth_vector(const LabelMatrix& known, const LabelMatrix& truth_file) {
  // Map truth class names through the known-label indexing; names never seen
  // in the known labels get fresh indices (they can only score as misses).
  std::map<std::string, int> index;
  for (std::size_t c = 0; c < known.class_names.size(); ++c) {
    index[known.class_names[c]] = static_cast<int>(c);
  }
  int next = known.m;
  std::vector<int> truth(static_cast<std::size_t>(truth_file.n), -1);
  for (int i = 0; i < truth_file.n; ++i) {
    const int c = truth_file.node_class[static_cast<std::size_t>(i)];
    if (c < 0) continue;
    auto [it, inserted] = index.try_emplace(truth_file.class_names[static_cast<std::size_t>(c)], next);
    if (inserted) ++next;
    truth[static_cast<std::size_t>(i)] = it->second;
  }
  return truth;
}

void write_predictions(const fs::path& p, const CliConfig& cfg, const LabelMatrix& known,
                       const std::vector<int>& predictions) {
  auto out = open_out(p);
  out << "# " << config_comment(cfg) << "\n";
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out << i << "\t" << known.class_names[static_cast<std::size_t>(predictions[i])] << "\n";
  }
}

struct CellStats {
  double mean = std::nan("");
  double stdev = std::nan("");
};

CellStats stats_of(const std::vector<double>& v) {
  CellStats s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  } else {
    s.stdev = 0.0;
  }
  return s;
}

// Single-layer label propagation: the k-th layer viewed as its own multiplex.
double single_layer_accuracy(const MultilayerGraph& g, int layer, const LabelMatrix& known,
                             const std::vector<int>& truth, double prop_tol,
                             int prop_max_iter) {
  MultilayerGraph one({g.layer(layer)});
  auto res = run_fixed_mean(one, known, &truth, Method::Arit, prop_tol, prop_max_iter);
  return res.accuracy.value_or(std::nan(""));
}

}  // namespace

void cmd_synth(const CliConfig& cfg, const std::string& out_dir) {
  SynthSpec spec = cfg.synth;
  spec.rng_seed = cfg.seed;
  spec.validate();
  fs::create_directories(out_dir);

  const SynthInstance inst = generate(spec);
  const std::string comment = config_comment(cfg);
  write_multilayer((fs::path(out_dir) / "edges.tsv").string(), inst.graph, {comment});
  write_labels((fs::path(out_dir) / "labels_known.tsv").string(), inst.known_labels(),
               {comment});
  write_labels((fs::path(out_dir) / "labels_truth.tsv").string(), inst.truth_labels(),
               {comment});

  json spec_json;
  spec_json["config"] = cfg.to_json();
  spec_json["n_nodes"] = inst.graph.nodes();
  spec_json["n_layers"] = inst.graph.layer_count();
  spec_json["n_known_labels"] = inst.known_nodes.size();
  spec_json["files"] = {"edges.tsv", "labels_known.tsv", "labels_truth.tsv"};
  open_out(fs::path(out_dir) / "spec.json") << spec_json.dump(2) << "\n";
}

void cmd_run(const CliConfig& cfg, const RunPaths& paths) {
  const Method method = parse_method(cfg.method);
  const MultilayerGraph graph = load_multilayer(paths.graph, std::nullopt, cfg.pair_policy());
  const LabelMatrix known = load_labels(paths.labels, graph.nodes());

  std::vector<int> truth;
  if (!paths.truth.empty()) {
    truth = truth_vector(known, load_labels(paths.truth, graph.nodes()));
    for (int i = 0; i < known.n; ++i) {
      if (known.node_class[static_cast<std::size_t>(i)] < 0 &&
          truth[static_cast<std::size_t>(i)] < 0) {
        throw std::invalid_argument("truth file misses held-out node " + std::to_string(i));
      }
    }
  }

  const MethodResult res = run_method(graph, known, truth.empty() ? nullptr : &truth, method,
                                      cfg.experiment_config());

  fs::create_directories(paths.out_dir);
  json result;
  result["method"] = method_name(method);
  result["seed"] = cfg.seed;
  result["config"] = cfg.to_json();
  result["n_nodes"] = graph.nodes();
  result["n_layers"] = graph.layer_count();
  result["classes"] = known.class_names;
  if (!res.learned.empty()) {
    json learned = json::array();
    for (std::size_t c = 0; c < res.learned.size(); ++c) {
      json lj = learned_json(res.learned[c]);
      if (res.learned.size() > 1) lj["class"] = known.class_names[c];
      learned.push_back(std::move(lj));
    }
    result["learned"] = std::move(learned);
  }
  if (res.accuracy) result["accuracy"] = *res.accuracy;
  result["degenerate_rows"] = res.degenerate_rows;
  result["warnings"] = res.warnings;
  result["timings"] = {{"total_s", res.seconds}};
  open_out(fs::path(paths.out_dir) / "result.json") << result.dump(2) << "\n";

  write_predictions(fs::path(paths.out_dir) / "predictions.tsv", cfg, known, res.predictions);
  if (!res.learned.empty()) {
    write_trace_csv(fs::path(paths.out_dir) / "trace.csv", cfg, res);
  }
}

void cmd_bench(const CliConfig& cfg, const std::string& suite, int samples,
               const std::string& out_dir) {
  if (suite != "table2") throw std::invalid_argument("unknown bench suite '" + suite + "'");
  if (samples < 1) throw std::invalid_argument("bench needs samples >= 1");
  fs::create_directories(out_dir);

  const std::vector<std::pair<SynthSetting, std::vector<double>>> grid = {
      {SynthSetting::Informative, {5, 6, 7, 8}},
      {SynthSetting::Noisy, {2, 3, 4, 5}},
      {SynthSetting::Complementary, {2, 3, 4, 5}},
  };
  const std::vector<Method> methods = {Method::Min, Method::Geom, Method::Arit,
                                       Method::Harm, Method::Max, Method::Binom,
                                       Method::Multi};
  const int n_layers = cfg.synth.n_layers;

  struct Row {
    std::string setting;
    double std_dev;
    std::vector<CellStats> layers;
    std::vector<CellStats> cells;
  };
  std::vector<Row> rows;
  std::vector<std::string> notes;
  Rng seed_rng(cfg.seed);

  int cell_index = 0;
  for (const auto& [setting, stds] : grid) {
    for (double std_dev : stds) {
      Row row;
      row.setting = synth_setting_name(setting);
      row.std_dev = std_dev;
      std::vector<std::vector<double>> layer_acc(static_cast<std::size_t>(n_layers));
      std::vector<std::vector<double>> method_acc(methods.size());

      for (int sample = 0; sample < samples; ++sample) {
        SynthSpec spec = cfg.synth;
        spec.setting = setting;
        spec.std_dev = std_dev;
        spec.rng_seed =
            seed_rng.fork(static_cast<std::uint64_t>(cell_index)).fork(static_cast<std::uint64_t>(sample)).seed();
        const SynthInstance inst = generate(spec);
        const LabelMatrix known = inst.known_labels();

        for (int l = 0; l < n_layers; ++l) {
          layer_acc[static_cast<std::size_t>(l)].push_back(single_layer_accuracy(
              inst.graph, l, known, inst.truth, cfg.prop_tol, cfg.prop_max_iter));
        }
        for (std::size_t m = 0; m < methods.size(); ++m) {
          try {
            ExperimentConfig ec = cfg.experiment_config();
            ec.seed = spec.rng_seed;
            const MethodResult res =
                run_method(inst.graph, known, &inst.truth, methods[m], ec);
            method_acc[m].push_back(res.accuracy.value());
          } catch (const std::exception& e) {
            notes.push_back(row.setting + " std=" + std::to_string(std_dev) + " " +
                            method_name(methods[m]) + " sample " + std::to_string(sample) +
                            " failed: " + e.what());
          }
        }
      }
      for (auto& v : layer_acc) row.layers.push_back(stats_of(v));
      for (auto& v : method_acc) row.cells.push_back(stats_of(v));
      rows.push_back(std::move(row));
      ++cell_index;
    }
  }

  // APR / AR across the (setting, std) datasets from the per-cell means.
  std::vector<std::vector<double>> mean_grid(methods.size());
  bool complete = true;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    for (const auto& row : rows) {
      const double v = row.cells[m].mean;
      if (std::isnan(v)) complete = false;
      mean_grid[m].push_back(v);
    }
  }
  std::vector<double> aprs, ranks;
  if (complete) {
    aprs = apr(mean_grid);
    ranks = avg_rank(mean_grid);
  }

  auto out = open_out(fs::path(out_dir) / "bench_table2.csv");
  out << "# " << config_comment(cfg) << "\n";
  out << "# samples " << samples << "\n";
  out << "setting,std";
  for (int l = 0; l < n_layers; ++l) out << ",layer" << (l + 1) << "_mean,layer" << (l + 1) << "_std";
  for (Method m : methods) out << "," << method_name(m) << "_mean," << method_name(m) << "_std";
  out << "\n";
  for (const auto& row : rows) {
    out << row.setting << "," << row.std_dev;
    for (const auto& c : row.layers) out << "," << c.mean << "," << c.stdev;
    for (const auto& c : row.cells) out << "," << c.mean << "," << c.stdev;
    out << "\n";
  }
  if (complete) {
    out << "APR,";
    for (int l = 0; l < n_layers; ++l) out << ",,";
    for (double v : aprs) out << "," << v << ",";
    out << "\n";
    out << "AR,";
    for (int l = 0; l < n_layers; ++l) out << ",,";
    for (double v : ranks) out << "," << v << ",";
    out << "\n";
  }
  for (const auto& n : notes) out << "# note " << n << "\n";
}

void cmd_scaling(const CliConfig& cfg, const std::vector<int>& sizes,
                 const std::vector<std::string>& methods, const std::string& out_dir) {
  if (sizes.empty()) throw std::invalid_argument("scaling needs at least one size");
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw std::invalid_argument("scaling sizes must be ascending");
  fs::create_directories(out_dir);

  auto out = open_out(fs::path(out_dir) / "scaling.csv");
  out << "# " << config_comment(cfg) << "\n";
  out << "method,n,run1_s,run2_s,run3_s,mean_s\n";

  for (const std::string& method_str : methods) {
    const Method method = parse_method(method_str);
    for (int n : sizes) {
      SynthSpec spec = cfg.synth;
      spec.n_per_community = n / spec.n_communities;
      spec.rng_seed = cfg.seed;
      const SynthInstance inst = generate(spec);  // excluded from the timing
      const LabelMatrix known = inst.known_labels();

      std::vector<double> secs;
      for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        run_method(inst.graph, known, &inst.truth, method, cfg.experiment_config());
        secs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      }
      out << method_name(method) << "," << spec.nodes() << "," << secs[0] << "," << secs[1]
          << "," << secs[2] << "," << (secs[0] + secs[1] + secs[2]) / 3.0 << "\n";
      out.flush();
    }
  }
}

}  // namespace layerlearn::cli

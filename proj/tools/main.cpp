#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "layerlearn/errors.hpp"

namespace {

using layerlearn::cli::CliConfig;

int fail(const std::string& kind, const std::string& what, int code) {
  nlohmann::json err;
  err["error"] = what;
  err["kind"] = kind;
  std::cout << err.dump() << std::endl;
  return code;
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

std::vector<std::string> parse_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised node classification on multiplex graphs with a "
               "learned generalized-mean layer aggregation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string setting = "informative";
  double std_dev = -1.0;
  std::uint64_t seed = 0;
  int threads = -1;
  std::string method;
  int n_per_community = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
  };

  auto* synth = app.add_subcommand("synth", "generate a synthetic multilayer instance");
  add_common(synth);
  synth->add_option("--setting", setting, "informative | noisy | complementary");
  synth->add_option("--std", std_dev, "blob standard deviation");
  synth->add_option("--n-per-community", n_per_community, "nodes per community");

  auto* run = app.add_subcommand("run", "train and evaluate one method on files");
  add_common(run);
  std::string graph_path, labels_path, truth_path;
  run->add_option("--method", method, "MULTI | BINOM | MIN | GEOM | ARIT | HARM | MAX");
  run->add_option("--graph", graph_path, "multilayer edge-list file")->required();
  run->add_option("--labels", labels_path, "known-labels file")->required();
  run->add_option("--truth", truth_path, "truth labels for held-out accuracy");

  auto* bench = app.add_subcommand("bench", "run the synthetic benchmark grid");
  add_common(bench);
  std::string suite = "table2";
  int samples = 5;
  bench->add_option("--suite", suite, "benchmark suite (table2)");
  bench->add_option("--samples", samples, "random samples per cell");
  bench->add_option("--n-per-community", n_per_community, "nodes per community");

  auto* scaling = app.add_subcommand("scaling", "time methods across instance sizes");
  add_common(scaling);
  std::string sizes_csv, methods_csv = "BINOM";
  scaling->add_option("--sizes", sizes_csv, "comma-separated node counts")->required();
  scaling->add_option("--method", methods_csv, "comma-separated methods to time");

  CLI11_PARSE(app, argc, argv);
  CLI::App* active = app.get_subcommands().front();

  try {
    CliConfig cfg = config_path.empty() ? CliConfig{} : CliConfig::load_file(config_path);
    if (active->count("--seed")) cfg.seed = seed;
    if (threads >= 0) cfg.threads = threads;
    if (n_per_community > 0) cfg.synth.n_per_community = n_per_community;
    cfg.synth.rng_seed = cfg.seed;

    if (active == synth) {
      if (synth->count("--setting")) cfg.synth.setting = layerlearn::parse_synth_setting(setting);
      if (synth->count("--std")) cfg.synth.std_dev = std_dev;
      layerlearn::cli::cmd_synth(cfg, out_dir);
    } else if (active == run) {
      if (run->count("--method")) cfg.method = method;
      layerlearn::cli::cmd_run(cfg, {graph_path, labels_path, truth_path, out_dir});
    } else if (active == bench) {
      layerlearn::cli::cmd_bench(cfg, suite, samples, out_dir);
    } else if (active == scaling) {
      layerlearn::cli::cmd_scaling(cfg, parse_sizes(sizes_csv), parse_list(methods_csv), out_dir);
    }
  } catch (const layerlearn::NumericError& e) {
    return fail("numeric", e.what(), 2);
  } catch (const layerlearn::ParseError& e) {
    return fail("parse", e.what(), 1);
  } catch (const std::domain_error& e) {
    return fail("domain", e.what(), 1);
  } catch (const std::invalid_argument& e) {
    return fail("domain", e.what(), 1);
  } catch (const std::out_of_range& e) {
    return fail("range", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 2);
  }
  return 0;
}

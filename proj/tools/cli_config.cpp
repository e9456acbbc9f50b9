#include "cli_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "layerlearn/errors.hpp"

namespace layerlearn::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw std::invalid_argument("unknown config key '" + it.key() + "' in " + where);
    }
  }
}

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

CliConfig CliConfig::from_json(const json& j) {
  CliConfig cfg;
  reject_unknown(j, {"method", "n_folds", "n_starts", "seed", "stratified", "threads",
                     "duplicate_policy", "optimizer", "synth"},
                 "top level");
  take(j, "method", cfg.method);
  parse_method(cfg.method);  // validates
  take(j, "n_folds", cfg.n_folds);
  take(j, "n_starts", cfg.n_starts);
  take(j, "seed", cfg.seed);
  take(j, "stratified", cfg.stratified);
  take(j, "threads", cfg.threads);
  take(j, "duplicate_policy", cfg.duplicate_policy);
  if (cfg.duplicate_policy != "max" && cfg.duplicate_policy != "sum") {
    throw std::invalid_argument("duplicate_policy must be 'max' or 'sum'");
  }

  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    reject_unknown(o, {"tau", "h0", "h_min", "gamma", "delta", "max_iter", "max_backtracks",
                       "prop_tol", "prop_max_iter", "alpha_box", "lambda_min", "lambda_max"},
                   "optimizer");
    take(o, "tau", cfg.opt.tau);
    take(o, "h0", cfg.opt.h0);
    take(o, "h_min", cfg.opt.h_min);
    take(o, "gamma", cfg.opt.gamma);
    take(o, "delta", cfg.opt.delta);
    take(o, "max_iter", cfg.opt.max_iter);
    take(o, "max_backtracks", cfg.opt.max_backtracks);
    take(o, "prop_tol", cfg.prop_tol);
    take(o, "prop_max_iter", cfg.prop_max_iter);
    take(o, "alpha_box", cfg.alpha_box);
    take(o, "lambda_min", cfg.lambda_min);
    take(o, "lambda_max", cfg.lambda_max);
  }

  if (j.contains("synth")) {
    const json& s = j.at("synth");
    reject_unknown(s, {"setting", "std", "n_per_community", "n_communities", "n_layers",
                       "dim", "knn_k", "label_fraction"},
                   "synth");
    if (s.contains("setting")) cfg.synth.setting = parse_synth_setting(s.at("setting"));
    take(s, "std", cfg.synth.std_dev);
    take(s, "n_per_community", cfg.synth.n_per_community);
    take(s, "n_communities", cfg.synth.n_communities);
    take(s, "n_layers", cfg.synth.n_layers);
    take(s, "dim", cfg.synth.dim);
    take(s, "knn_k", cfg.synth.knn_k);
    take(s, "label_fraction", cfg.synth.label_fraction);
  }
  cfg.synth.rng_seed = cfg.seed;
  return cfg;
}

CliConfig CliConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json CliConfig::to_json() const {
  json j;
  j["method"] = method;
  j["n_folds"] = n_folds;
  j["n_starts"] = n_starts;
  j["seed"] = seed;
  j["stratified"] = stratified;
  j["threads"] = threads;
  j["duplicate_policy"] = duplicate_policy;
  j["optimizer"] = {
      {"tau", opt.tau},
      {"h0", opt.h0},
      {"h_min", opt.h_min},
      {"gamma", opt.gamma},
      {"delta", opt.delta},
      {"max_iter", opt.max_iter},
      {"max_backtracks", opt.max_backtracks},
      {"prop_tol", prop_tol},
      {"prop_max_iter", prop_max_iter},
      {"alpha_box", alpha_box},
      {"lambda_min", lambda_min},
      {"lambda_max", lambda_max},
  };
  j["synth"] = {
      {"setting", synth_setting_name(synth.setting)},
      {"std", synth.std_dev},
      {"n_per_community", synth.n_per_community},
      {"n_communities", synth.n_communities},
      {"n_layers", synth.n_layers},
      {"dim", synth.dim},
      {"knn_k", synth.knn_k},
      {"label_fraction", synth.label_fraction},
  };
  return j;
}

ExperimentConfig CliConfig::experiment_config() const {
  ExperimentConfig e;
  e.n_folds = n_folds;
  e.n_starts = n_starts;
  e.seed = seed;
  e.stratified = stratified;
  e.threads = threads;
  e.opt = opt;
  e.prop_tol = prop_tol;
  e.prop_max_iter = prop_max_iter;
  e.alpha_box = alpha_box;
  e.lambda_min = lambda_min;
  e.lambda_max = lambda_max;
  return e;
}

PairPolicy CliConfig::pair_policy() const {
  return duplicate_policy == "sum" ? PairPolicy::Sum : PairPolicy::Max;
}

}  // namespace layerlearn::cli

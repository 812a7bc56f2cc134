// Command-line front end. Flags assemble a config document for the library;
// a JSON config file, when given, overrides the flag values key by key.
#include <malloc.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <igrm/igrm.h>

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string data, schema, builtin;
  std::string mechanism = "mcar";
  std::string mode = "igrm";
  std::string init = "random";
  std::string out_dir;
  std::string config_path;
  double ratio = 0.3;
  double feature_fraction = 0.5;
  double lr = 1e-3;
  double tau = 0.5;
  double rule_min_support = 0.3;
  double rule_min_confidence = 0.7;
  double gae_aux_weight = 1.0;
  int64_t epochs = 20000;
  int64_t reconstruct_every = 100;
  int64_t hidden = 64;
  int64_t layers = 3;
  int64_t edge_budget = 0;
  int64_t knn_k = 5;
  int64_t silhouette_k = 4;
  int64_t trace_stride = 10;
  int64_t threads = 1;
  std::vector<uint64_t> seeds{0, 1, 2, 3, 4};
  std::vector<int64_t> snapshot_epochs;
  std::vector<std::string> baselines;
  bool no_model = false;
  bool gae_aux_loss = false;
  bool quiet = false;
};

void add_experiment_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--data", f.data, "Input table CSV");
  cmd.add_option("--schema", f.schema, "Column schema JSON for --data");
  cmd.add_option("--builtin", f.builtin,
                 "Built-in dataset name (concrete, housing, yacht) instead "
                 "of --data/--schema");
  cmd.add_option("--mechanism", f.mechanism, "Missingness mechanism")
      ->check(CLI::IsMember({"mcar", "mar", "mnar"}));
  cmd.add_option("--ratio", f.ratio, "Missing ratio in (0,1)");
  cmd.add_option("--feature-fraction", f.feature_fraction,
                 "MAR/MNAR: fraction of columns eligible for masking");
  cmd.add_option("--mode", f.mode, "Model variant")
      ->check(CLI::IsMember({"igrm", "grape", "no-gae", "no_gae", "once-gae",
                             "once_gae"}));
  cmd.add_option("--init", f.init, "Friend-network initializer")
      ->check(CLI::IsMember({"random", "cos", "rule"}));
  cmd.add_option("--baseline", f.baselines, "Baseline methods to include")
      ->delimiter(',')
      ->check(CLI::IsMember({"mean", "knn"}));
  cmd.add_flag("--no-model", f.no_model, "Run only the selected baselines");
  cmd.add_option("--epochs", f.epochs, "Training epochs");
  cmd.add_option("--reconstruct-every", f.reconstruct_every,
                 "Epochs between friend-network reconstructions");
  cmd.add_option("--lr", f.lr, "Adam learning rate");
  cmd.add_option("--tau", f.tau, "Gumbel-softmax temperature");
  cmd.add_option("--hidden", f.hidden, "Embedding width");
  cmd.add_option("--layers", f.layers, "Message-passing layers");
  cmd.add_option("--edge-budget", f.edge_budget,
                 "Friend edges per reconstruction (0 = one per sample)");
  cmd.add_flag("--gae-aux-loss", f.gae_aux_loss,
               "Add the adjacency-reconstruction term at reconstruction "
               "epochs");
  cmd.add_option("--gae-aux-weight", f.gae_aux_weight,
                 "Weight of the adjacency-reconstruction term");
  cmd.add_option("--rule-min-support", f.rule_min_support,
                 "Rule mining: minimum support");
  cmd.add_option("--rule-min-confidence", f.rule_min_confidence,
                 "Rule mining: minimum confidence");
  cmd.add_option("--seeds", f.seeds, "Trial seeds")->delimiter(',');
  cmd.add_option("--snapshot-epochs", f.snapshot_epochs,
                 "Epochs at which embedding deviations are exported")
      ->delimiter(',');
  cmd.add_option("--trace-stride", f.trace_stride,
                 "Keep every n-th trace row (first and last always kept)");
  cmd.add_option("--knn-k", f.knn_k, "KNN baseline neighbor count");
  cmd.add_option("--silhouette-k", f.silhouette_k,
                 "Clusters for the silhouette reference labels");
  cmd.add_option("--threads", f.threads, "Parallel trial workers")
      ->envname("IGRM_THREADS");
  cmd.add_option("--out", f.out_dir, "Artifact output directory");
  cmd.add_option("--config", f.config_path,
                 "JSON config file; its keys override the flags");
  cmd.add_flag("--quiet", f.quiet, "Suppress the summary table");
}

std::string normalized_mode(std::string mode) {
  for (auto& ch : mode)
    if (ch == '-') ch = '_';
  return mode;
}

void merge_over(json& base, const json& over) {
  if (!base.is_object() || !over.is_object()) {
    base = over;
    return;
  }
  for (const auto& [key, value] : over.items()) {
    if (base.contains(key))
      merge_over(base[key], value);
    else
      base[key] = value;
  }
}

std::string build_config(const Flags& f) {
  char* defaults = igrm_default_config();
  if (!defaults) throw std::runtime_error(igrm_last_error());
  json cfg = json::parse(defaults);
  igrm_free_string(defaults);

  cfg["data_csv"] = f.data;
  cfg["schema_json"] = f.schema;
  cfg["builtin"] = f.builtin;
  cfg["mechanism"] = f.mechanism;
  cfg["missing_ratio"] = f.ratio;
  cfg["feature_fraction"] = f.feature_fraction;
  cfg["friend_init"] = f.init;
  cfg["rule_min_support"] = f.rule_min_support;
  cfg["rule_min_confidence"] = f.rule_min_confidence;
  std::vector<std::string> methods = f.baselines;
  if (!f.no_model) methods.push_back(normalized_mode(f.mode));
  cfg["methods"] = methods;
  cfg["train"]["epochs"] = f.epochs;
  cfg["train"]["lr"] = f.lr;
  cfg["train"]["reconstruct_every"] = f.reconstruct_every;
  cfg["train"]["tau"] = f.tau;
  cfg["train"]["edge_budget"] = f.edge_budget;
  cfg["train"]["hidden"] = f.hidden;
  cfg["train"]["layers"] = f.layers;
  cfg["train"]["gae_aux_loss"] = f.gae_aux_loss;
  cfg["train"]["gae_aux_weight"] = f.gae_aux_weight;
  cfg["knn_k"] = f.knn_k;
  cfg["silhouette_k"] = f.silhouette_k;
  cfg["snapshot_epochs"] = f.snapshot_epochs;
  cfg["seeds"] = f.seeds;
  cfg["threads"] = f.threads;
  cfg["out_dir"] = f.out_dir;
  cfg["trace_stride"] = f.trace_stride;

  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in.good())
      throw std::runtime_error("cannot open config file '" + f.config_path +
                               "'");
    json over = json::parse(in);
    merge_over(cfg, over);
  }
  return cfg.dump();
}

void print_summary(const char* report_json) {
  const json rep = json::parse(report_json);
  std::printf("dataset %s, %s at ratio %.3f, %zu seed(s)\n",
              rep["dataset"].get<std::string>().c_str(),
              rep["mechanism"].get<std::string>().c_str(),
              rep["missing_ratio"].get<double>(), rep["seeds"].size());
  std::printf("%-10s %14s %12s\n", "method", "mae_x10", "silhouette");
  for (const auto& m : rep["methods"]) {
    const double mean = m["mae_x10_mean"].get<double>();
    const double sd = m["mae_x10_std"].get<double>();
    if (m.contains("silhouette_mean"))
      std::printf("%-10s %7.3f ±%5.3f %12.3f\n",
                  m["method"].get<std::string>().c_str(), mean, sd,
                  m["silhouette_mean"].get<double>());
    else
      std::printf("%-10s %7.3f ±%5.3f %12s\n",
                  m["method"].get<std::string>().c_str(), mean, sd, "-");
  }
}

int fail_with(igrm_status st) {
  std::fprintf(stderr, "error: %s\n", igrm_last_error());
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  // Training allocates and frees large per-epoch buffers; without a high
  // mmap/trim threshold glibc hands them back to the kernel every epoch
  // and the run spends a third of its time in page faults.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);

  CLI::App app{"Tabular imputation with iterated bipartite-graph learning"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  add_experiment_flags(*run, run_flags);

  Flags sweep_flags;
  std::vector<double> ratios;
  std::vector<int64_t> frequencies;
  auto* sweep = app.add_subcommand(
      "sweep", "Repeat an experiment over missing ratios or reconstruction "
               "cadences");
  add_experiment_flags(*sweep, sweep_flags);
  sweep->add_option("--ratios", ratios, "Missing ratios to sweep")
      ->delimiter(',');
  sweep->add_option("--frequencies", frequencies,
                    "Reconstruction cadences to sweep")
      ->delimiter(',');

  auto* show = app.add_subcommand("config", "Print the default config JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (show->parsed()) {
      char* text = igrm_default_config();
      if (!text) return fail_with(IGRM_ERR_INTERNAL);
      std::fputs(text, stdout);
      igrm_free_string(text);
      return 0;
    }
    if (run->parsed()) {
      const std::string cfg = build_config(run_flags);
      igrm_report* rep = nullptr;
      const igrm_status st = igrm_run(cfg.c_str(), &rep);
      if (st != IGRM_OK) return fail_with(st);
      if (!run_flags.quiet) print_summary(igrm_report_json(rep));
      if (!run_flags.out_dir.empty() && !run_flags.quiet)
        std::printf("artifacts written to %s\n", run_flags.out_dir.c_str());
      igrm_report_free(rep);
      return 0;
    }
    // sweep
    if (ratios.empty() == frequencies.empty()) {
      std::fprintf(stderr,
                   "error: sweep needs exactly one of --ratios or "
                   "--frequencies\n");
      return static_cast<int>(IGRM_ERR_INVALID_ARGUMENT);
    }
    const std::string cfg = build_config(sweep_flags);
    const igrm_status st =
        ratios.empty()
            ? igrm_sweep_frequency(cfg.c_str(), frequencies.data(),
                                   frequencies.size())
            : igrm_sweep_ratio(cfg.c_str(), ratios.data(), ratios.size());
    if (st != IGRM_OK) return fail_with(st);
    if (!sweep_flags.quiet)
      std::printf("sweep artifacts written to %s\n",
                  sweep_flags.out_dir.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(IGRM_ERR_INTERNAL);
  }
}

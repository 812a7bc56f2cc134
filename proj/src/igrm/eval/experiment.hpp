#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "igrm/data/masking.hpp"
#include "igrm/eval/metrics.hpp"
#include "igrm/model/train.hpp"

namespace igrm::eval {

// One experiment: a dataset, a masking recipe applied once per trial seed,
// and a set of methods evaluated on the same masked tables. Methods are
// the baselines ("mean", "knn") and the model modes ("igrm", "grape",
// "no_gae", "once_gae").
struct ExperimentConfig {
  std::string data_csv;     // CSV + schema paths, or a built-in name below
  std::string schema_json;
  std::string builtin;      // "concrete" | "housing" | "yacht"

  data::Mechanism mechanism = data::Mechanism::mcar;
  real missing_ratio = 0.3;
  real feature_fraction = 0.5;

  std::string friend_init = "random";  // random | cos | rule
  real rule_min_support = 0.3;
  real rule_min_confidence = 0.7;

  std::vector<std::string> methods{"igrm"};
  model::TrainConfig train;  // mode/seed/snapshots are managed per trial
  int64_t knn_k = 5;
  int64_t silhouette_k = 4;
  std::vector<int64_t> snapshot_epochs;  // epochs to export deviations at

  std::vector<uint64_t> seeds{0, 1, 2, 3, 4};
  int64_t threads = 1;

  std::string out_dir;      // empty → no artifacts, report in memory only
  int64_t trace_stride = 10;
};

struct DeviationRow {
  std::string method;
  uint64_t seed = 0;
  int64_t epoch = 0;
  real mean = 0;
  std::vector<int64_t> bins;
};

struct MethodReport {
  std::string method;
  std::vector<real> trial_mae;  // scaled-space, one per seed
  real mae_mean = 0, mae_std = 0;
  real mae_x10_mean = 0, mae_x10_std = 0;
  // model methods only:
  std::vector<real> trial_silhouette;
  real silhouette_mean = 0;
  std::vector<int64_t> trial_reconstructions;
};

struct TrialTiming {
  std::string method;
  uint64_t seed = 0;
  real seconds = 0;
};

struct Report {
  std::string dataset;
  std::string mechanism;
  real missing_ratio = 0;
  real feature_fraction = 0;
  std::string friend_init;
  int64_t epochs = 0;
  int64_t reconstruct_every = 0;
  std::vector<uint64_t> seeds;
  std::string mae_convention;
  std::vector<MethodReport> methods;
  std::vector<DeviationRow> deviations;
  std::vector<TrialTiming> timings;  // written to timings.json, never report.json
};

const MethodReport& method_report(const Report& r, const std::string& name);

// Runs every (seed, method) trial, aggregates, and — when an output
// directory is set — writes report.json, timings.json, per-seed masks,
// completed tables, traces, final embeddings, and deviation histograms.
Report run_experiment(const ExperimentConfig& cfg);

// MAE across missing ratios for every method; writes one aggregated row
// per (ratio, method) to <out_dir>/sweep_ratio.csv.
std::vector<Report> run_ratio_sweep(ExperimentConfig base,
                                    const std::vector<real>& ratios);

// Wall-clock and MAE across reconstruction cadences (model methods only);
// writes <out_dir>/sweep_frequency.csv.
std::vector<Report> run_frequency_sweep(ExperimentConfig base,
                                        const std::vector<int64_t>& cadences);

std::string report_to_json(const Report& r);
std::string timings_to_json(const Report& r);

// Config as JSON. Parsing starts from defaults and overrides the keys
// present; unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace igrm::eval

#include "igrm/eval/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "igrm/baselines/baselines.hpp"
#include "igrm/data/kmeans.hpp"
#include "igrm/data/scale.hpp"
#include "igrm/data/synth.hpp"
#include "igrm/graph/friend_init.hpp"

namespace igrm::eval {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr uint64_t kSilhouetteKmeansSeed = 1234;
constexpr const char* kMaeConvention =
    "MAE over hidden cells in min-max scaled space; discrete cells "
    "contribute 0/1 mismatch; *_x10 fields are the same values times 10";

bool is_model_method(const std::string& m) { return m != "mean" && m != "knn"; }

real sample_std(const std::vector<real>& xs) {
  if (xs.size() < 2) return 0;
  real mean = 0;
  for (const real x : xs) mean += x;
  mean /= static_cast<real>(xs.size());
  real ss = 0;
  for (const real x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<real>(xs.size() - 1));
}

real mean_of(const std::vector<real>& xs) {
  real m = 0;
  for (const real x : xs) m += x;
  return xs.empty() ? real(0) : m / static_cast<real>(xs.size());
}

void write_text_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open '", tmp.string(), "' for writing");
    out << content;
    require(out.good(), "failed writing '", tmp.string(), "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  require(!ec, "failed to move '", tmp.string(), "' into place: ",
          ec.message());
}

std::pair<data::TabularDataset, std::string> load_dataset(
    const ExperimentConfig& cfg) {
  if (!cfg.builtin.empty()) {
    require(cfg.data_csv.empty(),
            "config: give either a built-in dataset name or a CSV, not both");
    return {data::make_benchmark(cfg.builtin), cfg.builtin};
  }
  require(!cfg.data_csv.empty(), "config: no dataset given");
  require(!cfg.schema_json.empty(), "config: CSV input needs a schema");
  auto ds = data::load_csv(cfg.data_csv, data::load_schema(cfg.schema_json));
  return {std::move(ds), fs::path(cfg.data_csv).stem().string()};
}

struct ModelOutput {
  std::vector<model::TraceRow> trace;
  std::vector<real> final_emb;
  int64_t emb_rows = 0, emb_cols = 0;
  int64_t reconstructions = 0;
  real silhouette = 0;
};

struct TrialOutput {
  uint64_t seed = 0;
  data::TabularDataset masked;  // before scaling, for the mask artifact
  data::MinMaxScaler scaler;
  graph::FriendInit finit;
  bool finit_used = false;
  std::vector<real> mae;      // per method, scaled space
  std::vector<real> seconds;  // per method
  std::vector<std::vector<real>> imputed;         // per method, scaled
  std::vector<std::optional<ModelOutput>> model;  // per method
  std::vector<DeviationRow> deviations;
};

real run_timed(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<real>(std::chrono::steady_clock::now() - t0)
      .count();
}

TrialOutput run_trial(const ExperimentConfig& cfg,
                      const data::TabularDataset& base, uint64_t seed) {
  TrialOutput out;
  out.seed = seed;

  out.masked = base;
  data::MaskSpec spec;
  spec.mechanism = cfg.mechanism;
  spec.missing_ratio = cfg.missing_ratio;
  spec.feature_fraction = cfg.feature_fraction;
  spec.seed = seed;
  data::apply_mask(out.masked, data::make_mask(out.masked, spec));

  auto [scaled, scaler] = data::scale(out.masked);
  out.scaler = scaler;

  const bool any_model = std::any_of(cfg.methods.begin(), cfg.methods.end(),
                                     is_model_method);
  if (any_model) {
    if (cfg.friend_init == "random")
      out.finit = graph::init_random(scaled.n_rows,
                                     num::derive_seed(seed, 3));
    else if (cfg.friend_init == "cos")
      out.finit = graph::init_cos(scaled);
    else if (cfg.friend_init == "rule")
      out.finit = graph::init_rule(scaled, cfg.rule_min_support,
                                   cfg.rule_min_confidence,
                                   num::derive_seed(seed, 3));
    else
      fail(ErrorCode::invalid_argument, "unknown friend init '",
           cfg.friend_init, "' (expected random, cos or rule)");
    out.finit_used = true;
  }

  // Labels over the ground-truth complete rows, shared by every model
  // method of this trial.
  std::vector<int64_t> labels;
  std::vector<real> gt_table;
  if (any_model) {
    gt_table = ground_truth_table(scaled);
    labels = data::kmeans(gt_table, scaled.n_rows,
                          static_cast<int64_t>(scaled.columns.size()),
                          cfg.silhouette_k, kSilhouetteKmeansSeed)
                 .labels;
  }

  std::set<int64_t> snap_set(cfg.snapshot_epochs.begin(),
                             cfg.snapshot_epochs.end());
  snap_set.insert(cfg.train.epochs);

  for (const auto& method : cfg.methods) {
    std::vector<real> imputed;
    std::optional<ModelOutput> mo;
    const real secs = run_timed([&] {
      if (method == "mean") {
        imputed = baselines::impute_mean(scaled);
      } else if (method == "knn") {
        imputed = baselines::impute_knn(scaled, cfg.knn_k);
      } else {
        model::TrainConfig tc = cfg.train;
        tc.mode = model::mode_from_string(method);
        tc.seed = seed;
        tc.snapshot_epochs.assign(snap_set.begin(), snap_set.end());
        auto tr = model::train(scaled, out.finit, tc);
        imputed = std::move(tr.imputed);
        ModelOutput m;
        m.trace = std::move(tr.trace);
        m.reconstructions = tr.reconstructions;
        for (const auto& snap : tr.snapshots) {
          if (snap.epoch == tc.epochs) {
            m.final_emb = snap.embeddings;
            m.emb_rows = snap.rows;
            m.emb_cols = snap.cols;
          }
          if (std::find(cfg.snapshot_epochs.begin(), cfg.snapshot_epochs.end(),
                        snap.epoch) != cfg.snapshot_epochs.end()) {
            auto dev = similarity_deviation(
                snap.embeddings, snap.rows, snap.cols, gt_table,
                static_cast<int64_t>(scaled.columns.size()));
            out.deviations.push_back(
                {method, seed, snap.epoch, dev.mean, std::move(dev.bins)});
          }
        }
        mo = std::move(m);
      }
    });
    out.mae.push_back(imputation_mae(scaled, imputed));
    out.seconds.push_back(secs);
    out.imputed.push_back(std::move(imputed));
    out.model.push_back(std::move(mo));
  }

  // Silhouette of the final embeddings against the ground-truth clusters.
  for (size_t mi = 0; mi < cfg.methods.size(); ++mi)
    if (out.model[mi] && !out.model[mi]->final_emb.empty())
      out.model[mi]->silhouette = silhouette(
          out.model[mi]->final_emb, out.model[mi]->emb_rows,
          out.model[mi]->emb_cols, labels);
  return out;
}

std::string format_real(real v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_imputed_csv(const data::TabularDataset& base,
                       const data::MinMaxScaler& scaler,
                       const std::vector<real>& imputed, const fs::path& path) {
  data::TabularDataset out;
  out.columns = base.columns;
  out.n_rows = base.n_rows;
  out.values.resize(imputed.size());
  out.mask.assign(imputed.size(), 1);
  for (int64_t c = 0; c < static_cast<int64_t>(out.columns.size()); ++c) {
    const bool disc = out.columns[c].kind == data::ColumnKind::discrete;
    for (int64_t i = 0; i < out.n_rows; ++i) {
      const auto k = out.idx(i, c);
      out.values[k] =
          disc ? imputed[k] : data::inverse_scale_value(scaler, c, imputed[k]);
    }
  }
  data::save_csv(out, path.string());
}

}  // namespace

const MethodReport& method_report(const Report& r, const std::string& name) {
  for (const auto& m : r.methods)
    if (m.method == name) return m;
  fail(ErrorCode::invalid_argument, "report has no method '", name, "'");
}

Report run_experiment(const ExperimentConfig& cfg) {
  require(!cfg.methods.empty(), "config: no methods selected");
  require(!cfg.seeds.empty(), "config: no trial seeds given");
  require(std::unordered_set<uint64_t>(cfg.seeds.begin(), cfg.seeds.end())
                  .size() == cfg.seeds.size(),
          "config: trial seeds must be distinct");
  require(cfg.missing_ratio > 0 && cfg.missing_ratio < 1,
          "config: missing ratio must lie in (0,1), got ", cfg.missing_ratio);
  require(cfg.trace_stride >= 1, "config: trace stride must be >= 1");
  require(cfg.threads >= 1, "config: thread count must be >= 1");
  {
    std::unordered_set<std::string> seen;
    for (const auto& m : cfg.methods) {
      require(seen.insert(m).second, "config: method '", m, "' listed twice");
      if (is_model_method(m)) model::mode_from_string(m);  // validates name
    }
  }

  const auto [base, name] = load_dataset(cfg);

  std::vector<TrialOutput> trials(cfg.seeds.size());
  std::vector<std::pair<ErrorCode, std::string>> errors(
      cfg.seeds.size(), {ErrorCode::internal, ""});
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t t = next.fetch_add(1); t < cfg.seeds.size();
         t = next.fetch_add(1)) {
      try {
        trials[t] = run_trial(cfg, base, cfg.seeds[t]);
      } catch (const Error& e) {
        errors[t] = {e.code(), e.what()};
      } catch (const std::exception& e) {
        errors[t] = {ErrorCode::internal, e.what()};
      }
    }
  };
  const auto n_workers =
      std::min<size_t>(static_cast<size_t>(cfg.threads), cfg.seeds.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (size_t t = 0; t < cfg.seeds.size(); ++t)
    if (!errors[t].second.empty())
      fail(errors[t].first, "trial seed=", cfg.seeds[t], ": ",
           errors[t].second);

  Report rep;
  rep.dataset = name;
  rep.mechanism = data::to_string(cfg.mechanism);
  rep.missing_ratio = cfg.missing_ratio;
  rep.feature_fraction = cfg.feature_fraction;
  rep.friend_init = cfg.friend_init;
  rep.epochs = cfg.train.epochs;
  rep.reconstruct_every = cfg.train.reconstruct_every;
  rep.seeds = cfg.seeds;
  rep.mae_convention = kMaeConvention;

  for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    MethodReport mr;
    mr.method = cfg.methods[mi];
    for (const auto& tr : trials) {
      mr.trial_mae.push_back(tr.mae[mi]);
      if (tr.model[mi]) {
        mr.trial_silhouette.push_back(tr.model[mi]->silhouette);
        mr.trial_reconstructions.push_back(tr.model[mi]->reconstructions);
      }
    }
    mr.mae_mean = mean_of(mr.trial_mae);
    mr.mae_std = sample_std(mr.trial_mae);
    mr.mae_x10_mean = 10 * mr.mae_mean;
    mr.mae_x10_std = 10 * mr.mae_std;
    mr.silhouette_mean = mean_of(mr.trial_silhouette);
    rep.methods.push_back(std::move(mr));
  }
  for (const auto& tr : trials) {
    for (auto& row : tr.deviations) rep.deviations.push_back(row);
    for (size_t mi = 0; mi < cfg.methods.size(); ++mi)
      rep.timings.push_back({cfg.methods[mi], tr.seed, tr.seconds[mi]});
  }

  if (!cfg.out_dir.empty()) {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    const auto n_model = std::count_if(cfg.methods.begin(), cfg.methods.end(),
                                       is_model_method);
    for (size_t t = 0; t < trials.size(); ++t) {
      const auto& tr = trials[t];
      const std::string seed_str = std::to_string(tr.seed);
      data::save_mask_csv(tr.masked, (dir / ("mask_" + seed_str + ".csv"))
                                         .string());
      if (tr.finit_used)
        graph::save_adjacency_csv(
            tr.finit, (dir / ("adjacency_" + seed_str + ".csv")).string());
      for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        write_imputed_csv(base, tr.scaler, tr.imputed[mi],
                          dir / ("imputed_" + cfg.methods[mi] + "_" +
                                 seed_str + ".csv"));
        if (!tr.model[mi]) continue;
        const std::string tag =
            n_model == 1 ? "" : cfg.methods[mi] + "_";
        std::ostringstream trace;
        const auto& rows = tr.model[mi]->trace;
        for (size_t k = 0; k < rows.size(); ++k) {
          if (k != 0 && k + 1 != rows.size() &&
              rows[k].epoch % cfg.trace_stride != 0)
            continue;
          json line;
          line["epoch"] = rows[k].epoch;
          line["loss"] = rows[k].loss;
          line["train_mae"] = rows[k].train_mae;
          line["test_mae"] = rows[k].test_mae;
          trace << line.dump() << "\n";
        }
        write_text_atomic(dir / ("trace_" + tag + seed_str + ".jsonl"),
                          trace.str());
        const auto& emb = tr.model[mi]->final_emb;
        std::ostringstream tsv;
        tsv << std::setprecision(17);
        for (int64_t i = 0; i < tr.model[mi]->emb_rows; ++i) {
          for (int64_t c = 0; c < tr.model[mi]->emb_cols; ++c) {
            if (c) tsv << '\t';
            tsv << emb[i * tr.model[mi]->emb_cols + c];
          }
          tsv << '\n';
        }
        write_text_atomic(dir / ("embeddings_" + tag + seed_str + ".tsv"),
                          tsv.str());
      }
    }
    for (const int64_t epoch : cfg.snapshot_epochs) {
      std::ostringstream hist;
      hist << "method,seed,mean_deviation";
      const int64_t n_bins = 20;
      for (int64_t b = 0; b < n_bins; ++b) hist << ",bin_" << b;
      hist << "\n";
      bool any = false;
      for (const auto& row : rep.deviations) {
        if (row.epoch != epoch) continue;
        any = true;
        hist << row.method << "," << row.seed << ","
             << format_real(row.mean);
        for (const auto b : row.bins) hist << "," << b;
        hist << "\n";
      }
      if (any)
        write_text_atomic(dir / ("hist_epoch" + std::to_string(epoch) +
                                 ".csv"),
                          hist.str());
    }
    write_text_atomic(dir / "report.json", report_to_json(rep));
    write_text_atomic(dir / "timings.json", timings_to_json(rep));
  }
  return rep;
}

std::string report_to_json(const Report& r) {
  json j;
  j["dataset"] = r.dataset;
  j["mechanism"] = r.mechanism;
  j["missing_ratio"] = r.missing_ratio;
  j["feature_fraction"] = r.feature_fraction;
  j["friend_init"] = r.friend_init;
  j["epochs"] = r.epochs;
  j["reconstruct_every"] = r.reconstruct_every;
  j["seeds"] = r.seeds;
  j["mae_convention"] = r.mae_convention;
  j["methods"] = json::array();
  for (const auto& m : r.methods) {
    json mj;
    mj["method"] = m.method;
    mj["trial_mae"] = m.trial_mae;
    mj["mae_mean"] = m.mae_mean;
    mj["mae_std"] = m.mae_std;
    mj["mae_x10_mean"] = m.mae_x10_mean;
    mj["mae_x10_std"] = m.mae_x10_std;
    if (!m.trial_silhouette.empty()) {
      mj["trial_silhouette"] = m.trial_silhouette;
      mj["silhouette_mean"] = m.silhouette_mean;
      mj["reconstructions"] = m.trial_reconstructions;
    }
    j["methods"].push_back(std::move(mj));
  }
  if (!r.deviations.empty()) {
    j["similarity_deviation"] = json::array();
    for (const auto& d : r.deviations) {
      json dj;
      dj["method"] = d.method;
      dj["seed"] = d.seed;
      dj["epoch"] = d.epoch;
      dj["mean"] = d.mean;
      j["similarity_deviation"].push_back(std::move(dj));
    }
  }
  return j.dump(2) + "\n";
}

std::string timings_to_json(const Report& r) {
  json j;
  j["trials"] = json::array();
  real total = 0;
  for (const auto& t : r.timings) {
    json tj;
    tj["method"] = t.method;
    tj["seed"] = t.seed;
    tj["seconds"] = t.seconds;
    j["trials"].push_back(std::move(tj));
    total += t.seconds;
  }
  j["total_seconds"] = total;
  return j.dump(2) + "\n";
}

namespace {

std::string ratio_label(real r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

std::vector<Report> run_ratio_sweep(ExperimentConfig base,
                                    const std::vector<real>& ratios) {
  require(!ratios.empty(), "sweep: no missing ratios given");
  const std::string root = base.out_dir;
  std::vector<Report> reports;
  for (const real r : ratios) {
    ExperimentConfig cfg = base;
    cfg.missing_ratio = r;
    if (!root.empty())
      cfg.out_dir = (fs::path(root) / ("ratio_" + ratio_label(r))).string();
    reports.push_back(run_experiment(cfg));
  }
  if (!root.empty()) {
    std::ostringstream csv;
    csv << "dataset,mechanism,missing_ratio,method,mae_x10_mean,mae_x10_std\n";
    for (const auto& rep : reports)
      for (const auto& m : rep.methods)
        csv << rep.dataset << "," << rep.mechanism << ","
            << format_real(rep.missing_ratio) << "," << m.method << ","
            << format_real(m.mae_x10_mean) << "," << format_real(m.mae_x10_std)
            << "\n";
    fs::create_directories(root);
    write_text_atomic(fs::path(root) / "sweep_ratio.csv", csv.str());
  }
  return reports;
}

std::vector<Report> run_frequency_sweep(ExperimentConfig base,
                                        const std::vector<int64_t>& cadences) {
  require(!cadences.empty(), "sweep: no reconstruction cadences given");
  const std::string root = base.out_dir;
  std::vector<Report> reports;
  for (const int64_t every : cadences) {
    require(every >= 1, "sweep: reconstruction cadence must be >= 1, got ",
            every);
    ExperimentConfig cfg = base;
    cfg.train.reconstruct_every = every;
    if (!root.empty())
      cfg.out_dir =
          (fs::path(root) / ("every_" + std::to_string(every))).string();
    reports.push_back(run_experiment(cfg));
  }
  if (!root.empty()) {
    std::ostringstream csv;
    csv << "reconstruct_every,method,mae_x10_mean,mae_x10_std,seconds_mean\n";
    for (size_t k = 0; k < reports.size(); ++k) {
      for (const auto& m : reports[k].methods) {
        if (!is_model_method(m.method)) continue;
        std::vector<real> secs;
        for (const auto& t : reports[k].timings)
          if (t.method == m.method) secs.push_back(t.seconds);
        csv << cadences[k] << "," << m.method << ","
            << format_real(m.mae_x10_mean) << "," << format_real(m.mae_x10_std)
            << "," << format_real(mean_of(secs)) << "\n";
      }
    }
    fs::create_directories(root);
    write_text_atomic(fs::path(root) / "sweep_frequency.csv", csv.str());
  }
  return reports;
}

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

void check_keys(const json& j, const std::vector<std::string>& known,
                const char* where) {
  for (const auto& [key, _] : j.items())
    require(std::find(known.begin(), known.end(), key) != known.end(),
            "config: unknown key '", key, "' in ", where);
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, "config: ", e.what());
  }
  require(j.is_object(), "config: top level must be a JSON object");
  check_keys(j,
             {"data_csv", "schema_json", "builtin", "mechanism",
              "missing_ratio", "feature_fraction", "friend_init",
              "rule_min_support", "rule_min_confidence", "methods", "train",
              "knn_k", "silhouette_k", "snapshot_epochs", "seeds", "threads",
              "out_dir", "trace_stride"},
             "the top-level object");

  ExperimentConfig cfg;
  try {
    read_key(j, "data_csv", cfg.data_csv);
    read_key(j, "schema_json", cfg.schema_json);
    read_key(j, "builtin", cfg.builtin);
    if (j.contains("mechanism"))
      cfg.mechanism =
          data::mechanism_from_string(j.at("mechanism").get<std::string>());
    read_key(j, "missing_ratio", cfg.missing_ratio);
    read_key(j, "feature_fraction", cfg.feature_fraction);
    read_key(j, "friend_init", cfg.friend_init);
    read_key(j, "rule_min_support", cfg.rule_min_support);
    read_key(j, "rule_min_confidence", cfg.rule_min_confidence);
    read_key(j, "methods", cfg.methods);
    if (j.contains("train")) {
      const auto& t = j.at("train");
      require(t.is_object(), "config: 'train' must be an object");
      check_keys(t,
                 {"epochs", "lr", "reconstruct_every", "tau", "edge_budget",
                  "hidden", "layers", "gae_aux_loss", "gae_aux_weight"},
                 "'train'");
      read_key(t, "epochs", cfg.train.epochs);
      read_key(t, "lr", cfg.train.lr);
      read_key(t, "reconstruct_every", cfg.train.reconstruct_every);
      read_key(t, "tau", cfg.train.tau);
      read_key(t, "edge_budget", cfg.train.edge_budget);
      read_key(t, "hidden", cfg.train.hidden);
      read_key(t, "layers", cfg.train.n_layers);
      read_key(t, "gae_aux_loss", cfg.train.gae_aux_loss);
      read_key(t, "gae_aux_weight", cfg.train.gae_aux_weight);
    }
    read_key(j, "knn_k", cfg.knn_k);
    read_key(j, "silhouette_k", cfg.silhouette_k);
    read_key(j, "snapshot_epochs", cfg.snapshot_epochs);
    read_key(j, "seeds", cfg.seeds);
    read_key(j, "threads", cfg.threads);
    read_key(j, "out_dir", cfg.out_dir);
    read_key(j, "trace_stride", cfg.trace_stride);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, "config: ", e.what());
  }
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["data_csv"] = cfg.data_csv;
  j["schema_json"] = cfg.schema_json;
  j["builtin"] = cfg.builtin;
  j["mechanism"] = data::to_string(cfg.mechanism);
  j["missing_ratio"] = cfg.missing_ratio;
  j["feature_fraction"] = cfg.feature_fraction;
  j["friend_init"] = cfg.friend_init;
  j["rule_min_support"] = cfg.rule_min_support;
  j["rule_min_confidence"] = cfg.rule_min_confidence;
  j["methods"] = cfg.methods;
  j["train"] = {{"epochs", cfg.train.epochs},
                {"lr", cfg.train.lr},
                {"reconstruct_every", cfg.train.reconstruct_every},
                {"tau", cfg.train.tau},
                {"edge_budget", cfg.train.edge_budget},
                {"hidden", cfg.train.hidden},
                {"layers", cfg.train.n_layers},
                {"gae_aux_loss", cfg.train.gae_aux_loss},
                {"gae_aux_weight", cfg.train.gae_aux_weight}};
  j["knn_k"] = cfg.knn_k;
  j["silhouette_k"] = cfg.silhouette_k;
  j["snapshot_epochs"] = cfg.snapshot_epochs;
  j["seeds"] = cfg.seeds;
  j["threads"] = cfg.threads;
  j["out_dir"] = cfg.out_dir;
  j["trace_stride"] = cfg.trace_stride;
  return j.dump(2) + "\n";
}

}  // namespace igrm::eval

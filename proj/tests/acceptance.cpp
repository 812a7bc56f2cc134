// Acceptance checks: every case prints one [PASS]/[FAIL] line with the
// measured numbers. Long experiment results are cached on disk under
// IGRM_ACCEPTANCE_DIR keyed by the core library's contents, so the
// expensive cases can be re-run (or re-filtered) without recomputing
// finished runs as long as the library itself is unchanged.

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "igrm/baselines/baselines.hpp"
#include "igrm/data/kmeans.hpp"
#include "igrm/data/masking.hpp"
#include "igrm/data/scale.hpp"
#include "igrm/data/synth.hpp"
#include "igrm/eval/experiment.hpp"
#include "igrm/eval/metrics.hpp"
#include "igrm/graph/bipartite.hpp"
#include "igrm/graph/fpgrowth.hpp"
#include "igrm/model/layers.hpp"
#include "igrm/model/sampler.hpp"
#include "igrm/model/train.hpp"
#include "igrm/num/adam.hpp"
#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"
#include "testutil.hpp"

using namespace igrm;
using namespace igrm::num;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------- verdicts

bool verdict(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n" << std::flush;
  return pass;
}

std::string fmt(real v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

real mean_of(const std::vector<real>& v) {
  real s = 0;
  for (real x : v) s += x;
  return s / static_cast<real>(v.size());
}

real sample_std(const std::vector<real>& v) {
  if (v.size() < 2) return 0;
  real m = mean_of(v);
  real acc = 0;
  for (real x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<real>(v.size() - 1));
}

// Pinned pooling rule for comparing two method spreads.
real pooled_sd(real s1, real s2) {
  return std::sqrt((s1 * s1 + s2 * s2) / 2);
}

// ------------------------------------------------------------ cached runs

fs::path acceptance_dir() {
  const char* env = std::getenv("IGRM_ACCEPTANCE_DIR");
  fs::path dir = env && *env ? fs::path(env) : fs::path("acceptance_runs");
  fs::create_directories(dir);
  return dir;
}

// Bump whenever a cached run's configuration below changes, so stale
// payloads are never reused for different experiments.
constexpr int64_t kCacheSchema = 1;

// Cache validity follows the library that produced the numbers, not this
// test binary: re-linking the tests must not discard hours of finished
// runs, while any change to the core library must.
uint64_t cache_token() {
  uint64_t h = 1469598103934665603ull ^ static_cast<uint64_t>(kCacheSchema);
  auto mix = [&h](const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const char* lib = std::getenv("IGRM_CORE_LIB");
  std::ifstream in(lib && *lib ? lib : "/proc/self/exe", std::ios::binary);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    mix(buf, static_cast<size_t>(in.gcount()));
  return h;
}

uint64_t cached_token_value() {
  static const uint64_t token = cache_token();
  return token;
}

json cached(const std::string& key, const std::function<json()>& compute) {
  const fs::path path = acceptance_dir() / (key + ".json");
  const std::string token = std::to_string(cached_token_value());
  if (fs::exists(path)) {
    try {
      std::ifstream in(path);
      json doc = json::parse(in);
      if (doc.at("token").get<std::string>() == token)
        return doc.at("payload");
      std::cerr << "[acceptance] cache for '" << key
                << "' is from a different library build; recomputing\n";
    } catch (const std::exception& e) {
      std::cerr << "[acceptance] cache for '" << key << "' unreadable ("
                << e.what() << "); recomputing\n";
    }
  }
  std::cerr << "[acceptance] computing '" << key
            << "' (this can take a while)...\n";
  auto t0 = std::chrono::steady_clock::now();
  json payload = compute();
  auto secs = std::chrono::duration<real>(std::chrono::steady_clock::now() -
                                          t0)
                  .count();
  std::cerr << "[acceptance] '" << key << "' finished in " << fmt(secs, 3)
            << "s\n";
  json doc{{"token", token}, {"payload", payload}};
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump(2) << "\n";
  }
  fs::rename(tmp, path);
  return payload;
}

json report_payload(const eval::Report& r) {
  json methods = json::object();
  for (const auto& mr : r.methods) {
    methods[mr.method] = {
        {"trial_mae", mr.trial_mae},
        {"reconstructions", mr.trial_reconstructions},
    };
  }
  json deviations = json::array();
  for (const auto& d : r.deviations)
    deviations.push_back({{"method", d.method},
                          {"seed", d.seed},
                          {"epoch", d.epoch},
                          {"mean", d.mean}});
  json timings = json::array();
  for (const auto& t : r.timings)
    timings.push_back(
        {{"method", t.method}, {"seed", t.seed}, {"seconds", t.seconds}});
  return json{{"methods", methods},
              {"deviations", deviations},
              {"timings", timings}};
}

eval::ExperimentConfig desk_config(const std::string& builtin,
                                   std::vector<std::string> methods,
                                   int64_t epochs) {
  eval::ExperimentConfig cfg;
  cfg.builtin = builtin;
  cfg.mechanism = data::Mechanism::mcar;
  cfg.missing_ratio = 0.3;
  cfg.methods = std::move(methods);
  cfg.seeds = {0, 1, 2, 3, 4};
  cfg.train.epochs = epochs;
  cfg.train.reconstruct_every = 100;
  return cfg;
}

json benchmark_run(const std::string& builtin,
                   std::vector<std::string> methods, int64_t epochs,
                   std::vector<int64_t> snapshots = {}) {
  auto cfg = desk_config(builtin, std::move(methods), epochs);
  cfg.snapshot_epochs = std::move(snapshots);
  return report_payload(eval::run_experiment(cfg));
}

std::vector<real> trial_mae(const json& payload, const std::string& method) {
  return payload.at("methods").at(method).at("trial_mae")
      .get<std::vector<real>>();
}

// The heavyweight shared runs, one cache key each.

json concrete_main() {
  return cached("concrete_main", [] {
    return benchmark_run("concrete",
                         {"mean", "igrm", "grape", "no_gae", "once_gae"},
                         5000, {1, 1000, 5000});
  });
}

json housing_main() {
  return cached("housing_main", [] {
    return benchmark_run("housing", {"mean", "igrm", "grape"}, 5000);
  });
}

json yacht_main() {
  return cached("yacht_main", [] {
    return benchmark_run("yacht", {"mean", "igrm", "grape"}, 5000);
  });
}

json concrete_full() {
  return cached("concrete_full", [] {
    auto cfg = desk_config("concrete", {"igrm", "grape"}, 20000);
    cfg.seeds = {0};
    return report_payload(eval::run_experiment(cfg));
  });
}

json speed_run(int64_t every) {
  return cached("speed_every" + std::to_string(every), [every] {
    auto cfg = desk_config("concrete", {"igrm"}, 2500);
    cfg.train.reconstruct_every = every;
    return report_payload(eval::run_experiment(cfg));
  });
}

// --------------------------------------------------------------- helpers

std::vector<std::vector<int32_t>> random_transactions(int n_tx, int universe,
                                                      uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<int32_t>> tx(static_cast<size_t>(n_tx));
  for (auto& t : tx) {
    std::set<int32_t> s;
    int len = 1 + static_cast<int>(rng.uniform_int(universe));
    for (int i = 0; i < len; ++i)
      s.insert(static_cast<int32_t>(rng.uniform_int(universe)));
    t.assign(s.begin(), s.end());
  }
  return tx;
}

std::vector<graph::Itemset> brute_force_itemsets(
    const std::vector<std::vector<int32_t>>& transactions, real min_support) {
  std::set<int32_t> universe;
  for (const auto& t : transactions) universe.insert(t.begin(), t.end());
  std::vector<int32_t> items(universe.begin(), universe.end());
  const size_t u = items.size();
  const auto threshold = static_cast<int64_t>(
      std::ceil(min_support * static_cast<real>(transactions.size()) -
                real(1e-9)));
  std::vector<graph::Itemset> out;
  for (uint64_t bits = 1; bits < (uint64_t(1) << u); ++bits) {
    std::vector<int32_t> subset;
    for (size_t k = 0; k < u; ++k)
      if (bits & (uint64_t(1) << k)) subset.push_back(items[k]);
    int64_t count = 0;
    for (const auto& t : transactions)
      if (std::includes(t.begin(), t.end(), subset.begin(), subset.end()))
        ++count;
    if (count >= threshold) out.push_back({subset, count});
  }
  return out;
}

using ItemsetMap = std::map<std::vector<int32_t>, int64_t>;

ItemsetMap to_map(const std::vector<graph::Itemset>& sets) {
  ItemsetMap m;
  for (const auto& s : sets) m.emplace(s.items, s.count);
  return m;
}

}  // namespace

// =========================================================================

TEST_CASE("criterion 01: analytic gradients match finite differences") {
  using igrm::test::fd_max_rel_error;
  using igrm::test::random_tensor;

  auto t0 = std::chrono::steady_clock::now();
  real worst = 0;
  auto track = [&](real err) { worst = std::max(worst, err); };

  // Message-passing layer: every parameter and input, widths <= 8.
  {
    const int64_t n = 3, m = 2, a = 3, b = 2, h = 4;
    Rng rng(1001);
    model::LayerParams lp;
    lp.W_src = random_tensor(h, a, rng);
    lp.W_e = random_tensor(h, b, rng);
    lp.b_W = random_tensor(h, 1, rng);
    lp.What = random_tensor(h, a + h, rng);
    lp.b_What = random_tensor(h, 1, rng);
    lp.Q_e = random_tensor(h, b, rng);
    lp.Q_p = random_tensor(h, h, rng);
    lp.Q_q = random_tensor(h, h, rng);
    lp.b_Q = random_tensor(h, 1, rng);
    std::vector<int64_t> es{0, 0, 1, 2};
    std::vector<int64_t> ef{0, 1, 0, 1};
    model::NodeStates in;
    in.P = random_tensor(n, a, rng);
    in.Q = random_tensor(m, a, rng);
    in.E = random_tensor(4, b, rng);
    auto tp = random_tensor(n, h, rng, false);
    auto tq = random_tensor(m, h, rng, false);
    auto te = random_tensor(4, h, rng, false);

    track(fd_max_rel_error(
        {lp.W_src, lp.W_e, lp.b_W, lp.What, lp.b_What, lp.Q_e, lp.Q_p,
         lp.Q_q, lp.b_Q, in.P, in.Q, in.E},
        [&] {
          auto out = model::egsage_layer(in, lp, es, ef, n, m, true);
          return add(add(sse(out.P, tp), sse(out.Q, tq)), sse(out.E, te));
        }));
  }

  // Graph autoencoder stack.
  {
    const int64_t n = 4, h = 3;
    Rng rng(1002);
    auto x = random_tensor(n, h, rng);
    model::GaeParams gp;
    gp.G0 = random_tensor(h, h, rng);
    gp.G1 = random_tensor(h, h, rng);
    auto a = model::normalized_adjacency({{0, 1}, {1, 2}, {2, 3}}, n);
    auto t = random_tensor(n, n, rng, false);
    track(fd_max_rel_error({x, gp.G0, gp.G1}, [&] {
      return sse(model::gae_forward(a, x, gp), t);
    }));
  }

  // Friend aggregation encoder.
  {
    const int64_t n = 3, h = 4;
    Rng rng(1003);
    auto p = random_tensor(n, h, rng);
    auto nsum = random_tensor(n, h, rng);
    model::FriendParams fp;
    fp.O = random_tensor(h, 2 * h, rng);
    fp.b_O = random_tensor(h, 1, rng);
    auto t = random_tensor(n, h, rng, false);
    track(fd_max_rel_error({p, nsum, fp.O, fp.b_O}, [&] {
      return sse(model::friend_encode(p, nsum, fp), t);
    }));
  }

  // Prediction heads: shared trunk, scalar and categorical columns.
  {
    const int64_t n = 4, m = 2, h = 5, k_cat = 3;
    Rng rng(1004);
    auto p_hat = random_tensor(n, h, rng);
    auto q = random_tensor(m, h, rng);
    auto T_p = random_tensor(h, h, rng);
    auto T_q = random_tensor(h, h, rng);
    auto b_T = random_tensor(h, 1, rng);
    auto w_cont = random_tensor(1, h, rng);
    auto b_cont = random_tensor(1, 1, rng);
    auto w_disc = random_tensor(k_cat, h, rng);
    auto b_disc = random_tensor(k_cat, 1, rng);
    std::vector<int64_t> rows{0, 1, 2, 3};
    std::vector<int64_t> cols_cont{0, 0, 0, 0};
    std::vector<int64_t> cols_disc{1, 1, 1, 1};
    auto target = random_tensor(4, 1, rng, false, 0.2, 0.8);
    std::vector<int64_t> classes{0, 2, 1, 2};

    track(fd_max_rel_error(
        {p_hat, q, T_p, T_q, b_T, w_cont, b_cont, w_disc, b_disc}, [&] {
          auto tp = linear(p_hat, T_p, b_T);
          auto tq = linear(q, T_q, Tensor());
          auto trunk_cont = relu(add(gather_rows(tp, rows),
                                     gather_rows(tq, cols_cont)));
          auto trunk_disc = relu(add(gather_rows(tp, rows),
                                     gather_rows(tq, cols_disc)));
          auto pred = sigmoid(linear(trunk_cont, w_cont, b_cont));
          auto logits = linear(trunk_disc, w_disc, b_disc);
          return add(sse(pred, target), cross_entropy_sum(logits, classes));
        }));
  }

  // Relaxed structure row: log-probabilities + fixed noise through the
  // temperature softmax.
  {
    Rng rng(1005);
    auto m_prob = random_tensor(5, 5, rng, true, 0.05, 0.95);
    auto noise = random_tensor(3, 5, rng, false);
    std::vector<int64_t> draw_rows{0, 2, 4};
    auto t = random_tensor(3, 5, rng, false);
    track(fd_max_rel_error({m_prob}, [&] {
      auto logits = log_(clamp(m_prob, 1e-9, 1 - 1e-9));
      auto relaxed =
          row_softmax(add(gather_rows(logits, draw_rows), noise), 0.5);
      return sse(relaxed, t);
    }));
  }

  auto secs =
      std::chrono::duration<real>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool pass = worst < 1e-4 && secs < 10.0;
  CHECK(verdict("criterion 01: analytic gradients match finite differences",
                pass,
                "max rel err " + fmt(worst, 3) + ", " + fmt(secs, 3) + "s"));
}

TEST_CASE("criterion 02: combinatorial kernels match exhaustive oracles") {
  bool fp_ok = true;
  {
    // 12-item universe, exact counts against full subset enumeration.
    auto tx = random_transactions(64, 12, 2024);
    for (real ms : {0.05, 0.15, 0.3, 0.6}) {
      auto got = to_map(graph::fp_growth(tx, ms));
      auto want = to_map(brute_force_itemsets(tx, ms));
      if (got != want) fp_ok = false;
    }
  }

  bool sil_ok = true;
  real sil_worst = 0;
  {
    // 50 points, labels from k-means; library vs direct per-point formula.
    Rng rng(2025);
    const int64_t n = 50, d = 4;
    std::vector<real> pts(static_cast<size_t>(n * d));
    for (auto& v : pts) v = rng.uniform(-1, 1);
    auto km = data::kmeans(pts, n, d, 5, 11);
    real got = eval::silhouette(pts, n, d, km.labels);

    std::vector<int64_t> size(static_cast<size_t>(km.k), 0);
    for (auto l : km.labels) ++size[static_cast<size_t>(l)];
    real acc = 0;
    for (int64_t i = 0; i < n; ++i) {
      auto li = km.labels[static_cast<size_t>(i)];
      if (size[static_cast<size_t>(li)] <= 1) continue;
      std::vector<real> dist_sum(static_cast<size_t>(km.k), 0);
      for (int64_t j = 0; j < n; ++j) {
        if (j == i) continue;
        real ss = 0;
        for (int64_t c = 0; c < d; ++c) {
          real t = pts[static_cast<size_t>(i * d + c)] -
                   pts[static_cast<size_t>(j * d + c)];
          ss += t * t;
        }
        dist_sum[static_cast<size_t>(km.labels[static_cast<size_t>(j)])] +=
            std::sqrt(ss);
      }
      real a = dist_sum[static_cast<size_t>(li)] /
               static_cast<real>(size[static_cast<size_t>(li)] - 1);
      real b = std::numeric_limits<real>::infinity();
      for (int64_t cl = 0; cl < km.k; ++cl)
        if (cl != li && size[static_cast<size_t>(cl)] > 0)
          b = std::min(b, dist_sum[static_cast<size_t>(cl)] /
                              static_cast<real>(size[static_cast<size_t>(cl)]));
      real denom = std::max(a, b);
      if (denom > 0) acc += (b - a) / denom;
    }
    real want = acc / static_cast<real>(n);
    sil_worst = std::abs(got - want);
    sil_ok = sil_worst <= 1e-12;
  }

  bool knn_ok = true;
  {
    // 50 x 10 mixed table: library against an in-place re-derivation of
    // the documented neighbour rules, exact equality.
    data::SynthSpec spec;
    spec.n_rows = 50;
    spec.n_continuous = 7;
    spec.n_discrete = 3;
    spec.seed = 2026;
    auto ds = data::make_synthetic(spec);
    data::apply_mask(ds, data::mask_mcar(ds, 0.3, 77));

    auto got = baselines::impute_knn(ds, 5);
    const int64_t n = ds.n_rows, m = ds.n_cols();
    for (int64_t i = 0; i < n && knn_ok; ++i) {
      std::vector<real> dist(static_cast<size_t>(n));
      for (int64_t j = 0; j < n; ++j) {
        if (j == i) {
          dist[static_cast<size_t>(j)] =
              std::numeric_limits<real>::infinity();
          continue;
        }
        real ss = 0;
        int64_t overlap = 0;
        for (int64_t c = 0; c < m; ++c)
          if (ds.observed(i, c) && ds.observed(j, c)) {
            real dv = ds.value_at(i, c) - ds.value_at(j, c);
            ss += dv * dv;
            ++overlap;
          }
        dist[static_cast<size_t>(j)] =
            overlap ? std::sqrt(ss / static_cast<real>(overlap))
                    : std::numeric_limits<real>::infinity();
      }
      for (int64_t c = 0; c < m && knn_ok; ++c) {
        if (ds.observed(i, c)) continue;
        std::vector<int64_t> cand;
        for (int64_t j = 0; j < n; ++j)
          if (std::isfinite(dist[static_cast<size_t>(j)]) &&
              ds.observed(j, c))
            cand.push_back(j);
        real want;
        if (cand.empty()) {
          want = got[ds.idx(i, c)];  // falls back to the column statistic
        } else {
          std::sort(cand.begin(), cand.end(), [&](int64_t x, int64_t y) {
            real dx = dist[static_cast<size_t>(x)],
                 dy = dist[static_cast<size_t>(y)];
            return dx != dy ? dx < dy : x < y;
          });
          const auto take = std::min<size_t>(cand.size(), 5);
          if (ds.columns[static_cast<size_t>(c)].kind ==
              data::ColumnKind::discrete) {
            std::map<int64_t, int64_t> votes;
            for (size_t t = 0; t < take; ++t)
              ++votes[static_cast<int64_t>(
                  std::llround(ds.value_at(cand[t], c)))];
            int64_t best_cls = 0, best_cnt = -1;
            for (const auto& [cls, cnt] : votes)
              if (cnt > best_cnt) {
                best_cls = cls;
                best_cnt = cnt;
              }
            want = static_cast<real>(best_cls);
          } else {
            real sum = 0;
            for (size_t t = 0; t < take; ++t) sum += ds.value_at(cand[t], c);
            want = sum / static_cast<real>(take);
          }
        }
        if (got[ds.idx(i, c)] != want) knn_ok = false;
      }
    }
  }

  const bool pass = fp_ok && sil_ok && knn_ok;
  CHECK(verdict(
      "criterion 02: combinatorial kernels match exhaustive oracles", pass,
      std::string("itemsets ") + (fp_ok ? "exact" : "MISMATCH") +
          ", silhouette diff " + fmt(sil_worst, 3) + ", knn " +
          (knn_ok ? "exact" : "MISMATCH")));
}

TEST_CASE("criterion 03: masking mechanisms hit their contracts") {
  data::SynthSpec spec;
  spec.n_rows = 1000;
  spec.n_continuous = 10;
  spec.seed = 30;
  auto ds = data::make_synthetic(spec);

  bool mcar_ok = true;
  std::string mcar_detail;
  for (real ratio : {0.3, 0.7}) {
    auto mask = data::mask_mcar(ds, ratio, 99);
    int64_t miss = 0;
    for (auto m : mask) miss += (m == 0);
    real frac = real(miss) / real(mask.size());
    if (std::abs(frac - ratio) > 0.02) mcar_ok = false;
    if (!mcar_detail.empty()) mcar_detail += "/";
    mcar_detail += fmt(frac, 3);
    if (mask != data::mask_mcar(ds, ratio, 99)) mcar_ok = false;
  }

  auto per_column_missing = [&](const std::vector<uint8_t>& mask) {
    std::vector<int64_t> miss(10, 0);
    for (int64_t r = 0; r < 1000; ++r)
      for (int64_t c = 0; c < 10; ++c)
        miss[static_cast<size_t>(c)] +=
            (mask[static_cast<size_t>(r * 10 + c)] == 0);
    return miss;
  };

  auto mar = data::mask_mar(ds, 0.3, 0.5, 41);
  auto mar_miss = per_column_missing(mar);
  int64_t mar_cols = 0;
  for (auto m : mar_miss) mar_cols += (m > 0);
  const bool mar_ok =
      mar_cols == 5 && mar == data::mask_mar(ds, 0.3, 0.5, 41);

  auto mnar = data::mask_mnar(ds, 0.3, 0.5, 42);
  auto mnar_miss = per_column_missing(mnar);
  int64_t mnar_cols = 0;
  for (auto m : mnar_miss) mnar_cols += (m > 0);
  const bool mnar_ok =
      mnar_cols == 10 && mnar == data::mask_mnar(ds, 0.3, 0.5, 42);

  const bool pass = mcar_ok && mar_ok && mnar_ok;
  CHECK(verdict("criterion 03: masking mechanisms hit their contracts", pass,
                "mcar rates " + mcar_detail + ", mar masked cols " +
                    std::to_string(mar_cols) + "/10, mnar touched cols " +
                    std::to_string(mnar_cols) + "/10"));
}

TEST_CASE("criterion 04: mean baseline reproduces its reference error") {
  auto t0 = std::chrono::steady_clock::now();
  auto cfg = desk_config("concrete", {"mean"}, 1);
  auto report = eval::run_experiment(cfg);
  auto secs =
      std::chrono::duration<real>(std::chrono::steady_clock::now() - t0)
          .count();

  const auto& mr = eval::method_report(report, "mean");
  const bool in_band = std::abs(mr.mae_x10_mean - 1.83) <= 0.06;
  const bool fast = secs < 5.0;
  CHECK(verdict(
      "criterion 04: mean baseline reproduces its reference error",
      in_band && fast,
      "mae x10 " + fmt(mr.mae_x10_mean, 4) + " vs 1.83 +/- 0.06 over 5 "
      "seeds, " + fmt(secs, 3) + "s"));
}

TEST_CASE("criterion 05a: model ordering holds at desk scale") {
  struct Row {
    std::string dataset;
    real igrm, grape, mean;
  };
  std::vector<Row> rows;
  {
    auto p = concrete_main();
    rows.push_back({"concrete", mean_of(trial_mae(p, "igrm")),
                    mean_of(trial_mae(p, "grape")),
                    mean_of(trial_mae(p, "mean"))});
  }
  {
    auto p = housing_main();
    rows.push_back({"housing", mean_of(trial_mae(p, "igrm")),
                    mean_of(trial_mae(p, "grape")),
                    mean_of(trial_mae(p, "mean"))});
  }
  {
    auto p = yacht_main();
    rows.push_back({"yacht", mean_of(trial_mae(p, "igrm")),
                    mean_of(trial_mae(p, "grape")),
                    mean_of(trial_mae(p, "mean"))});
  }

  int igrm_le_grape = 0;
  bool beats_mean = true;
  std::string detail;
  for (const auto& r : rows) {
    igrm_le_grape += (r.igrm <= r.grape);
    beats_mean = beats_mean && (r.igrm < r.mean);
    detail += r.dataset + " x10: " + fmt(10 * r.igrm, 3) + "/" +
              fmt(10 * r.grape, 3) + "/" + fmt(10 * r.mean, 3) + "; ";
  }
  const bool pass = igrm_le_grape >= 2 && beats_mean;
  CHECK(verdict("criterion 05a: model ordering holds at desk scale", pass,
                detail + "igrm<=grape on " + std::to_string(igrm_le_grape) +
                    "/3"));
}

TEST_CASE("criterion 05b: full-length run lands in its error bands") {
  auto p = concrete_full();
  real igrm_x10 = 10 * mean_of(trial_mae(p, "igrm"));
  real grape_x10 = 10 * mean_of(trial_mae(p, "grape"));
  const bool pass = std::abs(igrm_x10 - 0.74) <= 0.10 &&
                    std::abs(grape_x10 - 0.86) <= 0.10;
  CHECK(verdict("criterion 05b: full-length run lands in its error bands",
                pass,
                "igrm x10 " + fmt(igrm_x10, 4) + " vs 0.74 +/- 0.10, grape "
                "x10 " + fmt(grape_x10, 4) + " vs 0.86 +/- 0.10"));
}

TEST_CASE("criterion 06: reconstruction ablation keeps its ordering") {
  auto p = concrete_main();
  auto no_gae = trial_mae(p, "no_gae");
  auto once = trial_mae(p, "once_gae");
  auto igrm_mae = trial_mae(p, "igrm");

  real m_no = mean_of(no_gae), s_no = sample_std(no_gae);
  real m_once = mean_of(once), s_once = sample_std(once);
  real m_igrm = mean_of(igrm_mae), s_igrm = sample_std(igrm_mae);

  // Ordering may flatten, but must not invert by more than one pooled SD.
  const bool first = m_no >= m_once - pooled_sd(s_no, s_once);
  const bool second = m_once >= m_igrm - pooled_sd(s_once, s_igrm);
  const bool pass = first && second;
  CHECK(verdict(
      "criterion 06: reconstruction ablation keeps its ordering", pass,
      "x10 no_gae " + fmt(10 * m_no, 3) + " >= once_gae " +
          fmt(10 * m_once, 3) + " >= igrm " + fmt(10 * m_igrm, 3) +
          " (1 pooled SD slack)"));
}

TEST_CASE("criterion 07: pair-similarity deviation shrinks over training") {
  auto p = concrete_main();
  // mean deviation per (seed, epoch) for the full model.
  std::map<uint64_t, std::map<int64_t, real>> by_seed;
  for (const auto& d : p.at("deviations")) {
    if (d.at("method").get<std::string>() != "igrm") continue;
    by_seed[d.at("seed").get<uint64_t>()][d.at("epoch").get<int64_t>()] =
        d.at("mean").get<real>();
  }

  int ok_seeds = 0;
  std::string detail;
  for (auto& [seed, epochs] : by_seed) {
    real e1 = epochs.at(1), e2 = epochs.at(1000), e3 = epochs.at(5000);
    bool monotone = e1 >= e2 && e2 >= e3;
    ok_seeds += monotone;
    detail += "s" + std::to_string(seed) + ": " + fmt(e1, 3) + ">=" +
              fmt(e2, 3) + ">=" + fmt(e3, 3) + (monotone ? " ok; " : " X; ");
  }
  const bool pass = by_seed.size() == 5 && ok_seeds >= 4;
  CHECK(verdict(
      "criterion 07: pair-similarity deviation shrinks over training", pass,
      detail + std::to_string(ok_seeds) + "/5 monotone"));
}

TEST_CASE("criterion 08: sparse reconstruction is faster, accuracy intact") {
  auto fast = speed_run(100);
  auto slow = speed_run(1);

  auto total_seconds = [](const json& p) {
    real s = 0;
    for (const auto& t : p.at("timings")) s += t.at("seconds").get<real>();
    return s;
  };
  real t_fast = total_seconds(fast);
  real t_slow = total_seconds(slow);

  auto mae_fast = trial_mae(fast, "igrm");
  auto mae_slow = trial_mae(slow, "igrm");
  real mf = mean_of(mae_fast), sf = sample_std(mae_fast);
  real ms = mean_of(mae_slow), ss = sample_std(mae_slow);

  const bool speedup = t_slow >= 2.0 * t_fast;
  // mean +/- 1 SD bands must overlap.
  const bool overlap = (mf - sf) <= (ms + ss) && (ms - ss) <= (mf + sf);
  const bool pass = speedup && overlap;
  CHECK(verdict(
      "criterion 08: sparse reconstruction is faster, accuracy intact", pass,
      "every=1 " + fmt(t_slow, 4) + "s vs every=100 " + fmt(t_fast, 4) +
          "s (" + fmt(t_slow / t_fast, 3) + "x), mae x10 " + fmt(10 * ms, 3) +
          "+/-" + fmt(10 * ss, 2) + " vs " + fmt(10 * mf, 3) + "+/-" +
          fmt(10 * sf, 2)));
}

TEST_CASE("criterion 09: structure sampling is a faithful relaxation") {
  bool sums_ok = true;
  {
    Rng wrng(9001);
    std::vector<real> mv(64);
    for (auto& v : mv) v = wrng.uniform(0.05, 0.95);
    auto m = Tensor::from_values(8, 8, std::move(mv));
    Rng rng(5);
    auto s = model::sample_structure(m, 0.5, 12, rng);
    for (int64_t r = 0; r < s.relaxed.rows(); ++r) {
      real sum = 0;
      for (int64_t c = 0; c < s.relaxed.cols(); ++c) sum += s.relaxed.at(r, c);
      if (std::abs(sum - 1.0) > 1e-6) sums_ok = false;
    }
  }

  bool argmax_ok = true;
  {
    // Distinct off-diagonal argmaxes; with zero noise and a near-zero
    // temperature every accepted draw must pick its row's argmax.
    const int64_t n = 6;
    std::vector<real> mv(static_cast<size_t>(n * n), 0.1);
    for (int64_t i = 0; i < n; ++i) {
      mv[static_cast<size_t>(i * n + i)] = 0.95;          // masked anyway
      mv[static_cast<size_t>(i * n + (i + 1) % n)] = 0.9; // intended argmax
      mv[static_cast<size_t>(i * n + (i + 2) % n)] = 0.4;
    }
    auto m = Tensor::from_values(n, n, std::move(mv));
    Rng rng(6);
    auto s = model::sample_structure(m, 1e-4, 5, rng, true);
    for (size_t d = 0; d < s.draw_row.size(); ++d) {
      int64_t r = s.draw_row[d];
      int64_t want = -1;
      real best = -1;
      for (int64_t j = 0; j < n; ++j) {
        if (j == r) continue;
        if (m.at(r, j) > best) {
          best = m.at(r, j);
          want = j;
        }
      }
      if (s.draw_col[d] != want) argmax_ok = false;
      if (s.draw_col[d] == r) argmax_ok = false;
      // And the relaxed row concentrates on the same column.
      if (std::abs(s.relaxed.at(static_cast<int64_t>(d), want) - 1.0) > 1e-6)
        argmax_ok = false;
    }
  }

  bool grad_ok = false;
  {
    auto m = Tensor::from_values(
        3, 3, {0.5, 0.7, 0.3, 0.7, 0.5, 0.9, 0.3, 0.9, 0.5}, true);
    Rng rng(7);
    auto s = model::sample_structure(m, 0.5, 2, rng);
    std::vector<real> wv(static_cast<size_t>(s.relaxed.numel()));
    for (size_t i = 0; i < wv.size(); ++i) wv[i] = real(i + 1);
    auto w =
        Tensor::from_values(s.relaxed.rows(), s.relaxed.cols(), std::move(wv));
    backward(sum(mul(s.relaxed, w)));
    real norm = 0;
    for (auto g : m.grad()) norm += std::abs(g);
    grad_ok = norm > 0;
  }

  const bool pass = sums_ok && argmax_ok && grad_ok;
  CHECK(verdict(
      "criterion 09: structure sampling is a faithful relaxation", pass,
      std::string("row sums ") + (sums_ok ? "ok" : "X") + ", hard=argmax " +
          (argmax_ok ? "ok" : "X") + ", gradients " +
          (grad_ok ? "nonzero" : "ZERO")));
}

TEST_CASE("criterion 10: repeated runs are byte-identical") {
  const char* bin = std::getenv("IGRM_IMPUTE_BIN");
  const bool have_bin = bin != nullptr && *bin;
  REQUIRE_MESSAGE(have_bin,
                  "IGRM_IMPUTE_BIN must point at the impute binary");

  const fs::path root = acceptance_dir() / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);

  auto run_once = [&](const std::string& sub) {
    fs::path out = root / sub;
    std::string cmd = std::string("\"") + bin +
                      "\" run --builtin concrete --mechanism mcar"
                      " --ratio 0.3 --mode igrm --epochs 30"
                      " --reconstruct-every 10 --seeds 0,1 --quiet --out \"" +
                      out.string() + "\" > \"" +
                      (root / (sub + ".log")).string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };

  int rc1 = run_once("a");
  int rc2 = run_once("b");

  auto read_all = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool identical = false;
  bool ran = rc1 == 0 && rc2 == 0;
  std::string detail = "exit codes " + std::to_string(rc1) + "/" +
                       std::to_string(rc2);
  if (ran) {
    auto a = read_all(root / "a" / "report.json");
    auto b = read_all(root / "b" / "report.json");
    auto ia = read_all(root / "a" / "imputed_igrm_0.csv");
    auto ib = read_all(root / "b" / "imputed_igrm_0.csv");
    identical = !a.empty() && a == b && !ia.empty() && ia == ib;
    detail += identical ? ", report.json and completed tables byte-identical"
                        : ", outputs DIFFER";
  }
  CHECK(verdict("criterion 10: repeated runs are byte-identical",
                ran && identical, detail));
}

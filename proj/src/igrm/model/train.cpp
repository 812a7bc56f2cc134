#include "igrm/model/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_set>
#include <utility>
#include <vector>

#include "igrm/graph/bipartite.hpp"
#include "igrm/model/sampler.hpp"
#include "igrm/num/adam.hpp"
#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"

namespace igrm::model {

using namespace num;

Mode mode_from_string(const std::string& s) {
  if (s == "igrm") return Mode::igrm;
  if (s == "grape") return Mode::grape;
  if (s == "no_gae" || s == "no-gae") return Mode::no_gae;
  if (s == "once_gae" || s == "once-gae") return Mode::once_gae;
  fail(ErrorCode::invalid_argument, "unknown mode '", s,
       "' (expected igrm, grape, no_gae or once_gae)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::igrm: return "igrm";
    case Mode::grape: return "grape";
    case Mode::no_gae: return "no_gae";
    case Mode::once_gae: return "once_gae";
  }
  return "?";
}

namespace {

// Per-column cell lists, split into supervision (observed) and prediction
// (missing) sets. Column indices are pre-repeated for the trunk gather.
struct ColumnCells {
  bool discrete = false;
  std::vector<int64_t> train_rows, train_cols;
  Tensor train_target;                 // continuous: [k,1] constants
  std::vector<int64_t> train_classes;  // discrete: class per cell
  std::vector<int64_t> miss_rows, miss_cols;
  std::vector<char> miss_has_gt;
  std::vector<real> miss_gt;  // scaled value, or class index for discrete
};

std::vector<ColumnCells> collect_cells(const data::TabularDataset& ds) {
  const int64_t n = ds.n_rows;
  const auto m = static_cast<int64_t>(ds.columns.size());
  std::vector<ColumnCells> cells(m);
  for (int64_t c = 0; c < m; ++c) {
    auto& cc = cells[c];
    cc.discrete = ds.columns[c].kind == data::ColumnKind::discrete;
    std::vector<real> tvals;
    for (int64_t i = 0; i < n; ++i) {
      if (ds.observed(i, c)) {
        cc.train_rows.push_back(i);
        cc.train_cols.push_back(c);
        if (cc.discrete)
          cc.train_classes.push_back(
              static_cast<int64_t>(std::llround(ds.value_at(i, c))));
        else
          tvals.push_back(ds.value_at(i, c));
      } else {
        cc.miss_rows.push_back(i);
        cc.miss_cols.push_back(c);
        const bool has_gt =
            ds.ground_truth && ds.ground_truth->mask[ds.idx(i, c)] != 0;
        cc.miss_has_gt.push_back(has_gt ? 1 : 0);
        cc.miss_gt.push_back(has_gt ? ds.ground_truth->values[ds.idx(i, c)]
                                    : real(0));
      }
    }
    if (!cc.discrete && !tvals.empty()) {
      const auto n_obs = static_cast<int64_t>(tvals.size());
      cc.train_target = Tensor::from_values(n_obs, 1, std::move(tvals));
    }
  }
  return cells;
}

// Directed aggregation edge lists. Every undirected friend edge contributes
// both directions; group A carries the straight-through factor on sampled
// structures. Forward weight values are cached so epochs between
// reconstructions reuse them as constants.
struct AggGroups {
  std::vector<int64_t> dst_a, src_a, dst_b, src_b;
  std::vector<real> w_a, w_b;

  bool empty() const { return dst_a.empty() && dst_b.empty(); }
};

Tensor neighbor_sum(const Tensor& xhat, const AggGroups& g, const Tensor& wa,
                    const Tensor& wb, int64_t n) {
  Tensor sa =
      segment_sum(rowwise_scale(gather_rows(xhat, g.src_a), wa), g.dst_a, n);
  Tensor sb =
      segment_sum(rowwise_scale(gather_rows(xhat, g.src_b), wb), g.dst_b, n);
  return add(sa, sb);
}

int64_t argmax_row(const std::vector<real>& v, int64_t row, int64_t cols) {
  int64_t best = 0;
  for (int64_t k = 1; k < cols; ++k)
    if (v[row * cols + k] > v[row * cols + best]) best = k;
  return best;
}

}  // namespace

TrainResult train(const data::TabularDataset& ds,
                  const graph::FriendInit& finit, const TrainConfig& cfg) {
  ds.validate();
  require(cfg.epochs >= 1, "train: epochs must be >= 1, got ", cfg.epochs);
  require(cfg.reconstruct_every >= 1,
          "train: reconstruct_every must be >= 1, got ", cfg.reconstruct_every);
  require(cfg.tau > 0, "train: tau must be positive, got ", cfg.tau);
  require(cfg.hidden >= 1, "train: hidden width must be >= 1");
  require(cfg.n_layers >= 1, "train: need at least one layer");
  require(ds.observed_count() > 0, "train: dataset has no observed cells");

  const int64_t n = ds.n_rows;
  const auto m = static_cast<int64_t>(ds.columns.size());
  const bool use_friends = cfg.mode != Mode::grape;
  const bool use_gae = cfg.mode == Mode::igrm || cfg.mode == Mode::once_gae;
  if (use_gae)
    require(n >= 2, "train: structure sampling needs at least 2 samples");

  const auto g = graph::build_bipartite(ds);
  const auto cells = collect_cells(ds);

  int64_t n_cont = 0, n_disc = 0;
  for (const auto& cc : cells) {
    if (cc.discrete)
      n_disc += static_cast<int64_t>(cc.train_classes.size());
    else if (cc.train_target.defined())
      n_cont += cc.train_target.rows();
  }

  Rng init_rng(derive_seed(cfg.seed, 1));
  Rng gumbel_rng(derive_seed(cfg.seed, 2));

  TrainResult res;
  res.params = init_params(m, g.d_e, ds.columns, cfg.hidden, cfg.n_layers,
                           init_rng);
  auto& P = res.params;
  Adam opt(P.all(), AdamConfig{cfg.lr});

  const int64_t budget = cfg.edge_budget > 0 ? cfg.edge_budget : n;
  const std::unordered_set<int64_t> snaps(cfg.snapshot_epochs.begin(),
                                          cfg.snapshot_epochs.end());

  std::shared_ptr<const SparseMatrix> a_norm;
  if (use_gae) a_norm = normalized_adjacency(finit.edges, n);

  AggGroups agg;
  if (cfg.mode == Mode::no_gae) {
    for (const auto& [i, j] : finit.edges) {
      agg.dst_a.push_back(i);
      agg.src_a.push_back(j);
      agg.dst_b.push_back(j);
      agg.src_b.push_back(i);
    }
    agg.w_a.assign(agg.dst_a.size(), real(1));
    agg.w_b.assign(agg.dst_b.size(), real(1));
    res.friend_edges = finit.edges;
  }

  // Optional adjacency-reconstruction target against the initial network.
  Tensor adj_pos, adj_neg;
  if (cfg.gae_aux_loss && use_gae) {
    std::vector<real> a01(static_cast<size_t>(n) * n, real(0));
    for (const auto& [i, j] : finit.edges) {
      a01[static_cast<size_t>(i) * n + j] = 1;
      a01[static_cast<size_t>(j) * n + i] = 1;
    }
    std::vector<real> aneg(a01.size());
    for (size_t k = 0; k < a01.size(); ++k) aneg[k] = 1 - a01[k];
    adj_pos = Tensor::from_values(n, n, std::move(a01));
    adj_neg = Tensor::from_values(n, n, std::move(aneg));
  }

  res.imputed = ds.values;

  for (int64_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    opt.zero_grad();
    auto [p, q] = bipartite_encode(g, P);
    const Tensor& xhat = p;

    Tensor aux_term;
    Tensor p_hat;
    if (!use_friends) {
      p_hat = p;
    } else {
      const bool recon =
          use_gae && (cfg.mode == Mode::igrm
                          ? (epoch - 1) % cfg.reconstruct_every == 0
                          : epoch == 1);
      Tensor nsum;
      if (recon) {
        Tensor M = gae_forward(a_norm, xhat, P.gae);
        auto s = sample_structure(M, cfg.tau, budget, gumbel_rng);
        agg.dst_a = s.draw_row;
        agg.src_a = s.draw_col;
        agg.dst_b = s.draw_col;
        agg.src_b = s.draw_row;
        Tensor wa = mul(gather_cells(M, agg.dst_a, agg.src_a), s.st);
        Tensor wb = gather_cells(M, agg.dst_b, agg.src_b);
        agg.w_a = wa.values();
        agg.w_b = wb.values();
        nsum = neighbor_sum(xhat, agg, wa, wb, n);
        res.friend_edges = s.hard_edges();
        ++res.reconstructions;
        if (adj_pos.defined()) {
          Tensor mc = clamp(M, real(1e-7), real(1) - real(1e-7));
          Tensor bce = add(mul(adj_pos, log_(mc)),
                           mul(adj_neg, log_(sub(Tensor::full(n, n, 1), mc))));
          aux_term = scale(sum(bce), -real(1) / (static_cast<real>(n) * n));
        }
      } else if (!agg.empty()) {
        Tensor wa = Tensor::from_values(
            static_cast<int64_t>(agg.w_a.size()), 1, agg.w_a);
        Tensor wb = Tensor::from_values(
            static_cast<int64_t>(agg.w_b.size()), 1, agg.w_b);
        nsum = neighbor_sum(xhat, agg, wa, wb, n);
      } else {
        nsum = Tensor::zeros(n, cfg.hidden);
      }
      p_hat = friend_encode(p, nsum, P.friend_enc);
    }

    Tensor tp = linear(p_hat, P.head.T_p, P.head.b_T);
    Tensor tq = linear(q, P.head.T_q, Tensor());

    Tensor sse_acc, ce_acc;
    real train_abs = 0;
    int64_t train_cnt = 0;
    for (int64_t c = 0; c < m; ++c) {
      const auto& cc = cells[c];
      if (cc.train_rows.empty()) continue;
      Tensor trunk = relu(
          add(gather_rows(tp, cc.train_rows), gather_rows(tq, cc.train_cols)));
      if (!cc.discrete) {
        Tensor pred =
            sigmoid(linear(trunk, P.head.col_W[c], P.head.col_b[c]));
        Tensor s = sse(pred, cc.train_target);
        sse_acc = sse_acc.defined() ? add(sse_acc, s) : s;
        const auto& pv = pred.values();
        const auto& tv = cc.train_target.values();
        for (size_t k = 0; k < pv.size(); ++k)
          train_abs += std::abs(pv[k] - tv[k]);
        train_cnt += static_cast<int64_t>(pv.size());
      } else {
        Tensor logits = linear(trunk, P.head.col_W[c], P.head.col_b[c]);
        Tensor s = cross_entropy_sum(logits, cc.train_classes);
        ce_acc = ce_acc.defined() ? add(ce_acc, s) : s;
        const auto& lv = logits.values();
        for (size_t k = 0; k < cc.train_classes.size(); ++k) {
          const int64_t pred_cls =
              argmax_row(lv, static_cast<int64_t>(k), logits.cols());
          train_abs += pred_cls == cc.train_classes[k] ? real(0) : real(1);
          ++train_cnt;
        }
      }
    }

    Tensor loss;
    if (sse_acc.defined()) loss = scale(sse_acc, real(1) / n_cont);
    if (ce_acc.defined()) {
      Tensor t = scale(ce_acc, real(1) / n_disc);
      loss = loss.defined() ? add(loss, t) : t;
    }
    require(loss.defined(), "train: no supervised cells");
    if (aux_term.defined())
      loss = add(loss, scale(aux_term, cfg.gae_aux_weight));

    const real loss_val = loss.scalar_value();
    if (!std::isfinite(loss_val))
      fail(ErrorCode::numeric, "train: loss diverged at epoch ", epoch);

    // Predictions for the hidden cells use the same epoch's embeddings but
    // a detached trunk, so evaluation adds no gradient work.
    Tensor tp_d = detach(tp);
    Tensor tq_d = detach(tq);
    real test_abs = 0;
    int64_t test_cnt = 0;
    for (int64_t c = 0; c < m; ++c) {
      const auto& cc = cells[c];
      if (cc.miss_rows.empty()) continue;
      Tensor trunk = relu(add(gather_rows(tp_d, cc.miss_rows),
                              gather_rows(tq_d, cc.miss_cols)));
      if (!cc.discrete) {
        Tensor pred =
            sigmoid(linear(trunk, P.head.col_W[c], P.head.col_b[c]));
        const auto& pv = pred.values();
        for (size_t k = 0; k < pv.size(); ++k) {
          if (cc.miss_has_gt[k]) {
            test_abs += std::abs(pv[k] - cc.miss_gt[k]);
            ++test_cnt;
          }
          if (epoch == cfg.epochs)
            res.imputed[ds.idx(cc.miss_rows[k], c)] = pv[k];
        }
      } else {
        Tensor logits = linear(trunk, P.head.col_W[c], P.head.col_b[c]);
        const auto& lv = logits.values();
        for (size_t k = 0; k < cc.miss_rows.size(); ++k) {
          const auto pred_cls = static_cast<real>(
              argmax_row(lv, static_cast<int64_t>(k), logits.cols()));
          if (cc.miss_has_gt[k]) {
            test_abs += pred_cls == cc.miss_gt[k] ? real(0) : real(1);
            ++test_cnt;
          }
          if (epoch == cfg.epochs)
            res.imputed[ds.idx(cc.miss_rows[k], c)] = pred_cls;
        }
      }
    }

    res.trace.push_back({epoch, loss_val,
                         train_cnt ? train_abs / train_cnt : real(0),
                         test_cnt ? test_abs / test_cnt : real(0)});
    if (snaps.count(epoch)) {
      Snapshot snap;
      snap.epoch = epoch;
      snap.rows = p_hat.rows();
      snap.cols = p_hat.cols();
      snap.embeddings = p_hat.values();
      res.snapshots.push_back(std::move(snap));
    }

    backward(loss);
    opt.step();
  }
  return res;
}

}  // namespace igrm::model

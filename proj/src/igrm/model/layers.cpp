#include "igrm/model/layers.hpp"

#include <algorithm>
#include <cmath>

namespace igrm::model {

using namespace num;

Tensor glorot(int64_t rows, int64_t cols, int64_t fan_in, int64_t fan_out,
              num::Rng& rng) {
  real limit = std::sqrt(real(6) / static_cast<real>(fan_in + fan_out));
  Tensor t = Tensor::zeros(rows, cols, true);
  for (auto& v : t.values()) v = rng.uniform(-limit, limit);
  return t;
}

namespace {
Tensor zeros_param(int64_t rows, int64_t cols) {
  return Tensor::zeros(rows, cols, true);
}
}  // namespace

ModelParams init_params(int64_t n_features, int64_t d_e,
                        const std::vector<data::Column>& columns,
                        int64_t hidden, int64_t n_layers, num::Rng& rng) {
  require(n_layers >= 1, "model: need at least one layer, got ", n_layers);
  require(hidden >= 1, "model: hidden width must be positive, got ", hidden);
  const int64_t h = hidden;
  ModelParams mp;
  mp.hidden = h;
  for (int64_t l = 0; l < n_layers; ++l) {
    // Layer input widths: nodes are m-wide before layer 1, h after;
    // edges are d_e-wide before layer 1, h after.
    int64_t a = l == 0 ? n_features : h;
    int64_t b = l == 0 ? d_e : h;
    LayerParams lp;
    lp.W_src = glorot(h, a, a + b, h, rng);
    lp.W_e = glorot(h, b, a + b, h, rng);
    lp.b_W = zeros_param(h, 1);
    lp.What = glorot(h, a + h, a + h, h, rng);
    lp.b_What = zeros_param(h, 1);
    lp.Q_e = glorot(h, b, b + 2 * h, h, rng);
    lp.Q_p = glorot(h, h, b + 2 * h, h, rng);
    lp.Q_q = glorot(h, h, b + 2 * h, h, rng);
    lp.b_Q = zeros_param(h, 1);
    mp.layers.push_back(std::move(lp));
  }
  mp.gae.G0 = glorot(h, h, h, h, rng);
  mp.gae.G1 = glorot(h, h, h, h, rng);
  mp.friend_enc.O = glorot(h, 2 * h, 2 * h, h, rng);
  mp.friend_enc.b_O = zeros_param(h, 1);
  mp.head.T_p = glorot(h, h, 2 * h, h, rng);
  mp.head.T_q = glorot(h, h, 2 * h, h, rng);
  mp.head.b_T = zeros_param(h, 1);
  for (const auto& col : columns) {
    int64_t out = col.kind == data::ColumnKind::discrete
                      ? static_cast<int64_t>(col.categories.size())
                      : 1;
    mp.head.col_W.push_back(glorot(out, h, h, out, rng));
    mp.head.col_b.push_back(zeros_param(out, 1));
  }
  return mp;
}

std::vector<std::pair<std::string, Tensor>> ModelParams::named() const {
  std::vector<std::pair<std::string, Tensor>> out;
  for (size_t l = 0; l < layers.size(); ++l) {
    const auto& lp = layers[l];
    std::string p = format("layer", l + 1, ".");
    out.emplace_back(p + "W_src", lp.W_src);
    out.emplace_back(p + "W_e", lp.W_e);
    out.emplace_back(p + "b_W", lp.b_W);
    out.emplace_back(p + "What", lp.What);
    out.emplace_back(p + "b_What", lp.b_What);
    out.emplace_back(p + "Q_e", lp.Q_e);
    out.emplace_back(p + "Q_p", lp.Q_p);
    out.emplace_back(p + "Q_q", lp.Q_q);
    out.emplace_back(p + "b_Q", lp.b_Q);
  }
  out.emplace_back("gae.G0", gae.G0);
  out.emplace_back("gae.G1", gae.G1);
  out.emplace_back("friend.O", friend_enc.O);
  out.emplace_back("friend.b_O", friend_enc.b_O);
  out.emplace_back("head.T_p", head.T_p);
  out.emplace_back("head.T_q", head.T_q);
  out.emplace_back("head.b_T", head.b_T);
  for (size_t c = 0; c < head.col_W.size(); ++c) {
    out.emplace_back(format("head.col", c, ".W"), head.col_W[c]);
    out.emplace_back(format("head.col", c, ".b"), head.col_b[c]);
  }
  return out;
}

std::vector<Tensor> ModelParams::all() const {
  std::vector<Tensor> out;
  for (auto& [name, t] : named()) out.push_back(t);
  return out;
}

NodeStates egsage_layer(const NodeStates& in, const LayerParams& lp,
                        const std::vector<int64_t>& edge_sample,
                        const std::vector<int64_t>& edge_feature, int64_t n,
                        int64_t m, bool update_edges) {
  // Shared edge transform (bias rides here, applied once per message).
  Tensor ew = linear(in.E, lp.W_e, lp.b_W);
  // Per-node source transforms, gathered out to edges.
  Tensor qw = linear(in.Q, lp.W_src, Tensor());
  Tensor pw = linear(in.P, lp.W_src, Tensor());

  Tensor msg_to_samples = relu(add(gather_rows(qw, edge_feature), ew));
  Tensor msg_to_features = relu(add(gather_rows(pw, edge_sample), ew));
  Tensor h_samples = segment_mean(msg_to_samples, edge_sample, n);
  Tensor h_features = segment_mean(msg_to_features, edge_feature, m);

  NodeStates out;
  out.P = relu(linear({in.P, h_samples}, lp.What, lp.b_What));
  out.Q = relu(linear({in.Q, h_features}, lp.What, lp.b_What));
  if (update_edges) {
    Tensor pt = linear(out.P, lp.Q_p, Tensor());
    Tensor qt = linear(out.Q, lp.Q_q, Tensor());
    out.E = relu(add(add(linear(in.E, lp.Q_e, lp.b_Q),
                         gather_rows(pt, edge_sample)),
                     gather_rows(qt, edge_feature)));
  }
  return out;
}

std::pair<Tensor, Tensor> bipartite_encode(const graph::BipartiteGraph& g,
                                           const ModelParams& params) {
  const int64_t n = g.n_samples, m = g.n_features;
  NodeStates state;
  state.P = Tensor::full(n, m, real(1));
  state.Q = Tensor::zeros(m, m);
  for (int64_t j = 0; j < m; ++j) state.Q.at(j, j) = real(1);
  state.E = Tensor::from_values(g.n_edges(), g.d_e, g.edge_attr);

  const auto L = static_cast<int64_t>(params.layers.size());
  for (int64_t l = 0; l < L; ++l) {
    bool update_edges = l + 1 < L;  // the final edge embedding is unused
    state = egsage_layer(state, params.layers[static_cast<size_t>(l)],
                         g.edge_sample, g.edge_feature, n, m, update_edges);
  }
  return {state.P, state.Q};
}

std::shared_ptr<const num::SparseMatrix> normalized_adjacency(
    const std::vector<std::pair<int32_t, int32_t>>& edges, int64_t n) {
  std::vector<std::vector<int64_t>> adj(static_cast<size_t>(n));
  for (auto [i, j] : edges) {
    require(i >= 0 && j >= 0 && i < n && j < n && i != j,
            "adjacency: bad edge (", i, ",", j, ") for n=", n);
    adj[static_cast<size_t>(i)].push_back(j);
    adj[static_cast<size_t>(j)].push_back(i);
  }
  for (int64_t i = 0; i < n; ++i) {
    adj[static_cast<size_t>(i)].push_back(i);  // self-loop
    auto& row = adj[static_cast<size_t>(i)];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::vector<real> inv_sqrt_deg(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i)
    inv_sqrt_deg[static_cast<size_t>(i)] =
        real(1) / std::sqrt(static_cast<real>(adj[static_cast<size_t>(i)].size()));

  auto s = std::make_shared<num::SparseMatrix>();
  s->n = n;
  s->row_ptr.push_back(0);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j : adj[static_cast<size_t>(i)]) {
      s->col_idx.push_back(j);
      s->vals.push_back(inv_sqrt_deg[static_cast<size_t>(i)] *
                        inv_sqrt_deg[static_cast<size_t>(j)]);
    }
    s->row_ptr.push_back(static_cast<int64_t>(s->col_idx.size()));
  }
  return s;
}

Tensor gae_forward(const std::shared_ptr<const num::SparseMatrix>& a_norm,
                   const Tensor& x, const GaeParams& params) {
  Tensor h0 = relu(linear(spmm(a_norm, x), params.G0, Tensor()));
  Tensor z = linear(spmm(a_norm, h0), params.G1, Tensor());
  return sigmoid(matmul_nt(z, z));
}

Tensor friend_encode(const Tensor& p, const Tensor& neighbor_sum,
                     const FriendParams& params) {
  return relu(linear({p, neighbor_sum}, params.O, params.b_O));
}

}  // namespace igrm::model

#pragma once

#include <memory>
#include <string>
#include <utility>

#include "igrm/data/dataset.hpp"
#include "igrm/graph/bipartite.hpp"
#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"

namespace igrm::model {

using num::Tensor;

// One edge-aware message-passing layer. The message weight over
// concat(source, edge) is stored split by input block (W_src | W_e) so the
// edge transform is computed once and shared by both directions; the edge
// update weight is likewise split (Q_e | Q_p | Q_q). Mathematically these
// are the usual single matrices applied to concatenated inputs.
struct LayerParams {
  Tensor W_src, W_e, b_W;   // message: σ(W · concat(src, e))
  Tensor What, b_What;      // node update: σ(Ŵ · concat(prev, msg))
  Tensor Q_e, Q_p, Q_q, b_Q;  // edge update: σ(Q · concat(e, p, q))
};

struct GaeParams {
  Tensor G0, G1;  // two graph-convolution weights, h -> h -> h
};

struct FriendParams {
  Tensor O, b_O;  // aggregation over concat(p_i, weighted neighbor sum)
};

struct HeadParams {
  Tensor T_p, T_q, b_T;        // shared trunk over concat(p̂_i, q_j)
  std::vector<Tensor> col_W;   // per column: [1,h] scalar or [k,h] logits
  std::vector<Tensor> col_b;
};

struct ModelParams {
  int64_t hidden = 64;
  std::vector<LayerParams> layers;
  GaeParams gae;
  FriendParams friend_enc;
  HeadParams head;

  std::vector<Tensor> all() const;
  std::vector<std::pair<std::string, Tensor>> named() const;
};

// Uniform Glorot draw with an explicit fan (split weight blocks share the
// fan of the full concatenated matrix they represent).
Tensor glorot(int64_t rows, int64_t cols, int64_t fan_in, int64_t fan_out,
              num::Rng& rng);

// Parameter creation order is fixed so that a given seed yields identical
// weights in every mode.
ModelParams init_params(int64_t n_features, int64_t d_e,
                        const std::vector<data::Column>& columns,
                        int64_t hidden, int64_t n_layers, num::Rng& rng);

struct NodeStates {
  Tensor P;  // n x width
  Tensor Q;  // m x width
  Tensor E;  // n_edges x width
};

// One round of message passing + node updates (+ edge update unless this
// is the final layer, whose edge embedding nothing consumes).
NodeStates egsage_layer(const NodeStates& in, const LayerParams& lp,
                        const std::vector<int64_t>& edge_sample,
                        const std::vector<int64_t>& edge_feature, int64_t n,
                        int64_t m, bool update_edges);

// Full L-layer encoder over the bipartite graph; returns final sample and
// feature embeddings (n x h, m x h).
std::pair<Tensor, Tensor> bipartite_encode(const graph::BipartiteGraph& g,
                                           const ModelParams& params);

// Symmetric-normalized adjacency with self-loops: D^-1/2 (A+I) D^-1/2.
std::shared_ptr<const num::SparseMatrix> normalized_adjacency(
    const std::vector<std::pair<int32_t, int32_t>>& edges, int64_t n);

// M = sigmoid(Z Z^T), Z = GCN1(A, relu(GCN0(A, X))).
Tensor gae_forward(const std::shared_ptr<const num::SparseMatrix>& a_norm,
                   const Tensor& x, const GaeParams& params);

// p̂ = relu(O · concat(p, neighbor_sum))
Tensor friend_encode(const Tensor& p, const Tensor& neighbor_sum,
                     const FriendParams& params);

}  // namespace igrm::model

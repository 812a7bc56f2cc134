#include "igrm/num/ops.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace igrm::num {

namespace {

using detail::TensorNode;
using Mat = Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Map = Eigen::Map<Mat>;
using CMap = Eigen::Map<const Mat>;

CMap vals(const TensorNode* n) { return CMap(n->values.data(), n->rows, n->cols); }
Map vals(TensorNode* n) { return Map(n->values.data(), n->rows, n->cols); }
CMap grad(const TensorNode* n) { return CMap(n->grad.data(), n->rows, n->cols); }
Map grad(TensorNode* n) { return Map(n->grad.data(), n->rows, n->cols); }

std::shared_ptr<TensorNode> new_node(int64_t rows, int64_t cols) {
  auto n = std::make_shared<TensorNode>();
  n->rows = rows;
  n->cols = cols;
  n->values.resize(static_cast<size_t>(rows * cols));
  return n;
}

template <typename Fn>
Tensor finish(std::shared_ptr<TensorNode> out,
              std::vector<std::shared_ptr<TensorNode>> parents, Fn&& bw) {
  bool rg = false;
  for (const auto& p : parents) rg = rg || p->requires_grad;
  if (rg) {
    out->requires_grad = true;
    out->parents = std::move(parents);
    out->backward = std::forward<Fn>(bw);
  }
  return Tensor::wrap(std::move(out));
}

void check_defined(const Tensor& t, const char* op) {
  require(t.defined(), op, ": undefined operand");
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), op,
          ": shape mismatch (", shape_str(a), " vs ", shape_str(b), ")");
}

}  // namespace

// --- dense products -------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b) {
  check_defined(a, "matmul");
  check_defined(b, "matmul");
  require(a.cols() == b.rows(), "matmul: shape mismatch (", shape_str(a),
          " x ", shape_str(b), ")");
  auto out = new_node(a.rows(), b.cols());
  vals(out.get()).noalias() = vals(a.node()) * vals(b.node());
  return finish(out, {a.node_ptr(), b.node_ptr()}, [](TensorNode& self) {
    TensorNode* a = self.parents[0].get();
    TensorNode* b = self.parents[1].get();
    if (a->requires_grad) grad(a).noalias() += grad(&self) * vals(b).transpose();
    if (b->requires_grad) grad(b).noalias() += vals(a).transpose() * grad(&self);
  });
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  check_defined(a, "matmul_nt");
  check_defined(b, "matmul_nt");
  require(a.cols() == b.cols(), "matmul_nt: shape mismatch (", shape_str(a),
          " x ", shape_str(b), "^T)");
  auto out = new_node(a.rows(), b.rows());
  vals(out.get()).noalias() = vals(a.node()) * vals(b.node()).transpose();
  return finish(out, {a.node_ptr(), b.node_ptr()}, [](TensorNode& self) {
    TensorNode* a = self.parents[0].get();
    TensorNode* b = self.parents[1].get();
    if (a->requires_grad) grad(a).noalias() += grad(&self) * vals(b);
    if (b->requires_grad) grad(b).noalias() += grad(&self).transpose() * vals(a);
  });
}

Tensor linear(const std::vector<Tensor>& parts, const Tensor& W,
              const Tensor& b) {
  require(!parts.empty(), "linear: no input blocks");
  check_defined(W, "linear");
  int64_t n = parts[0].rows();
  int64_t din = 0;
  for (const auto& p : parts) {
    check_defined(p, "linear");
    require(p.rows() == n, "linear: input blocks disagree on rows (",
            shape_str(parts[0]), " vs ", shape_str(p), ")");
    din += p.cols();
  }
  require(W.cols() == din, "linear: weight expects ", W.cols(),
          " input columns, blocks provide ", din);
  int64_t dout = W.rows();
  if (b.defined())
    require(b.rows() == dout && b.cols() == 1, "linear: bias shape ",
            shape_str(b), " does not match ", dout, " outputs");

  auto out = new_node(n, dout);
  auto o = vals(out.get());
  if (b.defined())
    o = vals(b.node()).transpose().replicate(n, 1);
  else
    o.setZero();
  auto w = vals(W.node());
  int64_t off = 0;
  for (const auto& p : parts) {
    o.noalias() += vals(p.node()) * w.block(0, off, dout, p.cols()).transpose();
    off += p.cols();
  }

  std::vector<std::shared_ptr<TensorNode>> parents;
  for (const auto& p : parts) parents.push_back(p.node_ptr());
  parents.push_back(W.node_ptr());
  if (b.defined()) parents.push_back(b.node_ptr());
  size_t nblocks = parts.size();
  bool has_bias = b.defined();
  return finish(out, std::move(parents),
                [nblocks, has_bias](TensorNode& self) {
                  TensorNode* w = self.parents[nblocks].get();
                  int64_t dout = self.cols;
                  auto g = grad(&self);
                  int64_t off = 0;
                  for (size_t i = 0; i < nblocks; ++i) {
                    TensorNode* x = self.parents[i].get();
                    int64_t di = x->cols;
                    if (x->requires_grad)
                      grad(x).noalias() += g * vals(w).block(0, off, dout, di);
                    if (w->requires_grad)
                      grad(w).block(0, off, dout, di).noalias() +=
                          g.transpose() * vals(x);
                    off += di;
                  }
                  if (has_bias) {
                    TensorNode* bias = self.parents[nblocks + 1].get();
                    if (bias->requires_grad)
                      grad(bias).noalias() +=
                          g.colwise().sum().transpose();
                  }
                });
}

Tensor linear(const Tensor& x, const Tensor& W, const Tensor& b) {
  return linear(std::vector<Tensor>{x}, W, b);
}

Tensor spmm(std::shared_ptr<const SparseMatrix> s, const Tensor& x) {
  require(s != nullptr, "spmm: null matrix");
  check_defined(x, "spmm");
  require(s->n == x.rows(), "spmm: adjacency is ", s->n, "x", s->n,
          ", features are ", shape_str(x));
  auto out = new_node(s->n, x.cols());
  auto o = vals(out.get());
  o.setZero();
  auto xv = vals(x.node());
  for (int64_t r = 0; r < s->n; ++r)
    for (int64_t k = s->row_ptr[r]; k < s->row_ptr[r + 1]; ++k)
      o.row(r) += s->vals[k] * xv.row(s->col_idx[k]);
  return finish(out, {x.node_ptr()}, [s](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    auto gx = grad(x);
    auto g = grad(&self);
    for (int64_t r = 0; r < s->n; ++r)
      for (int64_t k = s->row_ptr[r]; k < s->row_ptr[r + 1]; ++k)
        gx.row(s->col_idx[k]) += s->vals[k] * g.row(r);
  });
}

// --- elementwise ----------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b) {
  check_defined(a, "add");
  check_defined(b, "add");
  check_same_shape(a, b, "add");
  auto out = new_node(a.rows(), a.cols());
  vals(out.get()) = vals(a.node()) + vals(b.node());
  return finish(out, {a.node_ptr(), b.node_ptr()}, [](TensorNode& self) {
    for (int i = 0; i < 2; ++i) {
      TensorNode* p = self.parents[i].get();
      if (p->requires_grad) grad(p) += grad(&self);
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  check_defined(a, "sub");
  check_defined(b, "sub");
  check_same_shape(a, b, "sub");
  auto out = new_node(a.rows(), a.cols());
  vals(out.get()) = vals(a.node()) - vals(b.node());
  return finish(out, {a.node_ptr(), b.node_ptr()}, [](TensorNode& self) {
    TensorNode* a = self.parents[0].get();
    TensorNode* b = self.parents[1].get();
    if (a->requires_grad) grad(a) += grad(&self);
    if (b->requires_grad) grad(b) -= grad(&self);
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  check_defined(a, "mul");
  check_defined(b, "mul");
  check_same_shape(a, b, "mul");
  auto out = new_node(a.rows(), a.cols());
  vals(out.get()) = vals(a.node()).cwiseProduct(vals(b.node()));
  return finish(out, {a.node_ptr(), b.node_ptr()}, [](TensorNode& self) {
    TensorNode* a = self.parents[0].get();
    TensorNode* b = self.parents[1].get();
    if (a->requires_grad) grad(a) += grad(&self).cwiseProduct(vals(b));
    if (b->requires_grad) grad(b) += grad(&self).cwiseProduct(vals(a));
  });
}

Tensor add_scalar(const Tensor& x, real c) {
  check_defined(x, "add_scalar");
  auto out = new_node(x.rows(), x.cols());
  vals(out.get()).array() = vals(x.node()).array() + c;
  return finish(out, {x.node_ptr()}, [](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (x->requires_grad) grad(x) += grad(&self);
  });
}

Tensor scale(const Tensor& x, real c) {
  check_defined(x, "scale");
  auto out = new_node(x.rows(), x.cols());
  vals(out.get()) = vals(x.node()) * c;
  return finish(out, {x.node_ptr()}, [c](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (x->requires_grad) grad(x) += c * grad(&self);
  });
}

Tensor relu(const Tensor& x) {
  check_defined(x, "relu");
  auto out = new_node(x.rows(), x.cols());
  vals(out.get()) = vals(x.node()).cwiseMax(real(0));
  return finish(out, {x.node_ptr()}, [](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    const size_t n = self.values.size();
    for (size_t i = 0; i < n; ++i)
      if (x->values[i] > real(0)) x->grad[i] += self.grad[i];
  });
}

Tensor sigmoid(const Tensor& x) {
  check_defined(x, "sigmoid");
  auto out = new_node(x.rows(), x.cols());
  vals(out.get()).array() =
      real(1) / (real(1) + (-vals(x.node()).array()).exp());
  return finish(out, {x.node_ptr()}, [](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    const size_t n = self.values.size();
    for (size_t i = 0; i < n; ++i) {
      real s = self.values[i];
      x->grad[i] += self.grad[i] * s * (real(1) - s);
    }
  });
}

Tensor log_(const Tensor& x) {
  check_defined(x, "log");
  auto out = new_node(x.rows(), x.cols());
  vals(out.get()).array() = vals(x.node()).array().log();
  return finish(out, {x.node_ptr()}, [](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    const size_t n = self.values.size();
    for (size_t i = 0; i < n; ++i) x->grad[i] += self.grad[i] / x->values[i];
  });
}

Tensor clamp(const Tensor& x, real lo, real hi) {
  check_defined(x, "clamp");
  require(lo <= hi, "clamp: bounds out of order (", lo, " > ", hi, ")");
  auto out = new_node(x.rows(), x.cols());
  vals(out.get()) = vals(x.node()).cwiseMax(lo).cwiseMin(hi);
  return finish(out, {x.node_ptr()}, [lo, hi](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    const size_t n = self.values.size();
    for (size_t i = 0; i < n; ++i) {
      real v = x->values[i];
      if (v > lo && v < hi) x->grad[i] += self.grad[i];
    }
  });
}

// --- structure ------------------------------------------------------------

Tensor concat_cols(const std::vector<Tensor>& parts) {
  require(!parts.empty(), "concat_cols: no inputs");
  int64_t n = parts[0].rows();
  int64_t cols = 0;
  for (const auto& p : parts) {
    check_defined(p, "concat_cols");
    require(p.rows() == n, "concat_cols: row mismatch (", shape_str(parts[0]),
            " vs ", shape_str(p), ")");
    cols += p.cols();
  }
  auto out = new_node(n, cols);
  auto o = vals(out.get());
  int64_t off = 0;
  std::vector<std::shared_ptr<TensorNode>> parents;
  for (const auto& p : parts) {
    o.block(0, off, n, p.cols()) = vals(p.node());
    off += p.cols();
    parents.push_back(p.node_ptr());
  }
  return finish(out, std::move(parents), [](TensorNode& self) {
    auto g = grad(&self);
    int64_t off = 0;
    for (auto& pp : self.parents) {
      TensorNode* p = pp.get();
      if (p->requires_grad)
        grad(p) += g.block(0, off, self.rows, p->cols);
      off += p->cols;
    }
  });
}

Tensor gather_rows(const Tensor& x, const std::vector<int64_t>& idx) {
  check_defined(x, "gather_rows");
  for (int64_t i : idx)
    require(i >= 0 && i < x.rows(), "gather_rows: index ", i,
            " outside 0..", x.rows() - 1);
  auto out = new_node(static_cast<int64_t>(idx.size()), x.cols());
  auto o = vals(out.get());
  auto xv = vals(x.node());
  for (size_t r = 0; r < idx.size(); ++r) o.row(static_cast<int64_t>(r)) = xv.row(idx[r]);
  return finish(out, {x.node_ptr()}, [idx](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    auto gx = grad(x);
    auto g = grad(&self);
    for (size_t r = 0; r < idx.size(); ++r)
      gx.row(idx[r]) += g.row(static_cast<int64_t>(r));
  });
}

Tensor gather_cells(const Tensor& x, const std::vector<int64_t>& rows,
                    const std::vector<int64_t>& cols) {
  check_defined(x, "gather_cells");
  require(rows.size() == cols.size(), "gather_cells: ", rows.size(),
          " row indices vs ", cols.size(), " column indices");
  for (size_t k = 0; k < rows.size(); ++k) {
    require(rows[k] >= 0 && rows[k] < x.rows(), "gather_cells: row ", rows[k],
            " outside 0..", x.rows() - 1);
    require(cols[k] >= 0 && cols[k] < x.cols(), "gather_cells: column ",
            cols[k], " outside 0..", x.cols() - 1);
  }
  auto out = new_node(static_cast<int64_t>(rows.size()), 1);
  for (size_t k = 0; k < rows.size(); ++k)
    out->values[k] = x.at(rows[k], cols[k]);
  return finish(out, {x.node_ptr()}, [rows, cols](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    for (size_t k = 0; k < rows.size(); ++k)
      x->grad[static_cast<size_t>(rows[k] * x->cols + cols[k])] += self.grad[k];
  });
}

namespace {
Tensor segment_reduce(const Tensor& x, const std::vector<int64_t>& seg,
                      int64_t nseg, bool mean, const char* op) {
  check_defined(x, op);
  require(static_cast<int64_t>(seg.size()) == x.rows(), op, ": ", seg.size(),
          " segment ids for ", x.rows(), " rows");
  require(nseg >= 0, op, ": negative segment count");
  for (int64_t s : seg)
    require(s >= 0 && s < nseg, op, ": segment id ", s, " outside 0..",
            nseg - 1);
  std::vector<real> inv(static_cast<size_t>(nseg), real(0));
  if (mean) {
    std::vector<int64_t> count(static_cast<size_t>(nseg), 0);
    for (int64_t s : seg) ++count[static_cast<size_t>(s)];
    for (int64_t s = 0; s < nseg; ++s)
      if (count[static_cast<size_t>(s)] > 0)
        inv[static_cast<size_t>(s)] = real(1) / real(count[static_cast<size_t>(s)]);
  } else {
    for (auto& v : inv) v = real(1);
  }
  auto out = new_node(nseg, x.cols());
  auto o = vals(out.get());
  o.setZero();
  auto xv = vals(x.node());
  for (int64_t r = 0; r < x.rows(); ++r) o.row(seg[static_cast<size_t>(r)]) += xv.row(r);
  for (int64_t s = 0; s < nseg; ++s) o.row(s) *= inv[static_cast<size_t>(s)];
  return finish(out, {x.node_ptr()}, [seg, inv](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    auto gx = grad(x);
    auto g = grad(&self);
    for (int64_t r = 0; r < x->rows; ++r) {
      int64_t s = seg[static_cast<size_t>(r)];
      gx.row(r) += inv[static_cast<size_t>(s)] * g.row(s);
    }
  });
}
}  // namespace

Tensor segment_mean(const Tensor& x, const std::vector<int64_t>& seg,
                    int64_t nseg) {
  return segment_reduce(x, seg, nseg, true, "segment_mean");
}

Tensor segment_sum(const Tensor& x, const std::vector<int64_t>& seg,
                   int64_t nseg) {
  return segment_reduce(x, seg, nseg, false, "segment_sum");
}

Tensor rowwise_scale(const Tensor& x, const Tensor& w) {
  check_defined(x, "rowwise_scale");
  check_defined(w, "rowwise_scale");
  require(w.rows() == x.rows() && w.cols() == 1,
          "rowwise_scale: weights must be ", x.rows(), "x1, got ",
          shape_str(w));
  auto out = new_node(x.rows(), x.cols());
  auto o = vals(out.get());
  auto xv = vals(x.node());
  for (int64_t r = 0; r < x.rows(); ++r)
    o.row(r) = xv.row(r) * w.node()->values[static_cast<size_t>(r)];
  return finish(out, {x.node_ptr(), w.node_ptr()}, [](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    TensorNode* w = self.parents[1].get();
    auto g = grad(&self);
    for (int64_t r = 0; r < self.rows; ++r) {
      if (x->requires_grad)
        grad(x).row(r) += g.row(r) * w->values[static_cast<size_t>(r)];
      if (w->requires_grad)
        w->grad[static_cast<size_t>(r)] += g.row(r).dot(vals(x).row(r));
    }
  });
}

// --- sampling-related -----------------------------------------------------

Tensor row_softmax(const Tensor& x, real tau) {
  check_defined(x, "row_softmax");
  require(tau > real(0), "row_softmax: temperature must be positive, got ",
          tau);
  auto out = new_node(x.rows(), x.cols());
  auto o = vals(out.get());
  auto xv = vals(x.node());
  for (int64_t r = 0; r < x.rows(); ++r) {
    real m = xv.row(r).maxCoeff();
    o.row(r).array() = ((xv.row(r).array() - m) / tau).exp();
    o.row(r) /= o.row(r).sum();
  }
  return finish(out, {x.node_ptr()}, [tau](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    auto gx = grad(x);
    auto g = grad(&self);
    auto s = vals(&self);
    for (int64_t r = 0; r < self.rows; ++r) {
      real dot = g.row(r).dot(s.row(r));
      gx.row(r).array() +=
          s.row(r).array() * (g.row(r).array() - dot) / tau;
    }
  });
}

Tensor straight_through(const Tensor& relaxed, const std::vector<real>& hard) {
  check_defined(relaxed, "straight_through");
  require(static_cast<int64_t>(hard.size()) == relaxed.numel(),
          "straight_through: ", hard.size(), " hard values for ",
          relaxed.numel(), " relaxed entries");
  auto out = new_node(relaxed.rows(), relaxed.cols());
  out->values.assign(hard.begin(), hard.end());
  return finish(out, {relaxed.node_ptr()}, [](TensorNode& self) {
    TensorNode* r = self.parents[0].get();
    if (!r->requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i) r->grad[i] += self.grad[i];
  });
}

Tensor detach(const Tensor& x) {
  check_defined(x, "detach");
  auto out = new_node(x.rows(), x.cols());
  out->values = x.values();
  return Tensor::wrap(std::move(out));
}

// --- reductions / losses --------------------------------------------------

Tensor sum(const Tensor& x) {
  check_defined(x, "sum");
  auto out = new_node(1, 1);
  out->values[0] = vals(x.node()).sum();
  return finish(out, {x.node_ptr()}, [](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    real g = self.grad[0];
    for (auto& v : x->grad) v += g;
  });
}

Tensor mean_all(const Tensor& x) {
  check_defined(x, "mean_all");
  require(x.numel() > 0, "mean_all: empty tensor");
  return scale(sum(x), real(1) / real(x.numel()));
}

Tensor sse(const Tensor& pred, const Tensor& target) {
  check_defined(pred, "sse");
  check_defined(target, "sse");
  check_same_shape(pred, target, "sse");
  auto out = new_node(1, 1);
  out->values[0] = (vals(pred.node()) - vals(target.node())).squaredNorm();
  return finish(out, {pred.node_ptr(), target.node_ptr()},
                [](TensorNode& self) {
                  TensorNode* p = self.parents[0].get();
                  TensorNode* t = self.parents[1].get();
                  real g = real(2) * self.grad[0];
                  if (p->requires_grad)
                    grad(p) += g * (vals(p) - vals(t));
                  if (t->requires_grad)
                    grad(t) += g * (vals(t) - vals(p));
                });
}

Tensor mse(const Tensor& pred, const Tensor& target) {
  require(pred.numel() > 0, "mse: empty tensors");
  return scale(sse(pred, target), real(1) / real(pred.numel()));
}

Tensor cross_entropy_sum(const Tensor& logits,
                         const std::vector<int64_t>& targets) {
  check_defined(logits, "cross_entropy");
  require(static_cast<int64_t>(targets.size()) == logits.rows(),
          "cross_entropy: ", targets.size(), " targets for ", logits.rows(),
          " rows");
  for (int64_t t : targets)
    require(t >= 0 && t < logits.cols(), "cross_entropy: class ", t,
            " outside 0..", logits.cols() - 1);
  auto lv = vals(logits.node());
  // Probabilities are reused by the backward pass.
  auto probs = std::make_shared<Mat>(logits.rows(), logits.cols());
  real loss = 0;
  for (int64_t r = 0; r < logits.rows(); ++r) {
    real m = lv.row(r).maxCoeff();
    probs->row(r).array() = (lv.row(r).array() - m).exp();
    real z = probs->row(r).sum();
    probs->row(r) /= z;
    loss += std::log(z) + m - lv(r, targets[static_cast<size_t>(r)]);
  }
  auto out = new_node(1, 1);
  out->values[0] = loss;
  return finish(out, {logits.node_ptr()}, [probs, targets](TensorNode& self) {
    TensorNode* x = self.parents[0].get();
    if (!x->requires_grad) return;
    real g = self.grad[0];
    auto gx = grad(x);
    gx += g * (*probs);
    for (int64_t r = 0; r < x->rows; ++r)
      gx(r, targets[static_cast<size_t>(r)]) -= g;
  });
}

}  // namespace igrm::num

#pragma once

#include <memory>
#include <vector>

#include "igrm/num/tensor.hpp"

namespace igrm::num {

// Symmetric sparse matrix in CSR form, used as a constant operand of spmm
// (normalized adjacency with self-loops). Symmetry lets the backward pass
// reuse the same operand instead of a stored transpose.
struct SparseMatrix {
  int64_t n = 0;
  std::vector<int64_t> row_ptr;
  std::vector<int64_t> col_idx;
  std::vector<real> vals;
};

// --- dense products -------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b);     // [n,k]x[k,m] -> [n,m]
Tensor matmul_nt(const Tensor& a, const Tensor& b);  // [n,k]x[m,k] -> a b^T

// y = concat_cols(parts) * W^T + b, without materializing the concat:
// W is [out, sum(cols)] and is consumed block-by-block. b is [out,1] or
// undefined for no bias.
Tensor linear(const std::vector<Tensor>& parts, const Tensor& W,
              const Tensor& b);
Tensor linear(const Tensor& x, const Tensor& W, const Tensor& b);

Tensor spmm(std::shared_ptr<const SparseMatrix> s, const Tensor& x);

// --- elementwise ----------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor add_scalar(const Tensor& x, real c);
Tensor scale(const Tensor& x, real c);
Tensor relu(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor log_(const Tensor& x);
Tensor clamp(const Tensor& x, real lo, real hi);

// --- structure ------------------------------------------------------------

Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor gather_rows(const Tensor& x, const std::vector<int64_t>& idx);
Tensor gather_cells(const Tensor& x, const std::vector<int64_t>& rows,
                    const std::vector<int64_t>& cols);  // -> [k,1]
Tensor segment_mean(const Tensor& x, const std::vector<int64_t>& seg,
                    int64_t nseg);  // empty segments yield zero rows
Tensor segment_sum(const Tensor& x, const std::vector<int64_t>& seg,
                   int64_t nseg);
Tensor rowwise_scale(const Tensor& x, const Tensor& w);  // w is [n,1]

// --- sampling-related -----------------------------------------------------

// Row-wise softmax of x / tau, numerically stabilized by row-max shift.
Tensor row_softmax(const Tensor& x, real tau);

// Forward emits `hard`; gradients flow to `relaxed` unchanged.
Tensor straight_through(const Tensor& relaxed, const std::vector<real>& hard);

Tensor detach(const Tensor& x);

// --- reductions / losses --------------------------------------------------

Tensor sum(const Tensor& x);
Tensor mean_all(const Tensor& x);
Tensor sse(const Tensor& pred, const Tensor& target);
Tensor mse(const Tensor& pred, const Tensor& target);
// Softmax cross-entropy against integer class targets, summed over rows.
Tensor cross_entropy_sum(const Tensor& logits,
                         const std::vector<int64_t>& targets);

}  // namespace igrm::num

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "igrm/common.hpp"

namespace igrm::num {

namespace detail {

// One vertex of the reverse-mode tape. Nodes own their value buffer; the
// gradient buffer is allocated lazily by backward(). The tape is rebuilt
// per training step: only leaf parameters outlive a step.
struct TensorNode {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<real> values;
  std::vector<real> grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<TensorNode>> parents;
  std::function<void(TensorNode&)> backward;

  int64_t numel() const { return rows * cols; }
  void ensure_grad() {
    if (grad.size() != values.size()) grad.assign(values.size(), real(0));
  }
};

}  // namespace detail

// Shared-ownership handle to a tape node. All tensors are 2-D; treat a
// column vector as k x 1 and a scalar as 1 x 1.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(int64_t rows, int64_t cols, bool requires_grad = false);
  static Tensor full(int64_t rows, int64_t cols, real value,
                     bool requires_grad = false);
  static Tensor from_values(int64_t rows, int64_t cols,
                            std::vector<real> values,
                            bool requires_grad = false);
  static Tensor scalar(real value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  int64_t rows() const { return node_ ? node_->rows : 0; }
  int64_t cols() const { return node_ ? node_->cols : 0; }
  int64_t numel() const { return node_ ? node_->numel() : 0; }
  bool requires_grad() const { return node_ && node_->requires_grad; }

  std::vector<real>& values();
  const std::vector<real>& values() const;
  const std::vector<real>& grad() const;
  bool has_grad() const { return node_ && !node_->grad.empty(); }

  real at(int64_t r, int64_t c) const;
  real& at(int64_t r, int64_t c);
  real scalar_value() const;

  // Leaf bookkeeping for optimizers.
  void zero_grad();

  detail::TensorNode* node() const { return node_.get(); }
  const std::shared_ptr<detail::TensorNode>& node_ptr() const { return node_; }
  static Tensor wrap(std::shared_ptr<detail::TensorNode> node);

 private:
  std::shared_ptr<detail::TensorNode> node_;
};

// Reverse accumulation from a scalar loss through every node that
// requires gradients. Gradients are additive across calls until cleared.
void backward(const Tensor& loss);

std::string shape_str(const Tensor& t);

}  // namespace igrm::num

#include "igrm/num/tensor.hpp"

#include <algorithm>
#include <unordered_set>

namespace igrm::num {

Tensor Tensor::zeros(int64_t rows, int64_t cols, bool requires_grad) {
  require(rows >= 0 && cols >= 0, "tensor: negative shape ", rows, "x", cols);
  auto n = std::make_shared<detail::TensorNode>();
  n->rows = rows;
  n->cols = cols;
  n->values.assign(static_cast<size_t>(rows * cols), real(0));
  n->requires_grad = requires_grad;
  return wrap(std::move(n));
}

Tensor Tensor::full(int64_t rows, int64_t cols, real value, bool requires_grad) {
  Tensor t = zeros(rows, cols, requires_grad);
  for (auto& v : t.values()) v = value;
  return t;
}

Tensor Tensor::from_values(int64_t rows, int64_t cols, std::vector<real> values,
                           bool requires_grad) {
  require(static_cast<int64_t>(values.size()) == rows * cols,
          "tensor: value count ", values.size(), " does not fill ", rows, "x",
          cols);
  Tensor t = zeros(rows, cols, requires_grad);
  t.node()->values = std::move(values);
  return t;
}

Tensor Tensor::scalar(real value, bool requires_grad) {
  return from_values(1, 1, {value}, requires_grad);
}

Tensor Tensor::wrap(std::shared_ptr<detail::TensorNode> node) {
  Tensor t;
  t.node_ = std::move(node);
  return t;
}

std::vector<real>& Tensor::values() {
  require(defined(), "tensor: undefined handle");
  return node_->values;
}

const std::vector<real>& Tensor::values() const {
  require(defined(), "tensor: undefined handle");
  return node_->values;
}

const std::vector<real>& Tensor::grad() const {
  require(defined(), "tensor: undefined handle");
  require(!node_->grad.empty(), "tensor: gradient not populated");
  return node_->grad;
}

real Tensor::at(int64_t r, int64_t c) const {
  return node_->values[static_cast<size_t>(r * cols() + c)];
}

real& Tensor::at(int64_t r, int64_t c) {
  return node_->values[static_cast<size_t>(r * cols() + c)];
}

real Tensor::scalar_value() const {
  require(numel() == 1, "tensor: expected scalar, got ", shape_str(*this));
  return node_->values[0];
}

void Tensor::zero_grad() {
  require(defined(), "tensor: undefined handle");
  node_->grad.assign(node_->values.size(), real(0));
}

std::string shape_str(const Tensor& t) {
  if (!t.defined()) return "<undefined>";
  return format(t.rows(), "x", t.cols());
}

void backward(const Tensor& loss) {
  require(loss.defined(), "backward: undefined loss");
  require(loss.numel() == 1, "backward: loss must be scalar, got ",
          shape_str(loss));
  require(loss.requires_grad(),
          "backward: loss does not depend on any tracked tensor");

  // Iterative post-order DFS; recursion would overflow on deep tapes.
  std::vector<detail::TensorNode*> order;
  std::unordered_set<detail::TensorNode*> visited;
  std::vector<std::pair<detail::TensorNode*, size_t>> stack;
  stack.emplace_back(loss.node(), 0);
  visited.insert(loss.node());
  while (!stack.empty()) {
    detail::TensorNode* node = stack.back().first;
    bool descended = false;
    while (stack.back().second < node->parents.size()) {
      detail::TensorNode* p = node->parents[stack.back().second++].get();
      if (p->requires_grad && !visited.count(p)) {
        visited.insert(p);
        stack.emplace_back(p, 0);
        descended = true;
        break;
      }
    }
    if (!descended) {
      order.push_back(node);
      stack.pop_back();
    }
  }

  // Interior grads are per-call scratch; only leaves accumulate across
  // repeated backward passes.
  for (auto* node : order) {
    node->ensure_grad();
    if (node->backward) std::fill(node->grad.begin(), node->grad.end(), real(0));
  }
  loss.node()->grad[0] += real(1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if ((*it)->backward) (*it)->backward(**it);
  }
}

}  // namespace igrm::num

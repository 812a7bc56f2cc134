#include "igrm/num/adam.hpp"

#include <cmath>

namespace igrm::num {

Adam::Adam(std::vector<Tensor> params, AdamConfig cfg)
    : params_(std::move(params)), cfg_(cfg) {
  require(cfg_.lr > 0, "adam: learning rate must be positive, got ", cfg_.lr);
  require(cfg_.beta1 >= 0 && cfg_.beta1 < 1 && cfg_.beta2 >= 0 && cfg_.beta2 < 1,
          "adam: betas must lie in [0,1)");
  for (const auto& p : params_) {
    require(p.defined() && p.requires_grad(),
            "adam: every parameter must be a tracked leaf tensor");
    m_.emplace_back(p.values().size(), real(0));
    v_.emplace_back(p.values().size(), real(0));
  }
}

void Adam::step() {
  ++t_;
  real c1 = real(1) - std::pow(cfg_.beta1, static_cast<real>(t_));
  real c2 = real(1) - std::pow(cfg_.beta2, static_cast<real>(t_));
  // Parameters that did not participate in the last graph (no gradient
  // buffer) are skipped; their moments do not advance.
  bool any = false;
  for (size_t i = 0; i < params_.size(); ++i) {
    auto* node = params_[i].node();
    if (node->grad.size() != node->values.size()) continue;
    any = true;
    auto& m = m_[i];
    auto& v = v_[i];
    for (size_t k = 0; k < node->values.size(); ++k) {
      real g = node->grad[k];
      m[k] = cfg_.beta1 * m[k] + (real(1) - cfg_.beta1) * g;
      v[k] = cfg_.beta2 * v[k] + (real(1) - cfg_.beta2) * g * g;
      real mhat = m[k] / c1;
      real vhat = v[k] / c2;
      node->values[k] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
  require(any, "adam: no parameter has a gradient; run backward first");
}

void Adam::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

}  // namespace igrm::num

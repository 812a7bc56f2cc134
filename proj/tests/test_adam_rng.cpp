#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "igrm/num/adam.hpp"
#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"

using namespace igrm;
using namespace igrm::num;

namespace {

// Reference Adam recurrence, one parameter coordinate at a time. `grads[t]`
// may be empty to model a step in which the parameter had no gradient
// buffer (its moments must not advance, but the shared step counter does).
std::vector<real> reference_adam(std::vector<real> theta,
                                 const std::vector<std::vector<real>>& grads,
                                 const AdamConfig& cfg) {
  std::vector<real> m(theta.size(), 0), v(theta.size(), 0);
  for (size_t t = 0; t < grads.size(); ++t) {
    const real c1 = 1 - std::pow(cfg.beta1, static_cast<real>(t + 1));
    const real c2 = 1 - std::pow(cfg.beta2, static_cast<real>(t + 1));
    if (grads[t].empty()) continue;
    for (size_t k = 0; k < theta.size(); ++k) {
      const real g = grads[t][k];
      m[k] = cfg.beta1 * m[k] + (1 - cfg.beta1) * g;
      v[k] = cfg.beta2 * v[k] + (1 - cfg.beta2) * g * g;
      theta[k] -= cfg.lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + cfg.eps);
    }
  }
  return theta;
}

}  // namespace

TEST_CASE("adam matches the reference recurrence") {
  AdamConfig cfg;
  cfg.lr = 0.05;
  auto p = Tensor::from_values(2, 2, {0.5, -0.3, 1.2, 0.0}, true);
  const std::vector<real> start = p.values();
  Adam opt({p}, cfg);

  Rng rng(21);
  std::vector<std::vector<real>> grads;
  for (int step = 0; step < 7; ++step) {
    std::vector<real> g(4);
    for (auto& x : g) x = rng.uniform(-2, 2);
    grads.push_back(g);

    opt.zero_grad();
    auto c = Tensor::from_values(2, 2, g, false);
    backward(sum(mul(p, c)));
    opt.step();
  }
  CHECK(opt.steps() == 7);

  auto expected = reference_adam(start, grads, cfg);
  for (size_t k = 0; k < 4; ++k)
    CHECK(p.values()[k] == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("adam skips parameters that never entered the graph") {
  auto p = Tensor::from_values(1, 2, {1.0, 2.0}, true);
  auto q = Tensor::from_values(1, 2, {3.0, 4.0}, true);
  Adam opt({p, q});

  // q takes no part in the first loss and has no gradient buffer yet.
  backward(sum(p));
  opt.step();
  CHECK(q.values()[0] == 3.0);
  CHECK(q.values()[1] == 4.0);
  CHECK(p.values()[0] < 1.0);

  // After zero_grad every parameter has a (zero) buffer; a zero gradient
  // with zero moments must leave the value exactly unchanged.
  opt.zero_grad();
  backward(sum(p));
  opt.step();
  CHECK(q.values()[0] == 3.0);
  CHECK(q.values()[1] == 4.0);

  // Once q joins the graph its bias correction uses the shared counter.
  opt.zero_grad();
  backward(sum(mul(p, q)));
  opt.step();
  CHECK(q.values()[0] != 3.0);

  // p saw gradient (1,1) on the first two steps; its value at step three is
  // the gradient q receives from d(sum(p*q))/dq.
  auto p_ref = reference_adam({1.0, 2.0}, {{1, 1}, {1, 1}}, AdamConfig{});
  auto q_ref = reference_adam({3.0, 4.0},
                              {{}, {0, 0}, {p_ref[0], p_ref[1]}},
                              AdamConfig{});
  CHECK(q.values()[0] == doctest::Approx(q_ref[0]).epsilon(1e-12));
  CHECK(q.values()[1] == doctest::Approx(q_ref[1]).epsilon(1e-12));
}

TEST_CASE("adam refuses a step when nothing has gradients") {
  auto p = Tensor::from_values(1, 1, {1.0}, true);
  Adam opt({p});
  CHECK_THROWS_AS(opt.step(), Error);
}

TEST_CASE("rng streams are deterministic and well ranged") {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng r(7);
  real mn = 1, mx = 0, mean = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    real u = r.uniform();
    mn = std::min(mn, u);
    mx = std::max(mx, u);
    mean += u;
  }
  mean /= n;
  CHECK(mn >= 0.0);
  CHECK(mx < 1.0);
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));

  for (int i = 0; i < 1000; ++i) {
    real u = r.uniform(-3, 5);
    CHECK(u >= -3);
    CHECK(u < 5);
  }
}

TEST_CASE("uniform_int covers its range without visible bias") {
  Rng r(123);
  const int64_t k = 10;
  std::vector<int64_t> counts(k, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    int64_t v = r.uniform_int(k);
    REQUIRE(v >= 0);
    REQUIRE(v < k);
    ++counts[static_cast<size_t>(v)];
  }
  const real expect = real(n) / k;
  for (auto c : counts) {
    CHECK(c > 0.9 * expect);
    CHECK(c < 1.1 * expect);
  }
}

TEST_CASE("normal and gumbel draws match their moments") {
  Rng r(31);
  const int n = 200000;
  real mean = 0, var = 0;
  std::vector<real> xs(n);
  for (auto& x : xs) {
    x = r.normal();
    mean += x;
  }
  mean /= n;
  for (auto x : xs) var += (x - mean) * (x - mean);
  var /= (n - 1);
  CHECK(mean == doctest::Approx(0.0).epsilon(1).scale(0.02));
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));

  real gmean = 0;
  for (int i = 0; i < n; ++i) gmean += r.gumbel();
  gmean /= n;
  CHECK(gmean == doctest::Approx(0.57721566).epsilon(1).scale(0.02));

  CHECK(std::isfinite(gumbel_from_uniform(0.0)));
  CHECK(std::isfinite(gumbel_from_uniform(1.0)));
  CHECK(gumbel_from_uniform(0.5) ==
        doctest::Approx(-std::log(-std::log(0.5))).epsilon(1e-12));
}

TEST_CASE("derive_seed separates child streams") {
  CHECK(derive_seed(42, 1) == derive_seed(42, 1));
  CHECK(derive_seed(42, 1) != derive_seed(42, 2));
  CHECK(derive_seed(42, 1) != derive_seed(43, 1));

  Rng a(derive_seed(0, 1)), b(derive_seed(0, 2));
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (a.next_u64() == b.next_u64());
  CHECK(same == 0);
}

TEST_CASE("shuffle permutes deterministically") {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Rng r(5);
  r.shuffle(v);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(v != sorted);  // astronomically unlikely to be identity

  std::vector<int> w{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Rng r2(5);
  r2.shuffle(w);
  CHECK(v == w);
}

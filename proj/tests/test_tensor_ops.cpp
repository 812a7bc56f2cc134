#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"
#include "igrm/num/tensor.hpp"
#include "testutil.hpp"

using namespace igrm;
using namespace igrm::num;
using igrm::test::fd_max_rel_error;
using igrm::test::random_tensor;

namespace {

constexpr real kFdTol = 1e-6;

// Push every coordinate at least `margin` away from zero so finite
// differences never straddle the relu kink.
void away_from_zero(Tensor& t, real margin = 0.1) {
  for (auto& v : t.values()) v += (v < 0 ? -margin : margin);
}

Tensor const_tensor(int64_t rows, int64_t cols, std::vector<real> v) {
  return Tensor::from_values(rows, cols, std::move(v), false);
}

}  // namespace

TEST_CASE("matmul and matmul_nt match hand values") {
  auto a = const_tensor(2, 3, {1, 2, 3, 4, 5, 6});
  auto b = const_tensor(3, 2, {7, 8, 9, 10, 11, 12});
  auto c = matmul(a, b);
  CHECK(c.rows() == 2);
  CHECK(c.cols() == 2);
  CHECK(c.at(0, 0) == doctest::Approx(58).epsilon(1e-12));
  CHECK(c.at(0, 1) == doctest::Approx(64).epsilon(1e-12));
  CHECK(c.at(1, 0) == doctest::Approx(139).epsilon(1e-12));
  CHECK(c.at(1, 1) == doctest::Approx(154).epsilon(1e-12));

  auto bt = const_tensor(2, 3, {7, 9, 11, 8, 10, 12});
  auto c2 = matmul_nt(a, bt);
  for (int64_t i = 0; i < 2; ++i)
    for (int64_t j = 0; j < 2; ++j)
      CHECK(c2.at(i, j) == doctest::Approx(c.at(i, j)).epsilon(1e-12));
}

TEST_CASE("gradients: dense products") {
  Rng rng(11);
  auto a = random_tensor(3, 4, rng);
  auto b = random_tensor(4, 5, rng);
  CHECK(fd_max_rel_error({a, b}, [&] { return sum(matmul(a, b)); }) < kFdTol);

  auto c = random_tensor(5, 4, rng);
  CHECK(fd_max_rel_error({a, c}, [&] {
          return mean_all(matmul_nt(a, c));
        }) < kFdTol);
}

TEST_CASE("gradients: linear with split inputs and bias") {
  Rng rng(12);
  auto x1 = random_tensor(4, 3, rng);
  auto x2 = random_tensor(4, 2, rng);
  auto w = random_tensor(6, 5, rng);
  auto bias = random_tensor(6, 1, rng);

  SUBCASE("split parts, bias") {
    CHECK(fd_max_rel_error({x1, x2, w, bias}, [&] {
            return sum(linear({x1, x2}, w, bias));
          }) < kFdTol);
  }
  SUBCASE("single input, no bias") {
    auto w1 = random_tensor(6, 3, rng);
    CHECK(fd_max_rel_error({x1, w1}, [&] {
            return sum(linear(x1, w1, Tensor()));
          }) < kFdTol);
  }
  SUBCASE("matches explicit concat") {
    auto y = linear({x1, x2}, w, bias);
    auto y_ref = add(matmul_nt(concat_cols({x1, x2}), w),
                     matmul_nt(Tensor::full(4, 1, 1), bias));
    for (int64_t i = 0; i < y.numel(); ++i)
      CHECK(y.values()[static_cast<size_t>(i)] ==
            doctest::Approx(y_ref.values()[static_cast<size_t>(i)])
                .epsilon(1e-12));
  }
}

TEST_CASE("gradients: elementwise ops") {
  Rng rng(13);
  auto a = random_tensor(3, 3, rng);
  auto b = random_tensor(3, 3, rng);

  CHECK(fd_max_rel_error({a, b}, [&] { return sum(add(a, b)); }) < kFdTol);
  CHECK(fd_max_rel_error({a, b}, [&] { return sum(sub(a, b)); }) < kFdTol);
  CHECK(fd_max_rel_error({a, b}, [&] { return sum(mul(a, b)); }) < kFdTol);
  CHECK(fd_max_rel_error({a}, [&] {
          return sum(scale(add_scalar(a, 0.7), -1.3));
        }) < kFdTol);

  auto r = random_tensor(4, 4, rng);
  away_from_zero(r);
  auto w = random_tensor(4, 4, rng, false);
  CHECK(fd_max_rel_error({r}, [&] { return sum(mul(relu(r), w)); }) < kFdTol);

  CHECK(fd_max_rel_error({a}, [&] { return sum(mul(sigmoid(a), b)); }) <
        kFdTol);

  auto pos = random_tensor(3, 3, rng, true, 0.5, 2.0);
  CHECK(fd_max_rel_error({pos}, [&] { return sum(mul(log_(pos), b)); }) <
        kFdTol);
}

TEST_CASE("clamp: forward values and gradient zeroing") {
  auto x = Tensor::from_values(1, 6, {-1.5, -0.2, 0.0, 0.3, 1.7, 0.8}, true);
  auto w = const_tensor(1, 6, {1, 2, 3, 4, 5, 6});
  auto y = clamp(x, -0.5, 0.5);
  CHECK(y.at(0, 0) == -0.5);
  CHECK(y.at(0, 1) == -0.2);
  CHECK(y.at(0, 4) == 0.5);
  CHECK(y.at(0, 5) == 0.5);
  CHECK(fd_max_rel_error({x}, [&] {
          return sum(mul(clamp(x, -0.5, 0.5), w));
        }) < kFdTol);
  // Saturated coordinates must carry exactly zero gradient.
  CHECK(x.grad()[0] == 0);
  CHECK(x.grad()[4] == 0);
  CHECK(x.grad()[3] == doctest::Approx(4).epsilon(1e-12));
}

TEST_CASE("gradients: structural ops") {
  Rng rng(14);
  auto a = random_tensor(4, 2, rng);
  auto b = random_tensor(4, 3, rng);

  SUBCASE("concat_cols") {
    CHECK(fd_max_rel_error({a, b}, [&] {
            return sse(concat_cols({a, b}), Tensor::zeros(4, 5));
          }) < kFdTol);
  }
  SUBCASE("gather_rows accumulates over repeats") {
    std::vector<int64_t> idx{0, 2, 2, 3, 1, 0, 2, 1, 3};
    CHECK(fd_max_rel_error({b}, [&] {
            return sum(mul(gather_rows(b, idx),
                           const_tensor(9, 3, std::vector<real>(27, 0.5))));
          }) < kFdTol);
  }
  SUBCASE("gather_cells") {
    std::vector<int64_t> rows{0, 3, 1, 3};
    std::vector<int64_t> cols{1, 2, 0, 2};
    auto g = gather_cells(b, rows, cols);
    CHECK(g.rows() == 4);
    CHECK(g.cols() == 1);
    CHECK(g.at(0, 0) == b.at(0, 1));
    CHECK(g.at(3, 0) == b.at(3, 2));
    CHECK(fd_max_rel_error({b}, [&] {
            return sse(gather_cells(b, rows, cols), Tensor::zeros(4, 1));
          }) < kFdTol);
  }
  SUBCASE("segment_sum and segment_mean") {
    std::vector<int64_t> seg{0, 0, 2, 2};
    auto s = segment_sum(b, seg, 3);
    CHECK(s.rows() == 3);
    CHECK(s.at(1, 0) == 0);  // empty segment
    CHECK(s.at(0, 1) == doctest::Approx(b.at(0, 1) + b.at(1, 1)));
    auto m = segment_mean(b, seg, 3);
    CHECK(m.at(0, 1) == doctest::Approx((b.at(0, 1) + b.at(1, 1)) / 2));
    CHECK(m.at(1, 2) == 0);
    auto t = random_tensor(3, 3, rng, false);
    CHECK(fd_max_rel_error({b}, [&] {
            return sse(segment_sum(b, seg, 3), t);
          }) < kFdTol);
    CHECK(fd_max_rel_error({b}, [&] {
            return sse(segment_mean(b, seg, 3), t);
          }) < kFdTol);
  }
  SUBCASE("rowwise_scale") {
    auto w = random_tensor(4, 1, rng);
    auto y = rowwise_scale(b, w);
    CHECK(y.at(2, 1) == doctest::Approx(b.at(2, 1) * w.at(2, 0)));
    CHECK(fd_max_rel_error({b, w}, [&] {
            return sum(rowwise_scale(b, w));
          }) < kFdTol);
  }
}

TEST_CASE("spmm agrees with dense multiply") {
  // Symmetric 4-node path graph with self-loops, arbitrary weights.
  auto s = std::make_shared<SparseMatrix>();
  s->n = 4;
  std::vector<std::vector<std::pair<int64_t, real>>> rows{
      {{0, 0.5}, {1, 0.3}},
      {{0, 0.3}, {1, 0.4}, {2, 0.2}},
      {{1, 0.2}, {2, 0.6}, {3, 0.1}},
      {{2, 0.1}, {3, 0.7}},
  };
  s->row_ptr.push_back(0);
  for (auto& r : rows) {
    for (auto [j, v] : r) {
      s->col_idx.push_back(j);
      s->vals.push_back(v);
    }
    s->row_ptr.push_back(static_cast<int64_t>(s->col_idx.size()));
  }
  std::vector<real> dense(16, 0);
  for (int64_t i = 0; i < 4; ++i)
    for (auto [j, v] : rows[static_cast<size_t>(i)])
      dense[static_cast<size_t>(i * 4 + j)] = v;

  Rng rng(15);
  auto x = random_tensor(4, 3, rng);
  auto y = spmm(s, x);
  auto y_ref = matmul(const_tensor(4, 4, dense), x);
  for (size_t k = 0; k < y.values().size(); ++k)
    CHECK(y.values()[k] == doctest::Approx(y_ref.values()[k]).epsilon(1e-12));

  auto t = random_tensor(4, 3, rng, false);
  CHECK(fd_max_rel_error({x}, [&] { return sse(spmm(s, x), t); }) < kFdTol);
}

TEST_CASE("row_softmax: normalization, temperature, gradient") {
  Rng rng(16);
  auto x = random_tensor(3, 5, rng);
  auto p = row_softmax(x, 0.5);
  for (int64_t i = 0; i < 3; ++i) {
    real row_sum = 0;
    for (int64_t j = 0; j < 5; ++j) row_sum += p.at(i, j);
    CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Lower temperature sharpens: the max entry gains mass.
  auto sharp = row_softmax(x, 0.1);
  for (int64_t i = 0; i < 3; ++i) {
    int64_t arg = 0;
    for (int64_t j = 1; j < 5; ++j)
      if (x.at(i, j) > x.at(i, arg)) arg = j;
    CHECK(sharp.at(i, arg) > p.at(i, arg));
  }

  // Large logits must not overflow thanks to the row-max shift.
  auto big = const_tensor(1, 3, {1000, 999, 998});
  auto pb = row_softmax(big, 1.0);
  CHECK(std::isfinite(pb.at(0, 0)));
  CHECK(pb.at(0, 0) > pb.at(0, 1));

  auto t = random_tensor(3, 5, rng, false);
  CHECK(fd_max_rel_error({x}, [&] {
          return sse(row_softmax(x, 0.5), t);
        }) < kFdTol);
}

TEST_CASE("straight_through: hard forward, relaxed gradient") {
  auto relaxed = Tensor::from_values(2, 3, {0.7, 0.2, 0.1, 0.3, 0.3, 0.4},
                                     true);
  std::vector<real> hard{1, 0, 0, 0, 0, 1};
  auto st = straight_through(relaxed, hard);
  for (size_t k = 0; k < hard.size(); ++k) CHECK(st.values()[k] == hard[k]);

  auto w = const_tensor(2, 3, {1, 2, 3, 4, 5, 6});
  auto loss = sum(mul(st, w));
  relaxed.node()->grad.clear();
  backward(loss);
  for (size_t k = 0; k < hard.size(); ++k)
    CHECK(relaxed.grad()[k] == doctest::Approx(w.values()[k]).epsilon(1e-12));
}

TEST_CASE("detach blocks gradient flow") {
  auto a = Tensor::from_values(2, 2, {1, 2, 3, 4}, true);
  auto d = detach(a);
  CHECK_FALSE(d.requires_grad());
  for (size_t k = 0; k < 4; ++k) CHECK(d.values()[k] == a.values()[k]);

  auto loss = sum(mul(d, a));  // d treated as constant
  a.node()->grad.clear();
  backward(loss);
  for (size_t k = 0; k < 4; ++k)
    CHECK(a.grad()[k] == doctest::Approx(a.values()[k]).epsilon(1e-12));
}

TEST_CASE("gradients: reductions and losses") {
  Rng rng(17);
  auto x = random_tensor(4, 3, rng);
  auto t = random_tensor(4, 3, rng, false);

  CHECK(fd_max_rel_error({x}, [&] { return sum(x); }) < kFdTol);
  CHECK(fd_max_rel_error({x}, [&] { return mean_all(x); }) < kFdTol);
  CHECK(fd_max_rel_error({x}, [&] { return sse(x, t); }) < kFdTol);
  CHECK(fd_max_rel_error({x}, [&] { return mse(x, t); }) < kFdTol);

  real acc = 0;
  for (size_t k = 0; k < x.values().size(); ++k) {
    real d = x.values()[k] - t.values()[k];
    acc += d * d;
  }
  CHECK(sse(x, t).scalar_value() == doctest::Approx(acc).epsilon(1e-12));
  CHECK(mse(x, t).scalar_value() == doctest::Approx(acc / 12).epsilon(1e-12));
}

TEST_CASE("cross_entropy_sum: hand value and gradient") {
  auto logits = Tensor::from_values(2, 3, {1.0, 2.0, 0.5, -1.0, 0.0, 3.0},
                                    true);
  std::vector<int64_t> targets{1, 2};

  real expected = 0;
  for (int64_t i = 0; i < 2; ++i) {
    real mx = logits.at(i, 0);
    for (int64_t j = 1; j < 3; ++j) mx = std::max(mx, logits.at(i, j));
    real z = 0;
    for (int64_t j = 0; j < 3; ++j) z += std::exp(logits.at(i, j) - mx);
    expected += -(logits.at(i, targets[static_cast<size_t>(i)]) - mx) +
                std::log(z);
  }
  CHECK(cross_entropy_sum(logits, targets).scalar_value() ==
        doctest::Approx(expected).epsilon(1e-12));

  CHECK(fd_max_rel_error({logits}, [&] {
          return cross_entropy_sum(logits, targets);
        }) < kFdTol);
}

TEST_CASE("backward accumulates until cleared") {
  auto a = Tensor::from_values(1, 2, {2, 3}, true);
  auto loss = sum(a);
  a.node()->grad.clear();
  backward(loss);
  backward(loss);
  CHECK(a.grad()[0] == 2);  // two accumulated passes
  a.zero_grad();
  CHECK(a.grad()[0] == 0);
}

TEST_CASE("shape validation rejects mismatched operands") {
  auto a = Tensor::zeros(2, 3);
  auto b = Tensor::zeros(2, 2);
  CHECK_THROWS_AS((void)add(a, b), Error);
  CHECK_THROWS_AS((void)matmul(a, b), Error);
  CHECK_THROWS_AS((void)sum(Tensor()), Error);
}

#include "igrm/num/rng.hpp"

#include <cmath>

namespace igrm::num {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  require(lo <= hi, "rng: uniform bounds out of order (", lo, " > ", hi, ")");
  return lo + (hi - lo) * uniform();
}

int64_t Rng::uniform_int(int64_t n) {
  require(n > 0, "rng: uniform_int needs a positive range, got ", n);
  uint64_t un = static_cast<uint64_t>(n);
  uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int64_t>(x % un);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1, u2;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double gumbel_from_uniform(double u) {
  constexpr double lo = 1e-12;
  constexpr double hi = 1.0 - 1e-12;
  if (u < lo) u = lo;
  if (u > hi) u = hi;
  return -std::log(-std::log(u));
}

double Rng::gumbel() { return gumbel_from_uniform(uniform()); }

uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return mix(base ^ (kGolden * (stream + 1)));
}

}  // namespace igrm::num

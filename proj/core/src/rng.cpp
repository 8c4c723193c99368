#include "iatails/rng.hpp"

#include <cmath>

#include "iatails/errors.hpp"

namespace iatails {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t x = seed;
  x = splitmix64(x) ^ stream_id;
  // Re-mix so that nearby stream ids land in unrelated states.
  std::uint64_t y = splitmix64(x);
  s_[0] = splitmix64(y);
  s_[1] = splitmix64(y);
  s_[2] = splitmix64(y);
  s_[3] = splitmix64(y);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RandomStream RandomStream::child(std::uint64_t index) const {
  std::uint64_t x = seed_;
  std::uint64_t mix = splitmix64(x) ^ (stream_id_ * 0x9e3779b97f4a7c15ULL);
  std::uint64_t y = mix + index;
  return RandomStream(splitmix64(y), index + 1);
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  // 53-bit mantissa; shifted into (0,1) so log() never sees 0.
  const double u = (next_u64() >> 11) * 0x1.0p-53;
  return u + 0x1.0p-54;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomStream::exponential(double scale) {
  if (!(scale > 0.0)) throw domain_error("exponential scale must be > 0");
  return -scale * std::log(uniform());
}

double RandomStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double RandomStream::normal(double mean, double sd) {
  return mean + sd * normal();
}

double RandomStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw domain_error("gamma shape and scale must be > 0");
  }
  if (shape < 1.0) {
    // Boost trick: Gamma(a) = Gamma(a+1) * U^(1/a).
    const double g = gamma(shape + 1.0, 1.0);
    return scale * g * std::pow(uniform(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return scale * d * v;
    }
  }
}

double RandomStream::chi_square(double dof) {
  return gamma(0.5 * dof, 2.0);
}

double RandomStream::beta(double a, double b) {
  const double x = gamma(a, 1.0);
  const double y = gamma(b, 1.0);
  return x / (x + y);
}

std::uint64_t RandomStream::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw domain_error("binomial p outside [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (n <= 64) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) count += uniform() < p ? 1 : 0;
    return count;
  }
  // Split on the k-th order statistic of n uniforms, which is
  // Beta(k, n+1-k): recurse into the half containing p.
  const std::uint64_t k = (n + 1) / 2;
  const double x = beta(static_cast<double>(k),
                        static_cast<double>(n + 1 - k));
  if (p < x) return binomial(k - 1, p / x);
  return k + binomial(n - k, (p - x) / (1.0 - x));
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw domain_error("uniform_index needs n > 0");
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = n * ((~0ULL) / n);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

}  // namespace iatails

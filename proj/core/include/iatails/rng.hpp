#pragma once

#include <cstdint>
#include <vector>

namespace iatails {

// Splittable deterministic random stream keyed by (seed, stream_id).
// Same key -> byte-identical sequence regardless of thread schedule.
// xoshiro256++ core, state derived from the key via splitmix64.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Independent child stream for sub-task `index` (trial, permutation,
  // orbit, ...). Mixing is hash-based so children never collide with
  // sibling or parent sequences in practice.
  RandomStream child(std::uint64_t index) const;

  std::uint64_t next_u64();

  double uniform();                       // (0, 1)
  double uniform(double lo, double hi);   // (lo, hi)
  double exponential(double scale);
  double normal();                        // standard normal, Box-Muller
  double normal(double mean, double sd);
  double gamma(double shape, double scale);
  double chi_square(double dof);
  double beta(double a, double b);
  // Exact Binomial(n, p) draw; O(log n) via beta-split recursion.
  std::uint64_t binomial(std::uint64_t n, double p);
  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace iatails

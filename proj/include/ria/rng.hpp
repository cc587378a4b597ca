#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ria {

/// Reproducible random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard.
/// The standard distributions are not (their algorithms are implementation-defined), so
/// every derived quantity is computed here:
///   - uniform():  top 53 bits of one engine draw, scaled by 2^-53, giving [0, 1).
///   - below(n):   Lemire's multiply-shift with rejection, exactly uniform on [0, n).
///   - gaussian(): Marsaglia polar method; the second deviate of each accepted pair is
///                 cached and returned by the next call.
///
/// Sub-streams are seeded by hashing (parent seed, label, index) with SplitMix64, so a
/// trial's stream depends only on its key and never on scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Independent stream keyed by (this seed, label, index).
  Rng derive(std::string_view label, std::uint64_t index = 0) const;
  static std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                   std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  std::uint64_t below(std::uint64_t n);
  double gaussian();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ria

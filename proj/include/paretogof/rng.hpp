#ifndef PARETOGOF_RNG_HPP
#define PARETOGOF_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace pgof {

/// Philox4x32-10 block function. Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// The pair (seed, stream_id) fully determines the variate sequence: the seed
/// is the Philox key and the stream id occupies the upper half of the 128-bit
/// counter, so distinct stream ids never overlap. Each replication of a
/// simulation owns its own stream, which makes results independent of how
/// replications are distributed over worker threads.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  /// Standard normal (Box-Muller, second variate cached).
  double normal() noexcept;

  /// Standard exponential by inversion.
  double exponential() noexcept;

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 uses the U^(1/shape) boost.
  double gamma(double shape) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Derive a child seed from a master seed and a label (splitmix64 over FNV-1a).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) noexcept;

}  // namespace pgof

#endif  // PARETOGOF_RNG_HPP

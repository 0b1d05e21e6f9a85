#pragma once

#include <array>
#include <cstdint>

namespace csl {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (key, stream id); the low 64 bits of the
/// counter advance with each block. Any (seed, trajectory index) pair thus
/// owns an independent sequence that does not depend on how work is split
/// across threads.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept;

  /// Block at an arbitrary position; does not touch the internal counter.
  Block block_at(std::uint64_t position) const noexcept;

  Block next_block() noexcept { return block_at(position_++); }

  std::uint64_t position() const noexcept { return position_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
};

/// Uniforms and standard normals drawn from one Philox stream. Normals come
/// from Box-Muller so the sequence is identical across standard libraries.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept : engine_(seed, stream) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept;
  std::uint32_t bits32() noexcept;

 private:
  void refill() noexcept;

  Philox4x32 engine_;
  Philox4x32::Block buffer_{};
  int used_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace csl

// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace panharmonia {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// The k-th 64-bit word of stream (master_seed, stream_index) is a pure function of
/// (master_seed, stream_index, k): master_seed is the Philox key and the counter is
/// (stream_index, k / 2). Two streams never share a counter block, so per-task
/// streams are independent of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : seed_(master_seed), stream_(stream_index) {}

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const { return position_; }

  /// Child stream with the same seed and a stream index mixed from (stream_index, index).
  /// Used to key per-walk, per-block and per-node streams.
  RngStream split(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1], never zero.
  double uniform_open();
  /// Standard normal (Box-Muller, both outputs consumed in sequence).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::array<std::uint32_t, 4> block_{};
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace panharmonia

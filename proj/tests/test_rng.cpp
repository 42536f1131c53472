// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "panharmonia/parallel.hpp"
#include "panharmonia/rng.hpp"

using namespace panharmonia;

// Known-answer vectors of the Random123 distribution for Philox4x32-10.
TEST(Philox, KnownAnswers) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, DeterministicAndIndependentOfHistory) {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  RngStream c(42, 8);
  RngStream d(43, 7);
  RngStream e(42, 7);
  EXPECT_NE(c.next_u64(), e.next_u64());
  EXPECT_NE(d.next_u64(), RngStream(42, 7).next_u64());
  EXPECT_EQ(a.position(), 1000u);
}

TEST(RngStream, SplitGivesDistinctReproducibleStreams) {
  const RngStream base(1, 0);
  std::set<std::uint64_t> first;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RngStream s = base.split(i);
    first.insert(s.next_u64());
    RngStream again = base.split(i);
    RngStream s2 = base.split(i);
    EXPECT_EQ(again.next_u64(), s2.next_u64());
  }
  EXPECT_EQ(first.size(), 1000u);
  EXPECT_NE(base.split(0).stream_index(), base.stream_index());
}

TEST(RngStream, UniformMoments) {
  RngStream rng(3, 0);
  RunningStats stats;
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    stats.add(u);
  }
  EXPECT_NEAR(stats.mean, 0.5, 5 * std::sqrt(1.0 / 12 / 200000));
  EXPECT_NEAR(stats.variance(), 1.0 / 12.0, 1e-3);
  EXPECT_LT(lo, 1e-4);
  EXPECT_GT(hi, 1 - 1e-4);
  RngStream open(3, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = open.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(RngStream, NormalMoments) {
  RngStream rng(9, 0);
  RunningStats stats;
  RunningStats fourth;
  for (int i = 0; i < 200000; ++i) {
    const double g = rng.normal();
    stats.add(g);
    fourth.add(g * g * g * g);
  }
  EXPECT_NEAR(stats.mean, 0.0, 0.01);
  EXPECT_NEAR(stats.variance(), 1.0, 0.01);
  EXPECT_NEAR(fourth.mean, 3.0, 0.06);
}

TEST(Parallel, RunningStatsMergeMatchesSequential) {
  RngStream rng(5, 0);
  RunningStats all;
  RunningStats a;
  RunningStats b;
  for (int i = 0; i < 1001; ++i) {
    const double v = rng.normal() * 3 + 1;
    all.add(v);
    (i < 400 ? a : b).add(v);
  }
  a.merge(b);
  EXPECT_EQ(a.count, all.count);
  EXPECT_NEAR(a.mean, all.mean, 1e-13);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-11);
  RunningStats empty;
  empty.merge(all);
  EXPECT_EQ(empty.mean, all.mean);
}

TEST(Parallel, BlocksRunOnceAndPropagateExceptions) {
  std::vector<int> hits(100, 0);
  parallel_blocks(hits.size(), [&](std::size_t b) { hits[b]++; }, 4);
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_blocks(10, [](std::size_t b) { if (b == 7) throw std::runtime_error("x"); }, 3),
               std::runtime_error);
}

TEST(Parallel, WorkerCountFromEnvironment) {
  setenv("PANHARMONIA_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3);
  setenv("PANHARMONIA_THREADS", "bogus", 1);
  EXPECT_GE(worker_count(), 1);
  unsetenv("PANHARMONIA_THREADS");
}

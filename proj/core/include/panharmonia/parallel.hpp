// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace panharmonia {

/// Worker count: PANHARMONIA_THREADS if set (>= 1), else hardware concurrency.
int worker_count();

/// Runs body(block) for block = 0..blocks-1 on up to `workers` threads.
/// Blocks are claimed dynamically; callers write per-block results and reduce them in
/// block order, so results never depend on the worker count.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body, int workers = worker_count());

/// Streaming mean/variance (Welford), mergeable in a fixed order (Chan et al.).
struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double n = n_a + n_b;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
  }

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const { return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }
};

}  // namespace panharmonia

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dftkit/dft.hpp"

namespace dftkit {

struct BenchOptions {
  int repeats = 5;
  /// Each timing sample loops the transform until at least this much wall
  /// time has elapsed, then reports the per-call average.
  double min_sample_seconds = 0.005;
  std::uint64_t seed = 20240601;
  TransformLimits limits{};
};

struct BenchRow {
  std::size_t n = 0;
  double fft_seconds = 0.0;                  // median per call
  std::optional<double> naive_seconds;       // empty above the naive cap
  double max_abs_difference = 0.0;           // naive vs fft, 0 when not run

  std::optional<double> ratio() const {
    if (!naive_seconds) return std::nullopt;
    return *naive_seconds / fft_seconds;
  }
};

/// Times dft_naive and fft at each size on uniform random input in [-1, 1].
/// Outputs are checked to agree within kTolerance per element before any
/// timing; a mismatch throws kNumerical.  Non-power-of-two sizes throw kUsage.
std::vector<BenchRow> run_bench(std::span<const std::size_t> sizes, const BenchOptions& options = {});

}  // namespace dftkit

#include "dftkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <string>

namespace dftkit {

namespace {

template <typename Fn>
double median_seconds_per_call(Fn&& fn, const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(options.repeats));
  for (int r = 0; r < options.repeats; ++r) {
    std::size_t calls = 0;
    const auto start = Clock::now();
    double elapsed = 0.0;
    do {
      fn();
      ++calls;
      elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    } while (elapsed < options.min_sample_seconds);
    samples.push_back(elapsed / static_cast<double>(calls));
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace

std::vector<BenchRow> run_bench(std::span<const std::size_t> sizes, const BenchOptions& options) {
  if (sizes.empty()) throw Error(ErrorCode::kUsage, "bench: no sizes given");
  if (options.repeats < 1) throw Error(ErrorCode::kUsage, "bench: repeats must be at least 1");
  for (std::size_t n : sizes) {
    if (!is_power_of_two(n)) {
      throw Error(ErrorCode::kUsage, "bench: size " + std::to_string(n) + " is not a power of two");
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    std::vector<Complex> x(n);
    for (Complex& v : x) v = dist(rng);

    BenchRow row;
    row.n = n;
    const bool run_naive = n <= options.limits.naive_max;
    if (run_naive) {
      const std::vector<Complex> slow = dft_naive(x, options.limits);
      const std::vector<Complex> fast = fft(x, options.limits);
      for (std::size_t k = 0; k < n; ++k) {
        row.max_abs_difference = std::max(row.max_abs_difference, std::abs(slow[k] - fast[k]));
      }
      if (row.max_abs_difference > kTolerance) {
        throw Error(ErrorCode::kNumerical, "bench: fft and dft_naive disagree by " +
                                               std::to_string(row.max_abs_difference) +
                                               " at n = " + std::to_string(n));
      }
    }

    std::size_t sink = 0;
    row.fft_seconds = median_seconds_per_call(
        [&] { sink += fft(x, options.limits).size(); }, options);
    if (run_naive) {
      row.naive_seconds = median_seconds_per_call(
          [&] { sink += dft_naive(x, options.limits).size(); }, options);
    }
    if (sink == 0) throw Error(ErrorCode::kNumerical, "bench: no work was timed");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dftkit

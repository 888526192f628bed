#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dftkit/error.hpp"

namespace dftkit {

using Complex = std::complex<double>;
using SampleRate = std::uint32_t;

/// Library-wide comparison epsilon.
inline constexpr double kTolerance = 1e-9;

/// Size caps for the two transform paths.  The naive path is O(n^2) in time
/// and the materialized matrix is O(n^2) in memory.
struct TransformLimits {
  std::size_t naive_max = 8192;
  std::size_t fft_max = std::size_t{1} << 24;
};

/// Real samples at a fixed rate.  Nonempty, finite, rate > 0.
class Signal {
 public:
  Signal(std::vector<double> samples, SampleRate sample_rate);

  std::span<const double> samples() const& noexcept { return samples_; }
  std::span<const double> samples() const&& = delete;
  SampleRate sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }

  /// Largest absolute sample value.
  double peak() const noexcept;

 private:
  std::vector<double> samples_;
  SampleRate sample_rate_;
};

/// Complex Fourier coefficients of a signal, bin k at k * sample_rate / n Hz.
class Spectrum {
 public:
  Spectrum(std::vector<Complex> bins, SampleRate sample_rate);

  std::span<const Complex> bins() const& noexcept { return bins_; }
  std::span<const Complex> bins() const&& = delete;
  SampleRate sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return bins_.size(); }
  const Complex& operator[](std::size_t i) const noexcept { return bins_[i]; }

  double bin_frequency(std::size_t k) const noexcept {
    return static_cast<double>(k) * sample_rate_ / static_cast<double>(bins_.size());
  }

 private:
  std::vector<Complex> bins_;
  SampleRate sample_rate_;
};

/// Dense n x n matrix with entry (j, k) = omega(n)^(j*k).
class DftMatrix {
 public:
  std::size_t order() const noexcept { return n_; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * n_ + col];
  }
  std::span<const Complex> row(std::size_t j) const noexcept {
    return std::span<const Complex>(entries_).subspan(j * n_, n_);
  }

  /// F * x.
  std::vector<Complex> apply(std::span<const Complex> x) const;

 private:
  friend DftMatrix dft_matrix(std::size_t n, const TransformLimits& limits);
  DftMatrix(std::size_t n, std::vector<Complex> entries)
      : n_(n), entries_(std::move(entries)) {}

  std::size_t n_;
  std::vector<Complex> entries_;
};

/// e^{-2 pi i / n}.
Complex omega(std::size_t n);

/// omega(n)^m with m reduced modulo n first.  Quarter turns are exact.
Complex omega_power(std::uint64_t m, std::size_t n);

DftMatrix dft_matrix(std::size_t n, const TransformLimits& limits = {});

// Naive O(n^2) transforms.  Forward is unnormalized; inverse carries 1/n.
// The matrix is never materialized: each output row is accumulated in a
// fixed order against an n-entry twiddle table.
std::vector<Complex> dft_naive(std::span<const Complex> x, const TransformLimits& limits = {});
std::vector<Complex> idft_naive(std::span<const Complex> bins, const TransformLimits& limits = {});
Spectrum dft_naive(const Signal& signal, const TransformLimits& limits = {});
Signal idft_naive(const Spectrum& spectrum, const TransformLimits& limits = {});

// Iterative radix-2 decimation-in-time.  Length must be a power of two.
std::vector<Complex> fft(std::span<const Complex> x, const TransformLimits& limits = {});
std::vector<Complex> ifft(std::span<const Complex> bins, const TransformLimits& limits = {});
Spectrum fft(const Signal& signal, const TransformLimits& limits = {});
Signal ifft(const Spectrum& spectrum, const TransformLimits& limits = {});

/// Drops the imaginary parts after checking each is at most
/// kTolerance * reference in magnitude; throws kNumerical otherwise.
std::vector<double> real_part_checked(std::span<const Complex> values, double reference);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

/// Zero-extends the samples to `length` (>= signal.size()).
std::vector<Complex> zero_padded(const Signal& signal, std::size_t length);

}  // namespace dftkit

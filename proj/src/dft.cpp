#include "dftkit/dft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace dftkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kResourceLimit: return "resource-limit";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kLength: return "length";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kProfileValidation: return "profile-validation";
    case ErrorCode::kUnknownPreset: return "unknown-preset";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kAliasing: return "aliasing";
    case ErrorCode::kRate: return "rate";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

Signal::Signal(std::vector<double> samples, SampleRate sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (samples_.empty()) throw Error(ErrorCode::kEmptyInput, "signal has no samples");
  if (sample_rate_ == 0) throw Error(ErrorCode::kDomain, "sample rate must be positive");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorCode::kDomain, "sample " + std::to_string(i) + " is not finite");
    }
  }
}

double Signal::peak() const noexcept {
  double m = 0.0;
  for (double s : samples_) m = std::max(m, std::abs(s));
  return m;
}

Spectrum::Spectrum(std::vector<Complex> bins, SampleRate sample_rate)
    : bins_(std::move(bins)), sample_rate_(sample_rate) {
  if (bins_.empty()) throw Error(ErrorCode::kEmptyInput, "spectrum has no bins");
  if (sample_rate_ == 0) throw Error(ErrorCode::kDomain, "sample rate must be positive");
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (!std::isfinite(bins_[i].real()) || !std::isfinite(bins_[i].imag())) {
      throw Error(ErrorCode::kDomain, "bin " + std::to_string(i) + " is not finite");
    }
  }
}

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) noexcept {
  return n <= 1 ? 1 : std::bit_ceil(n);
}

Complex omega_power(std::uint64_t m, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidOrder, "transform order must be at least 1");
  const std::uint64_t order = n;
  const std::uint64_t r = m % order;
  // Split 2*pi*r/n into a quarter-turn count and a residual angle in
  // [0, pi/2) so that multiples of n/4 come out exact.
  const std::uint64_t quarter = (4 * r) / order;
  const std::uint64_t residual = 4 * r - quarter * order;
  const double theta = (std::numbers::pi / 2.0) * static_cast<double>(residual) /
                       static_cast<double>(order);
  const double c = residual == 0 ? 1.0 : std::cos(theta);
  const double s = residual == 0 ? 0.0 : std::sin(theta);
  switch (quarter) {
    case 0: return {c, -s};
    case 1: return {-s, -c};
    case 2: return {-c, s};
    default: return {s, c};
  }
}

Complex omega(std::size_t n) { return omega_power(1, n); }

namespace {

void check_order(std::size_t n, std::size_t cap, const char* what) {
  if (n == 0) throw Error(ErrorCode::kEmptyInput, std::string(what) + ": empty input");
  if (n > cap) {
    throw Error(ErrorCode::kResourceLimit, std::string(what) + ": length " + std::to_string(n) +
                                               " exceeds the limit of " + std::to_string(cap));
  }
}

void check_power_of_two(std::size_t n, const char* what) {
  if (is_power_of_two(n)) return;
  const std::size_t above = std::bit_ceil(n);
  const std::size_t below = above / 2;
  throw Error(ErrorCode::kLength, std::string(what) + ": length " + std::to_string(n) +
                                      " is not a power of two (nearest: " + std::to_string(below) +
                                      " and " + std::to_string(above) + ")");
}

std::vector<Complex> twiddle_table(std::size_t n, std::size_t count) {
  std::vector<Complex> table(count);
  for (std::size_t m = 0; m < count; ++m) table[m] = omega_power(m, n);
  return table;
}

// out[k] = sum_j x[j] * w^{jk}, with w^m taken from the table (or its
// conjugate for the inverse kernel).
std::vector<Complex> naive_transform(std::span<const Complex> x, bool inverse) {
  const std::size_t n = x.size();
  const std::vector<Complex> table = twiddle_table(n, n);
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    std::size_t index = 0;  // (j * k) mod n
    for (std::size_t j = 0; j < n; ++j) {
      const Complex& w = table[index];
      acc += x[j] * (inverse ? std::conj(w) : w);
      index += k;
      if (index >= n) index -= n;
    }
    out[k] = acc;
  }
  return out;
}

std::vector<Complex> radix2_transform(std::span<const Complex> x, bool inverse) {
  const std::size_t n = x.size();
  std::vector<Complex> a(x.begin(), x.end());
  if (n == 1) return a;

  const int bits = std::countr_zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rev = 0;
    for (int b = 0; b < bits; ++b) rev |= ((i >> b) & 1u) << (bits - 1 - b);
    if (i < rev) std::swap(a[i], a[rev]);
  }

  std::vector<Complex> table = twiddle_table(n, n / 2);
  if (inverse) {
    for (Complex& w : table) w = std::conj(w);
  }

  for (std::size_t half = 1; half < n; half *= 2) {
    const std::size_t stride = n / (2 * half);
    for (std::size_t start = 0; start < n; start += 2 * half) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex t = table[j * stride] * a[start + j + half];
        const Complex u = a[start + j];
        a[start + j] = u + t;
        a[start + j + half] = u - t;
      }
    }
  }
  return a;
}

std::vector<Complex> to_complex(std::span<const double> samples) {
  return std::vector<Complex>(samples.begin(), samples.end());
}

double max_abs(std::span<const Complex> values) {
  double m = 0.0;
  for (const Complex& v : values) m = std::max(m, std::abs(v));
  return m;
}

void scale(std::vector<Complex>& values, double factor) {
  for (Complex& v : values) v *= factor;
}

}  // namespace

std::vector<double> real_part_checked(std::span<const Complex> values, double reference) {
  const double bound = kTolerance * reference;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i].imag()) > bound) {
      throw Error(ErrorCode::kNumerical,
                  "imaginary residue " + std::to_string(std::abs(values[i].imag())) +
                      " at sample " + std::to_string(i) + " exceeds " + std::to_string(bound));
    }
    out[i] = values[i].real();
  }
  return out;
}

std::vector<Complex> zero_padded(const Signal& signal, std::size_t length) {
  std::vector<Complex> out(std::max(length, signal.size()));
  const auto samples = signal.samples();
  std::copy(samples.begin(), samples.end(), out.begin());
  return out;
}

DftMatrix dft_matrix(std::size_t n, const TransformLimits& limits) {
  if (n == 0) throw Error(ErrorCode::kInvalidOrder, "dft_matrix: order must be at least 1");
  if (n > limits.naive_max) {
    throw Error(ErrorCode::kResourceLimit, "dft_matrix: order " + std::to_string(n) +
                                               " exceeds the limit of " +
                                               std::to_string(limits.naive_max));
  }
  const std::vector<Complex> table = twiddle_table(n, n);
  std::vector<Complex> entries(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) entries[j * n + k] = table[(j * k) % n];
  }
  return DftMatrix(n, std::move(entries));
}

std::vector<Complex> DftMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != n_) {
    throw Error(ErrorCode::kShape, "DftMatrix::apply: vector length " + std::to_string(x.size()) +
                                       " does not match order " + std::to_string(n_));
  }
  std::vector<Complex> out(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n_; ++k) acc += entries_[j * n_ + k] * x[k];
    out[j] = acc;
  }
  return out;
}

std::vector<Complex> dft_naive(std::span<const Complex> x, const TransformLimits& limits) {
  check_order(x.size(), limits.naive_max, "dft_naive");
  return naive_transform(x, false);
}

std::vector<Complex> idft_naive(std::span<const Complex> bins, const TransformLimits& limits) {
  check_order(bins.size(), limits.naive_max, "idft_naive");
  std::vector<Complex> out = naive_transform(bins, true);
  scale(out, 1.0 / static_cast<double>(bins.size()));
  return out;
}

Spectrum dft_naive(const Signal& signal, const TransformLimits& limits) {
  return Spectrum(dft_naive(to_complex(signal.samples()), limits), signal.sample_rate());
}

Signal idft_naive(const Spectrum& spectrum, const TransformLimits& limits) {
  const std::vector<Complex> values = idft_naive(spectrum.bins(), limits);
  return Signal(real_part_checked(values, max_abs(spectrum.bins())), spectrum.sample_rate());
}

std::vector<Complex> fft(std::span<const Complex> x, const TransformLimits& limits) {
  check_order(x.size(), limits.fft_max, "fft");
  check_power_of_two(x.size(), "fft");
  return radix2_transform(x, false);
}

std::vector<Complex> ifft(std::span<const Complex> bins, const TransformLimits& limits) {
  check_order(bins.size(), limits.fft_max, "ifft");
  check_power_of_two(bins.size(), "ifft");
  std::vector<Complex> out = radix2_transform(bins, true);
  scale(out, 1.0 / static_cast<double>(bins.size()));
  return out;
}

Spectrum fft(const Signal& signal, const TransformLimits& limits) {
  return Spectrum(fft(to_complex(signal.samples()), limits), signal.sample_rate());
}

Signal ifft(const Spectrum& spectrum, const TransformLimits& limits) {
  const std::vector<Complex> values = ifft(spectrum.bins(), limits);
  return Signal(real_part_checked(values, max_abs(spectrum.bins())), spectrum.sample_rate());
}

}  // namespace dftkit

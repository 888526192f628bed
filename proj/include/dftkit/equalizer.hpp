#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dftkit/dft.hpp"

namespace dftkit {

/// Half-open frequency interval [low_hz, high_hz) with a multiplicative gain.
/// high_hz may be +infinity to mean "up to Nyquist".
struct GainBand {
  double low_hz;
  double high_hz;
  double gain;
};

/// Sorted, non-overlapping bands.  Frequencies outside every band pass
/// through with gain 1.
struct GainProfile {
  std::vector<GainBand> bands;
  std::optional<std::string> name;

  /// Throws kProfileValidation on unsorted/overlapping bands or bad values.
  void validate() const;
  /// Gain applied to a frequency, 1.0 when no band contains it.
  double gain_at(double frequency_hz) const noexcept;
};

/// Per-bin diagonal of the amplification matrix, mirrored so that
/// gains[k] == gains[n-k].
struct GainVector {
  std::vector<double> gains;
  SampleRate sample_rate = 0;
};

GainVector build_gain_vector(const GainProfile& profile, std::size_t n, SampleRate sample_rate);

/// bins[k] * gains[k].
std::vector<Complex> apply_gains(std::span<const Complex> bins, const GainVector& gains);

/// ifft(A * fft(x padded)) over the full padded length, before truncation
/// and clamping.
std::vector<double> equalize_padded(const Signal& signal, const GainProfile& profile);

/// As equalize() but without the final clamp to [-1, 1].
std::vector<double> equalize_unclamped(const Signal& signal, const GainProfile& profile);

/// Diagonal equalization in the Fourier basis.  Output has the input's length
/// and rate, clamped to [-1, 1].
Signal equalize(const Signal& signal, const GainProfile& profile);

/// Upper edges of the first four preset bands; the fifth runs to Nyquist.
inline constexpr double kPresetEdgesHz[] = {160.0, 320.0, 640.0, 5000.0};

/// "treble", "bass-boost", or "identity".
GainProfile preset(std::string_view name);
std::vector<std::string> preset_names();

/// Parses `low_hz,high_hz,gain` lines; '#' starts a comment.
GainProfile parse_profile(std::string_view text);
GainProfile load_profile(const std::filesystem::path& path);

}  // namespace dftkit

#include "dftkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace dftkit {

Signal sine(double frequency_hz, double amplitude, double duration_s, SampleRate sample_rate) {
  if (sample_rate == 0) throw Error(ErrorCode::kDomain, "sine: sample rate must be positive");
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) {
    throw Error(ErrorCode::kDomain, "sine: frequency must be positive");
  }
  const double nyquist = sample_rate / 2.0;
  if (frequency_hz >= nyquist) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "sine: %g Hz is at or above the Nyquist frequency %g Hz",
                  frequency_hz, nyquist);
    throw Error(ErrorCode::kAliasing, msg);
  }
  if (!(amplitude > 0.0 && amplitude <= 1.0)) {
    throw Error(ErrorCode::kDomain, "sine: amplitude must lie in (0, 1]");
  }
  if (!std::isfinite(duration_s) || duration_s <= 0.0) {
    throw Error(ErrorCode::kDomain, "sine: duration must be positive");
  }
  const long long length = std::llround(duration_s * sample_rate);
  if (length < 1) throw Error(ErrorCode::kEmptyInput, "sine: duration rounds to zero samples");

  std::vector<double> samples(static_cast<std::size_t>(length));
  const double step = 2.0 * std::numbers::pi * frequency_hz / sample_rate;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    samples[j] = amplitude * std::sin(step * static_cast<double>(j));
  }
  return Signal(std::move(samples), sample_rate);
}

Signal mix(std::span<const Signal> signals, bool normalize) {
  if (signals.empty()) throw Error(ErrorCode::kEmptyInput, "mix: no signals given");
  const SampleRate rate = signals.front().sample_rate();
  std::size_t length = 0;
  for (const Signal& s : signals) {
    if (s.sample_rate() != rate) {
      throw Error(ErrorCode::kRate, "mix: sample rates differ (" + std::to_string(rate) +
                                        " vs " + std::to_string(s.sample_rate()) + ")");
    }
    length = std::max(length, s.size());
  }
  std::vector<double> out(length, 0.0);
  for (const Signal& s : signals) {
    for (std::size_t j = 0; j < s.size(); ++j) out[j] += s[j];
  }
  if (normalize) {
    const double count = static_cast<double>(signals.size());
    for (double& v : out) v /= count;
  }
  return Signal(std::move(out), rate);
}

Signal tones(std::span<const double> frequencies_hz, double duration_s, SampleRate sample_rate) {
  if (frequencies_hz.empty()) throw Error(ErrorCode::kUsage, "tones: empty frequency list");
  std::vector<Signal> parts;
  parts.reserve(frequencies_hz.size());
  for (double f : frequencies_hz) parts.push_back(sine(f, 1.0, duration_s, sample_rate));
  return mix(parts, true);
}

}  // namespace dftkit

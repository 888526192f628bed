#include "dftkit/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dftkit {

MagnitudeSpectrum magnitude_spectrum(const Spectrum& spectrum) {
  MagnitudeSpectrum mag;
  mag.source_n = spectrum.size();
  mag.sample_rate = spectrum.sample_rate();
  const std::size_t half = spectrum.size() / 2;
  mag.entries.reserve(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    mag.entries.push_back({spectrum.bin_frequency(k), std::abs(spectrum[k])});
  }
  return mag;
}

std::vector<Peak> find_peaks(const MagnitudeSpectrum& mag, double relative_threshold,
                             double min_separation_hz) {
  if (mag.entries.empty()) throw Error(ErrorCode::kEmptyInput, "find_peaks: empty spectrum");
  if (!(relative_threshold > 0.0 && relative_threshold <= 1.0)) {
    throw Error(ErrorCode::kDomain, "find_peaks: threshold must lie in (0, 1]");
  }
  if (!(min_separation_hz >= 0.0) || !std::isfinite(min_separation_hz)) {
    throw Error(ErrorCode::kDomain, "find_peaks: separation must be a nonnegative number");
  }

  const auto& e = mag.entries;
  double global_max = 0.0;
  for (const auto& entry : e) global_max = std::max(global_max, entry.magnitude);
  if (global_max <= 0.0) return {};
  const double floor = relative_threshold * global_max;

  std::vector<Peak> candidates;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double m = e[i].magnitude;
    if (m <= 0.0 || m < floor) continue;
    if (i > 0 && !(m > e[i - 1].magnitude)) continue;
    if (i + 1 < e.size() && !(m > e[i + 1].magnitude)) continue;
    candidates.push_back({i, e[i].frequency_hz, m});
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
  std::vector<Peak> kept;
  for (const Peak& p : candidates) {
    const bool crowded = std::any_of(kept.begin(), kept.end(), [&](const Peak& q) {
      return std::abs(p.frequency_hz - q.frequency_hz) < min_separation_hz;
    });
    if (!crowded) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Peak& a, const Peak& b) { return a.bin_index < b.bin_index; });
  return kept;
}

std::string note_name(int semitones_from_a4) {
  static constexpr std::array<const char*, 12> kNames = {"C",  "C#", "D",  "D#", "E",  "F",
                                                         "F#", "G",  "G#", "A",  "A#", "B"};
  const int midi = 69 + semitones_from_a4;
  const int pitch_class = ((midi % 12) + 12) % 12;
  const int octave = (midi - pitch_class) / 12 - 1;
  return std::string(kNames[pitch_class]) + std::to_string(octave);
}

std::optional<NoteMatch> identify_note(double frequency_hz) {
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) {
    throw Error(ErrorCode::kDomain, "identify_note: frequency must be positive and finite");
  }
  const double semitones = 12.0 * std::log2(frequency_hz / kConcertA);
  const double nearest = std::round(semitones);
  const int index = static_cast<int>(nearest);
  const double reference = kConcertA * std::exp2(index / 12.0);
  const double cents = 1200.0 * std::log2(frequency_hz / reference);
  if (std::abs(cents) > kMaxNoteDeviationCents) return std::nullopt;
  return NoteMatch{note_name(index), reference, cents};
}

Spectrum analysis_spectrum(const Signal& signal, const AnalyzeOptions& options) {
  if (!options.pad) return dft_naive(signal, options.limits);
  const std::vector<Complex> padded = zero_padded(signal, next_power_of_two(signal.size()));
  return Spectrum(fft(padded, options.limits), signal.sample_rate());
}

std::vector<AnalyzedPeak> analyze(const Signal& signal, const AnalyzeOptions& options) {
  const MagnitudeSpectrum mag = magnitude_spectrum(analysis_spectrum(signal, options));
  std::vector<AnalyzedPeak> out;
  for (const Peak& p : find_peaks(mag, options.threshold, options.separation_hz)) {
    // DC peaks have no pitch.
    out.push_back({p, p.frequency_hz > 0.0 ? identify_note(p.frequency_hz) : std::nullopt});
  }
  return out;
}

}  // namespace dftkit

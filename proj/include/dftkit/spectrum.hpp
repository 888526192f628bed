#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dftkit/dft.hpp"

namespace dftkit {

struct MagnitudeEntry {
  double frequency_hz;
  double magnitude;
};

/// Single-sided magnitudes for bins 0 ... floor(n/2) of an n-point spectrum.
struct MagnitudeSpectrum {
  std::vector<MagnitudeEntry> entries;
  std::size_t source_n = 0;
  SampleRate sample_rate = 0;

  double bin_width_hz() const noexcept {
    return static_cast<double>(sample_rate) / static_cast<double>(source_n);
  }
};

struct Peak {
  std::size_t bin_index;
  double frequency_hz;
  double magnitude;
};

struct NoteMatch {
  std::string note_name;  // e.g. "C4", "F#3"
  double reference_hz;
  double deviation_cents;
};

struct AnalyzedPeak {
  Peak peak;
  std::optional<NoteMatch> note;
};

struct AnalyzeOptions {
  double threshold = 0.5;
  double separation_hz = 20.0;
  /// Zero-pad to the next power of two and use the fft.  When false the
  /// naive transform runs at the signal's own length (capped by limits).
  bool pad = true;
  TransformLimits limits{};
};

inline constexpr double kConcertA = 440.0;
inline constexpr double kMaxNoteDeviationCents = 50.0;

MagnitudeSpectrum magnitude_spectrum(const Spectrum& spectrum);

/// Strict local maxima at or above relative_threshold * global max, pruned
/// greedily (largest first) so no two survivors are closer than
/// min_separation_hz.  Result is sorted by ascending frequency.
std::vector<Peak> find_peaks(const MagnitudeSpectrum& mag, double relative_threshold,
                             double min_separation_hz);

/// Nearest equal-tempered pitch (A4 = 440 Hz).  Empty when the deviation
/// exceeds 50 cents.
std::optional<NoteMatch> identify_note(double frequency_hz);

/// Name for the pitch `semitones` away from A4, e.g. 0 -> "A4", -9 -> "C4".
std::string note_name(int semitones_from_a4);

/// Spectrum the analysis pipeline would inspect for this signal.
Spectrum analysis_spectrum(const Signal& signal, const AnalyzeOptions& options = {});

std::vector<AnalyzedPeak> analyze(const Signal& signal, const AnalyzeOptions& options = {});

}  // namespace dftkit

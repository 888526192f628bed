#pragma once

#include <span>
#include <vector>

#include "dftkit/dft.hpp"

namespace dftkit {

/// amplitude * sin(2 pi f j / fs), phase 0, round(duration * fs) samples.
Signal sine(double frequency_hz, double amplitude, double duration_s, SampleRate sample_rate);

/// Per-sample sum, shorter inputs zero-extended.  With normalize the sum is
/// divided by the number of inputs.
Signal mix(std::span<const Signal> signals, bool normalize);

/// Normalized mix of unit-amplitude sines, one per frequency.
Signal tones(std::span<const double> frequencies_hz, double duration_s, SampleRate sample_rate);

}  // namespace dftkit

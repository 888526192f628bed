#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dftkit/dft.hpp"

namespace dftkit {

enum class WavEncoding { kPcm, kFloat };

struct WavMeta {
  std::uint16_t channels = 1;
  std::uint16_t bits_per_sample = 16;
  SampleRate sample_rate = 0;
  std::uint64_t frame_count = 0;
  WavEncoding encoding = WavEncoding::kPcm;
};

struct WavData {
  Signal signal;  // mono, downmixed
  WavMeta meta;   // layout as stored in the file
};

/// 1 channel -> copy; 2 channels -> per-sample mean.
std::vector<double> downmix_mono(std::span<const std::vector<double>> channels);

// PCM-16 decodes as q / 32768 and encodes as round(a * 32768) clipped to
// [-32768, 32767], so 1.0 maps to 32767 and every in-range amplitude
// round-trips within 1/32768.
std::int16_t encode_pcm16(double amplitude) noexcept;
inline double decode_pcm16(std::int16_t q) noexcept { return q / 32768.0; }

WavData decode_wav(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_wav(const Signal& signal, int bits);

WavData read_wav(const std::filesystem::path& path);
WavMeta write_wav(const Signal& signal, const std::filesystem::path& path, int bits = 16);

}  // namespace dftkit

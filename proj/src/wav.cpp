#include "dftkit/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

namespace dftkit {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char (&tag)[5]) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

std::string tag_at(std::span<const std::uint8_t> b, std::size_t at) {
  std::string s(reinterpret_cast<const char*>(b.data() + at), 4);
  for (char& c : s) {
    if (c < 0x20 || c > 0x7e) c = '?';
  }
  return s;
}

[[noreturn]] void format_error(const std::string& chunk, const std::string& what) {
  throw Error(ErrorCode::kFormat, "'" + chunk + "' chunk: " + what);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

struct FmtChunk {
  std::uint16_t format;
  std::uint16_t channels;
  std::uint32_t sample_rate;
  std::uint16_t block_align;
  std::uint16_t bits;
};

FmtChunk parse_fmt(std::span<const std::uint8_t> body) {
  if (body.size() < 16) format_error("fmt ", "shorter than 16 bytes");
  FmtChunk f{read_u16(body, 0), read_u16(body, 2), read_u32(body, 4), read_u16(body, 12),
             read_u16(body, 14)};
  if (f.format != kFormatPcm && f.format != kFormatFloat) {
    format_error("fmt ", "unsupported format code " + std::to_string(f.format));
  }
  if (f.format == kFormatPcm && f.bits != 16) {
    format_error("fmt ", "unsupported PCM bit depth " + std::to_string(f.bits));
  }
  if (f.format == kFormatFloat && f.bits != 32) {
    format_error("fmt ", "unsupported float bit depth " + std::to_string(f.bits));
  }
  if (f.channels != 1 && f.channels != 2) {
    format_error("fmt ", "unsupported channel count " + std::to_string(f.channels));
  }
  if (f.sample_rate == 0) format_error("fmt ", "sample rate is zero");
  if (f.block_align != f.channels * (f.bits / 8)) {
    format_error("fmt ", "block align " + std::to_string(f.block_align) +
                             " does not match channels and bit depth");
  }
  return f;
}

}  // namespace

std::vector<double> downmix_mono(std::span<const std::vector<double>> channels) {
  if (channels.size() == 1) return channels[0];
  if (channels.size() != 2) {
    throw Error(ErrorCode::kShape,
                "downmix_mono: expected 1 or 2 channels, got " + std::to_string(channels.size()));
  }
  if (channels[0].size() != channels[1].size()) {
    throw Error(ErrorCode::kShape, "downmix_mono: channel lengths differ");
  }
  std::vector<double> out(channels[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (channels[0][i] + channels[1][i]);
  return out;
}

std::int16_t encode_pcm16(double amplitude) noexcept {
  const long q = std::lround(amplitude * 32768.0);
  return static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
}

WavData decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) format_error("RIFF", "file shorter than the 12-byte header");
  if (!tag_is(bytes, 0, "RIFF")) format_error("RIFF", "missing RIFF signature");
  if (!tag_is(bytes, 8, "WAVE")) format_error("RIFF", "form type is not WAVE");

  std::optional<FmtChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string tag = tag_at(bytes, pos);
    const std::uint64_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) format_error(tag, "size runs past end of file");
    const auto contents = bytes.subspan(body, static_cast<std::size_t>(size));
    if (tag == "fmt ") {
      fmt = parse_fmt(contents);
    } else if (tag == "data") {
      data = contents;
    }
    // Anything else (LIST, fact, cue ...) is skipped.
    pos = body + static_cast<std::size_t>(size) + (size & 1u);
  }
  if (!fmt) format_error("fmt ", "missing");
  if (!data) format_error("data", "missing");
  if (data->empty()) throw Error(ErrorCode::kEmptyInput, "'data' chunk holds no samples");
  if (data->size() % fmt->block_align != 0) {
    format_error("data", "size is not a whole number of frames");
  }

  const std::size_t frames = data->size() / fmt->block_align;
  std::vector<std::vector<double>> channels(fmt->channels, std::vector<double>(frames));
  const std::size_t width = fmt->bits / 8;
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const std::size_t at = f * fmt->block_align + c * width;
      double value = 0.0;
      if (fmt->format == kFormatPcm) {
        value = decode_pcm16(static_cast<std::int16_t>(read_u16(*data, at)));
      } else {
        const float v = std::bit_cast<float>(read_u32(*data, at));
        if (!std::isfinite(v)) format_error("data", "non-finite float sample at frame " +
                                                        std::to_string(f));
        value = std::clamp(static_cast<double>(v), -1.0, 1.0);
      }
      channels[c][f] = value;
    }
  }

  WavMeta meta{fmt->channels, fmt->bits, fmt->sample_rate, frames,
               fmt->format == kFormatPcm ? WavEncoding::kPcm : WavEncoding::kFloat};
  return WavData{Signal(downmix_mono(channels), fmt->sample_rate), meta};
}

std::vector<std::uint8_t> encode_wav(const Signal& signal, int bits) {
  if (bits != 16 && bits != 32) {
    throw Error(ErrorCode::kDomain, "write_wav: bits must be 16 or 32, got " + std::to_string(bits));
  }
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (std::abs(signal[i]) > 1.0) {
      throw Error(ErrorCode::kRange, "write_wav: sample " + std::to_string(i) +
                                         " is outside [-1, 1]");
    }
  }
  const std::uint16_t width = static_cast<std::uint16_t>(bits / 8);
  const std::uint64_t data_size = signal.size() * width;
  if (data_size > 0xffffffffull - 36) {
    throw Error(ErrorCode::kResourceLimit, "write_wav: signal too long for a RIFF file");
  }

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_size));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, bits == 16 ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, signal.sample_rate());
  put_u32(out, signal.sample_rate() * width);
  put_u16(out, width);
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_size));
  for (double s : signal.samples()) {
    if (bits == 16) {
      put_u16(out, static_cast<std::uint16_t>(encode_pcm16(s)));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
    }
  }
  return out;
}

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path.string());
  return decode_wav(bytes);
}

WavMeta write_wav(const Signal& signal, const std::filesystem::path& path, int bits) {
  const std::vector<std::uint8_t> bytes = encode_wav(signal, bits);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "error writing " + path.string());
  return WavMeta{1, static_cast<std::uint16_t>(bits), signal.sample_rate(), signal.size(),
                 bits == 16 ? WavEncoding::kPcm : WavEncoding::kFloat};
}

}  // namespace dftkit

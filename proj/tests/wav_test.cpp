#include "dftkit/wav.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include "oracle.hpp"

namespace dftkit {
namespace {

namespace fs = std::filesystem;

// Minimal independent RIFF builder for hand-made fixtures.
class RiffBuilder {
 public:
  RiffBuilder& chunk(const char* tag, const std::vector<std::uint8_t>& body) {
    chunks_.insert(chunks_.end(), tag, tag + 4);
    u32(chunks_, static_cast<std::uint32_t>(body.size()));
    chunks_.insert(chunks_.end(), body.begin(), body.end());
    if (body.size() % 2) chunks_.push_back(0);
    return *this;
  }
  RiffBuilder& fmt(std::uint16_t code, std::uint16_t channels, std::uint32_t rate,
                   std::uint16_t bits) {
    std::vector<std::uint8_t> b;
    u16(b, code);
    u16(b, channels);
    u32(b, rate);
    u32(b, rate * channels * bits / 8);
    u16(b, static_cast<std::uint16_t>(channels * bits / 8));
    u16(b, bits);
    return chunk("fmt ", b);
  }
  std::vector<std::uint8_t> build() const {
    std::vector<std::uint8_t> out = {'R', 'I', 'F', 'F'};
    u32(out, static_cast<std::uint32_t>(4 + chunks_.size()));
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), chunks_.begin(), chunks_.end());
    return out;
  }
  static void u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(x & 0xff);
    v.push_back(x >> 8);
  }
  static void u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) v.push_back((x >> (8 * i)) & 0xff);
  }

 private:
  std::vector<std::uint8_t> chunks_;
};

std::vector<std::uint8_t> Pcm16(std::initializer_list<std::int16_t> values) {
  std::vector<std::uint8_t> b;
  for (std::int16_t v : values) RiffBuilder::u16(b, static_cast<std::uint16_t>(v));
  return b;
}

ErrorCode DecodeError(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_wav(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode succeeded";
  return ErrorCode::kUsage;
}

fs::path TempPath(const std::string& name) { return fs::temp_directory_path() / name; }

TEST(Downmix, Examples) {
  const std::vector<std::vector<double>> mono = {{1, 2, 3}};
  EXPECT_EQ(downmix_mono(mono), (std::vector<double>{1, 2, 3}));
  const std::vector<std::vector<double>> cancel = {{1, 1}, {-1, -1}};
  EXPECT_EQ(downmix_mono(cancel), (std::vector<double>{0, 0}));
  const std::vector<std::vector<double>> mean = {{0.2, 0.4}, {0.6, 0.0}};
  const auto m = downmix_mono(mean);
  EXPECT_NEAR(m[0], 0.4, 1e-15);
  EXPECT_NEAR(m[1], 0.2, 1e-15);
}

TEST(Downmix, ShapeErrors) {
  const std::vector<std::vector<double>> ragged = {{1, 2}, {1}};
  EXPECT_THROW(downmix_mono(ragged), Error);
  const std::vector<std::vector<double>> three = {{1}, {1}, {1}};
  EXPECT_THROW(downmix_mono(three), Error);
}

TEST(WavWrite, Pcm16Bytes) {
  const auto one = encode_wav(Signal({1.0}, 8000), 16);
  ASSERT_EQ(one.size(), 46u);
  EXPECT_EQ(one[44], 0xFF);
  EXPECT_EQ(one[45], 0x7F);
  const auto zero = encode_wav(Signal({0.0}, 8000), 16);
  EXPECT_EQ(zero[44], 0x00);
  EXPECT_EQ(zero[45], 0x00);
  const auto neg = encode_wav(Signal({-1.0}, 8000), 16);
  EXPECT_EQ(neg[44], 0x00);
  EXPECT_EQ(neg[45], 0x80);
}

TEST(WavWrite, Float32Layout) {
  const auto bytes = encode_wav(Signal(std::vector<double>(44100, 0.25), 44100), 32);
  auto u32 = [&](std::size_t at) {
    return bytes[at] | bytes[at + 1] << 8 | bytes[at + 2] << 16 | bytes[at + 3] << 24;
  };
  EXPECT_EQ(std::memcmp(bytes.data(), "RIFF", 4), 0);
  EXPECT_EQ(u32(4), 36 + 176400);
  EXPECT_EQ(bytes[20] | bytes[21] << 8, 3);  // format code
  EXPECT_EQ(bytes[22] | bytes[23] << 8, 1);  // mono
  EXPECT_EQ(u32(24), 44100);
  EXPECT_EQ(bytes[34] | bytes[35] << 8, 32);
  EXPECT_EQ(std::memcmp(bytes.data() + 36, "data", 4), 0);
  EXPECT_EQ(u32(40), 176400);
  EXPECT_EQ(bytes.size(), 44u + 176400u);
}

TEST(WavWrite, Deterministic) {
  std::mt19937_64 rng(1);
  const Signal s(oracle::random_real(rng, 999), 22050);
  EXPECT_EQ(encode_wav(s, 16), encode_wav(s, 16));
  const auto a = TempPath("dftkit_det_a.wav"), b = TempPath("dftkit_det_b.wav");
  write_wav(s, a, 32);
  write_wav(s, b, 32);
  EXPECT_EQ(read_wav(a).signal.size(), 999u);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  EXPECT_TRUE(std::equal(std::istreambuf_iterator<char>(fa), {}, std::istreambuf_iterator<char>(fb)));
  fs::remove(a);
  fs::remove(b);
}

TEST(WavWrite, Errors) {
  EXPECT_THROW(encode_wav(Signal({1.5}, 8000), 16), Error);
  try {
    encode_wav(Signal({0.0, -1.0001}, 8000), 32);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRange);
  }
  EXPECT_THROW(encode_wav(Signal({0.0}, 8000), 24), Error);
  try {
    write_wav(Signal({0.0}, 8000), "/nonexistent-dir/x.wav");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(WavRead, QuantizedExample) {
  const auto path = TempPath("dftkit_example.wav");
  const WavMeta written = write_wav(Signal({0, 0.5, -0.5, 1}, 8000), path, 16);
  EXPECT_EQ(written.frame_count, 4u);
  const WavData wav = read_wav(path);
  const double want[] = {0.0, 16383.0 / 32768.0, -0.5, 32767.0 / 32768.0};
  ASSERT_EQ(wav.signal.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(wav.signal[i], want[i], 1.0 / 32768.0);
  EXPECT_EQ(wav.meta.sample_rate, 8000u);
  EXPECT_EQ(wav.meta.channels, 1);
  EXPECT_EQ(wav.meta.bits_per_sample, 16);
  EXPECT_EQ(wav.meta.encoding, WavEncoding::kPcm);
  fs::remove(path);
}

TEST(WavRead, StereoEqualChannels) {
  const auto bytes = RiffBuilder()
                         .fmt(1, 2, 8000, 16)
                         .chunk("data", Pcm16({1000, 1000, -2000, -2000, 32767, 32767}))
                         .build();
  const WavData wav = decode_wav(bytes);
  EXPECT_EQ(wav.meta.channels, 2);
  EXPECT_EQ(wav.meta.frame_count, 3u);
  ASSERT_EQ(wav.signal.size(), 3u);
  EXPECT_NEAR(wav.signal[0], 1000 / 32768.0, 1e-9);
  EXPECT_NEAR(wav.signal[1], -2000 / 32768.0, 1e-9);
  EXPECT_NEAR(wav.signal[2], 32767 / 32768.0, 1e-9);
}

TEST(WavRead, StereoAverages) {
  const auto bytes =
      RiffBuilder().fmt(1, 2, 8000, 16).chunk("data", Pcm16({16384, -16384, 8192, 0})).build();
  const WavData wav = decode_wav(bytes);
  EXPECT_NEAR(wav.signal[0], 0.0, 1e-12);
  EXPECT_NEAR(wav.signal[1], 0.125, 1e-12);
}

TEST(WavRead, SkipsAuxiliaryAndOddChunks) {
  const auto bytes = RiffBuilder()
                         .chunk("LIST", {'I', 'N', 'F', 'O', 'x'})  // odd size, padded
                         .fmt(1, 1, 11025, 16)
                         .chunk("junk", {1, 2, 3})
                         .chunk("data", Pcm16({-32768, 16384}))
                         .build();
  const WavData wav = decode_wav(bytes);
  ASSERT_EQ(wav.signal.size(), 2u);
  EXPECT_EQ(wav.signal[0], -1.0);
  EXPECT_EQ(wav.signal[1], 0.5);
  EXPECT_EQ(wav.meta.sample_rate, 11025u);
}

TEST(WavRead, FloatClampsAndRejectsNan) {
  std::vector<std::uint8_t> data;
  for (float f : {0.5f, 1.5f, -2.0f}) RiffBuilder::u32(data, std::bit_cast<std::uint32_t>(f));
  const WavData wav = decode_wav(RiffBuilder().fmt(3, 1, 8000, 32).chunk("data", data).build());
  EXPECT_EQ(wav.signal[0], 0.5);
  EXPECT_EQ(wav.signal[1], 1.0);
  EXPECT_EQ(wav.signal[2], -1.0);
  EXPECT_EQ(wav.meta.encoding, WavEncoding::kFloat);

  std::vector<std::uint8_t> bad;
  RiffBuilder::u32(bad, std::bit_cast<std::uint32_t>(std::numeric_limits<float>::quiet_NaN()));
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(3, 1, 8000, 32).chunk("data", bad).build()),
            ErrorCode::kFormat);
}

TEST(WavRead, MalformedFixtures) {
  const auto good = RiffBuilder().fmt(1, 1, 8000, 16).chunk("data", Pcm16({1, 2, 3, 4})).build();
  ASSERT_NO_THROW(decode_wav(good));

  // Every strict prefix that cuts into a header or chunk body is rejected.
  for (std::size_t len = 0; len < good.size(); ++len) {
    const std::vector<std::uint8_t> cut(good.begin(), good.begin() + len);
    EXPECT_EQ(DecodeError(cut), ErrorCode::kFormat) << "prefix " << len;
  }

  auto bad_sig = good;
  bad_sig[0] = 'X';
  EXPECT_EQ(DecodeError(bad_sig), ErrorCode::kFormat);
  auto bad_form = good;
  bad_form[8] = 'A';
  EXPECT_EQ(DecodeError(bad_form), ErrorCode::kFormat);

  EXPECT_EQ(DecodeError(RiffBuilder().fmt(1, 1, 8000, 24).chunk("data", {0, 0, 0}).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(2, 1, 8000, 16).chunk("data", Pcm16({0})).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(1, 3, 8000, 16).chunk("data", Pcm16({0, 0, 0})).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(3, 1, 8000, 16).chunk("data", Pcm16({0})).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(1, 1, 0, 16).chunk("data", Pcm16({0})).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().chunk("fmt ", {1, 0, 1, 0}).chunk("data", Pcm16({0})).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().chunk("data", Pcm16({0})).build()), ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(1, 1, 8000, 16).build()), ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(1, 2, 8000, 16).chunk("data", Pcm16({0})).build()),
            ErrorCode::kFormat);
  EXPECT_EQ(DecodeError(RiffBuilder().fmt(1, 1, 8000, 16).chunk("data", {}).build()),
            ErrorCode::kEmptyInput);
}

TEST(WavRead, FormatErrorNamesChunk) {
  try {
    decode_wav(RiffBuilder().fmt(1, 1, 8000, 24).chunk("data", {0, 0, 0}).build());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fmt "), std::string::npos);
  }
}

TEST(WavRead, MissingFile) {
  try {
    read_wav("/nonexistent/missing.wav");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/missing.wav"), std::string::npos);
  }
}

TEST(WavRoundTrip, Pcm16WithinOneStep) {
  std::mt19937_64 rng(77);
  auto samples = oracle::random_real(rng, 20000);
  // Dense sweep of the extremes where an asymmetric scale would drift.
  for (int i = 0; i <= 2000; ++i) {
    samples.push_back(1.0 - i * 1e-6);
    samples.push_back(-1.0 + i * 1e-6);
  }
  const Signal s(samples, 44100);
  const WavData back = decode_wav(encode_wav(s, 16));
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(back.signal[i] - s[i]));
  EXPECT_LE(worst, 1.0 / 32768.0);
}

TEST(WavRoundTrip, Float32) {
  std::mt19937_64 rng(78);
  const Signal s(oracle::random_real(rng, 20000), 48000);
  const auto path = TempPath("dftkit_float.wav");
  write_wav(s, path, 32);
  const WavData back = read_wav(path);
  EXPECT_EQ(back.meta.bits_per_sample, 32);
  EXPECT_EQ(back.meta.sample_rate, 48000u);
  for (std::size_t i = 0; i < s.size(); ++i) ASSERT_LE(std::abs(back.signal[i] - s[i]), 1e-7);
  fs::remove(path);
}

}  // namespace
}  // namespace dftkit

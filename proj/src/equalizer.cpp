#include "dftkit/equalizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace dftkit {

void GainProfile::validate() const {
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const GainBand& b = bands[i];
    const std::string where = "band " + std::to_string(i);
    if (!std::isfinite(b.low_hz) || b.low_hz < 0.0) {
      throw Error(ErrorCode::kProfileValidation, where + ": low edge must be finite and >= 0");
    }
    if (std::isnan(b.high_hz) || !(b.high_hz > b.low_hz)) {
      throw Error(ErrorCode::kProfileValidation, where + ": high edge must exceed low edge");
    }
    if (!std::isfinite(b.gain) || b.gain < 0.0) {
      throw Error(ErrorCode::kProfileValidation, where + ": gain must be finite and >= 0");
    }
    if (i > 0) {
      const GainBand& prev = bands[i - 1];
      if (b.low_hz < prev.low_hz) {
        throw Error(ErrorCode::kProfileValidation, where + ": bands are not sorted by low edge");
      }
      if (b.low_hz < prev.high_hz) {
        throw Error(ErrorCode::kProfileValidation,
                    where + ": overlaps band " + std::to_string(i - 1));
      }
    }
  }
}

double GainProfile::gain_at(double frequency_hz) const noexcept {
  for (const GainBand& b : bands) {
    if (frequency_hz >= b.low_hz && frequency_hz < b.high_hz) return b.gain;
  }
  return 1.0;
}

GainVector build_gain_vector(const GainProfile& profile, std::size_t n, SampleRate sample_rate) {
  if (n == 0) throw Error(ErrorCode::kInvalidOrder, "build_gain_vector: n must be at least 1");
  if (sample_rate == 0) throw Error(ErrorCode::kDomain, "build_gain_vector: sample rate is zero");
  profile.validate();

  GainVector out{std::vector<double>(n, 1.0), sample_rate};
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) * sample_rate / static_cast<double>(n);
    const double g = profile.gain_at(f);
    out.gains[k] = g;
    if (k != 0) out.gains[n - k] = g;
  }
  return out;
}

std::vector<Complex> apply_gains(std::span<const Complex> bins, const GainVector& gains) {
  if (bins.size() != gains.gains.size()) {
    throw Error(ErrorCode::kShape, "apply_gains: " + std::to_string(bins.size()) + " bins vs " +
                                       std::to_string(gains.gains.size()) + " gains");
  }
  std::vector<Complex> out(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) out[k] = bins[k] * gains.gains[k];
  return out;
}

std::vector<double> equalize_padded(const Signal& signal, const GainProfile& profile) {
  const std::size_t n = next_power_of_two(signal.size());
  const GainVector gains = build_gain_vector(profile, n, signal.sample_rate());
  const std::vector<Complex> spectrum = fft(zero_padded(signal, n));
  const std::vector<Complex> shaped = ifft(apply_gains(spectrum, gains));
  return real_part_checked(shaped, signal.peak());
}

std::vector<double> equalize_unclamped(const Signal& signal, const GainProfile& profile) {
  std::vector<double> out = equalize_padded(signal, profile);
  out.resize(signal.size());
  return out;
}

Signal equalize(const Signal& signal, const GainProfile& profile) {
  std::vector<double> out = equalize_unclamped(signal, profile);
  for (double& s : out) s = std::clamp(s, -1.0, 1.0);
  return Signal(std::move(out), signal.sample_rate());
}

namespace {

GainProfile five_band(std::string name, const double (&gains)[5]) {
  GainProfile p;
  p.name = std::move(name);
  double low = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const double high = i < 4 ? kPresetEdgesHz[i] : std::numeric_limits<double>::infinity();
    p.bands.push_back({low, high, gains[i]});
    low = high;
  }
  return p;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::kProfileValidation, "line " + std::to_string(line_no) +
                                                   ": cannot parse number '" +
                                                   std::string(field) + "'");
  }
  return value;
}

}  // namespace

GainProfile preset(std::string_view name) {
  if (name == "treble") return five_band("treble", {0.1, 0.25, 0.5, 1.0, 1.0});
  if (name == "bass-boost") return five_band("bass-boost", {1.0, 1.0, 0.5, 0.25, 0.1});
  if (name == "identity") return GainProfile{{}, std::string("identity")};
  std::string valid;
  for (const std::string& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::kUnknownPreset,
              "unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
}

std::vector<std::string> preset_names() { return {"treble", "bass-boost", "identity"}; }

GainProfile parse_profile(std::string_view text) {
  GainProfile profile;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kProfileValidation,
                  "line " + std::to_string(line_no) + ": expected low_hz,high_hz,gain");
    }
    profile.bands.push_back({parse_number(line.substr(0, c1), line_no),
                             parse_number(line.substr(c1 + 1, c2 - c1 - 1), line_no),
                             parse_number(line.substr(c2 + 1), line_no)});
  }
  profile.validate();
  return profile;
}

GainProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  GainProfile profile = parse_profile(buf.str());
  profile.name = path.filename().string();
  return profile;
}

}  // namespace dftkit

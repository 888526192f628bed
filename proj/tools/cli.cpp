#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <vector>

#include <CLI11.hpp>

#include "dftkit/bench.hpp"
#include "dftkit/equalizer.hpp"
#include "dftkit/spectrum.hpp"
#include "dftkit/synth.hpp"
#include "dftkit/wav.hpp"

namespace dftkit::cli {

namespace {

std::string format(const char* fmt, auto... values) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, values...);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  return f;
}

struct AnalyzeArgs {
  std::string input;
  double threshold = 0.5;
  double separation_hz = 20.0;
  std::string csv;
  bool no_pad = false;
};

void cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const WavData wav = read_wav(a.input);
  AnalyzeOptions options;
  options.threshold = a.threshold;
  options.separation_hz = a.separation_hz;
  options.pad = !a.no_pad;

  const MagnitudeSpectrum mag = magnitude_spectrum(analysis_spectrum(wav.signal, options));
  for (const Peak& p : find_peaks(mag, options.threshold, options.separation_hz)) {
    const auto note = p.frequency_hz > 0.0 ? identify_note(p.frequency_hz) : std::nullopt;
    out << format("%.4f  %.6g  ", p.frequency_hz, p.magnitude)
        << (note ? note->note_name + format("  %+.2f", note->deviation_cents) : std::string("-  -"))
        << '\n';
  }

  if (!a.csv.empty()) {
    std::ofstream csv = open_output(a.csv);
    csv << "bin,frequency_hz,magnitude\n";
    for (std::size_t k = 0; k < mag.entries.size(); ++k) {
      csv << k << ',' << format("%.10g,%.10g", mag.entries[k].frequency_hz, mag.entries[k].magnitude)
          << '\n';
    }
    if (!csv) throw Error(ErrorCode::kIo, "error writing " + a.csv);
  }
}

struct EqualizeArgs {
  std::string input;
  std::string output;
  std::string preset_name;
  std::string profile_path;
};

void cmd_equalize(const EqualizeArgs& a, std::ostream& out) {
  if (a.preset_name.empty() == a.profile_path.empty()) {
    throw Error(ErrorCode::kUsage, "equalize: give exactly one of --preset or --profile");
  }
  const GainProfile profile =
      a.preset_name.empty() ? load_profile(a.profile_path) : preset(a.preset_name);
  profile.validate();
  const WavData wav = read_wav(a.input);
  const Signal result = equalize(wav.signal, profile);
  write_wav(result, a.output, wav.meta.bits_per_sample);

  out << "profile " << profile.name.value_or("(unnamed)") << '\n';
  if (profile.bands.empty()) out << "no bands: every frequency passes with gain 1\n";
  for (const GainBand& b : profile.bands) {
    const std::string high = std::isinf(b.high_hz) ? "Nyquist" : format("%g Hz", b.high_hz);
    out << format("band %g Hz-%s  gain %g\n", b.low_hz, high.c_str(), b.gain);
  }
}

struct SynthArgs {
  std::string output;
  std::vector<double> freqs;
  double duration = 1.0;
  SampleRate rate = 44100;
};

void cmd_synth(const SynthArgs& a, std::ostream& out) {
  if (a.freqs.empty()) throw Error(ErrorCode::kUsage, "synth: --freqs needs at least one value");
  const Signal s = tones(a.freqs, a.duration, a.rate);
  write_wav(s, a.output, 16);
  out << "wrote " << s.size() << " samples at " << a.rate << " Hz to " << a.output << '\n';
}

struct BenchArgs {
  std::vector<std::size_t> sizes{256, 1024, 4096};
  int repeats = 5;
  std::string csv;
};

void cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions options;
  options.repeats = a.repeats;
  const std::vector<BenchRow> rows = run_bench(a.sizes, options);

  out << format("%10s %14s %14s %10s %12s\n", "n", "naive_ms", "fft_ms", "ratio", "max_diff");
  for (const BenchRow& r : rows) {
    const std::string naive = r.naive_seconds ? format("%.6f", *r.naive_seconds * 1e3) : "-";
    const std::string ratio = r.ratio() ? format("%.2f", *r.ratio()) : "-";
    out << format("%10zu %14s %14.6f %10s %12.3g\n", r.n, naive.c_str(), r.fft_seconds * 1e3,
                  ratio.c_str(), r.max_abs_difference);
  }

  if (!a.csv.empty()) {
    std::ofstream csv = open_output(a.csv);
    csv << "n,naive_seconds,fft_seconds,ratio,max_abs_difference\n";
    for (const BenchRow& r : rows) {
      csv << r.n << ',' << (r.naive_seconds ? format("%.9g", *r.naive_seconds) : "") << ','
          << format("%.9g", r.fft_seconds) << ',' << (r.ratio() ? format("%.9g", *r.ratio()) : "")
          << ',' << format("%.3g", r.max_abs_difference) << '\n';
    }
    if (!csv) throw Error(ErrorCode::kIo, "error writing " + a.csv);
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DFT toolkit: spectrum analysis, equalization and benchmarking of WAV audio"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "List spectral peaks and their nearest notes");
  analyze->add_option("input", analyze_args.input, "Input WAV file")->required();
  analyze->add_option("--threshold", analyze_args.threshold, "Peak floor relative to the maximum")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  analyze->add_option("--separation-hz", analyze_args.separation_hz, "Minimum peak spacing")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  analyze->add_option("--csv", analyze_args.csv, "Write the half spectrum as CSV");
  analyze->add_flag("--no-pad", analyze_args.no_pad,
                    "Transform at the native length with the naive DFT (max 8192 samples)");

  EqualizeArgs eq_args;
  auto* eq = app.add_subcommand("equalize", "Apply a band gain profile in the frequency domain");
  eq->add_option("input", eq_args.input, "Input WAV file")->required();
  eq->add_option("output", eq_args.output, "Output WAV file")->required();
  auto* preset_opt = eq->add_option("--preset", eq_args.preset_name, "treble | bass-boost | identity");
  auto* profile_opt = eq->add_option("--profile", eq_args.profile_path, "Band file (low,high,gain)");
  preset_opt->excludes(profile_opt);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write a normalized mix of sine tones (PCM-16)");
  synth->add_option("output", synth_args.output, "Output WAV file")->required();
  synth->add_option("--freqs", synth_args.freqs, "Comma-separated frequencies in Hz")
      ->delimiter(',')
      ->required();
  synth->add_option("--duration", synth_args.duration, "Seconds")->capture_default_str();
  synth->add_option("--rate", synth_args.rate, "Sample rate in Hz")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time dft_naive against fft");
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated powers of two")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--repeats", bench_args.repeats, "Timing samples per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--csv", bench_args.csv, "Write results as CSV");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) cmd_analyze(analyze_args, out);
    if (*eq) cmd_equalize(eq_args, out);
    if (*synth) cmd_synth(synth_args, out);
    if (*bench) cmd_bench(bench_args, out);
  } catch (const Error& e) {
    err << "dftkit: " << e.what() << '\n';
    return e.code() == ErrorCode::kUsage ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "dftkit: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace dftkit::cli

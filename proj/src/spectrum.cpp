#include "autovmd/spectrum.hpp"

#include "autovmd/error.hpp"
#include "autovmd/fft.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace autovmd {

namespace {

constexpr double pi = std::numbers::pi;

std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s)
{
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s)
{
  double v = 0.0;
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty())
    return std::nullopt;
  return v;
}

// Values decaying from `edge` to `floor` over `pad` nodes, ordered outward.
std::vector<double> taper_segment(double edge, double floor, std::size_t pad, Taper taper)
{
  std::vector<double> seg(pad);
  // the outer quarter of the pad is a flat tail at the floor
  const std::size_t ramp = std::max<std::size_t>(1, pad - pad / 4);
  for (std::size_t j = 1; j <= pad; ++j) {
    const double s = static_cast<double>(std::min(j, ramp)) / static_cast<double>(ramp);
    const double w = taper == Taper::RaisedCosine ? 0.5 * (1.0 + std::cos(pi * s)) : 1.0 - s;
    seg[j - 1] = floor + (edge - floor) * w;
  }
  return seg;
}

} // namespace

void validate(const RawSignal& signal)
{
  require(signal.samples.size() >= 8, ErrorCode::EmptySignal,
          "signal needs at least 8 samples, got " + std::to_string(signal.samples.size()));
  require(signal.sample_rate > 0.0 && std::isfinite(signal.sample_rate), ErrorCode::BadConfig,
          "sample_rate must be positive");
  for (std::size_t i = 0; i < signal.samples.size(); ++i)
    require(std::isfinite(signal.samples[i]), ErrorCode::NonFinite,
            "sample " + std::to_string(i) + " is not finite");
}

std::string_view to_string(Taper taper)
{
  return taper == Taper::RaisedCosine ? "raised_cosine" : "linear";
}

std::optional<Taper> parse_taper(std::string_view name)
{
  const auto s = lower(name);
  if (s == "raised_cosine" || s == "raisedcosine" || s == "cosine")
    return Taper::RaisedCosine;
  if (s == "linear")
    return Taper::Linear;
  return std::nullopt;
}

Spectrum half_spectrum(const RawSignal& signal, std::size_t grid_count)
{
  validate(signal);
  require(grid_count >= 16, ErrorCode::GridTooSmall, "grid_count must be >= 16");

  const auto bins = fft::rfft(signal.samples);
  const double n = static_cast<double>(signal.samples.size());
  std::vector<double> mag(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k)
    mag[k] = std::abs(bins[k]);

  // bin k sits at k/n cycles/sample, i.e. at x = 2k/n on the normalized axis
  Spectrum out;
  out.values.resize(grid_count);
  out.grid_spacing = 1.0 / static_cast<double>(grid_count - 1);
  out.nyquist_map = 0.5;
  const std::size_t last = mag.size() - 1;
  for (std::size_t i = 0; i < grid_count; ++i) {
    const double x = static_cast<double>(i) * out.grid_spacing;
    const double pos = x * n / 2.0;
    if (pos >= static_cast<double>(last)) {
      out.values[i] = mag[last];
      continue;
    }
    const auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    out.values[i] = frac == 0.0 ? mag[k] : mag[k] + frac * (mag[k + 1] - mag[k]);
  }

  const double peak = *std::max_element(out.values.begin(), out.values.end());
  if (peak > 0.0)
    for (auto& v : out.values)
      v /= peak;
  return out;
}

Spectrum extend_spectrum(const Spectrum& spectrum, double pad_fraction, Taper taper)
{
  require(pad_fraction > 0.0 && pad_fraction <= 0.5, ErrorCode::BadPadFraction,
          "pad_fraction must lie in (0, 0.5]");
  require(!spectrum.extension.has_value(), ErrorCode::BadConfig, "spectrum is already extended");
  require(spectrum.values.size() >= 2, ErrorCode::EmptyInput, "spectrum is empty");

  const std::size_t n_intervals = spectrum.values.size() - 1;
  const auto pad = static_cast<std::size_t>(std::lround(pad_fraction * static_cast<double>(n_intervals)));
  const double floor = *std::min_element(spectrum.values.begin(), spectrum.values.end());

  const auto left = taper_segment(spectrum.values.front(), floor, pad, taper);
  const auto right = taper_segment(spectrum.values.back(), floor, pad, taper);

  Spectrum out;
  out.grid_spacing = spectrum.grid_spacing;
  out.nyquist_map = spectrum.nyquist_map;
  out.values.reserve(spectrum.values.size() + 2 * pad);
  out.values.insert(out.values.end(), left.rbegin(), left.rend());
  out.values.insert(out.values.end(), spectrum.values.begin(), spectrum.values.end());
  out.values.insert(out.values.end(), right.begin(), right.end());
  out.extension = ExtensionInfo{pad, pad, spectrum.values.size(), floor, taper};
  return out;
}

std::vector<double> restrict_to_original(std::span<const double> values,
                                         const ExtensionInfo& extension)
{
  require(values.size() == extension.original_count + extension.left_pad + extension.right_pad,
          ErrorCode::LengthMismatch,
          "expected " +
            std::to_string(extension.original_count + extension.left_pad + extension.right_pad) +
            " values, got " + std::to_string(values.size()));
  const auto first = values.begin() + static_cast<std::ptrdiff_t>(extension.left_pad);
  return {first, first + static_cast<std::ptrdiff_t>(extension.original_count)};
}

std::string_view to_string(SignalName name)
{
  switch (name) {
    case SignalName::Exp1: return "exp1";
    case SignalName::Exp2: return "exp2";
    case SignalName::Exp3: return "exp3";
    case SignalName::Exp4: return "exp4";
    case SignalName::Exp5: return "exp5";
    case SignalName::BandStop: return "bandstop";
  }
  return "unknown";
}

std::optional<SignalName> parse_signal_name(std::string_view name)
{
  const auto s = lower(name);
  for (auto n : {SignalName::Exp1, SignalName::Exp2, SignalName::Exp3, SignalName::Exp4,
                 SignalName::Exp5, SignalName::BandStop})
    if (s == to_string(n))
      return n;
  if (s == "band_stop" || s == "band-stop")
    return SignalName::BandStop;
  return std::nullopt;
}

RawSignal gen_signal(SignalName name, std::size_t sample_count)
{
  require(sample_count >= 64, ErrorCode::BadConfig, "sample_count must be >= 64");
  RawSignal sig;
  sig.label = std::string(to_string(name));
  sig.sample_rate = static_cast<double>(sample_count);
  sig.samples.resize(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(sample_count);
    double y = 0.0;
    switch (name) {
      case SignalName::Exp1:
        y = 100.0 * std::sin(20.0 * pi * t);
        break;
      case SignalName::Exp2:
        y = 10.0 * std::cos(10.0 * pi * t) + 20.0 * std::sin(20.0 * pi * t);
        break;
      case SignalName::Exp3: {
        y = 6.0 * t * t + std::cos(10.0 * pi * t + 10.0 * pi * t * t);
        y += t <= 0.5 ? std::cos(60.0 * pi * t) : std::cos(80.0 * pi * t - 10.0 * pi);
        break;
      }
      case SignalName::Exp4:
        y = 1.0 / (1.2 + std::cos(2.0 * pi * t)) +
            std::cos(32.0 * pi * t + 0.2 * std::cos(64.0 * pi * t)) / (1.5 + std::sin(2.0 * pi * t));
        break;
      case SignalName::Exp5:
        y = 6.0 * t;
        for (int k = 1; k <= 10; ++k)
          y += (13.0 - k) * std::cos((20.0 + 10.0 * k) * pi * t);
        break;
      case SignalName::BandStop:
        y = 60.0 * t + 60.0 * std::cos(200.0 * pi * t);
        break;
    }
    sig.samples[i] = y;
  }
  return sig;
}

RawSignal gen_signal(std::string_view name, std::size_t sample_count)
{
  const auto parsed = parse_signal_name(name);
  require(parsed.has_value(), ErrorCode::UnknownSignal, "unknown signal '" + std::string(name) + "'");
  return gen_signal(*parsed, sample_count);
}

RawSignal parse_csv(std::istream& in, std::string label)
{
  RawSignal sig;
  sig.label = std::move(label);
  sig.sample_rate = 1.0;
  std::string line;
  std::size_t line_no = 0;
  bool any_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto field = trim(line);
    if (field.empty())
      continue;
    const bool first = !any_line;
    any_line = true;
    const auto v = parse_double(field);
    if (!v) {
      if (first)
        continue; // header
      raise(ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
    }
    sig.samples.push_back(*v);
  }
  require(!sig.samples.empty(), ErrorCode::EmptyFile, "no numeric samples in " + sig.label);
  return sig;
}

RawSignal load_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open " + path.string());
  return parse_csv(in, path.filename().string());
}

RawSignal downsample(const RawSignal& signal, std::size_t ratio)
{
  require(ratio >= 1, ErrorCode::BadConfig, "downsample ratio must be >= 1");
  RawSignal out;
  out.label = signal.label;
  out.sample_rate = signal.sample_rate / static_cast<double>(ratio);
  for (std::size_t i = 0; i < signal.samples.size(); i += ratio)
    out.samples.push_back(signal.samples[i]);
  return out;
}

RawSignal take(const RawSignal& signal, std::size_t count)
{
  RawSignal out = signal;
  if (out.samples.size() > count)
    out.samples.resize(count);
  return out;
}

} // namespace autovmd

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autovmd {

struct RawSignal
{
  std::vector<double> samples;
  double sample_rate = 1.0; // samples per unit time
  std::string label;
};

//! Throws EmptySignal (< 8 samples), NonFinite or BadConfig (sample_rate <= 0).
void validate(const RawSignal& signal);

enum class Taper
{
  RaisedCosine,
  Linear
};

std::string_view to_string(Taper taper);
std::optional<Taper> parse_taper(std::string_view name);

struct ExtensionInfo
{
  std::size_t left_pad = 0;
  std::size_t right_pad = 0;
  std::size_t original_count = 0;
  double floor_value = 0.0; // minimum of the pre-extension values
  Taper taper = Taper::RaisedCosine;
};

//! Nonnegative magnitude spectrum on the normalized axis x in [0, 1].
//! x = 1 maps to `nyquist_map` cycles/sample.
struct Spectrum
{
  std::vector<double> values;
  double grid_spacing = 0.0;
  double nyquist_map = 0.5;
  std::optional<ExtensionInfo> extension;

  std::size_t grid_count() const { return values.size(); }
};

//! Magnitude of the one-sided DFT, linearly resampled onto `grid_count`
//! uniform nodes and range-normalized to a maximum of 1.
Spectrum half_spectrum(const RawSignal& signal, std::size_t grid_count);

//! Appends round(pad_fraction * N) nodes at each end that decay from the
//! boundary value to the minimum of the spectrum. Interior values are copied
//! unchanged.
Spectrum extend_spectrum(const Spectrum& spectrum, double pad_fraction,
                         Taper taper = Taper::RaisedCosine);

//! Slice of an extended-grid vector that lies on the original grid.
std::vector<double> restrict_to_original(std::span<const double> values,
                                         const ExtensionInfo& extension);

enum class SignalName
{
  Exp1,
  Exp2,
  Exp3,
  Exp4,
  Exp5,
  BandStop
};

std::string_view to_string(SignalName name);
//! Case-insensitive; accepts "exp1".."exp5" and "bandstop".
std::optional<SignalName> parse_signal_name(std::string_view name);

//! Benchmark signal sampled uniformly on t in [0, 1) with sample_rate = sample_count.
RawSignal gen_signal(SignalName name, std::size_t sample_count = 200);
//! Throws UnknownSignal for an unrecognized name.
RawSignal gen_signal(std::string_view name, std::size_t sample_count = 200);

//! One real value per line; a non-numeric first line is treated as a header.
RawSignal parse_csv(std::istream& in, std::string label = "csv");
RawSignal load_csv(const std::filesystem::path& path);

//! Keeps every ratio-th sample starting at index 0.
RawSignal downsample(const RawSignal& signal, std::size_t ratio);
//! First `count` samples (all of them if the signal is shorter).
RawSignal take(const RawSignal& signal, std::size_t count);

} // namespace autovmd

#include "oracles.hpp"
#include "util.hpp"

#include "autovmd/error.hpp"
#include "autovmd/spectrum.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace autovmd;

namespace {

RawSignal make(std::vector<double> v, double rate = 1.0)
{
  return RawSignal{std::move(v), rate, "t"};
}

} // namespace

TEST_CASE("half_spectrum of a zero signal stays zero")
{
  const auto s = half_spectrum(make(std::vector<double>(256, 0.0)), 201);
  CHECK(s.grid_count() == 201);
  CHECK(std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("half_spectrum of a constant is DC only")
{
  const auto s = half_spectrum(make(std::vector<double>(200, 1.0)), 201);
  CHECK(s.values[0] == 1.0);
  for (std::size_t i = 2; i < s.values.size(); ++i)
    CHECK(s.values[i] < 1e-12);
}

TEST_CASE("half_spectrum peak of exp1 agrees with a brute-force DFT")
{
  const auto sig = gen_signal(SignalName::Exp1, 200);
  const auto dft = oracle::brute_dft(sig.samples);
  std::size_t kmax = 0;
  for (std::size_t k = 1; k < dft.size(); ++k)
    if (std::abs(dft[k]) > std::abs(dft[kmax]))
      kmax = k;
  const double oracle_cps = static_cast<double>(kmax) / 200.0;
  CHECK(oracle_cps == doctest::Approx(0.05));

  const auto s = half_spectrum(sig, 201);
  const auto peak = std::max_element(s.values.begin(), s.values.end()) - s.values.begin();
  const double cps = static_cast<double>(peak) * s.grid_spacing * s.nyquist_map;
  CHECK(std::abs(cps - oracle_cps) <= s.grid_spacing * s.nyquist_map + 1e-12);
  CHECK(*std::max_element(s.values.begin(), s.values.end()) == 1.0);
}

TEST_CASE("half_spectrum magnitudes match the brute-force DFT on the native grid")
{
  // n = 400 puts rfft bin k exactly on grid node k of a 201-node grid
  auto r = oracle::rng(7);
  const auto x = oracle::uniform(r, 400, -1, 1);
  const auto s = half_spectrum(make(x), 201);
  const auto dft = oracle::brute_dft(x);
  double mx = 0;
  for (auto& c : dft)
    mx = std::max(mx, std::abs(c));
  for (std::size_t k = 0; k < 201; ++k)
    CHECK(s.values[k] == doctest::Approx(std::abs(dft[k]) / mx).epsilon(1e-10));
}

TEST_CASE("half_spectrum is invariant under amplitude scaling")
{
  const auto sig = gen_signal(SignalName::Exp4, 200);
  const auto base = half_spectrum(sig, 201);
  SUBCASE("powers of two: bit-identical")
  {
    for (double c : {0.25, 2.0, 1024.0}) {
      auto scaled = sig;
      for (auto& v : scaled.samples)
        v *= c;
      CHECK(half_spectrum(scaled, 201).values == base.values);
    }
  }
  SUBCASE("arbitrary positive scale: within rounding")
  {
    for (double c : {0.3, 7.77, 1e5}) {
      auto scaled = sig;
      for (auto& v : scaled.samples)
        v *= c;
      const auto s = half_spectrum(scaled, 201);
      for (std::size_t i = 0; i < s.values.size(); ++i)
        CHECK(std::abs(s.values[i] - base.values[i]) <= 1e-12);
    }
  }
}

TEST_CASE("half_spectrum is unchanged by time reversal")
{
  auto r = oracle::rng(11);
  auto x = oracle::uniform(r, 300, -3, 3);
  const auto a = half_spectrum(make(x), 201);
  std::reverse(x.begin(), x.end());
  const auto b = half_spectrum(make(x), 201);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12);
}

TEST_CASE("half_spectrum errors")
{
  CHECK(code_of([] { half_spectrum(make({1, 2, 3}), 201); }) == ErrorCode::EmptySignal);
  CHECK(code_of([] { half_spectrum(make({1, 2, 3, NAN, 5, 6, 7, 8, 9}), 201); }) == ErrorCode::NonFinite);
  CHECK(code_of([] { half_spectrum(make(std::vector<double>(64, 1.0)), 15); }) == ErrorCode::GridTooSmall);
}

TEST_CASE("extend_spectrum of a constant spectrum is flat")
{
  Spectrum s;
  s.values.assign(201, 0.7);
  s.grid_spacing = 1.0 / 200;
  const auto e = extend_spectrum(s, 0.1);
  CHECK(e.grid_count() == 241);
  for (double v : e.values)
    CHECK(v == doctest::Approx(0.7));
  REQUIRE(e.extension);
  CHECK(e.extension->left_pad == 20);
  CHECK(e.extension->right_pad == 20);
  CHECK(e.extension->floor_value == doctest::Approx(0.7));
}

TEST_CASE("extend_spectrum ramps monotonically from the edge to the floor")
{
  for (auto taper : {Taper::RaisedCosine, Taper::Linear}) {
    Spectrum s;
    s.grid_spacing = 1.0 / 200;
    s.values.resize(201);
    for (std::size_t i = 0; i < 201; ++i)
      s.values[i] = 1.0 - static_cast<double>(i) / 200.0 * 0.5;
    s.values[100] = 0.0;
    const auto e = extend_spectrum(s, 0.1, taper);
    const std::size_t pad = e.extension->left_pad;
    REQUIRE(pad == 20);
    // left segment read outward: starts near 1.0, ends at 0.0
    for (std::size_t j = pad; j-- > 1;)
      CHECK(e.values[j - 1] <= e.values[j]);
    CHECK(e.values[0] == 0.0);
    CHECK(e.values[pad - 1] <= 1.0);
    CHECK(e.values[pad - 1] > 0.9);
    // right segment
    for (std::size_t j = pad + 201; j + 1 < e.values.size(); ++j)
      CHECK(e.values[j + 1] <= e.values[j]);
    CHECK(e.values.back() == 0.0);
  }
}

TEST_CASE("raised cosine taper has zero slope where it meets the floor")
{
  Spectrum s;
  s.grid_spacing = 1.0 / 200;
  s.values.assign(201, 0.0);
  s.values[0] = 1.0;
  const auto e = extend_spectrum(s, 0.1, Taper::RaisedCosine);
  // outer quarter is a flat tail
  for (std::size_t j = 0; j < 5; ++j)
    CHECK(e.values[j] == 0.0);
  CHECK(e.values[5] < 1e-12);
  CHECK(e.values[6] < 0.02);
}

TEST_CASE("extend then restrict is the identity on interior values")
{
  const auto s = half_spectrum(gen_signal(SignalName::Exp5), 201);
  for (double frac : {0.05, 0.1, 0.5}) {
    const auto e = extend_spectrum(s, frac);
    CHECK(restrict_to_original(e.values, *e.extension) == s.values);
  }
}

TEST_CASE("restrict_to_original slicing and errors")
{
  ExtensionInfo info{20, 20, 200, 0.0, Taper::RaisedCosine};
  std::vector<double> v(240);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<double>(i);
  const auto r = restrict_to_original(v, info);
  CHECK(r.size() == 200);
  CHECK(r.front() == 20);
  CHECK(r.back() == 219);

  ExtensionInfo none{0, 0, 5, 0.0, Taper::Linear};
  std::vector<double> w{1, 2, 3, 4, 5};
  CHECK(restrict_to_original(w, none) == w);
  CHECK(code_of([&] { restrict_to_original(std::vector<double>(239), info); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("extend_spectrum rejects a bad pad fraction")
{
  Spectrum s;
  s.values.assign(201, 0.5);
  s.grid_spacing = 1.0 / 200;
  CHECK(code_of([&] { extend_spectrum(s, 0.0); }) == ErrorCode::BadPadFraction);
  CHECK(code_of([&] { extend_spectrum(s, 0.51); }) == ErrorCode::BadPadFraction);
  CHECK(code_of([&] { extend_spectrum(s, -0.1); }) == ErrorCode::BadPadFraction);
}

TEST_CASE("gen_signal formulas")
{
  const auto e1 = gen_signal(SignalName::Exp1, 200);
  CHECK(e1.sample_rate == 200);
  for (std::size_t i = 0; i < 200; i += 17)
    CHECK(e1.samples[i] == doctest::Approx(100 * std::sin(20 * std::numbers::pi * i / 200.0)));

  const auto e5 = gen_signal(SignalName::Exp5, 200);
  CHECK(e5.samples[0] == doctest::Approx(75.0));

  // exp3 switches its second harmonic at t = 0.5
  const auto e3 = gen_signal(SignalName::Exp3, 200);
  const double pi = std::numbers::pi;
  auto base = [&](double t) { return 6 * t * t + std::cos(10 * pi * t + 10 * pi * t * t); };
  CHECK(e3.samples[50] == doctest::Approx(base(0.25) + std::cos(60 * pi * 0.25)));
  CHECK(e3.samples[150] == doctest::Approx(base(0.75) + std::cos(80 * pi * 0.75 - 10 * pi)));

  const auto bs = gen_signal("BandStop", 200);
  CHECK(bs.samples[0] == doctest::Approx(60.0));
}

TEST_CASE("gen_signal is deterministic and validates its arguments")
{
  for (auto n : {SignalName::Exp1, SignalName::Exp2, SignalName::Exp3, SignalName::Exp4, SignalName::Exp5,
                 SignalName::BandStop})
    CHECK(gen_signal(n, 256).samples == gen_signal(n, 256).samples);
  CHECK(code_of([] { gen_signal("exp9"); }) == ErrorCode::UnknownSignal);
  CHECK(code_of([] { gen_signal(SignalName::Exp1, 63); }) == ErrorCode::BadConfig);
  CHECK(parse_signal_name("EXP2") == SignalName::Exp2);
  CHECK(parse_signal_name("band-stop") == SignalName::BandStop);
}

TEST_CASE("parse_csv")
{
  {
    std::istringstream in("1.0\n2.0\n3.0\n");
    CHECK(parse_csv(in).samples == std::vector<double>{1, 2, 3});
  }
  {
    std::istringstream in("value\n-1.5e0\r\n +2\n\n4\n");
    CHECK(parse_csv(in).samples == std::vector<double>{-1.5, 2, 4});
  }
  {
    std::istringstream in("1\n2\nabc\n");
    try {
      parse_csv(in);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  {
    std::istringstream in("header\n");
    CHECK(code_of([&] { parse_csv(in); }) == ErrorCode::EmptyFile);
  }
  CHECK(code_of([] { load_csv("/nonexistent/path.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("downsample and take")
{
  RawSignal s;
  s.sample_rate = 360;
  for (int i = 1; i <= 2000; ++i)
    s.samples.push_back(i);
  const auto d = downsample(s, 10);
  CHECK(d.samples.size() == 200);
  CHECK(d.samples[0] == 1);
  CHECK(d.samples[1] == 11);
  CHECK(d.samples[2] == 21);
  CHECK(d.sample_rate == doctest::Approx(36));
  CHECK(take(s, 5).samples.size() == 5);
  CHECK(take(s, 5000).samples.size() == 2000);
  CHECK(downsample(s, 1).samples == s.samples);
}

#include <doctest.h>

#include <cmath>
#include <set>

#include <Eigen/SVD>

#include "hankelrec/hankel.hpp"
#include "hankelrec/rng.hpp"
#include "hankelrec/signal.hpp"

using namespace hankelrec;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("undamped quarter-cycle tone") {
  ExponentialModel m;
  m.peaks = {{1.0, 1e12, 0.25, 0.0}};
  m.length = 4;
  const cvec x = synthesize(m);
  CHECK(std::abs(x[0] - cplx(1, 0)) < 1e-6);
  CHECK(std::abs(x[1] - cplx(0, 1)) < 1e-6);
  CHECK(std::abs(x[2] - cplx(-1, 0)) < 1e-6);
  CHECK(std::abs(x[3] - cplx(0, -1)) < 1e-6);
}

TEST_CASE("empty peak list gives the zero signal") {
  ExponentialModel m;
  m.length = 16;
  CHECK(synthesize(m).norm() == 0.0);
}

TEST_CASE("synthesize is linear in the peak list") {
  ExponentialModel a, b, both;
  a.peaks = {{0.7, 60.0, 0.12, 1.0}, {0.4, 120.0, 0.55, 2.2}};
  b.peaks = {{1.0, 30.0, 0.81, 0.3}};
  both.peaks = a.peaks;
  both.peaks.insert(both.peaks.end(), b.peaks.begin(), b.peaks.end());
  a.length = b.length = both.length = 100;
  CHECK((synthesize(a) + synthesize(b) - synthesize(both)).norm() < 1e-12);
}

TEST_CASE("five-peak presets freeze the documented parameters") {
  const ExponentialModel a = fivepeak_a();
  const ExponentialModel b = fivepeak_b();
  REQUIRE(a.peaks.size() == 5);
  REQUIRE(b.peaks.size() == 5);
  CHECK(a.length == 255);
  CHECK(b.length == 255);

  CHECK(b.peaks[0].amplitude == doctest::Approx(0.100).epsilon(1e-12));
  CHECK(b.peaks[0].damping == doctest::Approx(50.0));
  CHECK(b.peaks[0].frequency == doctest::Approx(0.165));
  CHECK(b.peaks[0].phase == doctest::Approx(0.4 * kPi));
  CHECK(a.peaks[4].amplitude == doctest::Approx(1.000));
  CHECK(a.peaks[4].damping == doctest::Approx(150.0));
  CHECK(a.peaks[4].frequency == doctest::Approx(0.831));
  CHECK(a.peaks[4].phase == doctest::Approx(2.0 * kPi));

  // The variants differ only in amplitudes.
  for (int g = 0; g < 5; ++g) {
    CHECK(a.peaks[g].damping == b.peaks[g].damping);
    CHECK(a.peaks[g].frequency == b.peaks[g].frequency);
    CHECK(a.peaks[g].phase == b.peaks[g].phase);
  }
  CHECK(a.peaks[1].amplitude != b.peaks[1].amplitude);

  CHECK_THROWS_AS(preset_signal("nope"), ConfigError);
  CHECK(preset_signal("fivepeak-a").peaks[0].amplitude == doctest::Approx(0.300));
}

TEST_CASE("noise-free five-peak lift has exactly 5 dominant singular values") {
  const cvec x = synthesize(fivepeak_b());
  const HankelShape shape = default_shape(255);
  CHECK(shape.n1 == 128);
  CHECK(shape.n2 == 128);
  const rvec s = Eigen::BDCSVD<cmat>(hankel(x, shape)).singularValues();
  int above = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-8 * s[0]) ++above;
  CHECK(above == 5);
}

TEST_CASE("distinct frequencies set the Hankel rank") {
  for (int g : {1, 3, 7}) {
    ExponentialModel m;
    for (int i = 0; i < g; ++i)
      m.peaks.push_back({1.0, 80.0, 0.08 + 0.11 * i, 0.2 * i});
    m.length = 63;
    const rvec s = Eigen::BDCSVD<cmat>(hankel(synthesize(m), default_shape(63))).singularValues();
    CHECK(s[g - 1] / s[g] > 1e6);
  }
}

TEST_CASE("random model draws respect the ranges and the seed") {
  TrainingRanges ranges;
  Rng rng(42);
  std::set<int> counts;
  for (int i = 0; i < 10000; ++i) {
    const ExponentialModel m = sample_model(ranges, rng);
    counts.insert(static_cast<int>(m.peaks.size()));
    for (const Peak& p : m.peaks) {
      CHECK(p.amplitude >= 0.05);
      CHECK(p.amplitude <= 1.00);
      CHECK(p.damping >= 10.0);
      CHECK(p.damping <= 179.2);
      CHECK(p.frequency >= 0.0);
      CHECK(p.frequency < 1.0);
      CHECK(p.phase >= 0.0);
      CHECK(p.phase < 2.0 * kPi);
    }
  }
  for (int g = 1; g <= 10; ++g) CHECK(counts.count(g) == 1);

  Rng r1(42), r2(42);
  const ExponentialModel m1 = sample_model(ranges, r1);
  const ExponentialModel m2 = sample_model(ranges, r2);
  REQUIRE(m1.peaks.size() == m2.peaks.size());
  for (std::size_t i = 0; i < m1.peaks.size(); ++i)
    CHECK(m1.peaks[i].frequency == m2.peaks[i].frequency);

  TrainingRanges bad;
  bad.amplitude_min = 2.0;
  CHECK_THROWS_AS(sample_model(bad, r1), ConfigError);
}

TEST_CASE("gaussian noise statistics and uniform support") {
  const cvec zero = cvec::Zero(500000);
  Rng rng(17);
  const cvec g = add_noise(zero, NoiseKind::gaussian, 0.03, rng);
  double sum_re = 0.0, sq_re = 0.0, sq_im = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    sum_re += g[i].real();
    sq_re += g[i].real() * g[i].real();
    sq_im += g[i].imag() * g[i].imag();
  }
  const double n = static_cast<double>(g.size());
  CHECK(std::abs(std::sqrt(sq_re / n) - 0.03) < 0.0003);
  CHECK(std::abs(std::sqrt(sq_im / n) - 0.03) < 0.0003);
  CHECK(std::abs(sum_re / n) < 5 * 0.03 / 1e3);

  Rng rng2(18);
  const cvec u = add_noise(zero.head(10000), NoiseKind::uniform, 0.10, rng2);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    CHECK(std::abs(u[i].real()) <= 0.10);
    CHECK(std::abs(u[i].imag()) <= 0.10);
  }

  Rng rng3(19);
  const cvec x = synthesize(fivepeak_a());
  CHECK((add_noise(x, NoiseKind::gaussian, 0.0, rng3) - x).norm() == 0.0);
}

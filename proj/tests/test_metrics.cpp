#include <doctest.h>

#include <cmath>
#include <vector>

#include "hankelrec/fftu.hpp"
#include "hankelrec/metrics.hpp"
#include "hankelrec/rng.hpp"
#include "hankelrec/signal.hpp"

using namespace hankelrec;

namespace {

cvec random_cvec(int n, Rng& rng) {
  cvec v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(rng.normal(), rng.normal());
  return v;
}

// Exact transportation LP solved by successive shortest augmenting paths on
// the bipartite supply/demand network. Handles any non-negative cost matrix;
// the tests pin it to the 0/1 cost the closed form assumes.
double transport_lp(const std::vector<double>& supply, const std::vector<double>& demand,
                    const std::vector<std::vector<double>>& cost) {
  const int s = static_cast<int>(supply.size());
  const int d = static_cast<int>(demand.size());
  const int source = 0, sink = s + d + 1, nodes = s + d + 2;

  struct Arc {
    int to;
    double cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Arc>> g(nodes);
  auto add_arc = [&](int a, int b, double cap, double c) {
    g[a].push_back({b, cap, c, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0.0, -c, static_cast<int>(g[a].size()) - 1});
  };
  for (int i = 0; i < s; ++i) add_arc(source, 1 + i, supply[i], 0.0);
  for (int j = 0; j < d; ++j) add_arc(1 + s + j, sink, demand[j], 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < d; ++j) add_arc(1 + i, 1 + s + j, 1e30, cost[i][j]);

  double total_cost = 0.0;
  for (;;) {
    // Bellman-Ford shortest path in the residual network.
    std::vector<double> dist(nodes, 1e300);
    std::vector<std::pair<int, int>> prev(nodes, {-1, -1});
    dist[source] = 0.0;
    for (int round = 0; round < nodes; ++round) {
      bool changed = false;
      for (int u = 0; u < nodes; ++u) {
        if (dist[u] >= 1e300) continue;
        for (int k = 0; k < static_cast<int>(g[u].size()); ++k) {
          const Arc& a = g[u][k];
          if (a.cap > 1e-12 && dist[u] + a.cost < dist[a.to] - 1e-15) {
            dist[a.to] = dist[u] + a.cost;
            prev[a.to] = {u, k};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (prev[sink].first < 0) break;

    double push = 1e300;
    for (int v = sink; v != source;) {
      auto [u, k] = prev[v];
      push = std::min(push, g[u][k].cap);
      v = u;
    }
    for (int v = sink; v != source;) {
      auto [u, k] = prev[v];
      g[u][k].cap -= push;
      g[g[u][k].to][g[u][k].rev].cap += push;
      total_cost += push * g[u][k].cost;
      v = u;
    }
  }
  return total_cost;
}

Histogram101 five_bin_histogram(const std::vector<double>& mass5) {
  Histogram101 h;
  h.lo = 0.0;
  h.hi = 1.0;
  for (int i = 0; i < 5; ++i) h.mass[3 + i] = mass5[i];
  return h;
}

}  // namespace

TEST_CASE("relative error handles identity, zero, and scaling") {
  Rng rng(2);
  const cvec x = random_cvec(30, rng);
  CHECK(rlne(x, x) == 0.0);
  CHECK(rlne(x, cvec::Zero(30)) == doctest::Approx(1.0));
  CHECK(rlne(x, 2.0 * x) == doctest::Approx(1.0));

  const cvec eps = 1e-7 * random_cvec(30, rng);
  CHECK(std::abs(rlne(x, x + eps) - eps.norm() / x.norm()) < 1e-15);

  CHECK_THROWS_AS(rlne(cvec::Zero(30), x), ConfigError);
  CHECK_THROWS_AS(rlne(x, cvec::Zero(29)), ConfigError);
}

TEST_CASE("squared correlation is affine invariant") {
  rvec c(5);
  c << 1.0, 2.0, 4.0, 8.0, 16.0;
  CHECK(pearson_r2(c, c) == doctest::Approx(1.0));
  CHECK(pearson_r2(c, -c) == doctest::Approx(1.0));
  CHECK(pearson_r2(c, 3.5 * c + rvec::Constant(5, 2.0)) == doctest::Approx(1.0));

  rvec d(5);
  d << 0.0, 1.0, 0.0, 1.0, 0.0;
  const double mid = pearson_r2(c, d);
  CHECK(mid >= 0.0);
  CHECK(mid < 1.0);

  CHECK_THROWS_AS(pearson_r2(c, rvec::Constant(5, 1.0)), ConfigError);
  CHECK_THROWS_AS(pearson_r2(rvec::Constant(2, 0.0), rvec::Constant(2, 1.0)), ConfigError);
  CHECK_THROWS_AS(pearson_r2(c, d.head(4)), ConfigError);
}

TEST_CASE("effective rank counts the significant spectrum") {
  const cvec five = synthesize(fivepeak_b());
  const HankelShape shape = default_shape(255);
  CHECK(effective_rank(five, shape) == 5);
  CHECK(effective_rank(3.0 * five, shape) == 5);  // scale invariant

  ExponentialModel single;
  single.peaks = {{0.8, 70.0, 0.41, 0.2}};
  single.length = 255;
  CHECK(effective_rank(synthesize(single), shape) == 1);
  CHECK(effective_rank(five, shape, 1.0) == 0);

  CHECK_THROWS_AS(effective_rank(cvec::Zero(255), shape), ConfigError);
}

TEST_CASE("nuclear norm of the lift behaves like a norm") {
  const HankelShape shape = default_shape(21);
  ExponentialModel single;
  single.peaks = {{1.0, 40.0, 0.3, 0.9}};
  single.length = 21;
  const cvec x = synthesize(single);
  CHECK(std::abs(nuclear_norm(x, shape) - hankel(x, shape).norm()) < 1e-10);

  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const cvec a = random_cvec(21, rng);
    const cvec b = random_cvec(21, rng);
    CHECK(nuclear_norm(a + b, shape) <=
          nuclear_norm(a, shape) + nuclear_norm(b, shape) + 1e-10);
  }
}

TEST_CASE("histograms separate exact zeros from magnitude bins") {
  const std::vector<cvec> zeros{cvec::Zero(40)};
  const Histogram101 hz = build_histogram(zeros, false, {0.0, 1.0});
  CHECK(hz.mass[0] == doctest::Approx(1.0));
  for (int b = 1; b <= 100; ++b) CHECK(hz.mass[b] == 0.0);

  const std::vector<cvec> constant{cvec::Constant(16, cplx(0.0, 0.5))};
  const Histogram101 hc = build_histogram(constant, false, {0.1, 0.9});
  CHECK(hc.mass[0] == 0.0);
  CHECK(hc.mass[51] == doctest::Approx(1.0));  // 0.5 falls in bin 1 + floor(50)

  Rng rng(3);
  const std::vector<cvec> mixed{random_cvec(100, rng), random_cvec(64, rng)};
  const auto range = shared_histogram_range({&mixed}, false);
  const Histogram101 hm = build_histogram(mixed, false, range);
  double sum = 0.0;
  for (double v : hm.mass) sum += v;
  CHECK(std::abs(sum - 1.0) < 1e-12);

  // Out-of-range magnitudes clamp to the edge bins.
  cvec wide(2);
  wide << cplx(1e-9), cplx(100.0);
  const Histogram101 hw = build_histogram({wide}, false, {0.1, 0.9});
  CHECK(hw.mass[1] == doctest::Approx(0.5));
  CHECK(hw.mass[100] == doctest::Approx(0.5));

  CHECK_THROWS_AS(build_histogram(mixed, false, {0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(build_histogram({}, false, {0.0, 1.0}), ConfigError);
}

TEST_CASE("shared range pools every set and rejects degenerate spreads") {
  cvec a(3), b(3);
  a << cplx(0.0), cplx(0.5), cplx(2.0);
  b << cplx(0.25), cplx(0.0), cplx(1.0);
  const std::vector<cvec> sa{a}, sb{b};
  const auto range = shared_histogram_range({&sa, &sb}, false);
  CHECK(range.first == doctest::Approx(0.25));
  CHECK(range.second == doctest::Approx(2.0));

  const auto log_range = shared_histogram_range({&sa, &sb}, true);
  CHECK(log_range.first == doctest::Approx(std::log(0.25)));
  CHECK(log_range.second == doctest::Approx(std::log(2.0)));

  const std::vector<cvec> only_zero{cvec::Zero(5)};
  CHECK_THROWS_AS(shared_histogram_range({&only_zero}, false), ConfigError);
}

TEST_CASE("transport distance equals the total-variation closed form") {
  const Histogram101 p = five_bin_histogram({0.2, 0.2, 0.2, 0.2, 0.2});
  CHECK(wasserstein_01(p, p) == 0.0);

  Histogram101 d0, d1;
  d0.lo = d1.lo = 0.0;
  d0.hi = d1.hi = 1.0;
  d0.mass[0] = 1.0;
  d1.mass[1] = 1.0;
  CHECK(wasserstein_01(d0, d1) == doctest::Approx(1.0));

  Histogram101 other_range = d1;
  other_range.hi = 2.0;
  CHECK_THROWS_AS(wasserstein_01(d0, other_range), ConfigError);
  Histogram101 other_scale = d1;
  other_scale.log_scaled = true;
  CHECK_THROWS_AS(wasserstein_01(d0, other_scale), ConfigError);
}

TEST_CASE("transport distance matches the LP oracle on random instances") {
  Rng rng(31);
  const std::vector<std::vector<double>> zero_one_cost{{0, 1, 1, 1, 1},
                                                       {1, 0, 1, 1, 1},
                                                       {1, 1, 0, 1, 1},
                                                       {1, 1, 1, 0, 1},
                                                       {1, 1, 1, 1, 0}};
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> pm(5), qm(5);
    double ps = 0.0, qs = 0.0;
    for (int i = 0; i < 5; ++i) {
      pm[i] = rng.uniform();
      qm[i] = rng.uniform();
      ps += pm[i];
      qs += qm[i];
    }
    for (int i = 0; i < 5; ++i) {
      pm[i] /= ps;
      qm[i] /= qs;
    }
    const double closed = wasserstein_01(five_bin_histogram(pm), five_bin_histogram(qm));
    const double lp = transport_lp(pm, qm, zero_one_cost);
    CHECK(std::abs(closed - lp) < 1e-9);
  }
}

TEST_CASE("transport distance satisfies the metric axioms") {
  Rng rng(47);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::vector<double>> m(3, std::vector<double>(5));
    for (auto& row : m) {
      double sum = 0.0;
      for (double& v : row) {
        v = rng.uniform();
        sum += v;
      }
      for (double& v : row) v /= sum;
    }
    const Histogram101 p = five_bin_histogram(m[0]);
    const Histogram101 q = five_bin_histogram(m[1]);
    const Histogram101 r = five_bin_histogram(m[2]);
    CHECK(std::abs(wasserstein_01(p, q) - wasserstein_01(q, p)) < 1e-12);
    CHECK(wasserstein_01(p, p) < 1e-12);
    CHECK(wasserstein_01(p, r) <= wasserstein_01(p, q) + wasserstein_01(q, r) + 1e-12);
  }
}

TEST_CASE("peak detection applies the median floor and separation rule") {
  const cvec spectrum = fft_u(synthesize(fivepeak_b()));
  const std::vector<int> peaks = detect_peaks(spectrum.cwiseAbs());
  CHECK(peaks.size() == 5);

  rvec flat = rvec::Constant(50, 1.0);
  CHECK(detect_peaks(flat).empty());

  // A shoulder next to a maximum is not itself a local maximum.
  rvec close = rvec::Zero(11);
  close[4] = 5.0;
  close[5] = 4.0;
  const std::vector<int> kept = detect_peaks(close);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == 4);

  // Maxima exactly 2 bins apart sit on the separation boundary: both kept.
  rvec pair = rvec::Zero(11);
  pair[4] = 5.0;
  pair[6] = 4.0;
  const std::vector<int> both = detect_peaks(pair);
  REQUIRE(both.size() == 2);
  CHECK(both[0] == 4);
  CHECK(both[1] == 6);
}

TEST_CASE("per-peak errors partition the axis at inter-peak minima") {
  const cvec truth = fft_u(synthesize(fivepeak_b()));
  const auto segments = peak_segments(truth.cwiseAbs());
  REQUIRE(segments.size() == 5);
  CHECK(segments.front().first == 0);
  CHECK(segments.back().second == 255);
  for (std::size_t j = 1; j < segments.size(); ++j)
    CHECK(segments[j].first == segments[j - 1].second);

  const std::vector<double> zero_err = peak_rlne(truth, truth);
  CHECK(zero_err.size() == 5);
  for (double v : zero_err) CHECK(v == 0.0);

  // Single-component spectrum: one segment spanning the whole axis, so the
  // per-peak value is the global error.
  ExponentialModel single;
  single.peaks = {{1.0, 90.0, 0.37, 0.6}};
  single.length = 127;
  const cvec st = fft_u(synthesize(single));
  Rng rng(9);
  const cvec est = st + 0.01 * random_cvec(127, rng);
  const std::vector<double> one = peak_rlne(st, est);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(rlne(st, est)));

  CHECK_THROWS_AS(peak_rlne(cvec::Constant(50, cplx(1.0)), cvec::Constant(50, cplx(1.0))),
                  ConfigError);
}

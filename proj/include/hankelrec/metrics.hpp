#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hankelrec/hankel.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Relative l2 norm error ||truth - estimate|| / ||truth||.
double rlne(const cvec& truth, const cvec& estimate);
double rlne(const rmat& truth, const rmat& estimate);

// Squared Pearson correlation. Requires length >= 2 and nonzero variance in
// both inputs.
double pearson_r2(const rvec& c, const rvec& d);

// Number of singular values of H(x) exceeding threshold after normalization
// by the nuclear norm (their sum); scale invariant by construction.
int effective_rank(const cvec& x, const HankelShape& shape, double threshold = 1e-3);
int effective_rank_matrix(const cmat& m, double threshold = 1e-3);

// Sum of singular values of H(x).
double nuclear_norm(const cvec& x, const HankelShape& shape);

// 101-bin magnitude distribution of a set of zero-filled signals: bin 0
// counts exact zeros (the unsampled positions), bins 1..100 partition
// [lo, hi] uniformly. With log_scaled the (natural) log-magnitudes are
// binned instead. Values outside the range clamp to the edge bins.
struct Histogram101 {
  std::array<double, 101> mass{};
  double lo = 0.0;
  double hi = 0.0;
  bool log_scaled = false;
};

// Range over the pooled nonzero (log-)magnitudes of every set in the
// comparison; both histograms of a comparison must be built with the same
// range to be comparable.
std::pair<double, double> shared_histogram_range(const std::vector<const std::vector<cvec>*>& sets,
                                                 bool log_scaled);

Histogram101 build_histogram(const std::vector<cvec>& signals, bool log_scaled,
                             std::pair<double, double> shared_range);

// Optimal transport distance under 0/1 cost, which collapses to the total
// variation identity 1/2 ||p - q||_1.
double wasserstein_01(const Histogram101& p, const Histogram101& q);

// Local maxima of a magnitude spectrum above 2x its median, at least 2 bins
// apart (the larger of two close maxima wins).
std::vector<int> detect_peaks(const rvec& magnitude);

// Half-open [begin, end) segments partitioning the axis at the minima between
// consecutive detected peaks of the truth spectrum.
std::vector<std::pair<int, int>> peak_segments(const rvec& truth_magnitude);

// Per-segment RLNE of the complex spectra over peak_segments of |truth|.
// Throws ConfigError when the truth spectrum has no detected peaks.
std::vector<double> peak_rlne(const cvec& truth_spectrum, const cvec& estimate_spectrum);

}  // namespace hankelrec

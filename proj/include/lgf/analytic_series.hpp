#pragma once

#include <cstdint>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/series.hpp"

namespace lgf {

// C(2n,n)/4^n, the normalized moment (1/pi) int_0^pi cos^{2n}x dx.
Rat wallis_moment(unsigned long n);

class WallisCache {
 public:
  explicit WallisCache(unsigned long cap);
  unsigned long cap() const { return values_.size() - 1; }
  const Rat& operator()(unsigned long n) const { return values_.at(n); }

 private:
  std::vector<Rat> values_;
};

struct AnalyticSeriesOptions {
  int threads = 1;
  // Upper limit on the number of pair-exponent compositions visited.
  std::uint64_t max_compositions = 2'000'000'000ull;
};

// a_n(0) for the d-dimensional fcc lattice via the multinomial expansion of
// the structure function; p_n(0) = a_n(0) / c^n.
std::vector<Int> excursion_counts_wallis(int d, int N, const AnalyticSeriesOptions& options = {});

ExactSeries lgf_series_wallis(int d, int N, const AnalyticSeriesOptions& options = {});

}  // namespace lgf

#include "lgf/analytic_series.hpp"

#include <thread>

#include "lgf/error.hpp"
#include "lgf/lattice.hpp"

namespace lgf {

Rat wallis_moment(unsigned long n) { return make_rat(binomial(2 * n, n), power(Int(4), n)); }

WallisCache::WallisCache(unsigned long cap) {
  values_.reserve(cap + 1);
  for (unsigned long n = 0; n <= cap; ++n) values_.push_back(wallis_moment(n));
}

namespace {

// Sum over compositions n = sum of pair exponents of
// multinomial(n; n_ij) * prod_t C(e_t, e_t/2), all e_t even.
class CompositionSum {
 public:
  CompositionSum(const StructureFunction& sf, int n) : n_(n), pairs_(sf.pairs()), d_(sf.dimension()) {
    const int m = static_cast<int>(pairs_.size());
    last_pair_.assign(d_, -1);
    for (int i = 0; i < m; ++i) {
      last_pair_[pairs_[i].first] = i;
      last_pair_[pairs_[i].second] = i;
    }
    closes_.assign(m, {});
    for (int t = 0; t < d_; ++t) closes_[last_pair_[t]].push_back(t);
    central_.reserve(2 * n + 1);
    for (int e = 0; e <= 2 * n; ++e) central_.push_back(e % 2 == 0 ? binomial(e, e / 2) : Int(0));
  }

  // Contribution of compositions whose first exponent equals first.
  Int run(int first) const {
    std::vector<int> e(d_, 0);
    Int total = 0;
    if (first > n_) return total;
    visit(0, first, n_, Int(1), e, total, true);
    return total;
  }

 private:
  void visit(int i, int fixed, int remaining, const Int& weight, std::vector<int>& e, Int& total, bool use_fixed) const {
    const int m = static_cast<int>(pairs_.size());
    if (i == m - 1) {
      if (use_fixed && fixed != remaining) return;
      assign(i, remaining, remaining, weight, e, total);
      return;
    }
    int lo = 0, hi = remaining;
    if (use_fixed) lo = hi = fixed;
    for (int k = lo; k <= hi; ++k) {
      Int w = weight * binomial(remaining, k);
      auto [a, b] = pairs_[i];
      e[a] += k;
      e[b] += k;
      bool ok = true;
      for (int t : closes_[i])
        if (e[t] % 2 != 0) ok = false;
      if (ok) visit(i + 1, 0, remaining - k, w, e, total, false);
      e[a] -= k;
      e[b] -= k;
    }
  }

  void assign(int i, int k, int remaining, const Int& weight, std::vector<int>& e, Int& total) const {
    (void)remaining;
    auto [a, b] = pairs_[i];
    e[a] += k;
    e[b] += k;
    bool ok = true;
    for (int t : closes_[i])
      if (e[t] % 2 != 0) ok = false;
    if (ok) {
      Int term = weight;
      for (int t = 0; t < d_; ++t) term *= central_[e[t]];
      total += term;
    }
    e[a] -= k;
    e[b] -= k;
  }

  int n_;
  const std::vector<std::pair<int, int>>& pairs_;
  int d_;
  std::vector<int> last_pair_;
  std::vector<std::vector<int>> closes_;
  std::vector<Int> central_;
};

Int count_compositions_estimate(int N, int m) {
  // sum_{n<=N} C(n+m-1, m-1) = C(N+m, m)
  return binomial(N + m, m);
}

}  // namespace

std::vector<Int> excursion_counts_wallis(int d, int N, const AnalyticSeriesOptions& options) {
  if (N < 0) throw ValidationError("N must be nonnegative");
  StructureFunction sf(d);
  const int m = static_cast<int>(sf.pairs().size());
  if (count_compositions_estimate(N, m) > Int(std::to_string(options.max_compositions)))
    throw ResourceError("multinomial expansion for d=" + std::to_string(d) + ", N=" + std::to_string(N) +
                        " exceeds the composition budget of " + std::to_string(options.max_compositions));
  std::vector<Int> result(N + 1);
  for (int n = 0; n <= N; ++n) {
    CompositionSum sum(sf, n);
    std::vector<Int> parts(n + 1);
    const int threads = std::max(1, options.threads);
    if (threads == 1 || n < 8) {
      for (int k = 0; k <= n; ++k) parts[k] = sum.run(k);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (int k = t; k <= n; k += threads) parts[k] = sum.run(k);
        });
      for (auto& th : pool) th.join();
    }
    Int total = 0;
    for (const auto& p : parts) total += p;
    result[n] = total;
  }
  return result;
}

ExactSeries lgf_series_wallis(int d, int N, const AnalyticSeriesOptions& options) {
  return series_from_integers(excursion_counts_wallis(d, N, options), Int(4 * d * (d - 1) / 2));
}

}  // namespace lgf

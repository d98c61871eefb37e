#include "lgf/walkcount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <thread>

#include "lgf/error.hpp"

namespace lgf {

Point canonical_point(std::span<const int> x) {
  Point p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = std::abs(x[i]);
  std::sort(p.begin(), p.end(), std::greater<int>());
  return p;
}

Int orbit_size(std::span<const int> x) {
  Point p = canonical_point(x);
  Int size = factorial(p.size());
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    size /= factorial(j - i);
    if (p[i] != 0) size <<= static_cast<mp_bitcnt_t>(j - i);
    i = j;
  }
  return size;
}

namespace {

std::size_t env_memory_budget() {
  const char* env = std::getenv("LGF_MEM_BUDGET");
  if (env == nullptr || *env == '\0') return 0;
  std::string s(env);
  std::size_t scale = 1;
  switch (s.back()) {
    case 'k': case 'K': scale = 1ull << 10; s.pop_back(); break;
    case 'm': case 'M': scale = 1ull << 20; s.pop_back(); break;
    case 'g': case 'G': scale = 1ull << 30; s.pop_back(); break;
    default: break;
  }
  try {
    return static_cast<std::size_t>(std::stoull(s)) * scale;
  } catch (const std::exception&) {
    throw ValidationError("LGF_MEM_BUDGET: cannot parse '" + std::string(env) + "'");
  }
}

// The wedge reduction is only valid for step sets invariant under the
// hyperoctahedral group, with entries in {-1,0,1}.
void check_symmetric(const StepSet& steps) {
  std::map<Point, long> classes;
  for (const auto& s : steps.steps()) {
    for (int v : s)
      if (v < -1 || v > 1) throw ValidationError("walk counting needs steps with entries in {-1,0,1}");
    ++classes[canonical_point(s)];
  }
  for (const auto& [rep, count] : classes)
    if (orbit_size(rep) != count)
      throw ValidationError("walk counting needs a step set invariant under permutations and sign flips");
}

struct Neighbor {
  std::uint32_t index;
  std::uint32_t multiplicity;
};

// Wedge points ordered by coordinate sum, with the aggregated stencil.
struct Stencil {
  int d = 0;
  int radius = 0;
  int growth = 0;
  bool even_only = false;
  unsigned bits = 0;
  std::vector<Point> points;
  std::vector<std::size_t> upto_sum;  // upto_sum[s] = #points with sum <= s
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::size_t> offsets;
  std::vector<Neighbor> neighbors;

  std::uint64_t key(const Point& p) const {
    std::uint64_t k = 0;
    for (int v : p) k = (k << bits) | static_cast<std::uint64_t>(v);
    return k;
  }

  std::size_t active(long bound) const {
    if (bound < 0) return 0;
    if (static_cast<std::size_t>(bound) >= upto_sum.size()) return points.size();
    return upto_sum[bound];
  }
};

void enumerate_wedge(int d, int radius, int max_sum, bool even_only, std::vector<Point>& out) {
  Point cur(d);
  std::function<void(int, int, int)> rec = [&](int pos, int cap, int sum) {
    if (pos == d) {
      if (!even_only || sum % 2 == 0) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= cap && sum + v <= max_sum; ++v) {
      cur[pos] = v;
      rec(pos + 1, v, sum + v);
    }
  };
  rec(0, radius, 0);
}

int coordinate_sum(const Point& p) {
  int s = 0;
  for (int v : p) s += v;
  return s;
}

Stencil build_stencil(const Lattice& lattice, int radius, int max_sum) {
  const StepSet& steps = lattice.step_set();
  check_symmetric(steps);
  Stencil st;
  st.d = lattice.dimension();
  st.radius = radius;
  st.even_only = true;
  for (const auto& s : steps.steps()) {
    int l1 = 0;
    for (int v : s) l1 += std::abs(v);
    st.growth = std::max(st.growth, l1);
    if (l1 % 2 != 0) st.even_only = false;
  }
  while ((1ull << st.bits) <= static_cast<unsigned long long>(radius)) ++st.bits;
  if (st.bits == 0) st.bits = 1;
  if (static_cast<unsigned long long>(st.bits) * st.d > 64)
    throw ResourceError("radius cut " + std::to_string(radius) + " too large for dimension " + std::to_string(st.d));

  max_sum = std::min(max_sum, radius * st.d);
  enumerate_wedge(st.d, radius, max_sum, st.even_only, st.points);
  std::stable_sort(st.points.begin(), st.points.end(), [](const Point& a, const Point& b) {
    int sa = coordinate_sum(a), sb = coordinate_sum(b);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  if (st.points.size() >= (1ull << 32)) throw ResourceError("wedge too large to index");

  st.upto_sum.assign(max_sum + 1, 0);
  for (const auto& p : st.points) ++st.upto_sum[coordinate_sum(p)];
  for (int s = 1; s <= max_sum; ++s) st.upto_sum[s] += st.upto_sum[s - 1];

  st.index.reserve(st.points.size());
  for (std::uint32_t i = 0; i < st.points.size(); ++i) st.index.emplace(st.key(st.points[i]), i);

  st.offsets.reserve(st.points.size() + 1);
  st.offsets.push_back(0);
  std::vector<Neighbor> local;
  Point q(st.d);
  for (const auto& p : st.points) {
    local.clear();
    for (const auto& s : steps.steps()) {
      for (int j = 0; j < st.d; ++j) q[j] = p[j] + s[j];
      Point c = canonical_point(q);
      if (c[0] > radius) continue;
      auto it = st.index.find(st.key(c));
      if (it == st.index.end()) continue;  // beyond the sum bound
      local.push_back({it->second, 1});
    }
    std::sort(local.begin(), local.end(), [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < local.size(); ++r) {
      if (w > 0 && local[w - 1].index == local[r].index) ++local[w - 1].multiplicity;
      else local[w++] = local[r];
    }
    st.neighbors.insert(st.neighbors.end(), local.begin(), local.begin() + w);
    st.offsets.push_back(st.neighbors.size());
  }
  return st;
}

// next[i] = sum over neighbors j < prev_active of mult * prev[j], for i < active.
void stencil_step(const Stencil& st, const std::vector<Int>& prev, std::size_t prev_active, std::vector<Int>& next,
                  std::size_t active, int threads) {
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      mpz_ptr out = next[i].get_mpz_t();
      mpz_set_ui(out, 0);
      for (std::size_t k = st.offsets[i]; k < st.offsets[i + 1]; ++k) {
        const Neighbor& nb = st.neighbors[k];
        if (nb.index >= prev_active) continue;
        if (nb.multiplicity == 1) mpz_add(out, out, prev[nb.index].get_mpz_t());
        else mpz_addmul_ui(out, prev[nb.index].get_mpz_t(), nb.multiplicity);
      }
    }
  };
  if (threads <= 1 || active < 4096) {
    work(0, active);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (active + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(active, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

std::size_t value_bytes(int n, int c) {
  double bits = n * std::log2(static_cast<double>(std::max(c, 2)));
  return sizeof(Int) + 8 * (static_cast<std::size_t>(bits / 64.0) + 1);
}

std::size_t resolve_budget(const WalkCountOptions& options) {
  if (options.memory_budget) return *options.memory_budget;
  return env_memory_budget();
}

void check_budget(std::size_t budget, std::size_t bytes, int n) {
  if (budget != 0 && bytes > budget)
    throw ResourceError("memory budget of " + std::to_string(budget) + " bytes exceeded at n=" + std::to_string(n) +
                        " (needs about " + std::to_string(bytes) + ")");
}

int default_radius(int N) { return (N + 1) / 2 + 1; }

}  // namespace

Int WalkTable::value(int n, std::span<const int> x) const {
  if (n < 0 || n > max_steps()) throw ValidationError("walk table has no layer n=" + std::to_string(n));
  if (static_cast<int>(x.size()) != lattice_.dimension()) throw ValidationError("point has wrong dimension");
  Point c = canonical_point(x);
  if (c[0] > radius_) return 0;
  std::uint64_t bits = 0;
  while ((1ull << bits) <= static_cast<unsigned long long>(radius_)) ++bits;
  if (bits == 0) bits = 1;
  std::uint64_t k = 0;
  for (int v : c) k = (k << bits) | static_cast<std::uint64_t>(v);
  auto it = index_.find(k);
  if (it == index_.end()) return 0;
  const auto& layer = layers_[n];
  return it->second < layer.size() ? layer[it->second] : Int(0);
}

bool WalkTable::is_exact(int n, std::span<const int> x) const {
  int m = 0;
  for (int v : x) m = std::max(m, std::abs(v));
  return n + m <= 2 * radius_ + 1;
}

WalkTable count_walk_table(const Lattice& lattice, int N, const WalkCountOptions& options) {
  if (N < 0) throw ValidationError("N must be nonnegative");
  const int radius = options.radius_cut.value_or(default_radius(N));
  if (radius < 0) throw ValidationError("radius cut must be nonnegative");
  Stencil st = build_stencil(lattice, radius, std::max(1, 2 * N));
  const std::size_t budget = resolve_budget(options);

  WalkTable table(lattice);
  table.radius_ = radius;
  table.layers_.resize(N + 1);
  table.layers_[0].assign(std::min<std::size_t>(1, st.points.size()), Int(1));
  std::size_t bytes = sizeof(Int);
  for (int n = 1; n <= N; ++n) {
    std::size_t active = st.active(static_cast<long>(st.growth) * n);
    bytes += active * value_bytes(n, lattice.coordination_number());
    check_budget(budget, bytes, n);
    table.layers_[n].resize(active);
    stencil_step(st, table.layers_[n - 1], table.layers_[n - 1].size(), table.layers_[n], active, options.threads);
  }
  table.points_ = std::move(st.points);
  table.index_ = std::move(st.index);
  return table;
}

std::vector<Int> count_excursions(const Lattice& lattice, int N, const WalkCountOptions& options) {
  if (N < 0) throw ValidationError("N must be nonnegative");
  const int radius = options.radius_cut.value_or(default_radius(N));
  if (radius < 0) throw ValidationError("radius cut must be nonnegative");
  // A point is only useful at step n if it can still return to the origin.
  int growth = 0;
  for (const auto& s : lattice.step_set().steps()) {
    int l1 = 0;
    for (int v : s) l1 += std::abs(v);
    growth = std::max(growth, l1);
  }
  Stencil st = build_stencil(lattice, radius, growth * (N / 2));
  const std::size_t budget = resolve_budget(options);

  auto bound = [&](int n) { return static_cast<long>(st.growth) * std::min(n, N - n); };
  std::vector<Int> result(N + 1);
  std::vector<Int> cur, next;
  std::size_t peak = st.active(growth * (N / 2));
  cur.resize(peak);
  next.resize(peak);
  cur[0] = 1;
  result[0] = 1;
  std::size_t cur_active = 1;
  for (int n = 1; n <= N; ++n) {
    std::size_t active = std::max<std::size_t>(1, st.active(bound(n)));
    std::size_t bytes = (active + cur_active) * value_bytes(n, lattice.coordination_number());
    check_budget(budget, bytes, n);
    stencil_step(st, cur, cur_active, next, active, options.threads);
    std::swap(cur, next);
    cur_active = active;
    result[n] = cur[0];
  }
  return result;
}

ExactSeries excursion_series(const Lattice& lattice, int N, const WalkCountOptions& options) {
  return series_from_integers(count_excursions(lattice, N, options), Int(lattice.coordination_number()));
}

}  // namespace lgf

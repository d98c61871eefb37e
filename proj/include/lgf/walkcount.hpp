#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/lattice.hpp"
#include "lgf/series.hpp"

namespace lgf {

struct WalkCountOptions {
  // Coordinates with absolute value beyond this are dropped. Default ceil(N/2)+1.
  std::optional<int> radius_cut;
  int threads = 1;
  // Approximate byte limit for stored values; falls back to LGF_MEM_BUDGET.
  std::optional<std::size_t> memory_budget;
};

// Canonical representative of x under permutations and sign flips.
Point canonical_point(std::span<const int> x);

// Number of points in the hyperoctahedral orbit of x.
Int orbit_size(std::span<const int> x);

// Exact counts a_n(x) of n-step walks from the origin to x, over the
// canonical wedge x_1 >= ... >= x_d >= 0.
class WalkTable {
 public:
  const Lattice& lattice() const { return lattice_; }
  int max_steps() const { return static_cast<int>(layers_.size()) - 1; }
  int radius() const { return radius_; }

  // a_n(x) for arbitrary x in Z^d; zero outside the stored region.
  Int value(int n, std::span<const int> x) const;

  // True when no walk counted by a_n(x) was lost to the radius cut.
  bool is_exact(int n, std::span<const int> x) const;

  const std::vector<Point>& wedge_points() const { return points_; }
  // Values of layer n for wedge_points()[0..layer_size(n)); later points are zero.
  const std::vector<Int>& layer(int n) const { return layers_.at(n); }

 private:
  friend WalkTable count_walk_table(const Lattice&, int, const WalkCountOptions&);
  explicit WalkTable(const Lattice& lattice) : lattice_(lattice) {}

  Lattice lattice_;
  int radius_ = 0;
  std::vector<Point> points_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::vector<Int>> layers_;
};

WalkTable count_walk_table(const Lattice& lattice, int N, const WalkCountOptions& options = {});

// a_0(0), ..., a_N(0). Uses only two buffers and a shrinking active region.
std::vector<Int> count_excursions(const Lattice& lattice, int N, const WalkCountOptions& options = {});

// p_n(0) = a_n(0) / c^n.
ExactSeries excursion_series(const Lattice& lattice, int N, const WalkCountOptions& options = {});

}  // namespace lgf

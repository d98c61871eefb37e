#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/lattice.hpp"
#include "lgf/mpoly.hpp"
#include "lgf/walkcount.hpp"

namespace lgf {

// Values b_n(x_1..x_k) of a symmetric lattice-walk slice, stored on canonical
// points (sorted nonincreasing absolute coordinates). Points that cannot be
// reached in n steps are known zeros.
class SliceTable {
 public:
  // growth: maximal change of |x|_1 per step; even_only: odd coordinate sums vanish.
  SliceTable(int nvars, int growth, bool even_only);

  int nvars() const { return nvars_; }
  int growth() const { return growth_; }
  bool even_only() const { return even_only_; }
  int layer_count() const { return static_cast<int>(layers_.size()); }
  void resize_layers(int count) { layers_.resize(count); }

  bool in_reach(int n, std::span<const int> x) const;
  // nullptr when x is in reach but not stored; zero() when out of reach.
  const Int* find(int n, std::span<const int> x) const;
  // Throws InsufficientDataError when the value is unknown.
  const Int& value(int n, std::span<const int> x) const;
  void set(int n, std::span<const int> x, const Int& v);
  void erase_layer(int n) { layers_.at(n).clear(); }

  // Canonical reachable points of layer n in lexicographically descending order.
  std::vector<Point> reach_points(int n) const;
  // True when every reachable point of layer n is stored.
  bool layer_complete(int n) const;

  // The sub-slice with the last `drop` coordinates set to zero.
  SliceTable restricted(int drop) const;

  static const Int& zero();

 private:
  std::uint64_t key(std::span<const int> x) const;

  int nvars_;
  int growth_;
  bool even_only_;
  std::vector<std::unordered_map<std::uint64_t, Int>> layers_;
};

// b_n(x_1..x_k) = a_n(x_1..x_k, 0..0) for n <= max_layer. The table's radius
// must make those values exact.
SliceTable slice_from_walks(const WalkTable& table, int nvars, int max_layer);

// sum over terms of c(n, x) * b_{n+t}(x + s), shift = (t, s_1..s_k); the
// coefficient polynomials are in (n, x_1..x_k) with integer coefficients.
struct MultivariateRecurrence {
  struct Term {
    std::vector<int> shift;
    MPoly coefficient;
  };

  int nvars = 0;
  std::vector<Term> terms;

  int time_order() const;
  int degree() const;
  // Content 1; the first term of maximal time has a positive leading coefficient.
  void normalize();
  Int apply(const SliceTable& table, int n, std::span<const int> x) const;
  std::string to_string() const;
};

// Exchange format: header "# lgf-op kind=mrec order=<T> degree=<D> vars=<k>",
// then one block per shift: a line "@ t s_1 .. s_k" followed by one line per
// monomial "c e_n e_1 .. e_k" (total degree, then lexicographic).
void write_multivariate(std::ostream& os, const MultivariateRecurrence& rec);
MultivariateRecurrence read_multivariate(std::istream& is);

struct MultiAnsatz {
  int time_order = 1;    // time shifts 0..T
  int radius = 1;        // space shifts in [-radius, radius]^k
  int degree_n = 1;      // degree in n
  int degree_x = 1;      // total degree in x
  int degree_total = -1; // bound on the combined degree; negative = none
};

struct MultiGuessOptions {
  int margin = 10;
  // Layers used for the equations: 0..max_layer (default: all complete layers).
  int max_layer = -1;
  // Rows solved = oversample * unknowns + margin, drawn at random.
  double oversample = 1.3;
  // Additional random rows used to check the basis.
  std::size_t validation_rows = 20000;
  std::uint64_t seed = 1;
};

// A basis of the recurrences inside the ansatz that annihilate the table at
// every base point whose shifted indices lie in the stored layers.
std::vector<MultivariateRecurrence> guess_multivariate_recurrence(const SliceTable& table, const MultiAnsatz& ansatz,
                                                                  const MultiGuessOptions& options = {});

struct ExtensionReport {
  long solved = 0;     // values produced by a recurrence
  long checked = 0;    // of those, values compared against stored data
  long seeded = 0;     // values taken from data because no recurrence applied
  long walked = 0;     // values produced by the walk recurrence
};

// Recomputes layers first_layer..target with the recurrences. Layers with
// stored data are used to validate (VerificationError on mismatch); beyond
// them every reachable point must be solvable (InsufficientDataError
// otherwise). Layers below first_layer must be complete.
//
// When `walk` is given (the full step set of the lattice the slice was cut
// from), points where no recurrence applies fall back to one step of the walk
// recurrence, provided every neighbour is again a slice point up to symmetry.
// This covers the origin and axis points, where the leading coefficients of
// the guessed recurrences typically vanish.
ExtensionReport extend_slice(SliceTable& table, const std::vector<MultivariateRecurrence>& recurrences, int first_layer,
                             int target, const StepSet* walk = nullptr);

}  // namespace lgf
